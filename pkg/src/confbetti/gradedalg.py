"""Graded-commutative monomials, Koszul signs and exact rational rank.

Generators carry integer ids that are already in canonical order (V before
W, then degree, then index), so sorting a factor list by id is sorting it
canonically.  Monomials never carry a sign; signs live in chain
coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from ._backend import rank_int_rows
from .errors import UnknownGeneratorError

V, W = "V", "W"


@dataclass(frozen=True, order=True)
class GeneratorInfo:
    """One basis element of V* or W*.

    ``degree`` is the homological degree after suspension, ``src_deg`` the
    cohomological degree of the underlying compactly supported class and
    ``index`` the 1-based position inside its (space, degree) slot.
    """

    id: int
    space: str = field(compare=False)
    degree: int = field(compare=False)
    src_deg: int = field(compare=False)
    index: int = field(compare=False)

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1

    @property
    def length(self) -> int:
        return 1 if self.space == V else 2

    @property
    def name(self) -> str:
        return f"{self.space.lower()}{self.degree}_{self.index}"


@dataclass(frozen=True)
class Monomial:
    v_factors: tuple[int, ...]
    w_factors: tuple[int, ...]
    degree: int
    weight: int

    @property
    def length(self) -> int:
        return len(self.v_factors) + 2 * len(self.w_factors)

    @property
    def factors(self) -> tuple[int, ...]:
        return self.v_factors + self.w_factors

    @classmethod
    def from_sorted(cls, ids: Sequence[int], generators) -> "Monomial":
        """Build from an already canonical id sequence (no sign bookkeeping)."""
        vs = []
        ws = []
        deg = 0
        for g in ids:
            info = _lookup(generators, g)
            deg += info.degree
            (vs if info.space == V else ws).append(g)
        return cls(tuple(vs), tuple(ws), deg, len(ws))

    def pretty(self, generators) -> str:
        if not self.factors:
            return "1"
        out = []
        run = None
        count = 0
        for g in self.factors + (None,):
            if g == run:
                count += 1
                continue
            if run is not None:
                name = _lookup(generators, run).name
                out.append(name if count == 1 else f"{name}^{count}")
            run, count = g, 1
        return "*".join(out)


def _lookup(generators, g) -> GeneratorInfo:
    try:
        info = generators[g]
    except (KeyError, IndexError, TypeError):
        raise UnknownGeneratorError(g) from None
    if info.id != g:
        raise UnknownGeneratorError(g)
    return info


class Chain:
    """Finite linear combination of homogeneous monomials over Q."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction | int] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            if c:
                clean[mono] = Fraction(c)
        self._terms = MappingProxyType(clean)

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, Chain):
            return dict(self._terms) == dict(other._terms)
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "Chain") -> "Chain":
        out = dict(self._terms)
        for mono, c in other.items():
            out[mono] = out.get(mono, 0) + c
        return Chain(out)

    def __neg__(self) -> "Chain":
        return Chain({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __rmul__(self, scalar) -> "Chain":
        return Chain({m: scalar * c for m, c in self._terms.items()})

    def __repr__(self) -> str:
        if not self._terms:
            return "Chain(0)"
        parts = [f"{c}*{m.factors}" for m, c in self._terms.items()]
        return "Chain(" + " + ".join(parts) + ")"


class SparseRationalMatrix:
    """Immutable sparse matrix over Q stored as ``{(row, col): value}``."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], Fraction | int] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix shape must be non-negative")
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            if v:
                clean[r, c] = v if isinstance(v, (int, Fraction)) else Fraction(v)
        self.rows = rows
        self.cols = cols
        self._entries = MappingProxyType(clean)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "SparseRationalMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, {(r, c): Fraction(v) for r, line in enumerate(data)
                                for c, v in enumerate(line) if v})

    @property
    def entries(self) -> Mapping[tuple[int, int], Fraction | int]:
        return self._entries

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = Fraction(v)
        return out

    def __matmul__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in other._entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[tuple[int, int], Fraction] = {}
        for (r, k), v in self._entries.items():
            for c, w in by_row.get(k, ()):
                out[r, c] = out.get((r, c), 0) + v * w
        return SparseRationalMatrix(self.rows, other.cols, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return self.shape == other.shape and dict(self._entries) == dict(other._entries)

    def __repr__(self) -> str:
        return f"SparseRationalMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def integer_rows(self) -> list[dict[int, int]]:
        """Rows scaled by the lcm of their denominators (rank preserving)."""
        rows: dict[int, dict[int, Fraction | int]] = {}
        for (r, c), v in self._entries.items():
            rows.setdefault(r, {})[c] = v
        out = []
        for row in rows.values():
            den = 1
            for v in row.values():
                if isinstance(v, Fraction):
                    den = lcm(den, v.denominator)
            out.append({c: int(v * den) for c, v in row.items()})
        return out


def rank(m: SparseRationalMatrix) -> int:
    """Exact rank over Q."""
    if m.is_zero():
        return 0
    return rank_int_rows(m.integer_rows(), m.cols)


def koszul_sort(ids: Sequence[int], odd: Sequence[bool]) -> tuple[int, tuple[int, ...]]:
    """Stable insertion sort of ``ids`` tracking the Koszul sign.

    ``odd[g]`` is the degree parity of generator ``g``.  Returns sign 0 when
    an odd generator repeats.
    """
    out = list(ids)
    sign = 1
    for i in range(1, len(out)):
        x = out[i]
        j = i
        # each adjacent swap of y past x contributes (-1)^{|x||y|}
        while j > 0 and out[j - 1] > x:
            if odd[x] and odd[out[j - 1]]:
                sign = -sign
            out[j] = out[j - 1]
            j -= 1
        out[j] = x
    for a, b in zip(out, out[1:]):
        if a == b and odd[a]:
            return 0, tuple(out)
    return sign, tuple(out)


def koszul_canonicalize(factors: Sequence[int], generators) -> tuple[int, Monomial | None]:
    """Graded-commutative normal form of a product of generators.

    ``generators`` maps id to GeneratorInfo (a list indexed by id works).
    Returns ``(sign, monomial)``; sign is 0, with monomial None, when an
    odd-degree generator repeats.
    """
    infos = {g: _lookup(generators, g) for g in factors}
    odd = {g: info.odd for g, info in infos.items()}
    sign, ordered = koszul_sort(factors, odd)
    if sign == 0:
        return 0, None
    return sign, Monomial.from_sorted(ordered, infos)


def sym_tuples(ids: Sequence[int], odd: Sequence[bool], n: int) -> list[tuple[int, ...]]:
    """Non-decreasing id tuples of size ``n`` with no repeated odd id, in lex order."""
    ids = sorted(ids)
    out: list[tuple[int, ...]] = []
    cur: list[int] = []

    def rec(start: int, left: int) -> None:
        if left == 0:
            out.append(tuple(cur))
            return
        for p in range(start, len(ids)):
            g = ids[p]
            cur.append(g)
            rec(p + 1 if odd[g] else p, left - 1)
            cur.pop()

    if n >= 0:
        rec(0, n)
    return out


def sym_basis(generators: Iterable[GeneratorInfo], n: int) -> list[Monomial]:
    """All size-``n`` multisets over ``generators`` allowed by the exterior rule.

    Every factor counts once here; callers apply length weighting.
    """
    gens = {g.id: g for g in generators}
    odd = {g: info.odd for g, info in gens.items()}
    return [Monomial.from_sorted(t, gens) for t in sym_tuples(list(gens), odd, n)]
