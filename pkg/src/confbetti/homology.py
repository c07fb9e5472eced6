"""Rational Betti numbers of unordered configuration spaces C_k(M)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cecomplex import WeightGradedComplex, build_complex, build_generators, quotient_complex
from .errors import HypothesisError, InternalCheckError
from .gradedalg import rank
from .manifold import ManifoldModel, validate


@dataclass(frozen=True)
class BettiTable:
    """``values[i] = dim H_i(C_k(M); Q)`` with trailing zeros trimmed.

    ``top_degree`` is the largest degree carrying a nonzero chain (or Sym
    element, for odd d) before trimming.
    """

    k: int
    values: tuple[int, ...]
    top_degree: int

    def __getitem__(self, i: int) -> int:
        return self.values[i] if 0 <= i < len(self.values) else 0

    def __len__(self) -> int:
        return len(self.values)

    @property
    def euler(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.values))


def _trim(values: dict[int, int] | list[int]) -> tuple[int, ...]:
    if isinstance(values, dict):
        top = max(values, default=0)
        values = [values.get(i, 0) for i in range(top + 1)]
    values = list(values)
    while len(values) > 1 and values[-1] == 0:
        values.pop()
    return tuple(values) if values else (0,)


def block_ranks(cx: WeightGradedComplex) -> dict[tuple[int, int], int]:
    """Rank of the differential leaving each (degree, weight) block."""
    return {bk: rank(mat) for bk, mat in cx.diff.items()}


def complex_homology(cx: WeightGradedComplex) -> dict[int, int]:
    """Homology dimension per degree of a weight-graded complex.

    Blocks of the same degree map to distinct target blocks, so the rank of
    the full degree-i differential is the sum of the block ranks.
    """
    ranks = block_ranks(cx)
    out: dict[int, int] = {}
    for (i, w), basis in cx.blocks.items():
        b = len(basis) - ranks.get((i, w), 0) - ranks.get((i + 1, w - 1), 0)
        out[i] = out.get(i, 0) + b
    return dict(sorted(out.items()))


def homology_of(cx: WeightGradedComplex) -> BettiTable:
    return BettiTable(cx.k, _trim(complex_homology(cx)), cx.top_degree)


def sym_degree_counts(dims: dict[int, int] | list[int], k: int, skip_degree0: bool = False) -> list[int]:
    """Number of length-``k`` graded-symmetric monomials per total degree.

    ``dims[e]`` generators sit in degree e; even degrees are polynomial,
    odd ones exterior.  With ``skip_degree0`` one degree-0 generator is left
    out (the v0-free part).
    """
    items = dims.items() if isinstance(dims, dict) else enumerate(dims)
    # poly[n][deg]: count of monomials of length n and degree deg
    poly = [[1]] + [[] for _ in range(k)]
    for e, n in items:
        if e == 0 and skip_degree0:
            n -= 1
        for _ in range(max(n, 0)):
            new = [row[:] for row in poly]
            max_mult = 1 if e % 2 else k
            for length in range(k + 1):
                for mlt in range(1, max_mult + 1):
                    if length + mlt > k:
                        break
                    src = poly[length]
                    dst = new[length + mlt]
                    shift = mlt * e
                    if len(dst) < len(src) + shift:
                        dst.extend([0] * (len(src) + shift - len(dst)))
                    for deg, c in enumerate(src):
                        if c:
                            dst[deg + shift] += c
            poly = new
    return poly[k] or [0]


@lru_cache(maxsize=None)
def _betti_even(m: ManifoldModel, k: int, check_d_squared: bool) -> BettiTable:
    if k == 0:
        return BettiTable(0, (1,), 0)
    cx = build_complex(m, k)
    if check_d_squared:
        cx.check_d_squared()
    return homology_of(cx)


def betti_odd(m: ManifoldModel, k: int) -> BettiTable:
    """Betti numbers of C_k(M) for odd d: the length-k part of Sym(H_*(M; Q))."""
    if m.d % 2 == 0:
        raise HypothesisError(f"{m.name}: the symmetric-power formula needs odd d (d = {m.d})")
    if k < 0:
        raise ValueError("k must be non-negative")
    counts = sym_degree_counts(list(m.betti_numbers()), k)
    top = max((i for i, c in enumerate(counts) if c), default=0)
    return BettiTable(k, _trim(counts), top)


def betti(m: ManifoldModel, k: int, check_d_squared: bool = False) -> BettiTable:
    """Rational Betti numbers of the unordered configuration space C_k(M)."""
    m = validate(m)
    if k < 0:
        raise ValueError("k must be non-negative")
    if m.d % 2:
        return betti_odd(m, k)
    return _betti_even(m, k, check_d_squared)


@lru_cache(maxsize=None)
def quotient_homology(m: ManifoldModel, k: int) -> tuple[int, ...]:
    """Per-degree homology of the v0-free part (untrimmed list from degree 0)."""
    m = validate(m)
    if m.d % 2:
        counts = sym_degree_counts(list(m.betti_numbers()), k, skip_degree0=True)
        return tuple(counts)
    cx = quotient_complex(m, k, build_generators(m))
    h = complex_homology(cx)
    top = max(h, default=0)
    return tuple(h.get(i, 0) for i in range(top + 1))


def euler(m: ManifoldModel, k: int) -> int:
    """Euler characteristic of C_k(M), cross-checked against the chain level for even d."""
    table = betti(m, k)
    chi = table.euler
    if m.d % 2 == 0 and k > 0:
        chain = build_complex(m, k).chain_euler()
        if chain != chi:
            raise InternalCheckError(
                f"{m.name}, k={k}: homology Euler characteristic {chi} != chain level {chain}")
    return chi
