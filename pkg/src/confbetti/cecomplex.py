"""The weight-graded Chevalley-Eilenberg complex of an even-dimensional manifold.

Generators: ``V = H_c^{-*}(M; Q^w)[d]`` (length 1, weight 0) and
``W = H_c^{-*}(M; Q)[2d-1]`` (length 2, weight 1).  The differential sends
a pair of V-factors to the suspended cup product and is extended to
monomials as a coderivation; it lowers degree by one and raises weight by
one, so the complex splits into blocks indexed by (degree, weight).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import HypothesisError, InternalCheckError
from .gradedalg import (V, W, Chain, GeneratorInfo, Monomial, SparseRationalMatrix,
                        koszul_canonicalize, sym_tuples)
from .manifold import ManifoldModel

Key = tuple  # (v_factors, w_factors) of a monomial


@dataclass(frozen=True, eq=False)
class GeneratorSystem:
    d: int
    V: tuple[GeneratorInfo, ...]
    W: tuple[GeneratorInfo, ...]
    pairs: dict = field(repr=False)  # (a_id, b_id), a <= b -> ((w_id, coef), ...)
    generators: tuple[GeneratorInfo, ...] = field(init=False, repr=False)
    odd: tuple[bool, ...] = field(init=False, repr=False)

    def __post_init__(self):
        gens = self.V + self.W
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "odd", tuple(g.odd for g in gens))

    def __getitem__(self, gid: int) -> GeneratorInfo:
        return self.generators[gid]

    def __len__(self) -> int:
        return len(self.V) + len(self.W)

    @property
    def v0(self) -> GeneratorInfo:
        return self.V[0]

    @property
    def pair_table(self) -> dict[tuple[int, int], Chain]:
        gens = self.generators
        return {
            key: Chain({Monomial.from_sorted((w,), gens): c for w, c in terms})
            for key, terms in self.pairs.items()
        }

    def monomial(self, key: Key) -> Monomial:
        vs, ws = key
        gens = self.generators
        deg = sum(gens[g].degree for g in vs) + sum(gens[g].degree for g in ws)
        return Monomial(vs, ws, deg, len(ws))


def _require_even(m: ManifoldModel) -> None:
    if m.d % 2:
        raise HypothesisError(
            f"{m.name}: the Chevalley-Eilenberg complex is built only for even d (d = {m.d}); "
            "odd dimensions use the symmetric-power formula")


def _pair_terms(m: ManifoldModel, a: GeneratorInfo, b: GeneratorInfo,
                w_slot: dict[tuple[int, int], int]) -> tuple[tuple[int, Fraction], ...]:
    sign = -1 if ((m.d - 1) * b.degree) % 2 else 1
    out = []
    for c, coef in m.cup.product(a.src_deg, a.index, b.src_deg, b.index):
        val = sign * coef
        # integral coefficients stay Python ints on the hot path
        out.append((w_slot[a.src_deg + b.src_deg, c], int(val) if val.denominator == 1 else val))
    return tuple(out)


def build_generators(m: ManifoldModel) -> GeneratorSystem:
    """Suspend the cohomology of ``m`` into V and W and tabulate the pair differential."""
    _require_even(m)
    d = m.d
    gens: list[GeneratorInfo] = []
    # V-degree d - j with j the cohomological degree; ascending V-degree
    for deg in range(d + 1):
        j = d - deg
        for idx in range(1, m.hc_twisted[j] + 1):
            gens.append(GeneratorInfo(len(gens), V, deg, j, idx))
    nv = len(gens)
    w_slot = {}
    for deg in range(d - 1, 2 * d):
        j = 2 * d - 1 - deg
        for idx in range(1, m.hc_untwisted[j] + 1):
            w_slot[j, idx] = len(gens)
            gens.append(GeneratorInfo(len(gens), W, deg, j, idx))
    vs, ws = tuple(gens[:nv]), tuple(gens[nv:])
    pairs = {}
    for p, a in enumerate(vs):
        for b in vs[p:]:
            terms = _pair_terms(m, a, b, w_slot)
            if terms:
                pairs[a.id, b.id] = terms
    return GeneratorSystem(d, vs, ws, pairs)


def pair_differential(system: GeneratorSystem, a: GeneratorInfo | int, b: GeneratorInfo | int) -> Chain:
    """Differential of the product of two V-generators, as a chain on W.

    The pair is read in canonical order, so ``(b, a)`` picks up the Koszul
    sign of swapping the factors.
    """
    ia = a if isinstance(a, int) else a.id
    ib = b if isinstance(b, int) else b.id
    sign = 1
    if ia > ib:
        ia, ib = ib, ia
        if system[ia].odd and system[ib].odd:
            sign = -1
    gens = system.generators
    return Chain({Monomial.from_sorted((w,), gens): sign * c
                  for w, c in system.pairs.get((ia, ib), ())})


def boundary_terms(system: GeneratorSystem, vs: tuple[int, ...], ws: tuple[int, ...]) -> dict[Key, Fraction | int]:
    """Coderivation extension on a canonical monomial, as ``{(v_part, w_part): coef}``.

    Each unordered pair of V-factors is contracted once; a pair of equal
    (even) factors of multiplicity m counts C(m, 2) times, a pair of distinct
    factors m_g * m_h times.
    """
    pairs = system.pairs
    if not pairs or len(vs) < 2:
        return {}
    odd = system.odd
    n = len(vs)
    # parity of the degree sum of vs[:p]
    prefix = [0] * (n + 1)
    for p, g in enumerate(vs):
        prefix[p + 1] = prefix[p] ^ odd[g]
    total = prefix[n]
    first = {}
    mult = {}
    for p, g in enumerate(vs):
        first.setdefault(g, p)
        mult[g] = mult.get(g, 0) + 1
    distinct = list(first)
    out: dict[Key, Fraction | int] = {}
    for s, g in enumerate(distinct):
        for h in distinct[s:]:
            terms = pairs.get((g, h))
            if not terms:
                continue
            p = first[g]
            if g == h:
                if mult[g] < 2:
                    continue
                q = p + 1
                count = comb(mult[g], 2)
            else:
                q = first[h]
                count = mult[g] * mult[h]
            # Koszul sign of moving vs[p], then vs[q], to the front
            eps = (odd[g] & prefix[p]) ^ (odd[h] & (prefix[q] ^ odd[g]))
            rest = vs[:p] + vs[p + 1:q] + vs[q + 1:]
            rest_par = total ^ odd[g] ^ odd[h]
            for w, c in terms:
                # w * rest * ws: move w past rest, then into the sorted W part
                sgn = eps ^ (odd[w] & rest_par)
                pos = 0
                hit = False
                for u in ws:
                    if u < w:
                        sgn ^= odd[w] & odd[u]
                        pos += 1
                    elif u == w:
                        hit = True
                        break
                    else:
                        break
                if hit and odd[w]:
                    continue
                if hit:
                    while pos < len(ws) and ws[pos] == w:
                        pos += 1
                key = (rest, ws[:pos] + (w,) + ws[pos:])
                val = out.get(key, 0) + (-count * c if sgn else count * c)
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
    return out


def extend_differential(system: GeneratorSystem, x: Monomial) -> Chain:
    """Differential of an arbitrary monomial (W-generators are cycles)."""
    terms = boundary_terms(system, x.v_factors, x.w_factors)
    return Chain({system.monomial(key): c for key, c in terms.items()})


def extend_differential_bruteforce(system: GeneratorSystem, x: Monomial) -> Chain:
    """Position-by-position evaluation of the co-Leibniz sum through generic Koszul sorting.

    Slow; kept as an independent check of ``extend_differential``.
    """
    gens = system.generators
    vs = x.v_factors
    total = Chain()
    for p in range(len(vs)):
        for q in range(p + 1, len(vs)):
            before_p = sum(gens[g].degree for g in vs[:p])
            before_q = sum(gens[g].degree for g in vs[:q]) - gens[vs[p]].degree
            expo = gens[vs[p]].degree * before_p + gens[vs[q]].degree * before_q
            eps = -1 if expo % 2 else 1
            rest = vs[:p] + vs[p + 1:q] + vs[q + 1:]
            for w, c in system.pairs.get((vs[p], vs[q]), ()):
                sign, mono = koszul_canonicalize((w,) + rest + x.w_factors, gens)
                if sign:
                    total = total + Chain({mono: eps * sign * c})
    return total


@dataclass(frozen=True, eq=False)
class WeightGradedComplex:
    """Blocks ``(degree, weight) -> basis`` and differentials ``(i, w) -> (i-1, w+1)``.

    ``diff[i, w]`` has one column per basis element of block (i, w) and one
    row per basis element of block (i-1, w+1) (zero rows when that block is
    empty).  Only non-empty blocks are stored.
    """

    k: int
    system: GeneratorSystem = field(repr=False)
    blocks: dict[tuple[int, int], tuple[Monomial, ...]] = field(repr=False)
    diff: dict[tuple[int, int], SparseRationalMatrix] = field(repr=False)
    quotient: bool = False

    def dim(self, i: int, w: int) -> int:
        return len(self.blocks.get((i, w), ()))

    def degree_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (i, _), basis in self.blocks.items():
            out[i] = out.get(i, 0) + len(basis)
        return dict(sorted(out.items()))

    @property
    def top_degree(self) -> int:
        return max((i for i, _ in self.blocks), default=0)

    def chain_euler(self) -> int:
        return sum((-1) ** i * len(b) for (i, _), b in self.blocks.items())

    def d_squared_violations(self) -> list[tuple[int, int]]:
        """Blocks (i, w) where the composite of two differentials is nonzero."""
        bad = []
        for (i, w), mat in self.diff.items():
            nxt = self.diff.get((i - 1, w + 1))
            if nxt is None or mat.is_zero() or nxt.is_zero():
                continue
            if not (nxt @ mat).is_zero():
                bad.append((i, w))
        return bad

    def check_d_squared(self) -> None:
        bad = self.d_squared_violations()
        if bad:
            raise InternalCheckError(f"d^2 != 0 on blocks {bad} (k = {self.k})")


def _assemble(system: GeneratorSystem, k: int, quotient: bool) -> WeightGradedComplex:
    gens = system.generators
    odd = system.odd
    vids = [g.id for g in system.V if not (quotient and g.degree == 0)]
    wids = [g.id for g in system.W]
    deg = [g.degree for g in gens]
    keys: dict[tuple[int, int], list[Key]] = {}
    for w in range(k // 2 + 1):
        vparts = sym_tuples(vids, odd, k - 2 * w)
        wparts = [(t, sum(deg[g] for g in t)) for t in sym_tuples(wids, odd, w)]
        for a in vparts:
            da = sum(deg[g] for g in a)
            for b, db in wparts:
                keys.setdefault((da + db, w), []).append((a, b))
    keys = dict(sorted(keys.items()))
    blocks = {}
    index = {}
    for bk, lst in keys.items():
        i, w = bk
        blocks[bk] = tuple(Monomial(a, b, i, w) for a, b in lst)
        index[bk] = {key: n for n, key in enumerate(lst)}
    diff = {}
    for (i, w), lst in keys.items():
        tgt = index.get((i - 1, w + 1), {})
        entries = {}
        for col, (a, b) in enumerate(lst):
            for key, c in boundary_terms(system, a, b).items():
                entries[tgt[key], col] = c
        diff[i, w] = SparseRationalMatrix(len(tgt), len(lst), entries)
    return WeightGradedComplex(k, system, blocks, diff, quotient)


def build_complex(m: ManifoldModel, k: int, system: GeneratorSystem | None = None) -> WeightGradedComplex:
    """The complex whose homology is H_*(C_k(M); Q) for even d."""
    _require_even(m)
    if k < 0:
        raise ValueError("k must be non-negative")
    return _assemble(system or build_generators(m), k, quotient=False)


def quotient_complex(m: ManifoldModel, k: int, system: GeneratorSystem | None = None) -> WeightGradedComplex:
    """Span of the v0-free monomials, a subcomplex isomorphic to the quotient by (v0).

    Only defined when H_c^0(M; Q^w) = 0 (M open or non-orientable).
    """
    _require_even(m)
    if not m.v0_condition:
        raise HypothesisError(
            f"{m.name} is closed and orientable (hc_twisted[0] = 1): the v0 decomposition "
            "needs M open or non-orientable")
    if k < 0:
        raise ValueError("k must be non-negative")
    return _assemble(system or build_generators(m), k, quotient=True)
