"""Manifold input model: Betti data of compactly supported cohomology plus cup products.

The model is the only thing the configuration complexes consume:

* ``hc_untwisted[j] = dim H_c^j(M; Q)``
* ``hc_twisted[j] = dim H_c^j(M; Q^w)`` (orientation-twisted coefficients)
* a cup table for ``H_c^i(M; Q^w) x H_c^j(M; Q^w) -> H_c^{i+j}(M; Q)``

All indices in cup entries are 1-based, matching the JSON file format.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping

from .errors import ValidationError


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or an integer string into a Fraction.

    Plain JSON integers are accepted as well; floats never are.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"coefficient must be a string 'p/q', got {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(n, q)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class CupEntry:
    i: int
    a: int
    j: int
    b: int
    results: tuple[tuple[int, Fraction], ...] = ()

    @property
    def key(self) -> tuple[int, int, int, int]:
        return self.i, self.a, self.j, self.b


@dataclass(frozen=True)
class CupTable:
    """Cup products on chosen bases; missing entries are zero.

    Only one of each graded-commutative pair needs to be stored; ``product``
    derives the partner with the sign ``(-1)^{ij}``.
    """

    entries: tuple[CupEntry, ...] = ()

    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {}
            for e in self.entries:
                res = tuple((c, Fraction(v)) for c, v in e.results if v)
                idx.setdefault(e.key, res)
            for e in self.entries:
                swapped = (e.j, e.b, e.i, e.a)
                if swapped not in idx:
                    s = -1 if (e.i * e.j) % 2 else 1
                    idx[swapped] = tuple((c, s * v) for c, v in idx[e.key])
            object.__setattr__(self, "_idx", idx)
        return idx

    def product(self, i: int, a: int, j: int, b: int) -> tuple[tuple[int, Fraction], ...]:
        """Coordinates of ``x_{i,a} cup x_{j,b}`` in the basis of ``H_c^{i+j}(M; Q)``."""
        return self._index().get((i, a, j, b), ())

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ManifoldModel:
    name: str
    d: int
    orientable: bool
    closed: bool
    hc_untwisted: tuple[int, ...]
    hc_twisted: tuple[int, ...]
    cup: CupTable = field(default_factory=CupTable)

    @property
    def v0_condition(self) -> bool:
        """True when H_c^0(M; Q^w) = 0, i.e. M is open or non-orientable."""
        return self.hc_twisted[0] == 0

    def betti_numbers(self) -> tuple[int, ...]:
        """Ordinary rational Betti numbers of M, via twisted Poincare duality."""
        return tuple(self.hc_twisted[self.d - i] for i in range(self.d + 1))

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.betti_numbers()))

    def to_json_dict(self) -> dict[str, Any]:
        cup = []
        for e in self.cup.entries:
            cup.append({
                "i": e.i, "a": e.a, "j": e.j, "b": e.b,
                "results": [{"c": c, "coef": format_rational(v)} for c, v in e.results],
            })
        return {
            "name": self.name,
            "dim": self.d,
            "orientable": self.orientable,
            "closed": self.closed,
            "hc_untwisted": list(self.hc_untwisted),
            "hc_twisted": list(self.hc_twisted),
            "cup": cup,
        }


_TOP_FIELDS = {"name", "dim", "orientable", "closed", "hc_untwisted", "hc_twisted", "cup"}
_CUP_FIELDS = {"i", "a", "j", "b", "results"}
_RESULT_FIELDS = {"c", "coef"}


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _from_json_dict(raw: Mapping[str, Any]) -> tuple[ManifoldModel | None, list[str]]:
    problems: list[str] = []
    if not isinstance(raw, Mapping):
        return None, ["manifold document must be a JSON object"]
    unknown = set(raw) - _TOP_FIELDS
    if unknown:
        problems.append(f"unknown fields: {sorted(unknown)}")
    missing = _TOP_FIELDS - set(raw)
    if missing:
        problems.append(f"missing fields: {sorted(missing)}")
        return None, problems
    name, dim = raw["name"], raw["dim"]
    if not isinstance(name, str):
        problems.append("name must be a string")
    if not _is_int(dim) or dim < 1:
        problems.append("dim must be a positive integer")
        return None, problems
    for flag in ("orientable", "closed"):
        if not isinstance(raw[flag], bool):
            problems.append(f"{flag} must be a boolean")
    arrays = {}
    for key in ("hc_untwisted", "hc_twisted"):
        arr = raw[key]
        if not isinstance(arr, list) or not all(_is_int(x) for x in arr):
            problems.append(f"{key} must be an array of integers")
            continue
        arrays[key] = tuple(arr)
    entries = []
    cup = raw["cup"]
    if not isinstance(cup, list):
        problems.append("cup must be an array")
        cup = []
    for n, ent in enumerate(cup):
        if not isinstance(ent, Mapping):
            problems.append(f"cup[{n}] must be an object")
            continue
        bad = set(ent) ^ _CUP_FIELDS
        if bad:
            problems.append(f"cup[{n}] has wrong fields: {sorted(bad)}")
            continue
        if not all(_is_int(ent[k]) for k in ("i", "a", "j", "b")):
            problems.append(f"cup[{n}]: i, a, j, b must be integers")
            continue
        results = []
        if not isinstance(ent["results"], list):
            problems.append(f"cup[{n}].results must be an array")
            continue
        for r in ent["results"]:
            if not isinstance(r, Mapping) or set(r) != _RESULT_FIELDS or not _is_int(r["c"]):
                problems.append(f"cup[{n}]: each result needs integer c and coef")
                continue
            try:
                results.append((r["c"], parse_rational(r["coef"])))
            except ValueError as exc:
                problems.append(f"cup[{n}]: {exc}")
        entries.append(CupEntry(ent["i"], ent["a"], ent["j"], ent["b"], tuple(results)))
    if problems:
        return None, problems
    model = ManifoldModel(
        name=name, d=dim, orientable=raw["orientable"], closed=raw["closed"],
        hc_untwisted=arrays["hc_untwisted"], hc_twisted=arrays["hc_twisted"],
        cup=CupTable(tuple(entries)),
    )
    return model, []


def check_model(m: ManifoldModel) -> list[str]:
    """Every rule violation of a structurally well-formed model."""
    problems: list[str] = []
    d = m.d
    if m.d < 1:
        return ["dimension must be positive"]
    for key in ("hc_untwisted", "hc_twisted"):
        arr = getattr(m, key)
        if len(arr) != d + 1:
            problems.append(f"{key} must have length d+1 = {d + 1}, got {len(arr)}")
        if any(x < 0 for x in arr):
            problems.append(f"{key} entries must be non-negative")
    if problems:
        return problems
    tw, un = m.hc_twisted, m.hc_untwisted
    if tw[d] != 1:
        problems.append(f"connectedness: hc_twisted[{d}] = dim H_0(M) must be 1, got {tw[d]}")
    if m.orientable and tw != un:
        problems.append("orientability: an orientable model needs hc_twisted == hc_untwisted")
    if m.closed and un[0] != 1:
        problems.append("closedness: a closed model needs hc_untwisted[0] = 1")
    if not m.closed and un[0] != 0:
        problems.append("closedness: an open model needs hc_untwisted[0] = 0")
    expect_tw0 = 1 if (m.closed and m.orientable) else 0
    if tw[0] != expect_tw0:
        problems.append(f"hc_twisted[0] must be {expect_tw0} for "
                        f"{'closed orientable' if expect_tw0 else 'open or non-orientable'} M")

    seen: dict[tuple[int, int, int, int], CupEntry] = {}
    for e in m.cup.entries:
        tag = f"cup entry ({e.i},{e.a})x({e.j},{e.b})"
        if e.i < 0 or e.j < 0:
            problems.append(f"{tag}: negative degree")
            continue
        if e.i + e.j > d:
            problems.append(f"{tag}: target degree {e.i + e.j} exceeds top degree {d}")
            continue
        if not 1 <= e.a <= tw[e.i] or not 1 <= e.b <= tw[e.j]:
            problems.append(f"{tag}: index out of range for hc_twisted")
        cs = [c for c, _ in e.results]
        if any(not 1 <= c <= un[e.i + e.j] for c in cs):
            problems.append(f"{tag}: result index out of range for hc_untwisted[{e.i + e.j}]")
        if len(set(cs)) != len(cs):
            problems.append(f"{tag}: repeated result index")
        if e.key in seen:
            problems.append(f"{tag}: duplicate entry")
        seen[e.key] = e
    for key, e in seen.items():
        partner = seen.get((e.j, e.b, e.i, e.a))
        if partner is None or key > partner.key:
            continue
        s = -1 if (e.i * e.j) % 2 else 1
        lhs = {c: v for c, v in partner.results if v}
        rhs = {c: s * v for c, v in e.results if v}
        if lhs != rhs:
            problems.append(f"cup entry ({e.i},{e.a})x({e.j},{e.b}): violates graded "
                            f"commutativity with its stored partner")
    return problems


def validate(raw: ManifoldModel | Mapping[str, Any]) -> ManifoldModel:
    """Return a validated model or raise ValidationError listing every violation."""
    if isinstance(raw, ManifoldModel):
        model = raw
    else:
        model, problems = _from_json_dict(raw)
        if problems:
            raise ValidationError(problems)
    problems = check_model(model)
    if problems:
        raise ValidationError(problems)
    return model


def load(path: str | Path) -> ManifoldModel:
    """Read and validate a manifold JSON document."""
    text = Path(path).read_text()
    try:
        raw = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ValidationError([f"malformed JSON: {exc}"]) from None
    except ValueError as exc:
        raise ValidationError([str(exc)]) from None
    return validate(raw)


def _reject_float(s):
    raise ValueError(f"floating point numbers are not allowed: {s}")


def dumps(m: ManifoldModel) -> str:
    return json.dumps(m.to_json_dict(), indent=2, sort_keys=True) + "\n"


# ----------------------------------------------------------------------------
# catalog


def _unit_products(d: int, dims: Iterable[tuple[int, int]]) -> list[CupEntry]:
    """1 cup x = x for every class x of a closed orientable manifold."""
    out = []
    for j, n in dims:
        for b in range(1, n + 1):
            out.append(CupEntry(0, 1, j, b, ((b, Fraction(1)),)))
    return out


def _euclidean(d: int) -> ManifoldModel:
    arr = tuple([0] * d + [1])
    return ManifoldModel(f"R{d}", d, True, False, arr, arr, CupTable())


def _sphere(d: int) -> ManifoldModel:
    arr = tuple([1] + [0] * (d - 1) + [1])
    cup = _unit_products(d, [(0, 1), (d, 1)])
    return ManifoldModel(f"S{d}", d, True, True, arr, arr, CupTable(tuple(cup)))


def _symplectic(g: int, top_index: int = 1) -> list[CupEntry]:
    """alpha_r cup beta_r = [top] on basis alpha_1, beta_1, ..., alpha_g, beta_g."""
    return [CupEntry(1, 2 * r - 1, 1, 2 * r, ((top_index, Fraction(1)),)) for r in range(1, g + 1)]


def _closed_surface(g: int) -> ManifoldModel:
    arr = (1, 2 * g, 1)
    cup = _unit_products(2, [(0, 1), (1, 2 * g), (2, 1)]) + _symplectic(g)
    return ManifoldModel(f"Sigma{g}", 2, True, True, arr, arr, CupTable(tuple(cup)))


def _punctured_surface(g: int) -> ManifoldModel:
    # H_c^1 = Q^{2g} dual to H_1, H_c^2 = Q; the intersection form stays
    # symplectic with a single puncture.
    arr = (0, 2 * g, 1)
    return ManifoldModel(f"Sigma{g}_1", 2, True, False, arr, arr, CupTable(tuple(_symplectic(g))))


def _rp2() -> ManifoldModel:
    # untwisted H^* = Q in degree 0; twisted H^i = H_{2-i}
    return ManifoldModel("RP2", 2, False, True, (1, 0, 0), (0, 0, 1), CupTable())


def _klein() -> ManifoldModel:
    # untwisted (1,1,0); twisted H^i = H_{2-i} = (0,1,1).  Every twisted
    # product lands in untwisted degree 2, which is zero.
    return ManifoldModel("Klein", 2, False, True, (1, 1, 0), (0, 1, 1), CupTable())


def _build_catalog() -> dict[str, ManifoldModel]:
    models = [_euclidean(d) for d in (1, 2, 3, 4)]
    models += [_sphere(d) for d in (1, 2, 3, 4)]
    models += [_closed_surface(1), _closed_surface(2)]
    models += [_punctured_surface(0), _punctured_surface(1)]
    models += [_rp2(), _klein()]
    return {m.name: validate(m) for m in models}


CATALOG: dict[str, ManifoldModel] = _build_catalog()

ALIASES = {"T2": "Sigma1", "D2": "Sigma0_1", "K": "Klein"}

# ordinary rational Betti numbers b_0..b_d of each catalog entry
KNOWN_BETTI: dict[str, tuple[int, ...]] = {
    "R1": (1, 0), "R2": (1, 0, 0), "R3": (1, 0, 0, 0), "R4": (1, 0, 0, 0, 0),
    "S1": (1, 1), "S2": (1, 0, 1), "S3": (1, 0, 0, 1), "S4": (1, 0, 0, 0, 1),
    "Sigma1": (1, 2, 1), "Sigma2": (1, 4, 1),
    "Sigma0_1": (1, 0, 0), "Sigma1_1": (1, 2, 0),
    "RP2": (1, 0, 0), "Klein": (1, 1, 0),
}


def catalog_names() -> list[str]:
    return list(CATALOG)


def catalog(name: str) -> ManifoldModel:
    """Built-in manifold by name (``R1``..``R4``, ``S1``..``S4``, ``Sigma1``, ...)."""
    key = ALIASES.get(name, name)
    try:
        return CATALOG[key]
    except KeyError:
        raise KeyError(f"unknown manifold {name!r}; choose from {', '.join(CATALOG)}") from None
