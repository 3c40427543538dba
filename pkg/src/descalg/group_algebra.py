"""Group algebras of S_n, B_n and G_{r,n} over the rationals.

A ``Group`` enumerates its elements once and caches a multiplication table,
so products of algebra elements reduce to integer array arithmetic.  An
``AlgebraElement`` stores integer numerators over one common denominator,
which keeps every product exact.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from .perm_core import (
    BudgetExceeded,
    Element,
    GroupDescriptor,
    InvalidInput,
    enumerate_group,
    format_element,
    identity,
    parse_element,
    statistic_function,
)
from .qpoly import Number, Poly, binom, poly_binom, shifted_binomial_in_x

CONVOLUTION_BUDGET = 2000
_INT64_SAFE = 2**62


# ---------------------------------------------------------------------------
# groups


def _point_map(g: Element, d: GroupDescriptor) -> list[int]:
    """Action of ``g`` on the points ``(i, c)`` encoded as ``i * r + c``."""
    r = d.r
    out = [0] * (d.n * r)
    for i in range(d.n):
        if d.family == "symmetric":
            v, k = g.word[i], 0
        elif d.family == "hyperoctahedral":
            w = g.word[i]
            v, k = abs(w), int(w < 0)
        else:
            v, k = g.word[i]
        for c in range(r):
            out[i * r + c] = (v - 1) * r + (c + k) % r
    return out


class Group:
    """All elements of one group with cached products, inverses and statistics."""

    def __init__(self, d: GroupDescriptor, budget: int | None = None):
        self.descriptor = d
        self.elements: list[Element] = list(enumerate_group(d, budget))
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.size = len(self.elements)
        self._table: np.ndarray | None = None
        self._inverse: np.ndarray | None = None
        self._stats: dict[str, list[Hashable]] = {}

    def __repr__(self) -> str:
        return f"Group({self.descriptor})"

    @property
    def identity_index(self) -> int:
        return self.index[identity(self.descriptor)]

    def _keys(self, points: np.ndarray) -> np.ndarray:
        d = self.descriptor
        base = max(1, d.n * d.r)
        cols = points[:, :: d.r] if d.n else np.zeros((points.shape[0], 0), dtype=np.int64)
        weights = base ** np.arange(d.n, dtype=np.int64)
        return cols.astype(np.int64) @ weights

    def table(self) -> np.ndarray:
        """``table[i, j]`` is the index of ``elements[i] o elements[j]``."""
        if self._table is None:
            if self.size > CONVOLUTION_BUDGET:
                raise BudgetExceeded(f"multiplication table of {self.descriptor}",
                                     self.size, CONVOLUTION_BUDGET)
            d = self.descriptor
            width = d.n * d.r
            pts = np.array([_point_map(g, d) for g in self.elements],
                           dtype=np.int64).reshape(self.size, width)
            keys = self._keys(pts)
            order = np.argsort(keys)
            sorted_keys = keys[order]
            table = np.empty((self.size, self.size), dtype=np.int64)
            for i in range(self.size):
                composed = pts[i][pts] if width else pts
                pos = np.searchsorted(sorted_keys, self._keys(composed))
                table[i] = order[pos]
            self._table = table
        return self._table

    def inverse(self) -> np.ndarray:
        if self._inverse is None:
            t = self.table()
            e = self.identity_index
            inv = np.empty(self.size, dtype=np.int64)
            rows, cols = np.nonzero(t == e)
            inv[rows] = cols
            self._inverse = inv
        return self._inverse

    def stat(self, name: str) -> list[Hashable]:
        if name not in self._stats:
            fn = statistic_function(name, self.descriptor)
            self._stats[name] = [fn(g) for g in self.elements]
        return self._stats[name]

    def parse(self, text: str) -> Element:
        return parse_element(text, self.descriptor)


@functools.lru_cache(maxsize=64)
def get_group(d: GroupDescriptor) -> Group:
    return Group(d)


# ---------------------------------------------------------------------------
# algebra elements


def _lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


class AlgebraElement:
    """Rational linear combination of group elements.

    Coefficients are ``num / den`` with ``num`` an integer vector indexed like
    ``group.elements`` and ``den`` a positive integer; the pair is reduced.
    """

    __slots__ = ("group", "num", "den")

    def __init__(self, group: Group, num: np.ndarray, den: int = 1):
        num = np.asarray(num)
        if num.dtype != object and num.dtype != np.int64:
            num = num.astype(np.int64)
        if den <= 0:
            raise ValueError("denominator must be positive")
        g = den
        if num.size:
            nz = num[num != 0]
            for v in nz.tolist():
                g = math.gcd(g, int(v))
                if g == 1:
                    break
        if g > 1:
            num = num // g
            den //= g
        self.group = group
        self.num = num
        self.den = int(den)

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, group: Group) -> "AlgebraElement":
        return cls(group, np.zeros(group.size, dtype=np.int64))

    @classmethod
    def from_values(cls, group: Group, values: Sequence[Number]) -> "AlgebraElement":
        fr = [Fraction(v) for v in values]
        den = _lcm(f.denominator for f in fr)
        ints = [int(f * den) for f in fr]
        big = max((abs(v) for v in ints), default=0) >= _INT64_SAFE
        arr = np.array(ints, dtype=object if big else np.int64)
        return cls(group, arr, den)

    @classmethod
    def from_dict(cls, group: Group, coeffs: Mapping[Element | str, Number]) -> "AlgebraElement":
        values: list[Number] = [0] * group.size
        for g, c in coeffs.items():
            if isinstance(g, str):
                g = group.parse(g)
            if g not in group.index:
                raise InvalidInput(f"{g} is not in {group.descriptor}")
            values[group.index[g]] += Fraction(c)
        return cls.from_values(group, values)

    @classmethod
    def from_elements(cls, group: Group, elems: Iterable[Element | str]) -> "AlgebraElement":
        coeffs: dict = {}
        for g in elems:
            if isinstance(g, str):
                g = group.parse(g)
            coeffs[g] = coeffs.get(g, 0) + 1
        return cls.from_dict(group, coeffs)

    # views ------------------------------------------------------------

    def coefficient(self, g: Element | int | str) -> Fraction:
        if isinstance(g, str):
            g = self.group.parse(g)
        i = g if isinstance(g, (int, np.integer)) else self.group.index[g]
        return Fraction(int(self.num[i]), self.den)

    def values(self) -> list[Fraction]:
        return [Fraction(int(v), self.den) for v in self.num.tolist()]

    @property
    def coefficients(self) -> dict[Element, Fraction]:
        return {self.group.elements[i]: Fraction(int(self.num[i]), self.den)
                for i in np.flatnonzero(self.num != 0)}

    def support(self) -> list[Element]:
        return [self.group.elements[i] for i in np.flatnonzero(self.num != 0)]

    def is_zero(self) -> bool:
        return not np.any(self.num != 0)

    def to_json(self) -> dict[str, str]:
        return {format_element(g): str(c) for g, c in self.coefficients.items()}

    def to_text(self) -> str:
        """Terms joined by `` + ``; signed words may start with ``-``, so a
        negative coefficient is always written out, as in ``-1*1,-2``."""
        parts = []
        for g, c in self.coefficients.items():
            word = format_element(g)
            parts.append(word if c == 1 else f"{c}*{word}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"AlgebraElement({self.to_text()})"

    # arithmetic -------------------------------------------------------

    def _same(self, other: "AlgebraElement") -> None:
        if self.group.descriptor != other.group.descriptor:
            raise InvalidInput("elements live in different groups")

    def _widen(self, num: np.ndarray, factor: int) -> np.ndarray:
        if factor == 1:
            return num
        peak = int(np.max(np.abs(num))) if num.size else 0
        if num.dtype != object and peak * factor >= _INT64_SAFE:
            num = num.astype(object)
        return num * factor

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        den = _lcm((self.den, other.den))
        a = self._widen(self.num, den // self.den)
        b = self._widen(other.num, den // other.den)
        if a.dtype == object or b.dtype == object:
            a, b = a.astype(object), b.astype(object)
        elif (int(np.max(np.abs(a), initial=0)) + int(np.max(np.abs(b), initial=0))) >= _INT64_SAFE:
            a, b = a.astype(object), b.astype(object)
        return AlgebraElement(self.group, a + b, den)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.group, -self.num, self.den)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c: Number) -> "AlgebraElement":
        c = Fraction(c)
        num = self._widen(self.num, abs(c.numerator))
        if c.numerator < 0:
            num = -num
        return AlgebraElement(self.group, num, self.den * c.denominator)

    def __rmul__(self, c: Number) -> "AlgebraElement":
        return self.scale(c)

    def __mul__(self, other: "AlgebraElement | Number") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        return multiply(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.group.descriptor != other.group.descriptor or self.den != other.den:
            return False
        return bool(np.all(self.num == other.num))

    def __hash__(self) -> int:
        return hash((self.group.descriptor, self.den, tuple(self.num.tolist())))


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Convolution: the coefficient of ``pi`` is the sum of ``a(s) b(t)`` over ``s o t = pi``."""
    a._same(b)
    G = a.group
    table, inv = G.table(), G.inverse()
    supp = np.flatnonzero(a.num != 0)
    if supp.size == 0 or b.is_zero():
        return AlgebraElement.zero(G)
    # row s of the gathered matrix holds b(s^-1 pi) for every pi
    gathered = b.num[table[inv[supp]]]
    left = a.num[supp]
    amax = int(np.max(np.abs(left)))
    bmax = int(np.max(np.abs(b.num)))
    if left.dtype == object or gathered.dtype == object or amax * bmax * supp.size >= _INT64_SAFE:
        out = left.astype(object) @ gathered.astype(object)
    else:
        out = left @ gathered
    return AlgebraElement(G, np.asarray(out), a.den * b.den)


def identity_element(G: Group) -> AlgebraElement:
    num = np.zeros(G.size, dtype=np.int64)
    num[G.identity_index] = 1
    return AlgebraElement(G, num)


def all_ones(G: Group) -> AlgebraElement:
    return AlgebraElement(G, np.ones(G.size, dtype=np.int64))


# ---------------------------------------------------------------------------
# fibers and closure


def fiber_element(d: GroupDescriptor | Group, s: str, v: Hashable) -> AlgebraElement:
    G = d if isinstance(d, Group) else get_group(d)
    vals = G.stat(s)
    num = np.array([1 if x == v else 0 for x in vals], dtype=np.int64)
    return AlgebraElement(G, num)


def fiber_values(G: Group, s: str) -> list[Hashable]:
    return sorted(set(G.stat(s)), key=lambda v: (str(type(v)), v))


def fiber_basis(G: Group, s: str) -> dict[Hashable, AlgebraElement]:
    return {v: fiber_element(G, s, v) for v in fiber_values(G, s)}


@dataclass
class ClosureReport:
    group: str
    statistic: str
    closed: bool
    fibers: int
    structure_constants: dict | None = None
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"group": self.group, "statistic": self.statistic,
               "closed": self.closed, "fibers": self.fibers}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _fiber_labels(G: Group, s: str) -> tuple[list[Hashable], np.ndarray]:
    values = fiber_values(G, s)
    pos = {v: i for i, v in enumerate(values)}
    labels = np.array([pos[x] for x in G.stat(s)], dtype=np.int64)
    return values, labels


def fiber_product_counts(G: Group, s: str) -> tuple[list[Hashable], np.ndarray]:
    """``counts[j, k, pi]`` = number of ``(sigma, tau)`` in fibers ``j, k`` with ``sigma tau = pi``."""
    values, labels = _fiber_labels(G, s)
    f, N = len(values), G.size
    table = G.table()
    key = (labels[:, None] * f + labels[None, :]) * N + table
    counts = np.bincount(key.ravel(), minlength=f * f * N).reshape(f, f, N)
    return values, counts


def closure_check(d: GroupDescriptor | Group, s: str) -> ClosureReport:
    """Decide whether the fiber sums of ``s`` span a subalgebra."""
    G = d if isinstance(d, Group) else get_group(d)
    values, counts = fiber_product_counts(G, s)
    _, labels = _fiber_labels(G, s)
    f = len(values)
    reps = [int(np.flatnonzero(labels == v)[0]) for v in range(f)]
    constants: dict = {}
    for j in range(f):
        for k in range(f):
            row = counts[j, k]
            expected = row[np.array(reps)][labels]
            bad = np.flatnonzero(row != expected)
            if bad.size:
                p2 = int(bad[0])
                p1 = reps[labels[p2]]
                return ClosureReport(
                    str(G.descriptor), s, False, f,
                    witness={
                        "fibers": [_jsonable(values[j]), _jsonable(values[k])],
                        "elements": [format_element(G.elements[p1]), format_element(G.elements[p2])],
                        "coefficients": [int(row[p1]), int(row[p2])],
                        "fiber_of_elements": _jsonable(values[labels[p2]]),
                    })
            for v in range(f):
                c = int(row[reps[v]])
                if c:
                    constants[(values[j], values[k], values[v])] = c
    return ClosureReport(str(G.descriptor), s, True, f, structure_constants=constants)


def _jsonable(v: Hashable):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def in_fiber_span(x: AlgebraElement, s: str) -> bool:
    """True when ``x`` is constant on every fiber of ``s``."""
    G = x.group
    _, labels = _fiber_labels(G, s)
    for v in np.unique(labels):
        block = x.num[labels == v]
        if np.any(block != block[0]):
            return False
    return True


def fiber_coordinates(x: AlgebraElement, s: str) -> dict[Hashable, Fraction]:
    """Coordinates of ``x`` in the fiber basis of ``s`` (``x`` must lie in the span)."""
    if not in_fiber_span(x, s):
        raise InvalidInput("element is not constant on fibers")
    G = x.group
    values, labels = _fiber_labels(G, s)
    return {values[v]: x.coefficient(int(np.flatnonzero(labels == v)[0]))
            for v in range(len(values))}


# ---------------------------------------------------------------------------
# structure polynomials


@dataclass(frozen=True)
class KindSpec:
    family: str
    stat: str
    # binomial top is x + offset(n, v); bottom is bottom(n)
    offset: Callable[[int, int], int]
    bottom: Callable[[int], int]
    cyclic_prefactor: bool = False


KINDS: dict[str, KindSpec] = {
    "phi": KindSpec("symmetric", "des", lambda n, v: n - 1 - v, lambda n: n),
    "psiCyclic": KindSpec("symmetric", "cdes", lambda n, v: n - 1 - v, lambda n: n - 1, True),
    "phiA_Bn": KindSpec("hyperoctahedral", "desA", lambda n, v: n - 1 - v, lambda n: n),
    "phiB": KindSpec("hyperoctahedral", "desB", lambda n, v: n - v, lambda n: n),
    "psiAug": KindSpec("hyperoctahedral", "ades", lambda n, v: n - v, lambda n: n),
    "phiColored": KindSpec("colored", "desColored", lambda n, v: n - v, lambda n: n),
}

# parity pieces of the flag quasi-polynomial, as substitutions into base kinds
DERIVED_KINDS: dict[str, tuple[str, Fraction, Fraction]] = {
    "zetaEven": ("phiA_Bn", Fraction(1, 2), Fraction(0)),
    "zetaOdd": ("phiB", Fraction(1, 2), Fraction(-1, 2)),
}

STRUCTURE_KINDS = tuple(KINDS) + tuple(DERIVED_KINDS)


def _kind_poly(spec: KindSpec, n: int, v: int, scale: Fraction, shift: Fraction) -> Poly:
    p = shifted_binomial_in_x(scale, shift + spec.offset(n, v), spec.bottom(n))
    if spec.cyclic_prefactor:
        p = p * Poly.monomial(scale / n, x=1) + p * (shift / n)
    return p


def _kind_value(spec: KindSpec, n: int, v: int, arg: Fraction) -> Fraction:
    val = poly_binom(arg + spec.offset(n, v), spec.bottom(n))
    if spec.cyclic_prefactor:
        val *= Fraction(arg) / n
    return val


def _resolve_kind(kind: str, scale: Number, shift: Number) -> tuple[KindSpec, Fraction, Fraction]:
    if kind in DERIVED_KINDS:
        base, a, b = DERIVED_KINDS[kind]
        # P(scale' * (a x + b) + shift') is not needed; derived kinds take no extra scaling
        if scale != 1 or shift != 0:
            raise InvalidInput(f"{kind} does not take an extra substitution")
        return KINDS[base], a, b
    if kind not in KINDS:
        raise InvalidInput(f"unknown structure polynomial kind {kind!r}")
    return KINDS[kind], Fraction(scale), Fraction(shift)


@dataclass
class StructurePolynomial:
    """``sum_i coefficients[i] x^i`` with algebra-element coefficients."""

    group: Group
    kind: str
    coefficients: list[AlgebraElement]
    scale: Fraction = Fraction(1)
    shift: Fraction = Fraction(0)

    @property
    def degree(self) -> int:
        deg = -1
        for i, c in enumerate(self.coefficients):
            if not c.is_zero():
                deg = i
        return deg

    def __call__(self, x: Number) -> AlgebraElement:
        out = AlgebraElement.zero(self.group)
        power = Fraction(1)
        for c in self.coefficients:
            if not c.is_zero():
                out = out + c.scale(power)
            power *= Fraction(x)
        return out

    def direct(self, x: Number) -> AlgebraElement:
        """The defining sum of binomials, evaluated without the x-expansion."""
        return evaluate_kind(self.group, self.kind, Fraction(x), self.scale, self.shift)


def _check_family(G: Group, spec: KindSpec, kind: str) -> None:
    if G.descriptor.family != spec.family:
        raise InvalidInput(f"{kind} is defined on {spec.family} groups, not {G.descriptor}")


def structure_polynomial(d: GroupDescriptor | Group, kind: str,
                         scale: Number = 1, shift: Number = 0) -> StructurePolynomial:
    """Expand ``P(scale * x + shift)`` for the structure polynomial ``P`` of ``kind``."""
    G = d if isinstance(d, Group) else get_group(d)
    spec, a, b = _resolve_kind(kind, scale, shift)
    _check_family(G, spec, kind)
    n = G.descriptor.n
    stats = G.stat(spec.stat)
    polys = {v: _kind_poly(spec, n, v, a, b) for v in set(stats)}
    deg = max((p.degree("x") for p in polys.values()), default=0)
    coeffs = []
    for i in range(deg + 1):
        vals = [polys[v].coefficient(x=i).constant() for v in stats]
        coeffs.append(AlgebraElement.from_values(G, vals))
    return StructurePolynomial(G, kind, coeffs, a, b)


def evaluate_kind(G: Group, kind: str, x: Number, scale: Number = 1, shift: Number = 0) -> AlgebraElement:
    spec, a, b = _resolve_kind(kind, 1, 0) if kind in DERIVED_KINDS else _resolve_kind(kind, scale, shift)
    _check_family(G, spec, kind)
    n = G.descriptor.n
    arg = a * Fraction(x) + b
    stats = G.stat(spec.stat)
    cache = {v: _kind_value(spec, n, v, arg) for v in set(stats)}
    return AlgebraElement.from_values(G, [cache[v] for v in stats])


# ---------------------------------------------------------------------------
# idempotents


# family name -> (kind, scale, shift, first power, statistic spanning the family)
IDEMPOTENT_KINDS: dict[str, tuple[str, Fraction, Fraction, int, str]] = {
    "e": ("phi", Fraction(1), Fraction(0), 1, "des"),
    "cyclic": ("psiCyclic", Fraction(1), Fraction(0), 2, "cdes"),
    "a": ("phiA_Bn", Fraction(1, 2), Fraction(0), 1, "desA"),
    "b": ("phiB", Fraction(1, 2), Fraction(-1, 2), 0, "desB"),
    "bhat": ("psiAug", Fraction(1, 2), Fraction(0), 1, "ades"),
    "flag": ("", Fraction(1), Fraction(0), 1, "fdes"),
    "colored": ("phiColored", Fraction(1), Fraction(0), 0, "desColored"),
}

FAMILY_GROUP = {"e": "symmetric", "cyclic": "symmetric", "a": "hyperoctahedral",
                "b": "hyperoctahedral", "bhat": "hyperoctahedral",
                "flag": "hyperoctahedral", "colored": "colored"}


def idempotent_family(d: GroupDescriptor | Group, kind: str) -> list[AlgebraElement]:
    """Orthogonal idempotents read off the x-expansion of a structure polynomial.

    ``e``: phi(x); ``cyclic``: psi(x), powers 2..n; ``a``: phi_A(x/2);
    ``b``: phi_B((x-1)/2), powers 0..n; ``bhat``: psi(x/2); ``colored``:
    phi((x-1)/r), powers 0..n.  ``flag`` interleaves ``f_{2i} = a_i`` and
    ``f_{2i+1} = b_i - a_i`` for ``f_1, ..., f_{2n}``.
    """
    G = d if isinstance(d, Group) else get_group(d)
    if kind not in IDEMPOTENT_KINDS:
        raise InvalidInput(f"unknown idempotent family {kind!r}")
    if G.descriptor.family != FAMILY_GROUP[kind]:
        raise InvalidInput(f"family {kind!r} lives on {FAMILY_GROUP[kind]} groups")
    n = G.descriptor.n
    if kind == "flag":
        a = idempotent_family(G, "a")
        b = idempotent_family(G, "b")
        out = []
        for m in range(1, 2 * n + 1):
            if m % 2 == 0:
                out.append(a[m // 2 - 1])
            else:
                i = (m - 1) // 2
                out.append(b[i] - a[i - 1] if i >= 1 else b[0])
        return out
    base, scale, shift, first, _ = IDEMPOTENT_KINDS[kind]
    if kind == "colored":
        r = G.descriptor.r
        scale, shift = Fraction(1, r), Fraction(-1, r)
    sp = structure_polynomial(G, base, scale, shift)
    coeffs = sp.coefficients + [AlgebraElement.zero(G)] * (n + 1 - len(sp.coefficients))
    return coeffs[first:n + 1]


@dataclass
class FamilyReport:
    ok: bool
    members: int
    failures: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"pass": self.ok, "members": self.members, "failures": self.failures}


def verify_idempotent_family(fam: Sequence[AlgebraElement], statistic: str | None = None) -> FamilyReport:
    """Check ``f_i^2 = f_i`` and ``f_i f_j = 0``; with ``statistic`` also check that
    every member lies in the fiber span and that the family spans it."""
    failures: list[dict] = []
    for i, f in enumerate(fam):
        for j, g in enumerate(fam):
            prod = f * g
            target = f if i == j else AlgebraElement.zero(f.group)
            if prod != target:
                failures.append({"pair": [i, j], "kind": "idempotent" if i == j else "orthogonal"})
    if statistic is not None and fam:
        G = fam[0].group
        values = fiber_values(G, statistic)
        for i, f in enumerate(fam):
            if not in_fiber_span(f, statistic):
                failures.append({"member": i, "kind": "not in fiber span"})
        if not failures:
            rows = [[fiber_coordinates(f, statistic)[v] for v in values] for f in fam]
            if _rank(rows) != len(values):
                failures.append({"kind": "does not span", "rank": _rank(rows), "fibers": len(values)})
    return FamilyReport(not failures, len(fam), failures)


def _rank(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                factor = m[i][c] / m[rank][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# functional equations


@dataclass(frozen=True)
class FunctionalEquation:
    """``L(a_L x + b_L) R(a_R y + b_R) = O(out(x, y))``."""

    name: str
    family: str
    left: tuple[str, Fraction, Fraction]
    right: tuple[str, Fraction, Fraction]
    out_kind: str
    out: Callable[[Fraction, Fraction, int], Fraction]
    holds: bool = True


_H = Fraction(1, 2)
_1 = Fraction(1)
_0 = Fraction(0)

FUNCTIONAL_EQUATIONS: dict[str, FunctionalEquation] = {e.name: e for e in [
    FunctionalEquation("phi", "symmetric", ("phi", _1, _0), ("phi", _1, _0), "phi",
                       lambda x, y, r: x * y),
    FunctionalEquation("cyclic-left", "symmetric", ("phi", _1, _0), ("psiCyclic", _1, _0),
                       "psiCyclic", lambda x, y, r: x * y),
    FunctionalEquation("cyclic-right", "symmetric", ("psiCyclic", _1, _0), ("phi", _1, _0),
                       "psiCyclic", lambda x, y, r: x * y, holds=False),
    FunctionalEquation("typeB", "hyperoctahedral", ("phiB", _1, _0), ("phiB", _1, _0), "phiB",
                       lambda x, y, r: 2 * x * y + x + y),
    FunctionalEquation("typeA", "hyperoctahedral", ("phiA_Bn", _1, _0), ("phiA_Bn", _1, _0),
                       "phiA_Bn", lambda x, y, r: 2 * x * y),
    FunctionalEquation("aug", "hyperoctahedral", ("psiAug", _1, _0), ("psiAug", _1, _0),
                       "psiAug", lambda x, y, r: 2 * x * y),
    FunctionalEquation("desa-desb", "hyperoctahedral", ("phiA_Bn", _H, _0), ("phiB", _H, -_H),
                       "phiA_Bn", lambda x, y, r: x * y / 2),
    FunctionalEquation("desb-desa", "hyperoctahedral", ("phiB", _H, -_H), ("phiA_Bn", _H, _0),
                       "phiA_Bn", lambda x, y, r: x * y / 2),
    FunctionalEquation("desb-ades", "hyperoctahedral", ("phiB", _H, -_H), ("psiAug", _H, _0),
                       "psiAug", lambda x, y, r: x * y / 2),
    FunctionalEquation("ades-desb", "hyperoctahedral", ("psiAug", _H, _0), ("phiB", _H, -_H),
                       "psiAug", lambda x, y, r: x * y / 2),
    FunctionalEquation("desa-ades", "hyperoctahedral", ("phiA_Bn", _H, _0), ("psiAug", _H, _0),
                       "phiA_Bn", lambda x, y, r: x * y / 2),
    FunctionalEquation("ades-desa", "hyperoctahedral", ("psiAug", _H, _0), ("phiA_Bn", _H, _0),
                       "psiAug", lambda x, y, r: x * y / 2),
    FunctionalEquation("flag-even-even", "hyperoctahedral", ("phiA_Bn", _H, _0), ("phiA_Bn", _H, _0),
                       "phiA_Bn", lambda x, y, r: x * y / 2),
    FunctionalEquation("flag-even-odd", "hyperoctahedral", ("phiA_Bn", _H, _0), ("phiB", _H, -_H),
                       "phiA_Bn", lambda x, y, r: x * y / 2),
    FunctionalEquation("flag-odd-even", "hyperoctahedral", ("phiB", _H, -_H), ("phiA_Bn", _H, _0),
                       "phiA_Bn", lambda x, y, r: x * y / 2),
    FunctionalEquation("flag-odd-odd", "hyperoctahedral", ("phiB", _H, -_H), ("phiB", _H, -_H),
                       "phiB", lambda x, y, r: (x * y - 1) / 2),
    FunctionalEquation("colored", "colored", ("phiColored", _1, _0), ("phiColored", _1, _0),
                       "phiColored", lambda x, y, r: r * x * y + x + y),
]}

MIXED_IDEAL_EQUATIONS = ("desa-desb", "desb-desa", "desb-ades", "ades-desb", "desa-ades", "ades-desa")


@dataclass
class EquationReport:
    name: str
    group: str
    passed: bool
    expected: bool
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return self.passed == self.expected

    def to_json(self) -> dict:
        out = {"id": self.name, "group": self.group, "holds": self.passed,
               "expected": self.expected, "pass": self.ok}
        if self.witness:
            out["witness"] = self.witness
        return out


def functional_equation_check(d: GroupDescriptor | Group, name: str) -> EquationReport:
    """Compare both sides on an integer grid larger than their degrees."""
    G = d if isinstance(d, Group) else get_group(d)
    eq = FUNCTIONAL_EQUATIONS.get(name)
    if eq is None:
        raise InvalidInput(f"unknown functional equation {name!r}")
    if G.descriptor.family != eq.family:
        raise InvalidInput(f"{name} is stated on {eq.family} groups")
    n, r = G.descriptor.n, G.descriptor.r
    points = [Fraction(v) for v in range(1, n + 3)]
    lk, la, lb = eq.left
    rk, ra, rb = eq.right
    lefts = {x: evaluate_kind(G, lk, x, la, lb) for x in points}
    rights = {y: evaluate_kind(G, rk, y, ra, rb) for y in points}
    for x in points:
        for y in points:
            lhs = lefts[x] * rights[y]
            rhs = evaluate_kind(G, eq.out_kind, eq.out(x, y, r))
            if lhs != rhs:
                diff = np.flatnonzero((lhs - rhs).num != 0)
                g = G.elements[int(diff[0])]
                return EquationReport(name, str(G.descriptor), False, eq.holds, {
                    "x": str(x), "y": str(y), "element": format_element(g),
                    "lhs": str(lhs.coefficient(g)), "rhs": str(rhs.coefficient(g)),
                })
    return EquationReport(name, str(G.descriptor), True, eq.holds)


# ---------------------------------------------------------------------------
# coefficient identities behind each algebra theorem


def _ceil_half(m: int) -> int:
    return -((-m) // 2)


# order-polynomial factors: name -> (statistic, value(n, stat, j))
OMEGA_FORMS: dict[str, tuple[str, Callable[[int, int, int], int]]] = {
    "plain": ("des", lambda n, v, j: binom(j + n - v, n)),
    "cyclicBars": ("cdes", lambda n, v, k: binom(k + n - 1 - v, n - 1)),
    "A": ("desA", lambda n, v, j: binom(j + n - v, n)),
    "B": ("desB", lambda n, v, j: binom(j + n - v, n)),
    "aug": ("ades", lambda n, v, j: binom(j + n - v, n)),
    "flag": ("fdes", lambda n, v, j: binom(_ceil_half(j - 1 - v) + n, n)),
    "colored": ("desColored", lambda n, v, j: binom(j + n - v, n)),
}


@dataclass(frozen=True)
class CoefficientIdentity:
    name: str
    family: str
    left: str
    right: str
    stat: str
    closed: Callable[[int, int, int, int, int], int]  # (n, r, stat, j, k)


COEFFICIENT_IDENTITIES: dict[str, CoefficientIdentity] = {c.name: c for c in [
    CoefficientIdentity("symmetric", "symmetric", "plain", "plain", "des",
                        lambda n, r, v, j, k: binom((j + 1) * (k + 1) + n - 1 - v, n)),
    CoefficientIdentity("cyclic", "symmetric", "plain", "cyclicBars", "cdes",
                        lambda n, r, v, j, k: (j + 1) * binom((j + 1) * k + n - 1 - v, n - 1)),
    CoefficientIdentity("typeB", "hyperoctahedral", "B", "B", "desB",
                        lambda n, r, v, j, k: binom(2 * j * k + j + k + n - v, n)),
    CoefficientIdentity("typeA", "hyperoctahedral", "A", "A", "desA",
                        lambda n, r, v, j, k: binom(2 * (j + 1) * (k + 1) + n - 1 - v, n)),
    CoefficientIdentity("aug", "hyperoctahedral", "aug", "aug", "ades",
                        lambda n, r, v, j, k: binom(2 * j * k + n - v, n)),
    CoefficientIdentity("flag", "hyperoctahedral", "flag", "flag", "fdes",
                        lambda n, r, v, j, k: binom(_ceil_half(j * k + j + k - 1 - v) + n, n)),
    CoefficientIdentity("desa-desb", "hyperoctahedral", "A", "B", "desA",
                        lambda n, r, v, j, k: binom(2 * j * k + j + 2 * k + n - v, n)),
    CoefficientIdentity("desb-desa", "hyperoctahedral", "B", "A", "desA",
                        lambda n, r, v, j, k: binom(2 * j * k + 2 * j + k + n - v, n)),
    CoefficientIdentity("desb-ades", "hyperoctahedral", "B", "aug", "ades",
                        lambda n, r, v, j, k: binom(2 * j * k + k + n - v, n)),
    CoefficientIdentity("ades-desb", "hyperoctahedral", "aug", "B", "ades",
                        lambda n, r, v, j, k: binom(2 * j * k + j + n - v, n)),
    CoefficientIdentity("desa-ades", "hyperoctahedral", "A", "aug", "desA",
                        lambda n, r, v, j, k: binom(2 * j * k + 2 * k + n - 1 - v, n)),
    CoefficientIdentity("ades-desa", "hyperoctahedral", "aug", "A", "ades",
                        lambda n, r, v, j, k: binom(2 * j * k + 2 * j + n - v, n)),
    CoefficientIdentity("colored", "colored", "colored", "colored", "desColored",
                        lambda n, r, v, j, k: binom(r * j * k + j + k + n - v, n)),
]}


def omega_element(G: Group, form: str, j: int) -> AlgebraElement:
    stat, fn = OMEGA_FORMS[form]
    n = G.descriptor.n
    return AlgebraElement.from_values(G, [fn(n, v, j) for v in G.stat(stat)])


def coefficient_identity_check(name: str, d: GroupDescriptor | Group, j: int, k: int) -> tuple[bool, dict | None]:
    """Closed form against the convolution of the two order-polynomial factors."""
    G = d if isinstance(d, Group) else get_group(d)
    ident = COEFFICIENT_IDENTITIES.get(name)
    if ident is None:
        raise InvalidInput(f"unknown coefficient identity {name!r}")
    if G.descriptor.family != ident.family:
        raise InvalidInput(f"{name} is stated on {ident.family} groups")
    n, r = G.descriptor.n, G.descriptor.r
    prod = omega_element(G, ident.left, j) * omega_element(G, ident.right, k)
    stats = G.stat(ident.stat)
    for i, g in enumerate(G.elements):
        want = ident.closed(n, r, stats[i], j, k)
        got = prod.coefficient(i)
        if got != want:
            return False, {"element": format_element(g), "closed_form": want, "convolution": str(got)}
    return True, None


# ---------------------------------------------------------------------------
# one-sided ideals


def search_left_ideal_witness(d: GroupDescriptor | Group, ideal_stat: str, other_stat: str) -> dict | None:
    """Look for fibers ``X`` of ``other_stat`` and ``Y`` of ``ideal_stat`` whose
    product ``X * Y`` leaves the span of the ``ideal_stat`` fibers."""
    G = d if isinstance(d, Group) else get_group(d)
    for u in fiber_values(G, other_stat):
        X = fiber_element(G, other_stat, u)
        for v in fiber_values(G, ideal_stat):
            prod = X * fiber_element(G, ideal_stat, v)
            if not in_fiber_span(prod, ideal_stat):
                _, labels = _fiber_labels(G, ideal_stat)
                for lab in np.unique(labels):
                    idx = np.flatnonzero(labels == lab)
                    block = prod.num[idx]
                    bad = np.flatnonzero(block != block[0])
                    if bad.size:
                        g1, g2 = G.elements[int(idx[0])], G.elements[int(idx[bad[0]])]
                        return {
                            "left_fiber": [other_stat, u], "right_fiber": [ideal_stat, v],
                            "elements": [format_element(g1), format_element(g2)],
                            "coefficients": [str(prod.coefficient(g1)), str(prod.coefficient(g2))],
                        }
    return None
