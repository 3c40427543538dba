"""Exact polynomials, q-analogues and truncated power series.

``Poly`` is a sparse polynomial with rational coefficients in named
variables.  A monomial is a sorted tuple of ``(name, exponent)`` pairs, so
polynomials in different variable sets combine without any declaration.
Negative exponents are allowed, which keeps substitutions such as
``q -> 1/q`` exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Number = Union[int, Fraction]
Monomial = tuple[tuple[str, int], ...]


def _clean(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in d.items() if e))


class Poly:
    """Sparse multivariate Laurent polynomial with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        self.terms: dict[Monomial, Number] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = _clean(c)

    # construction -----------------------------------------------------

    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls({(): c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Poly":
        return cls({((name, power),) if power else (): 1})

    @classmethod
    def monomial(cls, coeff: Number = 1, **exps: int) -> "Poly":
        return cls({tuple(sorted((v, e) for v, e in exps.items() if e)): coeff})

    @classmethod
    def from_exponents(cls, name: str, exps: Iterable[int]) -> "Poly":
        """Sum of ``name**e`` over ``exps`` (repeats add up)."""
        out: dict[Monomial, Number] = {}
        for e in exps:
            m = ((name, e),) if e else ()
            out[m] = out.get(m, 0) + 1
        return cls(out)

    @staticmethod
    def lift(x: "Poly | Number") -> "Poly":
        return x if isinstance(x, Poly) else Poly.const(x)

    # arithmetic -------------------------------------------------------

    def __add__(self, other: "Poly | Number") -> "Poly":
        other = Poly.lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly | Number") -> "Poly":
        return self + (-Poly.lift(other))

    def __rsub__(self, other: Number) -> "Poly":
        return Poly.lift(other) - self

    def __mul__(self, other: "Poly | Number") -> "Poly":
        if not isinstance(other, Poly):
            if not other:
                return Poly()
            return Poly({m: c * other for m, c in self.terms.items()})
        out: dict[Monomial, Number] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "Poly":
        return Poly({m: Fraction(c) / other for m, c in self.terms.items()})

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection -------------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted({v for m in self.terms for v, _ in m}))

    def degree(self, name: str) -> int:
        """Largest exponent of ``name`` (``-1`` for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(dict(m).get(name, 0) for m in self.terms)

    def coefficient(self, **exps: int) -> "Poly":
        """Coefficient of the given partial monomial, as a polynomial in the rest."""
        out: dict[Monomial, Number] = {}
        for m, c in self.terms.items():
            d = dict(m)
            if all(d.get(v, 0) == e for v, e in exps.items()):
                rest = tuple((v, e) for v, e in m if v not in exps)
                out[rest] = out.get(rest, 0) + c
        return Poly(out)

    def constant(self) -> Number:
        return self.terms.get((), 0)

    def coefficients(self, name: str) -> list[Number]:
        """Dense coefficient list of a univariate polynomial in ``name``."""
        if not self.terms:
            return []
        extra = set(self.variables) - {name}
        if extra:
            raise ValueError(f"polynomial also involves {sorted(extra)}")
        deg = self.degree(name)
        out = [0] * (deg + 1)
        for m, c in self.terms.items():
            e = dict(m).get(name, 0)
            if e < 0:
                raise ValueError("negative exponent in dense view")
            out[e] = c
        return out

    # transformations --------------------------------------------------

    def substitute(self, values: Mapping[str, "Poly | Number"]) -> "Poly":
        """Replace variables by numbers or polynomials (nonnegative exponents only
        unless the replacement is a number or a single monomial)."""
        out = Poly()
        cache: dict[tuple[str, int], Poly] = {}
        for m, c in self.terms.items():
            term = Poly.const(c)
            for v, e in m:
                if v in values:
                    key = (v, e)
                    if key not in cache:
                        val = values[v]
                        if isinstance(val, Poly):
                            if e < 0:
                                if len(val.terms) != 1:
                                    raise ValueError("cannot invert a non-monomial")
                                (mm, cc), = val.terms.items()
                                inv = Poly({tuple((x, -y) for x, y in mm): Fraction(1) / cc})
                                cache[key] = inv ** (-e)
                            else:
                                cache[key] = val ** e
                        else:
                            cache[key] = Poly.const(Fraction(val) ** e)
                    term = term * cache[key]
                else:
                    term = term * Poly.var(v, e)
            out = out + term
        return out

    def evaluate(self, **values: Number) -> Number:
        p = self.substitute(values)
        if p.variables:
            raise ValueError(f"unassigned variables {p.variables}")
        return p.constant()

    def scale_exponent(self, name: str, factor: int) -> "Poly":
        """Substitute ``name -> name**factor`` (for example ``q -> q^2``)."""
        out: dict[Monomial, Number] = {}
        for m, c in self.terms.items():
            nm = tuple((v, e * factor if v == name else e) for v, e in m)
            out[nm] = out.get(nm, 0) + c
        return Poly(out)

    def truncate(self, orders: Mapping[str, int]) -> "Poly":
        """Drop every monomial whose exponent in some ``v`` exceeds ``orders[v]``."""
        return Poly({m: c for m, c in self.terms.items()
                     if all(e <= orders.get(v, e) for v, e in m)})

    def derivative(self, name: str) -> "Poly":
        out: dict[Monomial, Number] = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(name, 0)
            if e:
                d[name] = e - 1
                nm = tuple(sorted((v, x) for v, x in d.items() if x))
                out[nm] = out.get(nm, 0) + c * e
        return Poly(out)

    # serialization ----------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Number]]:
        def key(item):
            m = item[0]
            return (sum(e for _, e in m), [(v, e) for v, e in m])
        return sorted(self.terms.items(), key=key)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def to_json(self) -> dict:
        names = list(self.variables)
        rows = []
        for m, c in self.sorted_terms():
            d = dict(m)
            rows.append([[d.get(v, 0) for v in names], str(c)])
        return {"variables": names, "terms": rows}

    def __repr__(self) -> str:
        return f"Poly({self.to_text()})"

    __str__ = to_text


ZERO = Poly()
ONE = Poly.const(1)


# ---------------------------------------------------------------------------
# q-analogues


def q_int(n: int, q: str = "q") -> Poly:
    """``[n]_q = 1 + q + ... + q^(n-1)``; ``[0]_q = 0``."""
    if n < 0:
        raise ValueError("q_int needs n >= 0")
    return Poly.from_exponents(q, range(n))


def q_factorial(n: int, q: str = "q") -> Poly:
    out = ONE
    for i in range(1, n + 1):
        out = out * q_int(i, q)
    return out


_QBINOM_CACHE: dict[tuple[int, int, str], Poly] = {}


def q_binomial(a: int, b: int, q: str = "q") -> Poly:
    """Gaussian binomial; zero unless ``0 <= b <= a``."""
    if b < 0 or a < 0 or b > a:
        return ZERO
    key = (a, b, q)
    hit = _QBINOM_CACHE.get(key)
    if hit is not None:
        return hit
    if b == 0 or b == a:
        out = ONE
    else:
        # [a, b] = [a-1, b-1] + q^b [a-1, b]
        out = q_binomial(a - 1, b - 1, q) + Poly.var(q, b) * q_binomial(a - 1, b, q)
    _QBINOM_CACHE[key] = out
    return out


def q_multichoose(m: int, k: int, q: str = "q") -> Poly:
    """q-count of size-``k`` multisets from ``m`` values: ``[m + k - 1, k]_q``.

    Equals 1 when ``k = 0`` for every ``m``, and 0 when ``m <= 0 < k``.
    """
    if k < 0:
        return ZERO
    if k == 0:
        return ONE
    if m <= 0:
        return ZERO
    return q_binomial(m + k - 1, k, q)


def pochhammer(m: int, t: str = "t", q: str = "q", step: int = 1) -> Poly:
    """``(t; q^step)_m = prod_{i < m} (1 - t q^(step*i))``."""
    out = ONE
    for i in range(m):
        out = out * (ONE - Poly.monomial(1, **{t: 1, q: step * i}))
    return out


def binom(a: int, b: int) -> int:
    """Combinatorial binomial: zero unless ``0 <= b <= a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def poly_binom(m: Number, n: int) -> Fraction:
    """``m (m-1) ... (m-n+1) / n!`` for any rational ``m``."""
    out = Fraction(1)
    for i in range(n):
        out *= Fraction(m) - i
    return out / math.factorial(n)


def shifted_binomial_in_x(a: Number, b: Number, n: int, x: str = "x") -> Poly:
    """``binom(a*x + b, n)`` expanded as a degree-``n`` polynomial in ``x``."""
    out = ONE
    a = Fraction(a)
    for i in range(n):
        out = out * (Poly.monomial(a, **{x: 1}) + (Fraction(b) - i))
    return out / math.factorial(n)


# ---------------------------------------------------------------------------
# truncated series


@dataclass
class TruncatedSeries:
    """A power series in the variables of ``orders``, kept up to those orders.

    Coefficients are polynomials in every other variable.
    """

    poly: Poly
    orders: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        self.poly = self.poly.truncate(self.orders)

    def _check(self, other: "TruncatedSeries") -> None:
        if self.orders != other.orders:
            raise ValueError(f"series orders differ: {self.orders} vs {other.orders}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.poly + other.poly, dict(self.orders))

    def __mul__(self, other: "TruncatedSeries | Poly") -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check(other)
            other = other.poly
        return TruncatedSeries(_truncated_product(self.poly, other, self.orders), dict(self.orders))

    def coefficient_of(self, **exps: int) -> Poly:
        return self.poly.coefficient(**exps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.orders == other.orders and self.poly == other.poly


def _truncated_product(a: Poly, b: Poly, orders: Mapping[str, int]) -> Poly:
    out: dict[Monomial, Number] = {}
    for m1, c1 in a.terms.items():
        d1 = dict(m1)
        for m2, c2 in b.terms.items():
            ok = True
            for v, e in m2:
                if v in orders and d1.get(v, 0) + e > orders[v]:
                    ok = False
                    break
            if not ok:
                continue
            m = _mono_mul(m1, m2)
            out[m] = out.get(m, 0) + c1 * c2
    return Poly(out)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def coefficient_of(s: TruncatedSeries, **exps: int) -> Poly:
    return s.coefficient_of(**exps)


def pochhammer_inverse(m: int, J: int, t: str = "t", q: str = "q", step: int = 1) -> TruncatedSeries:
    """``1 / (t; q^step)_m`` up to ``t^J``; the ``t^j`` coefficient is
    ``[j + m - 1, m - 1]`` in ``q^step``."""
    if m == 0:
        return TruncatedSeries(ONE, {t: J})
    out = ZERO
    for j in range(J + 1):
        c = q_binomial(j + m - 1, m - 1, q).scale_exponent(q, step)
        out = out + c * Poly.var(t, j)
    return TruncatedSeries(out, {t: J})


def series_from_terms(terms: Iterable[tuple[Mapping[str, int], Poly | Number]],
                      orders: Mapping[str, int]) -> TruncatedSeries:
    """Build a series from ``(exponents, coefficient)`` pairs."""
    out: dict[Monomial, Number] = {}
    for exps, coeff in terms:
        mono = tuple(sorted((v, e) for v, e in exps.items() if e))
        for m, c in Poly.lift(coeff).terms.items():
            mm = _mono_mul(mono, m)
            out[mm] = out.get(mm, 0) + c
    return TruncatedSeries(Poly(out), dict(orders))


@dataclass
class IdentityResult:
    ok: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def series_identity_check(lhs: TruncatedSeries, numerator: Poly,
                          denominators: Sequence[Poly]) -> IdentityResult:
    """Check ``lhs * prod(denominators) == numerator`` up to the orders of ``lhs``.

    On failure the witness names the smallest offending exponent vector of the
    series variables together with both coefficients.
    """
    orders = lhs.orders
    prod = lhs.poly
    for d in denominators:
        prod = _truncated_product(prod, d, orders)
    target = numerator.truncate(orders)
    if prod == target:
        return IdentityResult(True)
    diff = prod - target
    names = sorted(orders)

    def series_part(m: Monomial) -> tuple[int, ...]:
        d = dict(m)
        return tuple(d.get(v, 0) for v in names)

    worst = min(series_part(m) for m in diff.terms)
    exps = dict(zip(names, worst))
    return IdentityResult(False, {
        "exponent": exps,
        "lhs": prod.coefficient(**exps).to_text(),
        "rhs": target.coefficient(**exps).to_text(),
    })
