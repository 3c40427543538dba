"""Distribution polynomials, the identity catalog, tables and counterexamples.

Every catalog entry compares a brute-force distribution polynomial with a
closed form.  Generating-function identities are checked as truncated series
through ``qpoly.series_identity_check``; recurrences and Worpitzky-type
identities compare polynomials directly.
"""
from __future__ import annotations

import functools
import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .group_algebra import (
    AlgebraElement,
    closure_check,
    fiber_element,
    get_group,
)
from .perm_core import (
    ColoredPermutation,
    GroupDescriptor,
    InvalidInput,
    Permutation,
    complement_reverse,
    enumerate_group,
    enumerate_words,
    format_element,
    statistic,
    statistic_function,
    word_statistic,
)
from .ppartition import build_zigzag, legal_index_sets, linear_extensions
from .qpoly import (
    ONE,
    ZERO,
    IdentityResult,
    Poly,
    TruncatedSeries,
    pochhammer,
    q_binomial,
    q_int,
    q_multichoose,
    series_from_terms,
    series_identity_check,
)

DEFAULT_J = 6
GARSIA_GESSEL_J = 4


# ---------------------------------------------------------------------------
# distribution polynomials


@dataclass(frozen=True)
class WordFamily:
    """Words of the multiset ``1^alpha_1 2^alpha_2 ...``.

    ``kind`` is ``multiset``, ``signedMultiset`` or ``coloredMultiset``.
    """

    kind: str
    alpha: tuple[int, ...]
    r: int = 1

    @property
    def n(self) -> int:
        return sum(self.alpha)


Family = GroupDescriptor | WordFamily

_COLORED_WORD_STATS = {"des": "desColored", "maj": "majColored", "fmaj": "fmajColored"}
_SIGNED_WORD_STATS = {"fmaj": "fmajB", "famaj": "famajB"}


def _color_count(k: int) -> Callable:
    return lambda g: sum(1 for _, c in getattr(g, "word", g) if c == k)


def _stat_fn(family: Family, name: str) -> Callable[[object], int]:
    # N0, N1, ... count letters of each color
    if name.startswith("N") and name[1:].isdigit():
        return _color_count(int(name[1:]))
    if isinstance(family, GroupDescriptor):
        return statistic_function(name, family)
    if family.kind == "coloredMultiset":
        s = _COLORED_WORD_STATS.get(name, name)
    elif family.kind == "signedMultiset":
        s = _SIGNED_WORD_STATS.get(name, name)
    else:
        s = name
    return lambda w: word_statistic(w, s, family.r)


def _members(family: Family, budget: int | None) -> Iterator:
    if isinstance(family, GroupDescriptor):
        return enumerate_group(family, budget)
    return enumerate_words(family.kind, family.alpha, family.r, budget)


def distribution_polynomial(family: Family, stats: Sequence[tuple[str, str]],
                            budget: int | None = None) -> Poly:
    """``sum over the family of prod var**stat``, e.g. ``[("des", "t"), ("maj", "q")]``."""
    return _distribution(family, tuple(tuple(p) for p in stats), budget)


@functools.lru_cache(maxsize=256)
def _distribution(family: Family, stats: tuple[tuple[str, str], ...],
                  budget: int | None) -> Poly:
    fns = [(_stat_fn(family, s), v) for s, v in stats]
    counts: dict[tuple, int] = {}
    for g in _members(family, budget):
        mono = tuple(sorted((v, f(g)) for f, v in fns))
        counts[mono] = counts.get(mono, 0) + 1
    terms: dict = {}
    for mono, c in counts.items():
        key = tuple((v, e) for v, e in mono if e)
        terms[key] = terms.get(key, 0) + c
    return Poly(terms)


def colored_eulerian(r: int, n: int, with_maj: bool = False) -> Poly:
    """``C_{r,n}(t)`` or ``C_{r,n}(t, q)`` over ``G_{r,n}``."""
    stats = [("des", "t")] + ([("maj", "q")] if with_maj else [])
    return distribution_polynomial(GroupDescriptor.colored(r, n), stats)


def _coeff_t(p: Poly, k: int) -> Poly:
    return p.coefficient(t=k)


# ---------------------------------------------------------------------------
# catalog plumbing


@dataclass(frozen=True)
class IdentityParams:
    """Restrict a catalog check to one ``n``, ``r`` or ``alpha``; ``None`` sweeps defaults."""

    n: int | None = None
    r: int | None = None
    alpha: tuple[int, ...] | None = None
    J: int | None = None


@dataclass
class IdentityReport:
    id: str
    params: dict
    passed: bool
    witness: dict | None = None
    elapsed_ms: float = 0.0
    cases: int = 0

    @property
    def ok(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out = {"id": self.id, "params": self.params, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    cases: Callable[[IdentityParams], list[dict]]
    check: Callable[[dict, int], IdentityResult]
    default_J: int = DEFAULT_J


def _compositions(total_max: int, parts_max: int = 6) -> list[tuple[int, ...]]:
    """Compositions (positive parts) of every size ``1..total_max``."""
    out = []
    for n in range(1, total_max + 1):
        for cuts in itertools.product((0, 1), repeat=n - 1):
            parts, run = [], 1
            for c in cuts:
                if c:
                    parts.append(run)
                    run = 1
                else:
                    run += 1
            parts.append(run)
            if len(parts) <= parts_max:
                out.append(tuple(parts))
    return out


def _weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    for cuts in itertools.combinations_with_replacement(range(total + 1), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def _n_cases(default: Sequence[int]) -> Callable[[IdentityParams], list[dict]]:
    def cases(p: IdentityParams) -> list[dict]:
        ns = [p.n] if p.n is not None else list(default)
        return [{"n": n} for n in ns]
    return cases


def _alpha_cases(default_max: int) -> Callable[[IdentityParams], list[dict]]:
    def cases(p: IdentityParams) -> list[dict]:
        if p.alpha is not None:
            return [{"alpha": tuple(p.alpha)}]
        if p.n is not None:
            return [{"alpha": a} for a in _compositions(p.n) if sum(a) == p.n]
        return [{"alpha": a} for a in _compositions(default_max)]
    return cases


def _rn_cases(rs: Sequence[int], ns: Sequence[int]) -> Callable[[IdentityParams], list[dict]]:
    def cases(p: IdentityParams) -> list[dict]:
        rr = [p.r] if p.r is not None else list(rs)
        nn = [p.n] if p.n is not None else list(ns)
        return [{"r": r, "n": n} for r in rr for n in nn]
    return cases


def _series(J: int, coeff: Callable[[int], Poly | int], t: str = "t") -> TruncatedSeries:
    return series_from_terms([({t: j}, coeff(j)) for j in range(J + 1)], {t: J})


def _fail(**witness) -> IdentityResult:
    return IdentityResult(False, witness)


# ---------------------------------------------------------------------------
# symmetric group and multisets


def _check_eulerian(case: dict, J: int) -> IdentityResult:
    n = case["n"]
    num = distribution_polynomial(GroupDescriptor.symmetric(n), [("des", "t")])
    lhs = _series(J, lambda j: (j + 1) ** n)
    return series_identity_check(lhs, num, [(ONE - Poly.var("t")) ** (n + 1)])


def _carlitz_like(stat: str) -> Callable[[dict, int], IdentityResult]:
    def check(case: dict, J: int) -> IdentityResult:
        n = case["n"]
        num = distribution_polynomial(GroupDescriptor.symmetric(n), [("des", "t"), (stat, "q")])
        lhs = _series(J, lambda j: q_int(j + 1) ** n)
        return series_identity_check(lhs, num, [pochhammer(n + 1)])
    return check


def _check_macmahon(case: dict, J: int) -> IdentityResult:
    alpha = case["alpha"]
    n = sum(alpha)
    num = distribution_polynomial(WordFamily("multiset", alpha), [("des", "t"), ("maj", "q")])

    def coeff(j: int) -> Poly:
        out = ONE
        for a in alpha:
            out = out * q_binomial(j + a, a)
        return out

    return series_identity_check(_series(J, coeff), num, [pochhammer(n + 1)])


def _complete_homogeneous(variables: Sequence[Poly], n: int) -> Poly:
    """``h_n`` of the given monomials."""
    h = [ONE] + [ZERO] * n
    for x in variables:
        powers = [ONE]
        for _ in range(n):
            powers.append(powers[-1] * x)
        h = [sum((h[d - e] * powers[e] for e in range(d + 1)), ZERO) for d in range(n + 1)]
    return h[n]


def _check_garsia_gessel(case: dict, J: int) -> IdentityResult:
    n = case["n"]
    S = GroupDescriptor.symmetric(n)
    plain = distribution_polynomial(S, [("des", "t1"), ("ides", "t2"), ("maj", "q1"), ("imaj", "q2")])
    co = distribution_polynomial(S, [("des", "t1"), ("ides", "t2"), ("comaj", "q1"), ("icomaj", "q2")])
    # complement-reverse keeps des, ides and swaps maj/comaj, imaj/icomaj
    for g in enumerate_group(S):
        h = complement_reverse(g)
        pairs = [("des", "des"), ("ides", "ides"), ("maj", "comaj"), ("imaj", "icomaj")]
        for a, b in pairs:
            if statistic(g, a) != statistic(h, b):
                return _fail(n=n, element=format_element(g), statistic=a)
    if plain != co:
        return _fail(n=n, bridge="A_n != A_n^co")
    terms = []
    for i in range(J + 1):
        for j in range(J + 1):
            xs = [Poly.monomial(1, q1=k, q2=l) for k in range(i + 1) for l in range(j + 1)]
            terms.append(({"t1": i, "t2": j}, _complete_homogeneous(xs, n)))
    lhs = series_from_terms(terms, {"t1": J, "t2": J})
    dens = [pochhammer(n + 1, "t1", "q1"), pochhammer(n + 1, "t2", "q2")]
    res = series_identity_check(lhs, co, dens)
    if not res.ok:
        return res
    return series_identity_check(lhs, plain, dens)


# ---------------------------------------------------------------------------
# signed multisets and B_n


def _signed_omega(kind: str, a: int, j: int) -> Poly:
    """The single-letter order q-polynomial summed over the number of negatives."""
    out = ZERO
    for k in range(a + 1):
        if kind == "A":
            out = out + q_multichoose(j + 1, k) * q_multichoose(j + 1, a - k)
        elif kind == "B":
            out = out + q_multichoose(j, k) * q_multichoose(j + 1, a - k)
        else:
            out = out + q_multichoose(j, k) * q_multichoose(j, a - k) * Poly.var("q", a - k)
    return out


_SIGNED_STATS = {"A": ("desA", "maj"), "B": ("desB", "maj"), "aug": ("ades", "amaj")}


def _signed_sum(kind: str) -> Callable[[dict, int], IdentityResult]:
    def check(case: dict, J: int) -> IdentityResult:
        alpha = case["alpha"]
        d, m = _SIGNED_STATS[kind]
        num = distribution_polynomial(WordFamily("signedMultiset", alpha), [(d, "t"), (m, "q")])

        def coeff(j: int) -> Poly:
            out = ONE
            for a in alpha:
                out = out * _signed_omega(kind, a, j)
            return out

        return series_identity_check(_series(J, coeff), num, [pochhammer(sum(alpha) + 1)])
    return check


def _flag_factor(kind: str, a: int, j: int) -> Poly:
    if kind == "A":
        return q_multichoose(2 * j + 2, a)
    if kind == "B":
        return q_multichoose(2 * j + 1, a)
    return Poly.var("q", a) * q_multichoose(2 * j, a)


def _substituted_omega(kind: str, a: int, j: int) -> Poly:
    """Signed omega with ``q -> q^2`` and each negative letter weighted by ``q``."""
    out = ZERO
    for k in range(a + 1):
        if kind == "A":
            base = q_multichoose(j + 1, k) * q_multichoose(j + 1, a - k)
        elif kind == "B":
            base = q_multichoose(j, k) * q_multichoose(j + 1, a - k)
        else:
            base = q_multichoose(j, k) * q_multichoose(j, a - k) * Poly.var("q", a - k)
        out = out + base.scale_exponent("q", 2) * Poly.var("q", k)
    return out


_FLAG_STATS = {"A": ("desA", "fmaj"), "B": ("desB", "fmaj"), "aug": ("ades", "famaj")}


def _mult_flag(kind: str) -> Callable[[dict, int], IdentityResult]:
    def check(case: dict, J: int) -> IdentityResult:
        alpha = case["alpha"]
        for a in alpha:
            for j in range(J + 1):
                if _substituted_omega(kind, a, j) != _flag_factor(kind, a, j):
                    return _fail(substitution_lemma={"alpha_i": a, "j": j})
        d, m = _FLAG_STATS[kind]
        num = distribution_polynomial(WordFamily("signedMultiset", alpha), [(d, "t"), (m, "q")])

        def coeff(j: int) -> Poly:
            out = ONE
            for a in alpha:
                out = out * _flag_factor(kind, a, j)
            return out

        return series_identity_check(_series(J, coeff), num, [pochhammer(sum(alpha) + 1, step=2)])
    return check


def _bn_flag(kind: str) -> Callable[[dict, int], IdentityResult]:
    def check(case: dict, J: int) -> IdentityResult:
        n = case["n"]
        d, m = _FLAG_STATS[kind]
        num = distribution_polynomial(GroupDescriptor.hyperoctahedral(n), [(d, "t"), (m, "q")])
        if kind == "A":
            coeff = lambda j: q_int(2 * j + 2) ** n
        elif kind == "B":
            coeff = lambda j: q_int(2 * j + 1) ** n
        else:
            coeff = lambda j: Poly.var("q", n) * q_int(2 * j) ** n
        return series_identity_check(_series(J, coeff), num, [pochhammer(n + 1, step=2)])
    return check


# ---------------------------------------------------------------------------
# colored groups


def _colored_omega(r: int, a: int, j: int) -> Poly:
    out = ZERO
    for L in _weak_compositions(a, r):
        term = q_multichoose(j + 1, L[0]) * Poly.var("z0", L[0])
        for k in range(1, r):
            term = term * q_multichoose(j, L[k]) * Poly.monomial(1, q=L[k], **{f"z{k}": L[k]})
        out = out + term
    return out


def _check_colored_mult(case: dict, J: int) -> IdentityResult:
    r, alpha = case["r"], case["alpha"]
    stats = [("des", "t"), ("maj", "q")] + [(f"N{k}", f"z{k}") for k in range(r)]
    num = distribution_polynomial(WordFamily("coloredMultiset", alpha, r), stats)

    def coeff(j: int) -> Poly:
        out = ONE
        for a in alpha:
            out = out * _colored_omega(r, a, j)
        return out

    return series_identity_check(_series(J, coeff), num, [pochhammer(sum(alpha) + 1)])


def _colored_mult_cases(p: IdentityParams) -> list[dict]:
    rs = [p.r] if p.r is not None else [1, 2, 3]
    alphas = [tuple(p.alpha)] if p.alpha is not None else _compositions(4)
    if p.n is not None and p.alpha is None:
        alphas = [a for a in _compositions(p.n) if sum(a) == p.n]
    return [{"r": r, "alpha": a} for r in rs for a in alphas]


def _check_colored_des_maj(case: dict, J: int) -> IdentityResult:
    r, n = case["r"], case["n"]
    num = colored_eulerian(r, n, with_maj=True)
    lhs = _series(J, lambda j: (ONE + Poly.var("q") * q_int(j) * r) ** n)
    return series_identity_check(lhs, num, [pochhammer(n + 1)])


def _check_colored_carlitz(case: dict, J: int) -> IdentityResult:
    r = case["r"]
    if "alpha" in case:
        alpha = case["alpha"]
        fam: Family = WordFamily("coloredMultiset", alpha, r)

        def coeff(j: int) -> Poly:
            out = ONE
            for a in alpha:
                out = out * q_binomial(r * j + a, a)
            return out
        n = sum(alpha)
    else:
        n = case["n"]
        fam = GroupDescriptor.colored(r, n)
        coeff = lambda j: q_int(r * j + 1) ** n
    num = distribution_polynomial(fam, [("des", "t"), ("fmaj", "q")])
    return series_identity_check(_series(J, coeff), num, [pochhammer(n + 1, step=r)])


def _colored_carlitz_cases(p: IdentityParams) -> list[dict]:
    if p.alpha is not None:
        rs = [p.r] if p.r is not None else [1, 2, 3]
        return [{"r": r, "alpha": tuple(p.alpha)} for r in rs]
    out = _rn_cases([1, 2, 3, 4], [1, 2, 3])(p)
    if p.n is None:
        rs = [p.r] if p.r is not None else [2, 3]
        out += [{"r": r, "alpha": a} for r in rs for a in ((2,), (2, 1), (1, 2))]
    return out


def _check_worpitzky_q(case: dict, J: int) -> IdentityResult:
    r, n = case["r"], case["n"]
    C = colored_eulerian(r, n, with_maj=True)
    for j in range(J + 1):
        lhs = (ONE + Poly.var("q") * q_int(j) * r) ** n
        rhs = sum((_coeff_t(C, k) * q_binomial(j + n - k, n) for k in range(n + 1)), ZERO)
        if lhs != rhs:
            return _fail(r=r, n=n, j=j, lhs=lhs.to_text(), rhs=rhs.to_text())
    return IdentityResult(True)


def _check_recurrence_q(case: dict, J: int) -> IdentityResult:
    r, n = case["r"], case["n"]
    C = colored_eulerian(r, n, with_maj=True)
    prev = colored_eulerian(r, n - 1, with_maj=True)
    q = Poly.var("q")
    if _coeff_t(C, 0) != ONE:
        return _fail(r=r, n=n, k=0, lhs=_coeff_t(C, 0).to_text(), rhs="1")
    for k in range(1, n + 1):
        rhs = ((ONE + q * q_int(k) * r) * _coeff_t(prev, k)
               + (Poly.var("q", k) * q_int(n - k) * r + Poly.var("q", n) * (r - 1))
               * _coeff_t(prev, k - 1))
        lhs = _coeff_t(C, k)
        if lhs != rhs:
            return _fail(r=r, n=n, k=k, lhs=lhs.to_text(), rhs=rhs.to_text())
    return IdentityResult(True)


def _check_recurrence_t(case: dict, J: int) -> IdentityResult:
    r, n = case["r"], case["n"]
    C = colored_eulerian(r, n)
    prev = colored_eulerian(r, n - 1)
    t = Poly.var("t")
    rhs = (ONE + t * (r * n - 1)) * prev + t * (ONE - t) * prev.derivative("t") * r
    if C != rhs:
        return _fail(r=r, n=n, lhs=C.to_text(), rhs=rhs.to_text())
    return IdentityResult(True)


def _check_worpitzky_plain(case: dict, J: int) -> IdentityResult:
    r, n = case["r"], case["n"]
    C = colored_eulerian(r, n)
    lhs = _series(J, lambda j: (r * j + 1) ** n)
    res = series_identity_check(lhs, C, [(ONE - Poly.var("t")) ** (n + 1)])
    if not res.ok:
        return res
    return steingrimsson_recurrence(r, n)


def steingrimsson_recurrence(r: int, n: int) -> IdentityResult:
    """``C_{r,n,k} = (rk+1) C_{r,n-1,k} + (r(n+1) - (rk+1)) C_{r,n-1,k-1}`` at ``q = 1``."""
    C = colored_eulerian(r, n)
    prev = colored_eulerian(r, n - 1)

    def c(p: Poly, k: int) -> int:
        return p.coefficient(t=k).constant() if k >= 0 else 0

    if c(C, 0) != 1:
        return _fail(r=r, n=n, k=0, lhs=c(C, 0), rhs=1)
    for k in range(1, n + 1):
        rhs = (r * k + 1) * c(prev, k) + (r * (n + 1) - (r * k + 1)) * c(prev, k - 1)
        if c(C, k) != rhs:
            return _fail(r=r, n=n, k=k, lhs=c(C, k), rhs=rhs)
    return IdentityResult(True)


# ---------------------------------------------------------------------------
# maj / comaj swap on zig-zag posets


def _check_swap(case: dict, J: int) -> IdentityResult:
    n = case["n"]
    sub = {"t": Poly.monomial(1, t=1, q=n), "q": Poly.var("q", -1)}
    perms = list(enumerate_group(GroupDescriptor.symmetric(n))) if n <= 3 else [
        Permutation(tuple(range(1, n + 1)))]
    for pi in perms:
        for I in legal_index_sets("plain", n, "zig"):
            P = build_zigzag("plain", sorted(I), pi)
            ext = linear_extensions(P)
            a = Poly.lift(sum((Poly.monomial(1, t=statistic(s, "des"), q=statistic(s, "maj"))
                               for s in ext), ZERO))
            co = sum((Poly.monomial(1, t=statistic(s, "des"), q=statistic(s, "comaj"))
                      for s in ext), ZERO)
            if co.substitute(sub) != a:
                return _fail(n=n, pi=format_element(pi), I=sorted(I), lhs=a.to_text(),
                             rhs=co.substitute(sub).to_text())
    return IdentityResult(True)


# ---------------------------------------------------------------------------
# catalog


CATALOG: dict[str, CatalogEntry] = {
    "eulerian": CatalogEntry("eulerian", _n_cases(range(0, 5)), _check_eulerian),
    "carlitz": CatalogEntry("carlitz", _n_cases(range(0, 5)), _carlitz_like("maj")),
    "fake-carlitz": CatalogEntry("fake-carlitz", _n_cases(range(0, 5)), _carlitz_like("comaj")),
    "macmahon": CatalogEntry("macmahon", _alpha_cases(6), _check_macmahon),
    "garsia-gessel": CatalogEntry("garsia-gessel", _n_cases(range(0, 4)), _check_garsia_gessel,
                                  GARSIA_GESSEL_J),
    "signed-desA": CatalogEntry("signed-desA", _alpha_cases(6), _signed_sum("A")),
    "signed-desB": CatalogEntry("signed-desB", _alpha_cases(6), _signed_sum("B")),
    "signed-aug": CatalogEntry("signed-aug", _alpha_cases(6), _signed_sum("aug")),
    "mult-fmajA": CatalogEntry("mult-fmajA", _alpha_cases(6), _mult_flag("A")),
    "mult-fmajB": CatalogEntry("mult-fmajB", _alpha_cases(6), _mult_flag("B")),
    "mult-famaj": CatalogEntry("mult-famaj", _alpha_cases(6), _mult_flag("aug")),
    "Bn-desa-fmaj": CatalogEntry("Bn-desa-fmaj", _n_cases(range(1, 4)), _bn_flag("A")),
    "Bn-desb-fmaj": CatalogEntry("Bn-desb-fmaj", _n_cases(range(1, 4)), _bn_flag("B")),
    "Bn-ades-famaj": CatalogEntry("Bn-ades-famaj", _n_cases(range(1, 4)), _bn_flag("aug")),
    "colored-mult": CatalogEntry("colored-mult", _colored_mult_cases, _check_colored_mult),
    "colored-des-maj": CatalogEntry("colored-des-maj", _rn_cases([1, 2, 3, 4], [1, 2, 3]),
                                    _check_colored_des_maj),
    "colored-carlitz": CatalogEntry("colored-carlitz", _colored_carlitz_cases,
                                    _check_colored_carlitz),
    "colored-worpitzky-q": CatalogEntry("colored-worpitzky-q", _rn_cases([1, 2, 3], [1, 2, 3]),
                                        _check_worpitzky_q),
    "colored-recurrence-q": CatalogEntry("colored-recurrence-q", _rn_cases([1, 2, 3], [1, 2, 3, 4]),
                                         _check_recurrence_q),
    "colored-recurrence-t": CatalogEntry("colored-recurrence-t",
                                         _rn_cases([1, 2, 3, 4], [1, 2, 3, 4]), _check_recurrence_t),
    "worpitzky-colored-plain": CatalogEntry("worpitzky-colored-plain",
                                            _rn_cases([1, 2, 3, 4], [1, 2, 3, 4]),
                                            _check_worpitzky_plain),
    "maj-comaj-swap": CatalogEntry("maj-comaj-swap", _n_cases(range(1, 5)), _check_swap),
}

IDENTITY_IDS = tuple(CATALOG)


def check_identity(name: str, params: IdentityParams | None = None) -> IdentityReport:
    """Run one catalog entry over its cases; stop at the first failing case."""
    if name not in CATALOG:
        raise InvalidInput(f"unknown identity {name!r}; choose from {', '.join(IDENTITY_IDS)}")
    params = params or IdentityParams()
    entry = CATALOG[name]
    J = params.J if params.J is not None else entry.default_J
    if J < 0:
        raise InvalidInput("truncation J must be nonnegative")
    cases = entry.cases(params)
    start = time.perf_counter()
    witness = None
    passed = True
    for case in cases:
        res = entry.check(case, J)
        if not res.ok:
            passed = False
            witness = {"case": _jsonable_case(case), **(res.witness or {})}
            break
    elapsed = (time.perf_counter() - start) * 1000
    shown = {k: v for k, v in (("n", params.n), ("r", params.r),
                               ("alpha", list(params.alpha) if params.alpha else None))
             if v is not None}
    shown["J"] = J
    return IdentityReport(name, shown, passed, witness, elapsed, len(cases))


def _jsonable_case(case: dict) -> dict:
    return {k: list(v) if isinstance(v, tuple) else v for k, v in case.items()}


def check_all(params: IdentityParams | None = None) -> list[IdentityReport]:
    return [check_identity(name, params) for name in IDENTITY_IDS]


# ---------------------------------------------------------------------------
# tables


TABLES = {"C3": 3, "C4": 4}


@dataclass
class TableRow:
    n: int
    coefficients: list[int]

    def text(self) -> str:
        parts = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            parts.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
        return " + ".join(parts)


@dataclass
class Table:
    name: str
    r: int
    rows: list[TableRow] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [f"n   C_{{{self.r},n}}(t)"]
        lines += [f"{row.n}   {row.text()}" for row in self.rows]
        return "\n".join(lines)

    def to_csv(self) -> str:
        width = max(len(row.coefficients) for row in self.rows)
        lines = ["n," + ",".join(f"t^{k}" for k in range(width))]
        for row in self.rows:
            cs = row.coefficients + [0] * (width - len(row.coefficients))
            lines.append(f"{row.n}," + ",".join(str(c) for c in cs))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"table": self.name, "r": self.r,
                "rows": [{"n": row.n, "coefficients": row.coefficients, "text": row.text()}
                         for row in self.rows]}


def table(name: str, ns: Sequence[int] = (1, 2, 3, 4)) -> Table:
    if name not in TABLES:
        raise InvalidInput(f"unknown table {name!r}; choose from {', '.join(TABLES)}")
    r = TABLES[name]
    rows = [TableRow(n, [int(c) for c in colored_eulerian(r, n).coefficients("t")]) for n in ns]
    return Table(name, r, rows)


# ---------------------------------------------------------------------------
# counterexamples


@dataclass
class CounterexampleReport:
    id: str
    reproduced: bool
    witness: dict
    elapsed_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.reproduced

    def to_json(self) -> dict:
        return {"id": self.id, "params": {}, "pass": self.reproduced,
                "witness": self.witness, "elapsed_ms": round(self.elapsed_ms, 3)}


def _text(x: AlgebraElement) -> str:
    return x.to_text()


def _coeffs(x: AlgebraElement) -> dict[str, int]:
    return {format_element(g): int(c) for g, c in x.coefficients.items()}


def _colored_des_with(g: ColoredPermutation, left: int | None, right: int) -> int:
    """Descents with ``0_left`` prepended (if given) and ``0_right`` appended."""
    from .perm_core import colored_des_set
    lpad = None if left is None else (0, left)
    return len(colored_des_set(g.word, right=(0, right), left=lpad))


def _aug_descent_set_B3() -> dict:
    d = GroupDescriptor.hyperoctahedral(3)
    G = get_group(d)
    a = fiber_element(G, "aDesSet", (0,))
    b = fiber_element(G, "aDesSet", (0, 1))
    prod = a * b
    target = fiber_element(G, "aDesSet", (1, 3))
    support = sorted(format_element(g) for g in prod.support())
    missing = sorted(format_element(g) for g in target.support() if prod.coefficient(g) == 0)
    reproduced = (
        [format_element(g) for g in a.support()] == ["-3,-2,-1"]
        and sorted(format_element(g) for g in b.support()) == ["-1,-3,-2", "-2,-3,-1"]
        and _coeffs(prod) == {"2,1,3": 1, "3,1,2": 1}
        and "2,-1,3" in missing
    )
    return {"reproduced": reproduced, "left": _text(a), "right": _text(b),
            "product": _text(prod), "product_support": support,
            "support_descent_sets": sorted({str(list(statistic(g, "aDesSet", d)))
                                            for g in prod.support()}),
            "missing_from_fiber": missing}


def _colored_descent_set_G22() -> dict:
    d = GroupDescriptor.colored(2, 2)
    G = get_group(d)
    a = fiber_element(G, "DesColoredSet", (2,))
    b = fiber_element(G, "DesColoredSet", (1, 2))
    prod = a * b
    fiber = fiber_element(G, "DesColoredSet", (2,))
    absent = sorted(format_element(g) for g in fiber.support() if prod.coefficient(g) == 0)
    reproduced = (
        sorted(format_element(g) for g in a.support()) == ["1^0 2^1", "1^1 2^1", "2^0 1^1"]
        and [format_element(g) for g in b.support()] == ["2^1 1^1"]
        and _coeffs(prod) == {"1^0 2^1": 1, "2^0 1^0": 1, "2^0 1^1": 1}
        and absent == ["1^1 2^1"]
    )
    return {"reproduced": reproduced, "left": _text(a), "right": _text(b),
            "product": _text(prod), "absent_from_fiber": absent}


# anchor cases: (left pad color, right pad color, basis index used, printed product)
_ANCHOR_CASES = {
    "case1": (0, 2, 0, {"1^0 2^0": 3, "1^0 2^1": 2, "1^1 2^0": 2, "1^1 2^1": 3,
                        "2^0 1^0": 1, "2^0 1^1": 2, "2^1 1^0": 2, "2^1 1^1": 1},
              ("1^0 2^0", "1^0 2^1")),
    "case2": (1, 2, 0, {"1^0 2^0": 1}, ("1^0 2^0", None)),
    "case3": (1, 1, 1, {"1^0 2^0": 3, "1^0 2^1": 2, "1^1 2^0": 2, "1^1 2^1": 3,
                        "2^0 1^0": 1, "2^0 1^1": 2, "2^1 1^0": 2, "2^1 1^1": 1},
              ("1^0 2^0", "1^1 2^0")),
}


def _colored_anchorings_G22() -> dict:
    d = GroupDescriptor.colored(2, 2)
    G = get_group(d)
    out: dict = {"reproduced": True, "cases": {}}
    for name, (left, right, idx, printed, (x, y)) in _ANCHOR_CASES.items():
        values = [_colored_des_with(g, left, right) for g in G.elements]
        basis = {v: AlgebraElement.from_values(G, [1 if w == v else 0 for w in values])
                 for v in sorted(set(values))}
        C = basis[idx]
        prod = C * C
        coeffs = _coeffs(prod)
        same_fiber = y is None or values[G.index[G.parse(x)]] == values[G.index[G.parse(y)]]
        separated = (coeffs.get(x, 0) != coeffs.get(y, 0)) if y is not None else (
            sum(1 for v in values if v == values[G.index[G.parse(x)]]) > 1)
        ok = coeffs == printed and same_fiber and separated
        out["cases"][name] = {
            "anchors": [f"0^{left}", f"0^{right}"],
            "basis": {str(v): _text(e) for v, e in basis.items()},
            "square": f"C_{idx}^2",
            "product": _text(prod),
            "compared": [x, y] if y is not None else [x],
            "coefficients": [coeffs.get(x, 0)] + ([coeffs.get(y, 0)] if y else []),
        }
        out["reproduced"] = out["reproduced"] and ok
    # the standard anchoring 0_0 ... 0_1 is closed
    out["standard_closed"] = closure_check(G, "des").closed
    out["reproduced"] = out["reproduced"] and out["standard_closed"]
    return out


_C1E1 = {"1234": 3, "1243": 2, "1324": 1, "1342": 3, "1423": 2, "2134": 2, "2314": 2,
         "2341": 3, "2413": 3, "2431": 1, "3124": 3, "3142": 1, "3241": 2, "3412": 3,
         "3421": 2, "4123": 3, "4132": 2, "4213": 1, "4231": 3, "4312": 2}


def _cyclic_right_module_S4() -> dict:
    G = get_group(GroupDescriptor.symmetric(4))
    C1 = fiber_element(G, "cdes", 1)
    E1 = fiber_element(G, "des", 1)
    prod = C1 * E1
    coeffs = _coeffs(prod)
    pair = ("1243", "1324")
    cd = [statistic(G.parse(p), "cdes") for p in pair]
    reproduced = (coeffs == _C1E1 and cd == [2, 2]
                  and all(E1.coefficient(p) == 1 for p in pair)
                  and coeffs["1243"] != coeffs["1324"])
    return {"reproduced": reproduced, "C1": _text(C1), "product": _text(prod),
            "compared": list(pair), "coefficients": [coeffs["1243"], coeffs["1324"]],
            "cdes": cd}


def _des_maj_S5() -> dict:
    r5 = closure_check(GroupDescriptor.symmetric(5), "jointDesMaj")
    r4 = closure_check(GroupDescriptor.symmetric(4), "jointDesMaj")
    return {"reproduced": (not r5.closed) and r4.closed and r5.witness is not None,
            "S4_closed": r4.closed, "S5": r5.to_json()}


COUNTEREXAMPLES: dict[str, Callable[[], dict]] = {
    "aug-descent-set-B3": _aug_descent_set_B3,
    "colored-descent-set-G22": _colored_descent_set_G22,
    "colored-anchorings-G22": _colored_anchorings_G22,
    "cyclic-right-module-S4": _cyclic_right_module_S4,
    "des-maj-S5": _des_maj_S5,
}
COUNTEREXAMPLE_IDS = tuple(COUNTEREXAMPLES)


def run_counterexample(name: str) -> CounterexampleReport:
    if name not in COUNTEREXAMPLES:
        raise InvalidInput(f"unknown counterexample {name!r}; "
                           f"choose from {', '.join(COUNTEREXAMPLE_IDS)}")
    start = time.perf_counter()
    w = COUNTEREXAMPLES[name]()
    reproduced = bool(w.pop("reproduced"))
    return CounterexampleReport(name, reproduced, w, (time.perf_counter() - start) * 1000)
