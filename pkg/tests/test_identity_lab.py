from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from descalg.identity_lab import (
    COUNTEREXAMPLE_IDS,
    IDENTITY_IDS,
    IdentityParams,
    WordFamily,
    check_identity,
    colored_eulerian,
    distribution_polynomial,
    run_counterexample,
    steingrimsson_recurrence,
    table,
)
from descalg.perm_core import (
    GroupDescriptor,
    InvalidInput,
    complement_reverse,
    enumerate_group,
    enumerate_words,
    statistic,
)
from descalg.qpoly import Poly, pochhammer, q_int, series_from_terms, series_identity_check

S = GroupDescriptor.symmetric
B = GroupDescriptor.hyperoctahedral
G = GroupDescriptor.colored
t = Poly.var("t")
q = Poly.var("q")


def brute_distribution(elems, *fns) -> Poly:
    out = Poly()
    for g in elems:
        out = out + Poly.monomial(1, **{v: f(g) for v, f in fns})
    return out


# --- distribution polynomials -------------------------------------------------------


def test_distribution_examples():
    assert distribution_polynomial(S(2), [("des", "t")]) == 1 + t
    assert colored_eulerian(3, 3) == 1 + 60 * t + 93 * t**2 + 8 * t**3
    M = distribution_polynomial(WordFamily("multiset", (2, 1)), [("des", "t"), ("maj", "q")])
    assert M == 1 + t * q + t * q**2


def test_distribution_matches_brute_force():
    d = B(3)
    got = distribution_polynomial(d, [("desB", "t"), ("fmaj", "q")])
    want = brute_distribution(enumerate_group(d), ("t", lambda g: statistic(g, "desB")),
                              ("q", lambda g: 2 * statistic(g, "maj") + sum(v < 0 for v in g.word)))
    assert got == want


@pytest.mark.parametrize("r,n", [(1, 3), (2, 3), (3, 2), (4, 3)])
def test_colored_coefficients_sum_to_group_order(r, n):
    assert colored_eulerian(r, n).evaluate(t=1) == G(r, n).order


@pytest.mark.parametrize("n", range(1, 7))
def test_eulerian_symmetry(n):
    c = distribution_polynomial(S(n), [("des", "t")]).coefficients("t")
    assert c == c[::-1]


@pytest.mark.parametrize("n", range(0, 7))
def test_maj_comaj_equidistributed(n):
    a = distribution_polynomial(S(n), [("des", "t"), ("maj", "q")])
    b = distribution_polynomial(S(n), [("des", "t"), ("comaj", "q")])
    assert a == b


@pytest.mark.parametrize("r", range(1, 5))
def test_steingrimsson_recurrence(r):
    for n in range(1, 6):
        assert steingrimsson_recurrence(r, n).ok


def test_macmahon_all_ones_is_carlitz():
    for n in range(1, 5):
        M = distribution_polynomial(WordFamily("multiset", (1,) * n), [("des", "t"), ("maj", "q")])
        A = distribution_polynomial(S(n), [("des", "t"), ("maj", "q")])
        assert M == A
        assert check_identity("macmahon", IdentityParams(alpha=(1,) * n)).ok
        assert check_identity("carlitz", IdentityParams(n=n)).ok


@given(st.lists(st.integers(0, 2), min_size=1, max_size=3))
def test_word_distribution_total(alpha):
    fam = WordFamily("multiset", tuple(alpha))
    total = distribution_polynomial(fam, [("des", "t")]).evaluate(t=1)
    assert total == len(list(enumerate_words("multiset", alpha)))


# --- catalog ----------------------------------------------------------------------------


@pytest.mark.parametrize("name", IDENTITY_IDS)
def test_catalog_small_instances(name):
    if name in ("macmahon", "signed-desA", "signed-desB", "signed-aug",
                "mult-fmajA", "mult-fmajB", "mult-famaj"):
        params = IdentityParams(alpha=(2, 1))
    elif name == "colored-mult":
        params = IdentityParams(r=2, alpha=(1, 1))
    elif name.startswith("colored") or name == "worpitzky-colored-plain":
        params = IdentityParams(r=2, n=2)
    else:
        params = IdentityParams(n=2)
    rep = check_identity(name, params)
    assert rep.ok, rep.to_json()
    assert rep.cases >= 1


def test_carlitz_example_json():
    rep = check_identity("carlitz", IdentityParams(n=3))
    data = rep.to_json()
    assert data["pass"] is True and data["params"] == {"n": 3, "J": 6}
    assert set(data) == {"id", "params", "pass", "elapsed_ms"}


def test_worpitzky_q_example():
    assert check_identity("colored-worpitzky-q", IdentityParams(r=2, n=2)).ok


def test_recurrence_t_reproduces_table_rows():
    assert check_identity("colored-recurrence-t", IdentityParams(r=3)).ok
    assert colored_eulerian(3, 2) == 1 + 13 * t + 4 * t**2


def test_unknown_identity():
    with pytest.raises(InvalidInput):
        check_identity("nope")
    with pytest.raises(InvalidInput):
        check_identity("carlitz", IdentityParams(n=2, J=-1))


def test_perturbed_numerator_fails():
    n, J = 3, 6
    num = distribution_polynomial(S(n), [("des", "t"), ("maj", "q")])
    lhs = series_from_terms((({"t": j}, q_int(j + 1) ** n) for j in range(J + 1)), {"t": J})
    assert series_identity_check(lhs, num, [pochhammer(n + 1)])
    bad = series_identity_check(lhs, num + t**2, [pochhammer(n + 1)])
    assert not bad and bad.witness["exponent"] == {"t": 2}


def test_famaj_needs_the_q_power():
    """Without the q^n factor the B_2 (ades, famaj) series already fails at t^1."""
    n, J = 2, 4
    num = distribution_polynomial(B(n), [("ades", "t"), ("famaj", "q")])
    assert num == (q**2 * t + 2 * q**3 * t + q**4 * t + q**4 * t**2 + 2 * q**5 * t**2 + q**6 * t**2)
    plain = series_from_terms((({"t": j}, q_int(2 * j) ** n) for j in range(J + 1)), {"t": J})
    shifted = series_from_terms((({"t": j}, q**n * q_int(2 * j) ** n) for j in range(J + 1)), {"t": J})
    res = series_identity_check(plain, num, [pochhammer(n + 1, step=2)])
    assert not res and res.witness["exponent"] == {"t": 1}
    assert series_identity_check(shifted, num, [pochhammer(n + 1, step=2)])


def test_complement_reverse_bridge_for_garsia_gessel():
    for n in range(1, 5):
        for pi in enumerate_group(S(n)):
            s = complement_reverse(pi)
            assert (statistic(s, "des"), statistic(s, "maj"), statistic(s, "ides"), statistic(s, "imaj")) == (
                statistic(pi, "des"), statistic(pi, "comaj"), statistic(pi, "ides"), statistic(pi, "icomaj"))


# --- tables -------------------------------------------------------------------------------


PRINTED = {
    "C3": ["1 + 2t", "1 + 13t + 4t^2", "1 + 60t + 93t^2 + 8t^3", "1 + 251t + 1131t^2 + 545t^3 + 16t^4"],
    "C4": ["1 + 3t", "1 + 22t + 9t^2", "1 + 121t + 235t^2 + 27t^3", "1 + 620t + 3446t^2 + 1996t^3 + 81t^4"],
}


@pytest.mark.parametrize("name", ["C3", "C4"])
def test_tables(name):
    tab = table(name)
    assert [row.text() for row in tab.rows] == PRINTED[name]
    csv = tab.to_csv().splitlines()
    assert csv[0] == "n,t^0,t^1,t^2,t^3,t^4" and len(csv) == 5
    assert json.loads(json.dumps(tab.to_json()))["rows"][1]["text"] == PRINTED[name][1]


def test_table_row_sums():
    for name, r in (("C3", 3), ("C4", 4)):
        for row in table(name, ns=(1, 2)).rows:
            assert sum(row.coefficients) == G(r, row.n).order


# --- counterexamples ------------------------------------------------------------------------


@pytest.mark.parametrize("name", COUNTEREXAMPLE_IDS)
def test_counterexamples_reproduce(name):
    rep = run_counterexample(name)
    assert rep.ok, rep.to_json()


def test_aug_descent_set_witness():
    w = run_counterexample("aug-descent-set-B3").witness
    assert w["product_support"] == ["2,1,3", "3,1,2"]
    assert "2,-1,3" in w["missing_from_fiber"]


def test_colored_descent_set_witness():
    w = run_counterexample("colored-descent-set-G22").witness
    assert w["absent_from_fiber"] == ["1^1 2^1"]


def test_anchoring_case_one():
    w = run_counterexample("colored-anchorings-G22").witness
    assert w["cases"]["case1"]["coefficients"] == [3, 2]
    assert w["standard_closed"] is True


def test_cyclic_right_module_witness():
    w = run_counterexample("cyclic-right-module-S4").witness
    assert w["coefficients"] == [2, 1] and w["cdes"] == [2, 2]


def test_counterexample_json_is_stable():
    a = json.dumps({k: v for k, v in run_counterexample("colored-anchorings-G22").to_json().items()
                    if k != "elapsed_ms"}, sort_keys=True)
    b = json.dumps({k: v for k, v in run_counterexample("colored-anchorings-G22").to_json().items()
                    if k != "elapsed_ms"}, sort_keys=True)
    assert a == b


def test_unknown_counterexample():
    with pytest.raises(InvalidInput):
        run_counterexample("nope")


def test_signed_multiset_counts():
    for alpha in itertools.product(range(3), repeat=2):
        fam = WordFamily("signedMultiset", alpha)
        assert distribution_polynomial(fam, [("desB", "t")]).evaluate(t=1) == \
            len(list(enumerate_words("signedMultiset", alpha)))
