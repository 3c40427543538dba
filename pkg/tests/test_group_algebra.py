from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from descalg.group_algebra import (
    COEFFICIENT_IDENTITIES,
    FUNCTIONAL_EQUATIONS,
    IDEMPOTENT_KINDS,
    MIXED_IDEAL_EQUATIONS,
    AlgebraElement,
    all_ones,
    closure_check,
    coefficient_identity_check,
    fiber_basis,
    fiber_element,
    functional_equation_check,
    get_group,
    idempotent_family,
    identity_element,
    in_fiber_span,
    search_left_ideal_witness,
    structure_polynomial,
    verify_idempotent_family,
)
from descalg.perm_core import (
    GroupDescriptor,
    InvalidInput,
    compose,
    enumerate_group,
    format_element,
    statistic,
)

S = GroupDescriptor.symmetric
B = GroupDescriptor.hyperoctahedral
G = GroupDescriptor.colored
F = Fraction


def names(x: AlgebraElement) -> set[str]:
    return {format_element(g) for g in x.support()}


def brute_product(d, a: dict, b: dict) -> Counter:
    """Convolution by composing every pair of supported elements."""
    out: Counter = Counter()
    for (s, cs), (t, ct) in itertools.product(a.items(), b.items()):
        out[compose(s, t, d)] += cs * ct
    return out


# --- fibers and products -------------------------------------------------------------


def test_fiber_examples():
    assert names(fiber_element(S(4), "cdes", 1)) == {"1234", "2341", "3412", "4123"}
    assert names(fiber_element(S(3), "des", 0)) == {"123"}
    sizes = [len(fiber_element(B(2), "desB", v).support()) for v in (0, 1, 2)]
    assert sizes == [1, 6, 1]
    assert fiber_element(S(3), "des", 5).is_zero()


@pytest.mark.parametrize("d,s", [(S(4), "des"), (S(4), "cdes"), (B(3), "fdes"), (G(3, 2), "des")], ids=str)
def test_fibers_sum_to_all_ones(d, s):
    Gr = get_group(d)
    total = AlgebraElement.zero(Gr)
    for x in fiber_basis(Gr, s).values():
        total = total + x
    assert total == all_ones(Gr)


def test_E1_squared_in_S3():
    d = S(3)
    E = {v: fiber_element(d, "des", v) for v in (0, 1, 2)}
    assert E[1] * E[1] == E[0].scale(4) + E[1].scale(2) + E[2].scale(4)
    ones = {g: 1 for g in enumerate_group(d) if statistic(g, "des") == 1}
    brute = brute_product(d, ones, ones)
    assert {format_element(g): c for g, c in brute.items()} == {
        format_element(g): int((E[1] * E[1]).coefficient(g)) for g in (E[1] * E[1]).support()}


C1E1_PRINTED = {"1234": 3, "1243": 2, "1324": 1, "1342": 3, "1423": 2, "2134": 2, "2314": 2,
                "2341": 3, "2413": 3, "2431": 1, "3124": 3, "3142": 1, "3241": 2, "3412": 3,
                "3421": 2, "4123": 3, "4132": 2, "4213": 1, "4231": 3, "4312": 2}


def test_C1_E1_in_S4():
    prod = fiber_element(S(4), "cdes", 1) * fiber_element(S(4), "des", 1)
    assert {format_element(g): int(c) for g, c in prod.coefficients.items()} == C1E1_PRINTED


def test_identity_is_neutral():
    Gr = get_group(B(2))
    x = AlgebraElement.from_dict(Gr, {"-2,1": 3, "1,2": F(1, 2)})
    assert identity_element(Gr) * x == x == x * identity_element(Gr)


def test_descriptor_mismatch():
    with pytest.raises(ValueError):
        fiber_element(S(3), "des", 0) * fiber_element(S(4), "des", 0)
    with pytest.raises(InvalidInput):
        AlgebraElement.from_dict(get_group(S(3)), {"1234": 1})


coeffs = st.lists(st.integers(-3, 3), min_size=6, max_size=6)


@given(coeffs, coeffs, coeffs)
def test_algebra_laws_on_S3(a, b, c):
    Gr = get_group(S(3))
    x, y, z = (AlgebraElement.from_values(Gr, v) for v in (a, b, c))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z


def test_convolution_matches_brute_force_on_G32():
    d = G(3, 2)
    Gr = get_group(d)
    a = {g: i % 3 - 1 for i, g in enumerate(Gr.elements)}
    b = {g: (i * 7) % 5 - 2 for i, g in enumerate(Gr.elements)}
    prod = AlgebraElement.from_dict(Gr, a) * AlgebraElement.from_dict(Gr, b)
    brute = brute_product(d, a, b)
    assert all(prod.coefficient(g) == brute[g] for g in Gr.elements)


# --- closure ----------------------------------------------------------------------


def test_closure_examples():
    assert closure_check(S(4), "des").closed
    rep = closure_check(S(5), "jointDesMaj")
    assert not rep.closed
    assert closure_check(B(3), "aDesSet").closed is False


def test_closure_witness_is_verifiable():
    d = S(5)
    Gr = get_group(d)
    rep = closure_check(Gr, "jointDesMaj")
    (j, k), (e1, e2) = rep.witness["fibers"], rep.witness["elements"]
    prod = fiber_element(Gr, "jointDesMaj", tuple(j)) * fiber_element(Gr, "jointDesMaj", tuple(k))
    g1, g2 = Gr.parse(e1), Gr.parse(e2)
    assert Gr.stat("jointDesMaj")[Gr.index[g1]] == Gr.stat("jointDesMaj")[Gr.index[g2]]
    assert [int(prod.coefficient(g1)), int(prod.coefficient(g2))] == rep.witness["coefficients"]
    assert prod.coefficient(g1) != prod.coefficient(g2)


def test_structure_constants_of_S3():
    rep = closure_check(S(3), "des")
    consts = rep.structure_constants
    assert (consts[(1, 1, 0)], consts[(1, 1, 1)], consts[(1, 1, 2)]) == (4, 2, 4)


# --- structure polynomials and idempotents ----------------------------------------


def test_phi_on_S2():
    Gr = get_group(S(2))
    sp = structure_polynomial(Gr, "phi")
    assert sp.coefficients[0].is_zero()
    assert sp.coefficients[1] == AlgebraElement.from_dict(Gr, {"12": F(1, 2), "21": F(-1, 2)})
    assert sp.coefficients[2] == AlgebraElement.from_dict(Gr, {"12": F(1, 2), "21": F(1, 2)})
    e = idempotent_family(Gr, "e")
    assert e == [sp.coefficients[1], sp.coefficients[2]]


@pytest.mark.parametrize("d,kind", [
    (S(4), "phi"), (S(4), "psiCyclic"), (B(3), "phiB"), (B(3), "phiA_Bn"), (B(3), "psiAug"),
    (B(2), "zetaEven"), (B(2), "zetaOdd"), (G(3, 2), "phiColored"),
], ids=str)
def test_structure_polynomial_matches_direct_sum(d, kind):
    sp = structure_polynomial(d, kind)
    n = d.n
    assert sp.degree <= n
    for x in range(0, 2 * n + 3):
        assert sp(x) == sp.direct(x)


def test_phi_at_one_is_descent_free_fiber():
    for n in range(1, 5):
        sp = structure_polynomial(S(n), "phi")
        assert sp(1) == fiber_element(S(n), "des", 0)


def test_zeta_odd_at_one():
    sp = structure_polynomial(B(2), "zetaOdd")
    assert names(sp(1)) == {"1,2"}
    assert sp(1) == fiber_element(B(2), "desB", 0)


@pytest.mark.parametrize("n", range(2, 6))
def test_cyclic_low_coefficients_vanish(n):
    sp = structure_polynomial(S(n), "psiCyclic")
    assert sp.coefficients[0].is_zero() and sp.coefficients[1].is_zero()


def test_G53_c0_printed():
    Gr = get_group(G(5, 3))
    c0 = idempotent_family(Gr, "colored")[0]
    D = {v: fiber_element(Gr, "des", v) for v in range(4)}
    want = (D[0].scale(504) + D[1].scale(-36) + D[2].scale(24) + D[3].scale(-66)).scale(F(1, 750))
    assert c0 == want


def test_B2_flag_family_printed():
    Gr = get_group(B(2))
    Fb = [fiber_element(Gr, "fdes", v) for v in range(4)]

    def comb(*cs):
        out = AlgebraElement.zero(Gr)
        for c, x in zip(cs, Fb):
            out = out + x.scale(c)
        return out.scale(F(1, 8))

    fam = idempotent_family(Gr, "flag")
    assert fam == [comb(3, -1, -1, 3), comb(2, 2, -2, -2), comb(2, -2, 2, -2), comb(1, 1, 1, 1)]


FAMILY_GROUPS = {
    "e": [S(n) for n in range(1, 6)],
    "cyclic": [S(n) for n in range(2, 6)],
    "a": [B(n) for n in range(1, 4)],
    "b": [B(n) for n in range(1, 4)],
    "bhat": [B(n) for n in range(1, 4)],
    "flag": [B(n) for n in range(1, 4)],
    "colored": [G(2, 2), G(2, 3), G(3, 2), G(3, 3), G(4, 2), G(5, 3)],
}


@pytest.mark.parametrize("kind,d", [(k, d) for k, ds in FAMILY_GROUPS.items() for d in ds], ids=str)
def test_idempotent_families(kind, d):
    fam = idempotent_family(d, kind)
    rep = verify_idempotent_family(fam, IDEMPOTENT_KINDS[kind][4])
    assert rep.ok, rep.failures
    assert rep.members == (2 * d.n if kind == "flag" else len(fam))


def test_idempotent_negative_control():
    fam = idempotent_family(S(4), "e")
    bad = [fam[0].scale(2)] + fam[1:]
    rep = verify_idempotent_family(bad)
    assert not rep.ok
    assert {"pair": [0, 0], "kind": "idempotent"} in rep.failures


def test_idempotent_family_rejects_wrong_group():
    with pytest.raises(InvalidInput):
        idempotent_family(S(3), "a")
    with pytest.raises(InvalidInput):
        idempotent_family(S(3), "nope")


@pytest.mark.parametrize("n", [2, 3])
def test_type_a_b_cross_relations(n):
    a = idempotent_family(B(n), "a")      # a_1 .. a_n
    b = idempotent_family(B(n), "b")      # b_0 .. b_n
    zero = AlgebraElement.zero(a[0].group)
    for i in range(1, n + 1):
        ai = a[i - 1]
        for jj in range(0, n + 1):
            if jj == i:
                assert ai * b[jj] == ai == b[jj] * ai
            else:
                assert ai * b[jj] == zero == b[jj] * ai


@pytest.mark.parametrize("n", [3, 4])
def test_eulerian_cyclic_relations(n):
    e = idempotent_family(S(n), "e")      # e_1 .. e_n
    c = idempotent_family(S(n), "cyclic")  # c_2 .. c_n
    zero = AlgebraElement.zero(e[0].group)
    for i in range(1, n + 1):
        for jj in range(2, n + 1):
            prod = e[i - 1] * c[jj - 2]
            assert prod == (c[jj - 2] if i == jj else zero)


# --- functional equations -------------------------------------------------------------


FE_CASES = (
    [("phi", S(n)) for n in range(1, 5)]
    + [(name, B(n)) for name in ("typeB", "typeA", "aug") + MIXED_IDEAL_EQUATIONS for n in range(1, 4)]
    + [(name, B(n)) for name in ("flag-even-even", "flag-even-odd", "flag-odd-even", "flag-odd-odd")
       for n in range(1, 4)]
    + [("colored", G(r, n)) for r in range(1, 4) for n in range(1, 4)]
    + [("cyclic-left", S(4)), ("cyclic-right", S(4))]
)


@pytest.mark.parametrize("name,d", FE_CASES, ids=str)
def test_functional_equations(name, d):
    rep = functional_equation_check(d, name)
    assert rep.ok, rep.to_json()


def test_cyclic_right_module_fails_on_S4():
    rep = functional_equation_check(S(4), "cyclic-right")
    assert not rep.passed and not rep.expected
    assert rep.witness is not None


def test_functional_equation_catalog_names():
    assert set(MIXED_IDEAL_EQUATIONS) <= set(FUNCTIONAL_EQUATIONS)
    with pytest.raises(InvalidInput):
        functional_equation_check(S(3), "typeB")


# --- coefficient identities -------------------------------------------------------------


COEFF_GROUPS = {"symmetric": [S(3), S(4)], "hyperoctahedral": [B(2), B(3)], "colored": [G(2, 2), G(3, 2)]}


@pytest.mark.parametrize("name", sorted(COEFFICIENT_IDENTITIES))
def test_coefficient_identities(name):
    ident = COEFFICIENT_IDENTITIES[name]
    for d in COEFF_GROUPS[ident.family]:
        for j, k in itertools.product(range(3), repeat=2):
            ok, witness = coefficient_identity_check(name, d, j, k)
            assert ok, (str(d), j, k, witness)


def test_coefficient_identity_examples():
    assert coefficient_identity_check("symmetric", S(3), 1, 2)[0]
    assert coefficient_identity_check("flag", B(2), 2, 1)[0]


# --- one-sided ideals ---------------------------------------------------------------------


def test_left_ideal_witness_B2():
    Gr = get_group(B(2))
    w = search_left_ideal_witness(Gr, "desA", "ades")
    assert w is not None
    X = fiber_element(Gr, *w["left_fiber"])
    Y = fiber_element(Gr, *w["right_fiber"])
    prod = X * Y
    assert not in_fiber_span(prod, "desA")
    g1, g2 = (Gr.parse(e) for e in w["elements"])
    assert statistic(g1, "desA") == statistic(g2, "desA")
    assert [str(prod.coefficient(g)) for g in (g1, g2)] == w["coefficients"]
    assert w["coefficients"][0] != w["coefficients"][1]
