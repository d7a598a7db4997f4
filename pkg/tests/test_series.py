from fractions import Fraction

import pytest
from hypothesis import given

from ccomb.series import (
    DivisorVanishes,
    FSeries,
    additive_convolve,
    coefficient_formula,
    compose_F,
    compositions,
    eta_from_moments,
    eta_from_psi,
    eta_series,
    moment_series,
    moments_from_eta,
    moments_from_psi,
    moments_to_F,
    moments_to_G,
    F_to_moments,
    multiplicative_convolve,
    point_mass_moments,
    psi_from_eta,
    psi_from_moments,
    series_csv_rows,
)

from conftest import eta_sequences, moment_sequences

EDGE = moment_series((1, 0, 1, 0, 1))


def test_moment_series_validation():
    with pytest.raises(ValueError):
        moment_series((2, 0))
    with pytest.raises(ValueError):
        moment_series(())
    with pytest.raises(ValueError):
        FSeries("G", (0, 1))
    with pytest.raises(ValueError):
        FSeries("weird", (1,))


def test_point_mass_moments():
    assert point_mass_moments(0, 3).coeffs == (1, 0, 0, 0)
    assert point_mass_moments(1, 3).coeffs == (1, 1, 1, 1)
    assert point_mass_moments(Fraction(1, 2), 2).coeffs == (
        1,
        Fraction(1, 2),
        Fraction(1, 4),
    )


def test_F_of_point_mass_at_zero_is_z():
    f = moments_to_F(point_mass_moments(0, 4))
    assert f.coeffs == (0, 0, 0, 0)


def test_F_of_edge_moments():
    # the walk generating series of a single edge inverts to z - 1/z
    f = moments_to_F(EDGE)
    assert f.coeffs == (0, -1, 0, 0)
    assert F_to_moments(f).coeffs == EDGE.coeffs


def test_G_series_kind():
    g = moments_to_G(EDGE)
    assert g.kind == "G" and g.order == 4
    assert g.coefficient(2) == 1


@given(moment_sequences(order=10))
def test_F_roundtrip(m):
    assert F_to_moments(moments_to_F(m)).coeffs == m.coeffs


def test_compose_edge_with_itself_gives_comb_moments():
    f = moments_to_F(EDGE)
    composed = compose_F(f, f)
    assert F_to_moments(composed).coeffs == (1, 0, 2, 0, 5)


@given(moment_sequences(order=8), moment_sequences(order=8))
def test_compose_identity_element(m1, m2):
    ident = moments_to_F(point_mass_moments(0, 8))
    f = moments_to_F(m1)
    assert compose_F(f, ident).coeffs == f.coeffs
    assert compose_F(ident, f).coeffs == f.coeffs


def test_additive_absorbing_element():
    delta0 = point_mass_moments(0, 6)
    for kind in ("monotone", "boolean", "orthogonal"):
        assert additive_convolve(kind, EDGE_6(), delta0).coeffs == EDGE_6().coeffs
    assert (
        additive_convolve("c-monotone", EDGE_6(), delta0, delta0).coeffs
        == EDGE_6().coeffs
    )


def EDGE_6():
    return moment_series((1, 0, 1, 0, 1, 0, 1))


def test_additive_monotone_matches_comb_walks():
    m = additive_convolve("monotone", EDGE, EDGE)
    assert m.coeffs == (1, 0, 2, 0, 5)


@given(moment_sequences(order=8), moment_sequences(order=8))
def test_cmonotone_additive_collapse(m1, m2):
    assert (
        additive_convolve("c-monotone", m1, m2, m2).coeffs
        == additive_convolve("monotone", m1, m2).coeffs
    )


def test_additive_requires_nu2():
    with pytest.raises(ValueError):
        additive_convolve("c-monotone", EDGE, EDGE)


def test_psi_eta_examples():
    zero = psi_from_moments(moment_series((1, 0, 0, 0)))
    assert eta_from_psi(zero).coeffs == (0, 0, 0)
    ones = point_mass_moments(1, 5)
    assert eta_from_moments(ones).coeffs == (1, 0, 0, 0, 0)


@given(moment_sequences(order=10))
def test_psi_eta_roundtrip(m):
    p = psi_from_moments(m)
    assert psi_from_eta(eta_from_psi(p)).coeffs == p.coeffs
    assert moments_from_psi(p).coeffs == m.coeffs
    assert moments_from_eta(eta_from_moments(m)).coeffs == m.coeffs


@given(eta_sequences(order=8), eta_sequences(order=8))
def test_multiplicative_cmonotone_collapses_to_monotone(h1, h2):
    try:
        got = multiplicative_convolve("c-monotone", h1, h2, h2)
    except DivisorVanishes:
        return
    assert got.coeffs == multiplicative_convolve("monotone", h1, h2).coeffs


@given(eta_sequences(order=8), eta_sequences(order=8))
def test_multiplicative_delta1_collapses_to_orthogonal(h1, h_nu):
    delta1 = eta_from_moments(point_mass_moments(1, 8))
    try:
        got = multiplicative_convolve("c-monotone", h1, delta1, h_nu)
        expect = multiplicative_convolve("orthogonal", h1, h_nu)
    except DivisorVanishes:
        return
    assert got.coeffs == expect.coeffs


@given(eta_sequences(order=8), eta_sequences(order=8), eta_sequences(order=8))
def test_multiplicative_decomposition_law(h1, h2, h_nu):
    try:
        orth = multiplicative_convolve("orthogonal", h1, h_nu)
    except DivisorVanishes:
        return
    boxed = multiplicative_convolve("boolean", orth, h2)
    direct = multiplicative_convolve("c-monotone", h1, h2, h_nu)
    assert direct.coeffs == boxed.coeffs


def test_divisor_vanishes():
    zero = eta_series((0, 0, 0))
    h = eta_series((1, 0, 0))
    with pytest.raises(DivisorVanishes):
        multiplicative_convolve("orthogonal", h, zero)
    with pytest.raises(DivisorVanishes):
        multiplicative_convolve("c-monotone", h, h, zero)
    with pytest.raises(ValueError):
        multiplicative_convolve("c-monotone", h, h)


def test_multiplicative_handles_vanishing_first_coefficient():
    # a divisor with no linear term but nonzero higher terms is fine
    h1 = eta_series((1, 1, 0, 0))
    h2 = eta_series((1, 0, 0, 0))
    h_nu = eta_series((0, 3, 0, 0))
    got = multiplicative_convolve("c-monotone", h1, h2, h_nu)
    expect = tuple(
        coefficient_formula("c-monotone", n, h1.coeffs, h2.coeffs, h_nu.coeffs)
        for n in range(1, 5)
    )
    assert got.coeffs == expect


def test_compositions():
    assert sorted(compositions(4, 2)) == [(1, 3), (2, 2), (3, 1)]
    assert list(compositions(3, 3)) == [(1, 1, 1)]
    assert list(compositions(2, 3)) == []


def test_coefficient_formula_base_cases():
    n1 = (2, 5, 7)
    n2 = (3, 1, 4)
    n_nu = (1, 2, 6)
    assert coefficient_formula("orthogonal", 1, n1, n2) == 2
    assert coefficient_formula("boolean", 1, n1, n2) == 6
    # the empty-composition convention keeps the r = 1 term, so the first
    # monotone and c-monotone coefficients carry the second factor
    assert coefficient_formula("monotone", 1, n1, n2) == 6
    assert coefficient_formula("c-monotone", 1, n1, n2, n_nu) == 6
    assert coefficient_formula("monotone", 2, n1, n2) == 2 * 1 + 5 * 9
    assert coefficient_formula("c-monotone", 2, n1, n2, n_nu) == 2 * 1 + 5 * 1 * 3


@given(eta_sequences(order=8), eta_sequences(order=8), eta_sequences(order=8))
def test_coefficient_formula_matches_engine(h1, h2, h_nu):
    engines = {
        "monotone": multiplicative_convolve("monotone", h1, h2),
        "boolean": multiplicative_convolve("boolean", h1, h2),
        "c-monotone": multiplicative_convolve("c-monotone", h1, h2, h_nu)
        if any(h_nu.coeffs)
        else None,
        "orthogonal": multiplicative_convolve("orthogonal", h1, h2)
        if any(h2.coeffs)
        else None,
    }
    for kind, engine in engines.items():
        if engine is None:
            continue
        for n in range(1, 9):
            assert (
                coefficient_formula(kind, n, h1.coeffs, h2.coeffs, h_nu.coeffs)
                == engine.coeffs[n - 1]
            ), (kind, n)


def test_csv_rows():
    rows = series_csv_rows((1, Fraction(3, 2)), first_index=0)
    assert rows[0] == "n,fraction,decimal"
    assert rows[1] == "0,1,1.0"
    assert rows[2] == "1,3/2,1.5"
