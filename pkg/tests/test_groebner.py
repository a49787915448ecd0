from math import comb

import pytest
import sympy as sp
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from koszulmod import (
    GREVLEX, LEX, FPModule, FreeVector, HilbertSeries, Ideal, Polynomial, annihilator, exterior_power,
    fitting_ideal, graded_dims_truncated, groebner_basis, hilbert_series, intersect_ideals, minimalize,
    minors_ideal, syzygies,
)
from koszulmod.groebner import normal_form, parse_hilbert, s_pairs_reduce_to_zero

import oracles
from strategies import VARS2, VARS3, homogeneous_polynomials, nonzero_polynomials

X = sp.symbols(VARS3)
slow = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def as_set(polys, symbols=X):
    return {sp.expand(oracles.to_sympy(p, symbols)) for p in polys}


@slow
@given(st.lists(nonzero_polynomials(max_degree=2, max_terms=3, coeff=3), min_size=1, max_size=3))
def test_reduced_basis_matches_sympy_grevlex(gens):
    ours = groebner_basis(gens, GREVLEX)
    theirs = sp.groebner([oracles.to_sympy(g, X) for g in gens], *X, order="grevlex", domain=sp.QQ)
    assert as_set(ours) == {sp.expand(e) for e in theirs.exprs}
    assert s_pairs_reduce_to_zero(ours, GREVLEX)


@slow
@given(st.lists(nonzero_polynomials(variables=VARS2, max_degree=2, max_terms=3, coeff=3), min_size=1, max_size=3))
def test_reduced_basis_matches_sympy_lex(gens):
    Y = sp.symbols(VARS2)
    ours = groebner_basis(gens, LEX)
    theirs = sp.groebner([oracles.to_sympy(g, Y) for g in gens], *Y, order="lex", domain=sp.QQ)
    assert as_set(ours, Y) == {sp.expand(e) for e in theirs.exprs}


@slow
@given(st.lists(nonzero_polynomials(max_degree=2, max_terms=3), min_size=1, max_size=2),
       nonzero_polynomials(max_degree=1, max_terms=2))
def test_membership_of_combinations(gens, f):
    I = Ideal(gens)
    combo = gens[0] * f
    if len(gens) > 1:
        combo = combo + gens[1] * gens[1]
    assert I.contains(combo)
    assert I.contains_ideal(Ideal([g * f for g in gens]))


@slow
@given(st.lists(homogeneous_polynomials(degree=1), min_size=1, max_size=2),
       st.lists(homogeneous_polynomials(degree=2), min_size=1, max_size=2))
def test_intersection_against_elimination(a, b):
    ours = intersect_ideals([Ideal(a), Ideal(b)])
    t = sp.Symbol("t")
    G = sp.groebner([t * oracles.to_sympy(f, X) for f in a] + [(1 - t) * oracles.to_sympy(g, X) for g in b],
                    t, *X, order="lex", domain=sp.QQ)
    eliminated = [e for e in G.exprs if t not in e.free_symbols]
    ref = sp.groebner(eliminated, *X, order="grevlex", domain=sp.QQ) if eliminated else None
    got = sp.groebner([oracles.to_sympy(g, X) for g in ours.generators], *X, order="grevlex", domain=sp.QQ)
    assert ref is not None and list(got.exprs) == list(ref.exprs)


def test_lex_basis_is_not_graded():
    # y^2 + x has lex leading term x, so x*y reduces to -y^3
    gens = [Polynomial.parse(s, VARS2) for s in ("x*y", "y^2 + x")]
    assert set(groebner_basis(gens, LEX)) == {Polynomial.parse(s, VARS2) for s in ("x + y^2", "y^3")}


@slow
@given(st.lists(nonzero_polynomials(max_degree=2, max_terms=2, coeff=3), min_size=2, max_size=3))
def test_syzygies_are_kernel_and_contain_koszul_pairs(gens):
    cols = [FreeVector([g]) for g in gens]
    syz = syzygies(cols)
    for s in syz:
        total = Polynomial.zero(VARS3)
        for c, g in zip(s, gens):
            total = total + c * g
        assert total.is_zero()
    # each Koszul pair g_j e_i - g_i e_j lies in the span of the computed syzygies
    basis = groebner_basis(syz, GREVLEX) if syz else []
    n = len(gens)
    for i in range(n):
        for j in range(i + 1, n):
            comps = [Polynomial.zero(VARS3)] * n
            comps[i], comps[j] = gens[j], -gens[i]
            v = FreeVector(comps)
            assert normal_form(v, basis).is_zero()


def test_syzygies_of_twisted_cubic_matrix():
    # 2x2 minors of [[x, y, z], [y, z, w]]-style matrix in three variables have two linear syzygies
    f = [Polynomial.parse(s, VARS3) for s in ("x*z - y^2", "x*y - z^2", "y*z - x^2")]
    syz = syzygies([FreeVector([g]) for g in f])
    linear = [s for s in syz if all(c.is_zero() or c.degree() <= 1 for c in s)]
    assert len(linear) >= 2


@pytest.mark.parametrize("gens", [
    [(2, 0, 0), (1, 1, 0)],
    [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
    [(3, 0, 0), (0, 2, 1), (1, 1, 1)],
    [(0, 0, 2)],
])
def test_hilbert_series_of_monomial_quotients(gens):
    I = Ideal([Polynomial({g: 1}, VARS3) for g in gens])
    series = hilbert_series(FPModule.cyclic(I))
    assert series.expansion(8) == oracles.monomial_quotient_dims(gens, 3, 8)


@slow
@given(st.lists(homogeneous_polynomials(degree=2), min_size=1, max_size=3))
def test_hilbert_function_matches_linear_algebra(gens):
    """dim (S/I)_d = dim S_d - rank of the degree-d multiples of the generators."""
    I = Ideal(gens)
    got = hilbert_series(FPModule.cyclic(I)).expansion(4)
    for d in range(5):
        rows = oracles.homogeneous_ideal_part(gens, VARS3, d)
        assert got[d] == comb(d + 2, 2) - (sp.Matrix(rows).rank() if rows else 0)


def test_graded_dims_truncated_of_local_quotient():
    # k[x]/(x - x^2): the unit 1 - x makes the local ring k[x]_(x)/(x) one-dimensional
    I = Ideal.parse(["x - x^2"], ("x",))
    assert graded_dims_truncated(FPModule.cyclic(I), 4) == [1, 0, 0, 0, 0]


def test_minors_against_sympy_determinants():
    rows = [["x", "y", "z"], ["y", "z", "x"]]
    M = [[Polynomial.parse(e, VARS3) for e in r] for r in rows]
    ideal = minors_ideal(M, 2)
    sym = sp.Matrix([[sp.sympify(e, locals=dict(zip(VARS3, X))) for e in r] for r in rows])
    dets = [sym.extract([0, 1], list(c)).det() for c in ((0, 1), (0, 2), (1, 2))]
    ref = sp.groebner(dets, *X, order="grevlex", domain=sp.QQ)
    got = sp.groebner([oracles.to_sympy(g, X) for g in ideal.generators], *X, order="grevlex", domain=sp.QQ)
    assert list(got.exprs) == list(ref.exprs)
    assert minors_ideal(M, 3).is_zero()
    assert minors_ideal(M, 0).is_unit()


def test_fitting_ideals_of_cyclic_module():
    I = Ideal.parse(["x^2", "y"], VARS2)
    M = FPModule.cyclic(I)
    assert fitting_ideal(M, 0) == I
    assert fitting_ideal(M, 1).is_unit()


def test_exterior_power_of_free_module():
    F = FPModule.free(4, VARS2)
    for s in range(1, 5):
        assert exterior_power(F, s).ngens == comb(4, s)
        assert not exterior_power(F, s).relations


def test_annihilator_of_direct_sum_is_intersection():
    I = Ideal.parse(["x"], VARS2)
    J = Ideal.parse(["y^2"], VARS2)
    rels = [FreeVector([g, Polynomial.zero(VARS2)]) for g in I.generators]
    rels += [FreeVector([Polynomial.zero(VARS2), g]) for g in J.generators]
    M = FPModule.from_vectors(rels, 2, VARS2)
    assert annihilator(M) == I.intersect(J)


def test_minimalize_drops_redundant_generators():
    # coker of [[1, 0], [0, x]]: the unit entry kills a generator
    one, zero, x = (Polynomial.parse(s, VARS2) for s in ("1", "0", "x"))
    M = FPModule.from_vectors([FreeVector([one, zero]), FreeVector([zero, x])], 2, VARS2)
    m = minimalize(M)
    assert m.ngens == 1
    assert m.as_cyclic_ideal() == Ideal.parse(["x"], VARS2)


def test_module_json_round_trip():
    I = Ideal.parse(["x^2 - y", "x*y"], VARS2)
    M = FPModule.cyclic(I)
    again = FPModule.from_json(M.to_json())
    assert again.as_cyclic_ideal() == I


@pytest.mark.parametrize("text, expansion", [
    ("1+2t", [1, 2, 0, 0]),
    ("t/(1-t)^2", [0, 1, 2, 3]),
    ("(2-t)/(1-t)^3", [2, 5, 9, 14]),
    ("3/(1-t)^2", [3, 6, 9, 12]),
])
def test_parse_hilbert(text, expansion):
    assert parse_hilbert(text).expansion(3) == expansion


def test_hilbert_series_reduction():
    a = HilbertSeries.from_dict({0: 1, 1: -1}, 3)
    b = HilbertSeries.from_dict({0: 1}, 2)
    assert a == b
    assert b.dimension == 2 and b.multiplicity == 1


def test_ideal_operations():
    m = Ideal.maximal(VARS2)
    assert m.power(2) == Ideal.parse(["x^2", "x*y", "y^2"], VARS2)
    assert (m + Ideal.unit(VARS2)).is_unit()
    assert Ideal.parse(["x*y"], VARS2).colon(Polynomial.parse("x", VARS2)) == Ideal.parse(["y"], VARS2)
    assert Ideal.parse(["x^2", "y"], VARS2).is_homogeneous()
