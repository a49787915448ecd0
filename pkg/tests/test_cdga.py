import itertools
from math import comb

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from koszulmod import (
    CDGA, CDGAError, SimplicialComplex, builtin_cdga, builtin_lie, catalog_keys, ce_complex, cohomology_algebra,
    cohomology_quadratic_data, coproduct, exterior_cdga, hirsch_extension, os_braid_truncation, quadratic_cdga,
    tensor_product, truncate, validate_cdga,
)
from koszulmod.cdga import betti_numbers, h1_variable_names, stanley_reisner_exterior
from koszulmod.lie import TABLE_KEYS
from koszulmod.polycore import ONE


def ce_betti_oracle(L) -> list[int]:
    """Betti numbers of Λ g* with (dω)(x_0..x_k) = Σ_{i<j} (-1)^{i+j} ω([x_i,x_j], x_0..x̂_i..x̂_j..x_k)."""
    n = L.dim
    C = [[[sp.Rational(int(c.numerator), int(c.denominator)) for c in L.bracket_basis(i, j)]
          for j in range(n)] for i in range(n)]
    subsets = {k: list(itertools.combinations(range(n), k)) for k in range(n + 1)}

    def form_on(omega, args):
        # the basis form e^S on a list of vectors is the minor on rows S
        M = sp.Matrix([[a[s] for a in args] for s in omega])
        return M.det()

    def unit(i):
        v = [0] * n
        v[i] = 1
        return v

    ranks = {}
    for k in range(n):
        rows = []
        for T in subsets[k + 1]:
            row = []
            for S in subsets[k]:
                val = 0
                xs = [unit(t) for t in T]
                for i, j in itertools.combinations(range(k + 1), 2):
                    br = [C[T[i]][T[j]][m] for m in range(n)]
                    rest = [xs[m] for m in range(k + 1) if m not in (i, j)]
                    val += (-1) ** (i + j) * form_on(S, [br] + rest)
                row.append(val)
            rows.append(row)
        ranks[k] = sp.Matrix(rows).rank() if rows and rows[0] else 0
    return [comb(n, k) - ranks.get(k, 0) - (ranks.get(k - 1, 0) if k else 0) for k in range(n + 1)]


@pytest.mark.parametrize("key", catalog_keys())
def test_catalog_models_are_valid(key):
    rep = validate_cdga(builtin_cdga(key))
    assert rep.ok, rep.violations


@pytest.mark.parametrize("key", TABLE_KEYS + ["sol2", "h(1)", "f(3,2)"])
def test_ce_betti_numbers_match_oracle(key):
    L = builtin_lie(key)
    A = ce_complex(L, cap=L.dim)
    assert betti_numbers(A, include_top=True) == ce_betti_oracle(L)


def test_heisenberg_betti():
    assert betti_numbers(builtin_cdga("ce:h(1)"), include_top=True) == [1, 2, 2, 1]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_exterior_dims(n):
    A = exterior_cdga(n)
    assert A.dims() == [comb(n, k) for k in range(n + 1)]
    assert betti_numbers(A) == A.dims()


@pytest.mark.parametrize("n", [3, 4, 5])
def test_braid_orlik_solomon_dims(n):
    # Poincaré polynomial Π_{j<n} (1 + j t)
    poly = [1]
    for j in range(1, n):
        poly = [a + j * b for a, b in zip(poly + [0], [0] + poly)]
    assert os_braid_truncation(n).dims() == poly[:3]


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(["exterior:1", "exterior:2", "ce:sol2", "ce:h(1)", "ce:L3,2"]),
       st.sampled_from(["exterior:1", "exterior:2", "ce:sol2"]))
def test_tensor_product_kunneth(a, b):
    A, B = builtin_cdga(a), builtin_cdga(b)
    C = tensor_product(A, B)
    assert validate_cdga(C).ok
    ba, bb = betti_numbers(A, include_top=True), betti_numbers(B, include_top=True)
    want = [sum(ba[i] * bb[k - i] for i in range(k + 1) if i < len(ba) and k - i < len(bb))
            for k in range(C.cap + 1)]
    assert betti_numbers(C, include_top=True) == want[:C.cap + 1]


def test_coproduct_dims():
    C = coproduct(exterior_cdga(2), exterior_cdga(1))
    assert validate_cdga(C).ok
    assert C.dims()[:2] == [1, 3]
    assert C.dims()[2] == 1


def test_hirsch_extension_recovers_heisenberg():
    B = exterior_cdga(2, names=["e1", "f1"])
    C = hirsch_extension(B, [ONE], "t")
    assert validate_cdga(C).ok
    assert betti_numbers(C, include_top=True) == [1, 2, 2, 1]


def test_hirsch_extension_needs_a_cocycle():
    B = builtin_cdga("ce:sol2")
    with pytest.raises(CDGAError):
        hirsch_extension(B, [ONE, ONE], "t")


def test_truncate():
    A = builtin_cdga("ce:L5,6")
    T = truncate(A, 1)
    assert T.cap == 2 and T.dims() == A.dims()[:3]
    with pytest.raises(CDGAError):
        truncate(T, 4)
    # a genuine algebra is zero above its top degree
    E = truncate(exterior_cdga(2), 4)
    assert E.dims() == [1, 2, 1, 0, 0, 0] and validate_cdga(E).ok


def test_cohomology_algebra_of_formal_model_is_itself():
    A = builtin_cdga("os-braid:4")
    H = cohomology_algebra(A, include_top=True)
    assert H.dims() == A.dims()


def test_quadratic_data_round_trip():
    A = builtin_cdga("ce:L5,4")
    Q = cohomology_quadratic_data(A)
    H = quadratic_cdga(Q)
    assert validate_cdga(H).ok
    assert H.dim(1) == len(Q.V)
    assert h1_variable_names(H) == Q.variables


def test_h1_names_follow_positions():
    assert h1_variable_names(builtin_cdga("ce:L5,8")) == ["x1", "x2", "x3"]
    assert h1_variable_names(builtin_cdga("ce:sol2")) == ["x"]


def test_json_round_trip():
    for key in ("ce:h(1)", "bibby:2", "exterior:3"):
        A = builtin_cdga(key)
        B = CDGA.from_json(A.to_json())
        assert B.dims() == A.dims()
        assert B.products == A.products
        assert [[dict(c) for c in cols] for cols in B.differential] == \
               [[dict(c) for c in cols] for cols in A.differential]


def test_malformed_json():
    with pytest.raises(CDGAError):
        CDGA.from_json({"basis": {}})


def test_simplicial_complex_faces():
    # two isolated vertices
    delta = SimplicialComplex.from_facets(2, [[1], [2]])
    assert delta.faces_of_dim(0) == [(1,), (2,)]
    assert delta.minimal_nonfaces() == [(1, 2)]
    A = stanley_reisner_exterior(delta)
    assert A.dims() == [1, 2, 0]


def test_unknown_model_key():
    with pytest.raises(KeyError):
        builtin_cdga("torus:3")
