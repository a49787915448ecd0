import itertools
from math import comb

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from koszulmod import LieAlgebra, builtin_lie, lower_central_series, validate_lie
from koszulmod.lie import TABLE_KEYS, free_two_step, heisenberg, nilpotency_class
from koszulmod.polycore import rational


def structure_tensor(L):
    return [[[sp.Rational(int(c.numerator), int(c.denominator)) for c in L.bracket_basis(i, j)]
             for j in range(L.dim)] for i in range(L.dim)]


def lcs_oracle(L, N):
    """γ_k dims with sympy column spaces, straight from the structure constants."""
    C = structure_tensor(L)
    n = L.dim
    span = sp.eye(n)
    dims = [n]
    for _ in range(N - 1):
        cols = []
        for a in range(span.cols):
            v = span[:, a]
            for i in range(n):
                w = sp.zeros(n, 1)
                for j in range(n):
                    if v[j] != 0:
                        w += v[j] * sp.Matrix(C[j][i])
                cols.append(w)
        M = sp.Matrix.hstack(*cols) if cols else sp.zeros(n, 0)
        basis = M.columnspace()
        span = sp.Matrix.hstack(*basis) if basis else sp.zeros(n, 0)
        dims.append(len(basis))
    return dims


@pytest.mark.parametrize("key", TABLE_KEYS + ["sol2", "h(1)", "h(2)", "f(3,2)", "f(4,2)"])
def test_catalog_algebras_satisfy_jacobi(key):
    assert validate_lie(builtin_lie(key)).ok


@pytest.mark.parametrize("key", TABLE_KEYS + ["h(2)", "f(3,2)", "sol2"])
def test_lower_central_series_matches_oracle(key):
    L = builtin_lie(key)
    assert lower_central_series(L, 6) == lcs_oracle(L, 6)


def test_nilpotency():
    assert nilpotency_class(builtin_lie("L5,7")) == 4
    assert nilpotency_class(heisenberg(3)) == 2
    assert nilpotency_class(builtin_lie("sol2")) is None


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_free_two_step_dimensions(m):
    L = free_two_step(m)
    assert L.dim == m + comb(m, 2)
    assert lower_central_series(L, 3) == [m + comb(m, 2), comb(m, 2), 0]


def two_step_algebras():
    """Random algebras with brackets landing in a central complement: always Lie."""
    @st.composite
    def build(draw):
        a = draw(st.integers(1, 3))
        b = draw(st.integers(1, 2))
        n = a + b
        brackets = {}
        for i, j in itertools.combinations(range(a), 2):
            vec = [0] * a + draw(st.lists(st.integers(-2, 2), min_size=b, max_size=b))
            brackets[(i, j)] = [rational(c) for c in vec]
        return LieAlgebra(n, [f"v{k}" for k in range(n)], brackets)
    return build()


@given(two_step_algebras())
def test_two_step_algebras_are_lie(L):
    assert validate_lie(L).ok
    assert lower_central_series(L, 3)[2] == 0


@settings(max_examples=40)
@given(st.lists(st.integers(-1, 1), min_size=9, max_size=9))
def test_jacobi_detection_matches_brute_force(coeffs):
    # arbitrary antisymmetric brackets on a 3-dimensional space
    vecs = [coeffs[0:3], coeffs[3:6], coeffs[6:9]]
    L = LieAlgebra(3, ["a", "b", "c"], {(0, 1): [rational(c) for c in vecs[0]],
                                          (0, 2): [rational(c) for c in vecs[1]],
                                          (1, 2): [rational(c) for c in vecs[2]]})
    C = structure_tensor(L)

    def br(u, v):
        out = sp.zeros(3, 1)
        for i in range(3):
            for j in range(3):
                if u[i] and v[j]:
                    out += u[i] * v[j] * sp.Matrix(C[i][j])
        return out

    e = [sp.eye(3)[:, k] for k in range(3)]
    jac = br(e[0], br(e[1], e[2])) + br(e[1], br(e[2], e[0])) + br(e[2], br(e[0], e[1]))
    assert validate_lie(L).ok == (jac == sp.zeros(3, 1))


def test_json_round_trip():
    L = builtin_lie("L5,6")
    again = LieAlgebra.from_json(L.to_json())
    assert again.brackets == L.brackets
    assert again.weights == L.weights


def test_json_rejects_bad_entries():
    with pytest.raises(ValueError):
        LieAlgebra.from_json({"dim": 2, "brackets": {"1,2": ["1"]}})
    with pytest.raises(ValueError):
        LieAlgebra.from_json({"dim": 2, "brackets": {"1,1": ["1", "0"]}})


def test_unknown_key():
    with pytest.raises(KeyError):
        builtin_lie("L9,9")
