"""Finite-dimensional Lie algebras by structure constants, with a catalog of small examples.

Catalog conventions (basis x1..xd unless stated):

* ``L3,2``: [x1,x2]=x3
* ``L4,2``: [x1,x2]=x3 (x4 central)
* ``L4,3``: [x1,x2]=x3, [x1,x3]=x4
* ``L5,4``: [x1,x2]=x5, [x3,x4]=x5
* ``L5,5``: [x1,x2]=x3, [x1,x3]=x5, [x2,x4]=x5
* ``L5,6``: [x1,x2]=x3, [x1,x3]=x4, [x1,x4]=x5, [x2,x3]=x5
* ``L5,7``: [x1,x2]=x3, [x1,x3]=x4, [x1,x4]=x5
* ``L5,8``: [x1,x2]=x4, [x1,x3]=x5
* ``L5,9``: [x1,x2]=x3, [x1,x3]=x4, [x2,x3]=x5
* ``sol2``: basis x, y with [x,y]=y
* ``h(n)``: basis x1..xn, y1..yn, z with [xi,yi]=z
* ``f(m,2)``: free 2-step nilpotent on x1..xm, with y_ij = [xi,xj]
* ``abelian(n)``
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .polycore import ONE, ZERO, format_rational, rational


@dataclass
class LieAlgebra:
    dim: int
    basis: list[str]
    brackets: dict  # (i, j) with i < j -> list of coefficients
    weights: list[int] | None = None
    dual_names: list[str] | None = None
    name: str = ""
    provenance: str = ""

    def bracket_basis(self, i: int, j: int) -> list:
        if i == j:
            return [ZERO] * self.dim
        if i < j:
            v = self.brackets.get((i, j))
            return list(v) if v is not None else [ZERO] * self.dim
        v = self.brackets.get((j, i))
        return [-c for c in v] if v is not None else [ZERO] * self.dim

    def bracket(self, u: Sequence, v: Sequence) -> list:
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b or i == j:
                    continue
                w = self.bracket_basis(i, j)
                ab = a * b
                for k, c in enumerate(w):
                    if c:
                        out[k] += ab * c
        return out

    def unit(self, i: int) -> list:
        v = [ZERO] * self.dim
        v[i] = ONE
        return v

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "basis": list(self.basis),
            "brackets": {f"{i + 1},{j + 1}": [format_rational(c) for c in v]
                         for (i, j), v in sorted(self.brackets.items()) if any(v)},
        }
        if self.weights:
            out["weights"] = list(self.weights)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "LieAlgebra":
        dim = int(data["dim"])
        basis = list(data.get("basis") or [f"x{i + 1}" for i in range(dim)])
        brackets = {}
        for key, vec in data.get("brackets", {}).items():
            i, j = (int(s) - 1 for s in key.split(","))
            coeffs = [rational(c) for c in vec]
            if len(coeffs) != dim:
                raise ValueError(f"bracket {key} has {len(coeffs)} entries, expected {dim}")
            if i > j:
                i, j, coeffs = j, i, [-c for c in coeffs]
            if i == j:
                raise ValueError(f"bracket {key} pairs a basis element with itself")
            brackets[(i, j)] = coeffs
        weights = data.get("weights")
        return cls(dim, basis, brackets, list(weights) if weights else None, name=data.get("name", "custom"))


@dataclass
class LieReport:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate_lie(L: LieAlgebra) -> LieReport:
    """Check the Jacobi identity on every basis triple and compatibility of the grading."""
    bad = []
    for i, j, k in itertools.combinations(range(L.dim), 3):
        ei, ej, ek = L.unit(i), L.unit(j), L.unit(k)
        total = [a + b + c for a, b, c in zip(
            L.bracket(ei, L.bracket(ej, ek)),
            L.bracket(ej, L.bracket(ek, ei)),
            L.bracket(ek, L.bracket(ei, ej)))]
        if any(total):
            bad.append(("jacobi", L.basis[i], L.basis[j], L.basis[k]))
    if L.weights:
        for (i, j), v in L.brackets.items():
            for k, c in enumerate(v):
                if c and L.weights[k] != L.weights[i] + L.weights[j]:
                    bad.append(("grading", L.basis[i], L.basis[j], L.basis[k]))
    return LieReport(not bad, bad)



def lower_central_series(L: LieAlgebra, N: int) -> list[int]:
    """dims of γ_1 ⊇ γ_2 ⊇ ... ⊇ γ_N."""
    if N < 1:
        raise ValueError("N must be at least 1")
    current = [L.unit(i) for i in range(L.dim)]
    dims = [L.dim]
    for _ in range(N - 1):
        products = [L.bracket(u, L.unit(i)) for u in current for i in range(L.dim)]
        products = [p for p in products if any(p)]
        current = linalg.row_space_basis(products) if products else []
        dims.append(len(current))
    return dims


def nilpotency_class(L: LieAlgebra, limit: int = 50) -> int | None:
    dims = lower_central_series(L, limit)
    for c, d in enumerate(dims):
        if d == 0:
            return c
    return None


def _from_rules(basis: list[str], rules: dict, **meta) -> LieAlgebra:
    dim = len(basis)
    idx = {b: i for i, b in enumerate(basis)}
    brackets = {}
    for (a, b), target in rules.items():
        i, j = idx[a], idx[b]
        vec = [ZERO] * dim
        for name, c in (target.items() if isinstance(target, dict) else [(target, 1)]):
            vec[idx[name]] += rational(c)
        if i > j:
            i, j, vec = j, i, [-c for c in vec]
        brackets[(i, j)] = vec
    L = LieAlgebra(dim, basis, brackets, **meta)
    rep = validate_lie(L)
    if not rep.ok:
        raise ValueError(f"catalog entry {meta.get('name')} fails validation: {rep.violations}")
    return L


_DEGRAAF = {
    "L3,2": (3, {("x1", "x2"): "x3"}),
    "L4,2": (4, {("x1", "x2"): "x3"}),
    "L4,3": (4, {("x1", "x2"): "x3", ("x1", "x3"): "x4"}),
    "L5,4": (5, {("x1", "x2"): "x5", ("x3", "x4"): "x5"}),
    "L5,5": (5, {("x1", "x2"): "x3", ("x1", "x3"): "x5", ("x2", "x4"): "x5"}),
    "L5,6": (5, {("x1", "x2"): "x3", ("x1", "x3"): "x4", ("x1", "x4"): "x5", ("x2", "x3"): "x5"}),
    "L5,7": (5, {("x1", "x2"): "x3", ("x1", "x3"): "x4", ("x1", "x4"): "x5"}),
    "L5,8": (5, {("x1", "x2"): "x4", ("x1", "x3"): "x5"}),
    "L5,9": (5, {("x1", "x2"): "x3", ("x1", "x3"): "x4", ("x2", "x3"): "x5"}),
}

TABLE_KEYS = list(_DEGRAAF)

_TWO_STEP_WEIGHTS = {
    "L3,2": [1, 1, 2],
    "L4,2": [1, 1, 2, 1],
    "L5,4": [1, 1, 1, 1, 2],
    "L5,8": [1, 1, 1, 2, 2],
}

_PROVENANCE = "nilpotent Lie algebra of dimension at most 5, de Graaf classification"


def heisenberg(n: int) -> LieAlgebra:
    if n < 1:
        raise ValueError("n must be at least 1")
    basis = [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)] + ["z"]
    rules = {(f"x{i}", f"y{i}"): "z" for i in range(1, n + 1)}
    dual = [f"e{i}" for i in range(1, n + 1)] + [f"f{i}" for i in range(1, n + 1)] + ["g"]
    return _from_rules(basis, rules, weights=[1] * (2 * n) + [2], dual_names=dual,
                       name=f"h({n})", provenance="Heisenberg Lie algebra")


def free_two_step(m: int) -> LieAlgebra:
    if m < 2:
        raise ValueError("m must be at least 2")
    xs = [f"x{i}" for i in range(1, m + 1)]
    pairs = list(itertools.combinations(range(1, m + 1), 2))
    ys = [f"y{i}{j}" for i, j in pairs]
    rules = {(f"x{i}", f"x{j}"): f"y{i}{j}" for i, j in pairs}
    dual = [f"e{i}" for i in range(1, m + 1)] + [f"u{i}{j}" for i, j in pairs]
    return _from_rules(xs + ys, rules, weights=[1] * m + [2] * len(ys), dual_names=dual,
                       name=f"f({m},2)", provenance="free 2-step nilpotent Lie algebra")


def abelian(n: int) -> LieAlgebra:
    if n < 1:
        raise ValueError("n must be at least 1")
    return LieAlgebra(n, [f"x{i}" for i in range(1, n + 1)], {}, [1] * n,
                      [f"e{i}" for i in range(1, n + 1)], name=f"abelian({n})", provenance="abelian Lie algebra")


def sol2() -> LieAlgebra:
    return _from_rules(["x", "y"], {("x", "y"): "y"}, dual_names=["a", "b"], name="sol2",
                       provenance="two-dimensional solvable non-nilpotent Lie algebra")


def builtin_lie(key: str, **params) -> LieAlgebra:
    """Catalog lookup: "L5,5", "sol2", "h" (n=), "f" (m=, class=2), "abelian" (n=).

    Compact keys "h(1)", "f(3,2)", "abelian(4)" are accepted too.
    """
    key = key.strip()
    m = re.fullmatch(r"h\((\d+)\)", key)
    if m:
        return heisenberg(int(m.group(1)))
    m = re.fullmatch(r"f\((\d+),\s*(\d+)\)", key)
    if m:
        params = {"m": int(m.group(1)), "class": int(m.group(2))}
        key = "f"
    m = re.fullmatch(r"abelian\((\d+)\)", key)
    if m:
        return abelian(int(m.group(1)))
    if key in _DEGRAAF:
        dim, rules = _DEGRAAF[key]
        basis = [f"x{i}" for i in range(1, dim + 1)]
        return _from_rules(basis, rules, weights=_TWO_STEP_WEIGHTS.get(key),
                           dual_names=[f"e{i}" for i in range(1, dim + 1)], name=key, provenance=_PROVENANCE)
    if key == "sol2":
        return sol2()
    if key == "h":
        return heisenberg(int(params.get("n", 1)))
    if key == "f":
        if int(params.get("class", 2)) != 2:
            raise ValueError("only the 2-step free nilpotent algebras are in the catalog")
        return free_two_step(int(params.get("m", 2)))
    if key == "abelian":
        return abelian(int(params.get("n", 1)))
    raise KeyError(f"unknown Lie algebra {key!r}")
