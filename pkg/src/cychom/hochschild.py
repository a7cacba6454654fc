"""Finite-dimensional unital algebras and their Hochschild modules.

An algebra is a structure-constant table over an exact field; the
Hochschild simplicial module has degree-n module A tensored with itself
n+1 times, faces multiplying adjacent slots (cyclically for the last
one), degeneracies inserting the unit, and the signed rotation.
"""

from __future__ import annotations

from itertools import product

from .chains import SimplicialModule, homology, linearize_module
from .domains import ScalarDomain
from .errors import (
    BudgetExceeded,
    InputFormatError,
    MatrixMismatch,
    NoUnit,
    NotAssociative,
)
from .groups import FiniteGroup
from .matrix import Matrix
from .simplicial import cyclic_bar

DEFAULT_BUDGET = 2 ** 20


class FiniteAlgebra:
    """A unital associative algebra by structure constants.

    table[i][j] is the coefficient vector of (basis_i * basis_j).  The
    unit is found by solving the unit laws over the basis; associativity
    is checked on all basis triples.
    """

    def __init__(self, dom: ScalarDomain, table, labels=None, unit=None, name=""):
        if unit is None:
            # solving the unit laws needs division; over Z the unit must
            # be declared explicitly
            dom.require_field()
        self.dom = dom
        self.dim = len(table)
        self.name = name
        self.labels = list(labels) if labels else [f"e{i}" for i in range(self.dim)]
        self.table = [[[dom.coerce(c) for c in cell] for cell in row] for row in table]
        if any(len(row) != self.dim for row in self.table) or \
                any(len(cell) != self.dim for row in self.table for cell in row):
            raise InputFormatError("structure-constant table must be dim x dim x dim")
        if unit is not None:
            self.unit = [dom.coerce(c) for c in unit]
            if not self._is_unit(self.unit):
                raise NoUnit("declared unit fails the unit laws")
        else:
            self.unit = self._find_unit()
        self._check_associative()
        self.commutative = all(
            self.table[i][j] == self.table[j][i]
            for i in range(self.dim) for j in range(i))

    def _basis_mul(self, i, j):
        return self.table[i][j]

    def mul(self, u, v):
        """Product of two coefficient vectors."""
        dom = self.dom
        out = [dom.zero] * self.dim
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                ab = dom.mul(a, b)
                for k, c in enumerate(self.table[i][j]):
                    if c != 0:
                        out[k] = dom.add(out[k], dom.mul(ab, c))
        return out

    def _is_unit(self, u):
        for i in range(self.dim):
            e_i = [self.dom.one if k == i else self.dom.zero for k in range(self.dim)]
            if self.mul(u, e_i) != e_i or self.mul(e_i, u) != e_i:
                return False
        return True

    def _find_unit(self):
        # solve u * e_j = e_j for all j: a linear system in u
        from .linalg import solve_in_span
        dom = self.dom
        n = self.dim
        # columns of the system: for candidate basis coefficient u_i the
        # contribution to (slot j -> component k) is c_{ij}^k
        basis_vectors = []
        for i in range(n):
            vec = []
            for j in range(n):
                vec.extend(self.table[i][j])
            basis_vectors.append(vec)
        target = []
        for j in range(n):
            target.extend(dom.one if k == j else dom.zero for k in range(n))
        x = solve_in_span(basis_vectors, target, dom)
        if x is None or not self._is_unit(x):
            raise NoUnit("algebra has no two-sided unit")
        return x

    def _check_associative(self):
        n = self.dim
        for i in range(n):
            for j in range(n):
                ij = self.table[i][j]
                for k in range(n):
                    e_k = [self.dom.one if m == k else self.dom.zero for m in range(n)]
                    lhs = self.mul(ij, e_k)
                    e_i = [self.dom.one if m == i else self.dom.zero for m in range(n)]
                    rhs = self.mul(e_i, self.table[j][k])
                    if lhs != rhs:
                        raise NotAssociative(f"(e{i} e{j}) e{k} != e{i} (e{j} e{k})")

    def __repr__(self):
        return f"FiniteAlgebra({self.name or f'dim {self.dim}'}, {self.dom})"


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

def group_algebra(G: FiniteGroup, dom: ScalarDomain) -> FiniteAlgebra:
    n = G.order
    z, o = None, None
    table = [[[dom.one if G.mul(i, j) == k else dom.zero for k in range(n)]
              for j in range(n)] for i in range(n)]
    unit = [dom.one if i == G.identity else dom.zero for i in range(n)]
    return FiniteAlgebra(dom, table, labels=[f"g{i}" for i in range(n)],
                         unit=unit, name=f"K[{G.name}]")


def truncated_polynomial(k: int, dom: ScalarDomain) -> FiniteAlgebra:
    """K[x]/(x^k), basis 1, x, ..., x^(k-1)."""
    if k < 1:
        raise InputFormatError("truncation exponent must be >= 1")
    table = [[[dom.one if i + j == m else dom.zero for m in range(k)]
              for j in range(k)] for i in range(k)]
    unit = [dom.one] + [dom.zero] * (k - 1)
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, k)]
    return FiniteAlgebra(dom, table, labels=labels, unit=unit, name=f"K[x]/(x^{k})")


def product_field(m: int, dom: ScalarDomain) -> FiniteAlgebra:
    """K^m with the idempotent basis."""
    if m < 1:
        raise InputFormatError("need at least one factor")
    table = [[[dom.one if i == j == k else dom.zero for k in range(m)]
              for j in range(m)] for i in range(m)]
    unit = [dom.one] * m
    return FiniteAlgebra(dom, table, labels=[f"p{i}" for i in range(m)],
                         unit=unit, name=f"K^{m}")


def algebra_from_json(obj, dom: ScalarDomain) -> FiniteAlgebra:
    """JSON: {dim, labels?, unit?, table} or {preset, params}."""
    import json
    from .groups import group_from_preset
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict):
        raise InputFormatError("algebra input must be a JSON object")
    if "preset" in obj:
        preset = obj["preset"]
        params = obj.get("params", {})
        if preset == "group":
            return group_algebra(group_from_preset(params["group"]), dom)
        if preset == "truncpoly":
            return truncated_polynomial(int(params.get("k", 2)), dom)
        if preset == "productfield":
            return product_field(int(params.get("m", 2)), dom)
        raise InputFormatError(f"unknown algebra preset {preset!r}")
    if "table" not in obj:
        raise InputFormatError("algebra input needs a 'table' or 'preset' key")
    table = obj["table"]
    if not (isinstance(table, list) and
            all(isinstance(row, list) and
                all(isinstance(cell, list) for cell in row) for row in table)):
        raise InputFormatError("'table' must be a dim x dim x dim array")
    if "dim" in obj and len(table) != obj["dim"]:
        raise InputFormatError("declared dim does not match the table")
    return FiniteAlgebra(dom, table, labels=obj.get("labels"),
                         unit=obj.get("unit"), name=obj.get("name", ""))


def algebra_from_preset(text: str, dom: ScalarDomain) -> FiniteAlgebra:
    """Presets: unit, truncpoly:k, productfield:m, group:<group preset>."""
    from .groups import group_from_preset
    if text == "unit":
        return truncated_polynomial(1, dom)
    if text.startswith("truncpoly:"):
        return truncated_polynomial(int(text.split(":", 1)[1]), dom)
    if text.startswith("productfield:"):
        return product_field(int(text.split(":", 1)[1]), dom)
    if text.startswith("group:"):
        return group_algebra(group_from_preset(text.split(":", 1)[1]), dom)
    raise InputFormatError(f"unknown algebra preset {text!r}")


# ---------------------------------------------------------------------------
# the Hochschild simplicial module
# ---------------------------------------------------------------------------

def _tensor_index(idx_tuple, dim):
    out = 0
    for i in idx_tuple:
        out = out * dim + i
    return out


def hochschild_module(A: FiniteAlgebra, N: int, signed_cyclic=True,
                      budget=DEFAULT_BUDGET) -> SimplicialModule:
    """The simplicial module [n] -> A tensor (n+1), with cyclic structure.

    Basis tensors are indexed slot-major (first slot most significant).
    The rotation carries the sign (-1)^n when signed_cyclic is set, which
    is the convention the cyclic bicomplex needs.
    """
    dom = A.dom
    d = A.dim
    if d ** (N + 1) > budget:
        raise BudgetExceeded(
            f"degree {N} needs {d ** (N + 1)} basis tensors (budget {budget})")

    def rank(n):
        return d ** (n + 1)

    def tensors(n):
        return product(range(d), repeat=n + 1)

    def face(n, i):
        m = Matrix.zeros(rank(n - 1), rank(n), dom)
        for col, idx in enumerate(tensors(n)):
            if i < n:
                coeffs = A.table[idx[i]][idx[i + 1]]
                rest_pre, rest_post = idx[:i], idx[i + 2:]
                for k, c in enumerate(coeffs):
                    if c != 0:
                        m._add_to(_tensor_index(rest_pre + (k,) + rest_post, d), col, c)
            else:
                coeffs = A.table[idx[n]][idx[0]]
                rest = idx[1:n]
                for k, c in enumerate(coeffs):
                    if c != 0:
                        m._add_to(_tensor_index((k,) + rest, d), col, c)
        return m

    def degeneracy(n, j):
        m = Matrix.zeros(rank(n + 1), rank(n), dom)
        for col, idx in enumerate(tensors(n)):
            pre, post = idx[:j + 1], idx[j + 1:]
            for k, c in enumerate(A.unit):
                if c != 0:
                    m._add_to(_tensor_index(pre + (k,) + post, d), col, c)
        return m

    def t(n):
        m = Matrix.zeros(rank(n), rank(n), dom)
        sign = dom.coerce(-1) if (signed_cyclic and n % 2 == 1) else dom.one
        for col, idx in enumerate(tensors(n)):
            m._add_to(_tensor_index((idx[n],) + idx[:n], d), col, sign)
        return m

    def labels(n):
        return ["(" + ",".join(A.labels[i] for i in idx) + ")" for idx in tensors(n)]

    sm = SimplicialModule(dom, N, rank, face, degeneracy, t_fn=t,
                          labels_fn=labels, name=f"Hoch({A.name})")
    sm.algebra = A
    return sm


def extra_degeneracy(sm: SimplicialModule, n: int) -> Matrix:
    """The unit-insertion homotopy h: C_n -> C_{n+1}, x -> (1, x)."""
    from .errors import NoUnitStructure
    A = getattr(sm, "algebra", None)
    if A is None:
        raise NoUnitStructure("homotopy needs a unital-algebra module")
    d = A.dim
    m = Matrix.zeros(sm.rank(n + 1), sm.rank(n), sm.dom)
    for col in range(sm.rank(n)):
        for k, c in enumerate(A.unit):
            if c != 0:
                m._add_to(k * d ** (n + 1) + col, col, c)
    return m


def hh(A: FiniteAlgebra, degrees, mode="normalized", budget=DEFAULT_BUDGET):
    """Hochschild homology of A in the given degrees."""
    degrees = list(degrees)
    N = max(degrees) + 1
    sm = hochschild_module(A, N, budget=budget)
    return homology(sm.chain_complex(mode), degrees)


class PipelineReport:
    def __init__(self, group, dom, degrees):
        self.group = group
        self.dom = dom
        self.degrees = list(degrees)
        self.matrices_equal = True
        self.betti_algebra = {}
        self.betti_spec = {}

    @property
    def passed(self):
        return self.matrices_equal and self.betti_algebra == self.betti_spec


def hh_vs_cyclic_bar(G: FiniteGroup, degrees, dom: ScalarDomain,
                     budget=DEFAULT_BUDGET) -> PipelineReport:
    """Compare the two routes to the Hochschild complex of a group algebra.

    The cyclic bar construction of G, linearized, must give exactly the
    boundary matrices of the Hochschild module of K[G] under the
    slot-major basis identification; anything else is a pipeline bug.
    """
    degrees = list(degrees)
    N = max(degrees) + 1
    A = group_algebra(G, dom)
    sm_alg = hochschild_module(A, N, budget=budget)
    sm_spec = linearize_module(cyclic_bar(G, N), dom)
    report = PipelineReport(G.name, dom, degrees)
    for n in range(1, N + 1):
        if sm_alg.boundary(n) != sm_spec.boundary(n):
            report.matrices_equal = False
            raise MatrixMismatch(
                f"boundary matrices differ at degree {n} for {G.name} over {dom}")
    h_alg = homology(sm_alg.chain_complex("normalized"), degrees)
    h_spec = homology(sm_spec.chain_complex("normalized"), degrees)
    report.betti_algebra = dict(h_alg.betti)
    report.betti_spec = dict(h_spec.betti)
    return report
