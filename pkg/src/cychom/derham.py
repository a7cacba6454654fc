"""Kaehler differentials, the de Rham complex, and the HKR maps.

Omega^n is presented as a quotient of the (n+1)-fold tensor power of A:
the class of a basis tensor (a0, a1, .., an) is a0 da1 ... dan.  The
relations are the Leibniz rule in each differential slot (with the
A-coefficient collected in front, legitimate since the tensor is over a
commutative A) and squares in adjacent slots.
"""

from __future__ import annotations

from itertools import product
from math import factorial

from .chains import PresentedModule
from .errors import NotCommutative, PositiveCharacteristic, RelationFailure
from .hochschild import FiniteAlgebra, hochschild_module
from .matrix import Matrix


def _require_commutative(A: FiniteAlgebra):
    if not A.commutative:
        raise NotCommutative(f"{A.name or 'algebra'} is not commutative")


def _tidx(idx, d):
    out = 0
    for i in idx:
        out = out * d + i
    return out


def _leibniz_relations(A: FiniteAlgebra, n: int):
    """Leibniz-rule vectors in A tensor (n+1), for every slot and triple."""
    dom, d = A.dom, A.dim
    amb = d ** (n + 1)
    rels = []
    for k in range(1, n + 1):
        others = [range(d)] * (n - 1)  # slots 1..n except k
        for a0 in range(d):
            for b in range(d):
                for c in range(d):
                    bc = A.table[b][c]
                    a0b = A.table[a0][b]
                    a0c = A.table[a0][c]
                    for rest in product(*others):
                        def put(lead, val):
                            slots = list(rest)
                            slots.insert(k - 1, val)
                            return _tidx((lead,) + tuple(slots), d)
                        vec = [dom.zero] * amb
                        # a0 d(bc) - (a0 b) dc - (a0 c) db = 0
                        for m, coef in enumerate(bc):
                            if coef != 0:
                                vec[put(a0, m)] = dom.add(vec[put(a0, m)], coef)
                        for m, coef in enumerate(a0b):
                            if coef != 0:
                                i = put(m, c)
                                vec[i] = dom.sub(vec[i], coef)
                        for m, coef in enumerate(a0c):
                            if coef != 0:
                                i = put(m, b)
                                vec[i] = dom.sub(vec[i], coef)
                        if any(v != 0 for v in vec):
                            rels.append(vec)
    return rels


def _square_relations(A: FiniteAlgebra, n: int):
    """Adjacent-slot squares: db db and db dc + dc db."""
    dom, d = A.dom, A.dim
    amb = d ** (n + 1)
    rels = []
    for k in range(1, n):
        others = [range(d)] * (n - 2)
        for a0 in range(d):
            for rest in product(*others):
                def put(u, v):
                    slots = list(rest)
                    slots.insert(k - 1, u)
                    slots.insert(k, v)
                    return _tidx((a0,) + tuple(slots), d)
                for b in range(d):
                    for c in range(b, d):
                        vec = [dom.zero] * amb
                        vec[put(b, c)] = dom.add(vec[put(b, c)], dom.one)
                        i = put(c, b)
                        vec[i] = dom.add(vec[i], dom.one)
                        rels.append(vec)
    return rels


def _omega_labels(A: FiniteAlgebra, n: int):
    return [A.labels[idx[0]] + "".join(f" d{A.labels[i]}" for i in idx[1:])
            for idx in product(range(A.dim), repeat=n + 1)]


def omega_power(A: FiniteAlgebra, n: int) -> PresentedModule:
    """Omega^n as a presented quotient of A tensor (n+1); Omega^0 = A."""
    _require_commutative(A)
    if n < 0:
        raise ValueError("negative form degree")
    rels = _leibniz_relations(A, n) + _square_relations(A, n) if n >= 1 else []
    pm = PresentedModule(A.dim ** (n + 1), rels, A.dom, labels=_omega_labels(A, n))
    pm.algebra = A
    pm.form_degree = n
    return pm


def kaehler_one(A: FiniteAlgebra) -> PresentedModule:
    """Omega^1 = (A tensor A) / (ab(x)c - a(x)bc + ca(x)b)."""
    return omega_power(A, 1)


def module_action(omega: PresentedModule, a_vector) -> Matrix:
    """The action of an algebra element on Omega^n quotient coordinates."""
    A = omega.algebra
    dom, d = A.dom, A.dim
    n = omega.form_degree
    rest = d ** n
    amb = Matrix.zeros(d ** (n + 1), d ** (n + 1), dom)
    for i in range(d):
        for j, b in enumerate(a_vector):
            if b == 0:
                continue
            for m, coef in enumerate(A.table[j][i]):
                if coef != 0:
                    v = dom.mul(b, coef)
                    for r in range(rest):
                        amb._add_to(m * rest + r, i * rest + r, v)
    return omega.proj @ amb @ omega.sect


def _derham_ambient(A: FiniteAlgebra, n: int) -> Matrix:
    """Ambient matrix of d: (a0, a..) -> (1, a0, a..)."""
    dom, d = A.dom, A.dim
    m = Matrix.zeros(d ** (n + 2), d ** (n + 1), dom)
    for col in range(d ** (n + 1)):
        for k, c in enumerate(A.unit):
            if c != 0:
                m._add_to(k * d ** (n + 1) + col, col, c)
    return m


def derham_d(omega_n: PresentedModule, omega_n1: PresentedModule) -> Matrix:
    """The differential Omega^n -> Omega^(n+1) on quotient coordinates.

    Well-definedness is checked: the ambient map must send the relation
    span of the source into the relation span of the target.
    """
    A = omega_n.algebra
    n = omega_n.form_degree
    amb = _derham_ambient(A, n)
    for row in omega_n.rel_rref:
        image = amb.apply(list(row))
        if not omega_n1.contains_relation(image):
            raise RelationFailure("differential not well-defined on the quotient")
    return omega_n1.proj @ amb @ omega_n.sect


class DeRhamResult:
    """Quotient dimensions, differentials and cohomology of Omega^*."""

    def __init__(self, A, top):
        self.algebra = A
        self.top = top
        self.omegas = {}
        self.d = {}       # n -> matrix Omega^n -> Omega^(n+1)
        self.betti = {}   # cohomology dimensions

    def dims(self):
        return [self.omegas[n].dim for n in range(self.top + 1)]


def derham(A: FiniteAlgebra, degrees) -> DeRhamResult:
    """The de Rham complex and its cohomology in the requested degrees."""
    _require_commutative(A)
    degrees = list(degrees)
    top = max(degrees) + 1
    res = DeRhamResult(A, top)
    for n in range(top + 1):
        res.omegas[n] = omega_power(A, n)
    for n in range(top):
        res.d[n] = derham_d(res.omegas[n], res.omegas[n + 1])
    for n in range(top - 1):
        prod_m = res.d[n + 1] @ res.d[n]
        if not prod_m.is_zero():
            raise RelationFailure(f"d^2 != 0 at degree {n}")
    from .linalg import rank_kernel_image
    for n in degrees:
        d_out = res.d.get(n, Matrix.zeros(0, res.omegas[n].dim, A.dom))
        _, kernel, _ = rank_kernel_image(d_out)
        if n >= 1:
            _, _, image = rank_kernel_image(res.d[n - 1])
            res.betti[n] = kernel.dim - image.dim
        else:
            res.betti[n] = kernel.dim
    return res


# ---------------------------------------------------------------------------
# the HKR maps
# ---------------------------------------------------------------------------

def _permutations_signed(n):
    from itertools import permutations
    for perm in permutations(range(1, n + 1)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        yield perm, -1 if inv % 2 else 1


def hkr_epsilon(A: FiniteAlgebra, n: int, omega: PresentedModule | None = None) -> Matrix:
    """Antisymmetrization Omega^n -> C_n(A), landing in cycles.

    Needs exact division by n!, hence characteristic zero.
    """
    _require_commutative(A)
    if A.dom.characteristic != 0:
        raise PositiveCharacteristic("antisymmetrization needs characteristic zero")
    omega = omega or omega_power(A, n)
    dom, d = A.dom, A.dim
    amb_dim = d ** (n + 1)
    inv_fact = dom.div(dom.one, dom.coerce(factorial(n)))
    amb = Matrix.zeros(amb_dim, amb_dim, dom)
    for col_idx in product(range(d), repeat=n + 1):
        col = _tidx(col_idx, d)
        for perm, sign in _permutations_signed(n):
            row_idx = (col_idx[0],) + tuple(col_idx[perm[k]] for k in range(n))
            coef = inv_fact if sign > 0 else dom.neg(inv_fact)
            amb._add_to(_tidx(row_idx, d), col, coef)
    eps = amb @ omega.sect
    # the image must consist of Hochschild cycles
    sm = hochschild_module(A, n + 1)
    if n >= 1 and not (sm.boundary(n) @ eps).is_zero():
        raise RelationFailure("antisymmetrization image is not made of cycles")
    return eps


def hkr_pi(A: FiniteAlgebra, n: int, omega: PresentedModule | None = None) -> Matrix:
    """The projection C_n(A) -> Omega^n, (a0..an) -> a0 da1...dan.

    On the presented quotient this is literally the projection matrix;
    it kills boundaries (pi . b = 0), which is verified.
    """
    _require_commutative(A)
    omega = omega or omega_power(A, n)
    pi = omega.proj
    sm = hochschild_module(A, n + 1)
    if not (pi @ sm.boundary(n + 1)).is_zero():
        raise RelationFailure("projection does not kill boundaries")
    return pi


def wedge(omega_p: PresentedModule, omega_q: PresentedModule, u, v,
          omega_pq: PresentedModule | None = None):
    """Wedge product of quotient-coordinate forms u (degree p) and v (degree q).

    Lifts both to ambient tensors, multiplies the coefficient slots and
    concatenates the differential slots, then projects into Omega^(p+q).
    """
    A = omega_p.algebra
    dom, d = A.dom, A.dim
    p, q = omega_p.form_degree, omega_q.form_degree
    omega_pq = omega_pq or omega_power(A, p + q)
    lift_u = omega_p.sect.apply(list(u))
    lift_v = omega_q.sect.apply(list(v))
    amb = [dom.zero] * (d ** (p + q + 1))
    for iu, cu in enumerate(lift_u):
        if cu == 0:
            continue
        a0, rest_u = divmod(iu, d ** p)
        for iv, cv in enumerate(lift_v):
            if cv == 0:
                continue
            b0, rest_v = divmod(iv, d ** q)
            c = dom.mul(cu, cv)
            for m, coef in enumerate(A.table[a0][b0]):
                if coef != 0:
                    idx = (m * d ** p + rest_u) * d ** q + rest_v
                    amb[idx] = dom.add(amb[idx], dom.mul(c, coef))
    return omega_pq.proj.apply(amb)
