"""Exact linear algebra: rank, kernel, image, canonical subspaces, SNF.

Field elimination is fraction-free (Bareiss) over Q and delegated to the
mod-p kernel over prime fields, so coefficient blowup stays bounded by
minor sizes.  Subspaces are fingerprinted by their reduced row echelon
form, which makes equality of spans a plain tuple comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from . import _modp
from .domains import INTEGERS, PRIME_FIELD, RATIONALS, Q, ScalarDomain
from .errors import AmbientMismatch, DomainMismatch, DomainNotField
from .matrix import Matrix


# ---------------------------------------------------------------------------
# row echelon machinery
# ---------------------------------------------------------------------------

def _rows_to_int_array(rows: list[list]) -> np.ndarray:
    """Clear denominators row by row (row scaling preserves the row space)."""
    out = np.zeros((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        mult = 1
        for v in row:
            if isinstance(v, Fraction) and v.denominator != 1:
                mult = lcm(mult, v.denominator)
        for j, v in enumerate(row):
            out[i, j] = int(v * mult) if mult != 1 else (v.numerator if isinstance(v, Fraction) else int(v))
    return out


def _bareiss_forward(a: np.ndarray):
    """Fraction-free forward elimination on an object (bigint) array.

    Returns (echelon array, pivot column list).  Rows below each pivot are
    zeroed; entries stay integral (Sylvester identity).
    """
    rows, cols = a.shape
    pivots = []
    prev = 1
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        sel = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            a[[r, sel]] = a[[sel, r]]
        pivot = a[r, c]
        for i in range(r + 1, rows):
            f = a[i, c]
            a[i, :] = (a[i, :] * pivot - f * a[r, :]) // prev
            a[i, c] = 0
        pivots.append(c)
        prev = pivot
        r += 1
    return a, pivots


def rank_of_rows_q(rows: list[list]) -> int:
    if not rows or not rows[0]:
        return 0
    a = _rows_to_int_array(rows)
    _, pivots = _bareiss_forward(a)
    return len(pivots)


def rref_rows(rows: list[list], dom: ScalarDomain):
    """Reduced row echelon form of a list of row vectors over a field.

    Returns (rref rows without trailing zero rows, pivot columns).
    """
    dom.require_field()
    if not rows or not rows[0]:
        return [], []
    if dom.kind == PRIME_FIELD:
        a = np.array([[int(v) % dom.p for v in row] for row in rows], dtype=np.int64)
        red, pivots = _modp.rref_modp(a, dom.p)
        out = [[int(v) for v in red[i]] for i in range(len(pivots))]
        return out, pivots
    # peel rows with a single nonzero entry: each is its own pivot row and
    # clearing its column never mixes rows, so large mostly-unit relation
    # sets (degeneracy images) reduce without touching Bareiss at all
    ncols = len(rows[0])
    work_rows = [[Fraction(v) for v in row] for row in rows]
    unit_cols = set()
    while True:
        fresh = set()
        survivors = []
        for row in work_rows:
            nz = [j for j, v in enumerate(row) if v != 0]
            if not nz:
                continue
            if len(nz) == 1:
                fresh.add(nz[0])
            else:
                survivors.append(row)
        if not fresh - unit_cols:
            work_rows = survivors
            break
        unit_cols |= fresh
        for row in survivors:
            for c in fresh:
                row[c] = Fraction(0)
        work_rows = survivors
    units = sorted(unit_cols)
    if not work_rows:
        out = []
        for c in units:
            row = [Fraction(0)] * ncols
            row[c] = Fraction(1)
            out.append(row)
        return out, units
    # rationals: Bareiss forward pass, then back-substitute on the echelon part
    a = _rows_to_int_array(work_rows)
    ech, pivots = _bareiss_forward(a)
    r = len(pivots)
    work = [[Fraction(x) for x in ech[i]] for i in range(r)]
    for i in reversed(range(r)):
        pc = pivots[i]
        pv = work[i][pc]
        work[i] = [x / pv for x in work[i]]
        for k in range(i):
            f = work[k][pc]
            if f != 0:
                work[k] = [xk - f * xi for xk, xi in zip(work[k], work[i])]
    if units:
        merged = []
        ui, wi = 0, 0
        all_pivots = []
        while ui < len(units) or wi < r:
            if wi >= r or (ui < len(units) and units[ui] < pivots[wi]):
                row = [Fraction(0)] * ncols
                row[units[ui]] = Fraction(1)
                merged.append(row)
                all_pivots.append(units[ui])
                ui += 1
            else:
                merged.append(work[wi])
                all_pivots.append(pivots[wi])
                wi += 1
        return merged, all_pivots
    return work, pivots


def rank(m: Matrix) -> int:
    """Rank over the matrix's own field (over Z: rank of the Q-extension)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.dom.kind == PRIME_FIELD:
        _, pivots = _modp.rref_modp(m.to_int64_array(), m.dom.p)
        return len(pivots)
    return rank_of_rows_q(m.to_dense_rows())


# ---------------------------------------------------------------------------
# canonical subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace in canonical (reduced row echelon) form.

    ``vectors`` is a tuple of ambient vectors; equal subspaces produce
    identical tuples, so span equality is literal equality.
    """

    ambient: int
    dom: ScalarDomain
    vectors: tuple

    @classmethod
    def from_spanning(cls, vectors, ambient: int, dom: ScalarDomain):
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise AmbientMismatch(f"vector of length {len(v)} in ambient {ambient}")
        red, _ = rref_rows(vecs, dom) if vecs else ([], [])
        canon = tuple(tuple(dom.coerce(x) for x in row) for row in red)
        return cls(ambient, dom, canon)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def contains(self, vector) -> bool:
        if len(vector) != self.ambient:
            raise AmbientMismatch("vector/ambient mismatch")
        stacked = [list(v) for v in self.vectors] + [list(vector)]
        red, _ = rref_rows(stacked, self.dom)
        return len(red) == self.dim


def subspace_equal(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    if a.ambient != b.ambient:
        raise AmbientMismatch(f"{a.ambient} vs {b.ambient}")
    if a.dom != b.dom:
        raise DomainMismatch(f"{a.dom} vs {b.dom}")
    return a.vectors == b.vectors


def kernel_vectors(m: Matrix) -> list[list]:
    """Basis of the right kernel, from the RREF of m."""
    dom = m.dom
    dom.require_field()
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [[dom.one if i == j else dom.zero for i in range(m.cols)] for j in range(m.cols)]
    red, pivots = rref_rows(m.to_dense_rows(), dom)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    out = []
    for f in free:
        v = [dom.zero] * m.cols
        v[f] = dom.one
        for i, pc in enumerate(pivots):
            coef = red[i][f]
            if coef != 0:
                v[pc] = dom.neg(coef)
        out.append(v)
    return out


def rank_kernel_image(m: Matrix, dom: ScalarDomain | None = None):
    """Rank, canonical kernel basis and canonical image basis over a field."""
    dom = dom or m.dom
    if dom != m.dom:
        raise DomainMismatch(f"matrix over {m.dom}, requested {dom}")
    dom.require_field()
    kern = kernel_vectors(m)
    kernel = SubspaceBasis.from_spanning(kern, m.cols, dom)
    cols = [m.column_vector(c) for c in range(m.cols)]
    image = SubspaceBasis.from_spanning(cols, m.rows, dom)
    r = image.dim
    return r, kernel, image


def solve_in_span(basis_vectors: list[list], target: list, dom: ScalarDomain):
    """Coordinates of target in the span of basis_vectors, or None.

    basis_vectors need not be independent; a particular solution is fine
    for class computations because the span is what matters.
    """
    dom.require_field()
    n = len(target)
    k = len(basis_vectors)
    if k == 0:
        return [] if all(x == 0 for x in target) else None
    # solve B x = t via RREF of [B | t] with B columns = basis vectors
    rows = [[basis_vectors[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    red, pivots = rref_rows(rows, dom)
    if k in pivots:
        return None
    x = [dom.zero] * k
    for i, pc in enumerate(pivots):
        x[pc] = red[i][k]
    return x


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass
class SmithForm:
    d: list[int]
    rank: int
    left: Matrix
    right: Matrix

    def diagonal_matrix(self, rows: int, cols: int, dom: ScalarDomain) -> Matrix:
        m = Matrix(rows, cols, dom)
        for i, v in enumerate(self.d):
            if v:
                m._set(i, i, v)
        return m


def smith_normal_form(m: Matrix) -> SmithForm:
    """SNF over Z with unimodular transforms: left @ m @ right = diag(d).

    Diagonal entries are nonnegative and form a divisibility chain.
    """
    if m.dom.kind != INTEGERS:
        raise DomainMismatch("SNF needs an integer matrix")
    rows, cols = m.rows, m.cols
    a = [[int(v) for v in row] for row in m.to_dense_rows()]
    left = [[int(i == j) for j in range(rows)] for i in range(rows)]
    right = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, j, f):  # row_i -= f * row_j
        a[i] = [x - f * y for x, y in zip(a[i], a[j])]
        left[i] = [x - f * y for x, y in zip(left[i], left[j])]

    def col_op(i, j, f):  # col_i -= f * col_j
        for row in a:
            row[i] -= f * row[j]
        for row in right:
            row[i] -= f * row[j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    t = 0
    n = min(rows, cols)
    while t < n:
        # locate a nonzero entry of minimal absolute value in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(a[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        if a[t][t] < 0:
            row_negate(t)
        # clear row and column t, restarting if a smaller remainder shows up
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        row_swap(t, i)
                        if a[t][t] < 0:
                            row_negate(t)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        col_swap(t, j)
                        dirty = True
        # divisibility: fold any non-multiple into the pivot and redo
        viol = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    viol = i
                    break
            if viol is not None:
                break
        if viol is not None:
            row_op(t, viol, -1)  # add offending row into pivot row
            continue
        t += 1

    d = [a[i][i] for i in range(n) if a[i][i] != 0]
    from .domains import Z as ZDOM
    lm = Matrix.from_rows(left, ZDOM, cols=rows)
    rm = Matrix.from_rows(right, ZDOM, cols=cols)
    return SmithForm(d=d, rank=len(d), left=lm, right=rm)


def integer_kernel_basis(m: Matrix) -> list[list]:
    """Basis of the kernel lattice of an integer matrix (saturated)."""
    snf = smith_normal_form(m)
    r = snf.rank
    return [snf.right.column_vector(c) for c in range(r, m.cols)]


def z_quotient_invariants(kernel_basis: list[list], boundary: Matrix):
    """Betti and torsion of (lattice spanned by kernel_basis) / im(boundary).

    boundary columns are assumed to lie in the kernel lattice; their
    coordinates in the basis are integral because the basis is saturated.
    """
    from .domains import Z as ZDOM
    k = len(kernel_basis)
    if k == 0:
        return 0, []
    if boundary.cols == 0 or boundary.is_zero():
        return k, []
    coords = []
    for c in range(boundary.cols):
        target = [Fraction(x) for x in boundary.column_vector(c)]
        x = solve_in_span([[Fraction(v) for v in b] for b in kernel_basis], target, Q)
        if x is None:
            raise ValueError("boundary column not in kernel lattice")
        col = []
        for v in x:
            f = Fraction(v)
            if f.denominator != 1:
                raise ValueError("non-integral coordinates: kernel basis not saturated")
            col.append(f.numerator)
        coords.append(col)
    mat = Matrix.from_columns(coords, k, ZDOM)
    snf = smith_normal_form(mat)
    betti = k - snf.rank
    torsion = [abs(v) for v in snf.d if abs(v) > 1]
    return betti, torsion


def gcd_of_minors(m: Matrix, k: int) -> int:
    """gcd of all k x k minors (brute force; oracle-sized inputs only)."""
    from itertools import combinations
    rows = m.to_dense_rows()

    def det(sub):
        n = len(sub)
        if n == 0:
            return 1
        if n == 1:
            return sub[0][0]
        total = 0
        for j in range(n):
            if sub[0][j] == 0:
                continue
            minor = [r[:j] + r[j + 1:] for r in sub[1:]]
            total += (-1) ** j * sub[0][j] * det(minor)
        return total

    g = 0
    for ri in combinations(range(m.rows), k):
        for ci in combinations(range(m.cols), k):
            sub = [[int(rows[i][j]) for j in ci] for i in ri]
            g = gcd(g, det(sub))
    return abs(g)
