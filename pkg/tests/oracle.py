"""Independent brute-force reference implementations used by the tests.

Everything here is deliberately naive: dense Gaussian elimination over
Fraction, determinantal-divisor Smith forms, exhaustive searches.  None of
it shares code with the package's optimized paths.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd


def dense_rank(rows):
    """Rank by plain fractional Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a or not a[0]:
        return 0
    nr, nc = len(a), len(a[0])
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nr:
            break
    return r


def dense_rank_modp(rows, p):
    a = [[int(x) % p for x in row] for row in rows]
    if not a or not a[0]:
        return 0
    nr, nc = len(a), len(a[0])
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
        if r == nr:
            break
    return r


def _det(sub):
    n = len(sub)
    if n == 0:
        return 1
    if n == 1:
        return sub[0][0]
    total = 0
    for j in range(n):
        if sub[0][j]:
            minor = [r[:j] + r[j + 1:] for r in sub[1:]]
            total += (-1) ** j * sub[0][j] * _det(minor)
    return total


def snf_diagonal_by_minors(rows):
    """Smith diagonal via determinantal divisors d_k = gcd(k-minors)."""
    if not rows or not rows[0]:
        return []
    nr, nc = len(rows), len(rows[0])
    divisors = [1]
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for ri in combinations(range(nr), k):
            for ci in combinations(range(nc), k):
                g = gcd(g, _det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        divisors.append(abs(g))
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def in_span(vectors, target):
    """Membership test over Q by rank comparison."""
    base = [list(map(Fraction, v)) for v in vectors]
    return dense_rank(base) == dense_rank(base + [list(map(Fraction, target))])


def dense_homology_dim(d_out_rows, d_in_rows, ncols_out, p=None):
    """dim ker(d_out) - rank(d_in) for consecutive boundary matrices.

    d_out maps degree n to n-1 (rows = dim_{n-1}, cols = dim_n = ncols_out);
    d_in maps degree n+1 to n.  Empty row lists mean zero maps.
    """
    rk = (lambda rows: dense_rank_modp(rows, p)) if p else dense_rank
    r_out = rk(d_out_rows) if d_out_rows and d_out_rows[0] else 0
    r_in = rk(d_in_rows) if d_in_rows and d_in_rows[0] else 0
    return ncols_out - r_out - r_in
