"""Cyclic homology: the cyclic bicomplex, HC, the SBI sequence, and the
windowed negative/periodic variants.

Columns of CC alternate between b (even) and -b' (odd); rows alternate
between 1 - t and the norm N = 1 + t + ... + t^n, always with the signed
cyclic operator.  Negative and periodic variants are computed over a
finite column window together with S-tower stabilization evidence, since
the honest objects are limits.
"""

from __future__ import annotations

from .chains import (
    Bicomplex,
    ChainComplex,
    ChainMap,
    HomologyResult,
    SimplicialModule,
    check_module_identities,
    exactness_at,
    homology,
    induced_map,
    total_complex,
)
from .errors import BasisMismatch, NotAChainMap, RelationFailure, WindowTooSmall
from .hochschild import DEFAULT_BUDGET, FiniteAlgebra, extra_degeneracy, hh, hochschild_module
from .linalg import rank, rank_kernel_image, solve_in_span
from .matrix import Matrix


def _identity(n, dom) -> Matrix:
    m = Matrix.zeros(n, n, dom)
    for i in range(n):
        m._add_to(i, i, dom.one)
    return m


def one_minus_t(sm: SimplicialModule, n: int) -> Matrix:
    return _identity(sm.rank(n), sm.dom) - sm.t(n)


def norm_map(sm: SimplicialModule, n: int) -> Matrix:
    """N = 1 + t + ... + t^n on degree n (signed t)."""
    power = _identity(sm.rank(n), sm.dom)
    out = power
    for _ in range(n):
        power = sm.t(n) @ power
        out = out + power
    return out


def cyclic_bicomplex(sm: SimplicialModule, columns: int, pmin: int = 0,
                     qtop=None, check=True) -> Bicomplex:
    """The (windowed) cyclic bicomplex of a cyclic module.

    Columns run over pmin..columns, rows over 0..qtop.  Dropping columns
    on the left is harmless: the discarded columns form a subcomplex, so
    the window is a quotient complex.  The cyclic relations are verified
    unless check=False.
    """
    if not sm.has_cyclic:
        raise RelationFailure("cyclic bicomplex needs a cyclic operator")
    qtop = sm.truncation if qtop is None else qtop
    if check:
        bad = check_module_identities(sm, cyclic=True, signed=True, top=qtop)
        if bad:
            raise RelationFailure(f"cyclic relations fail: {bad[:3]}")
    ranks, vert, horiz = {}, {}, {}
    for p in range(pmin, columns + 1):
        for q in range(qtop + 1):
            ranks[(p, q)] = sm.rank(q)
            if q >= 1:
                b = sm.boundary(q) if p % 2 == 0 else -sm.bprime(q)
                vert[(p, q)] = b
            if p > pmin:
                horiz[(p, q)] = one_minus_t(sm, q) if p % 2 == 1 else norm_map(sm, q)
    return Bicomplex(sm.dom, ranks, vert, horiz, rows="chain",
                     name=f"CC({sm.name})")


def _as_module(arg, top, budget=DEFAULT_BUDGET) -> SimplicialModule:
    if isinstance(arg, SimplicialModule):
        return arg
    if isinstance(arg, FiniteAlgebra):
        return hochschild_module(arg, top, signed_cyclic=True, budget=budget)
    raise TypeError(f"expected an algebra or simplicial module, got {type(arg)!r}")


def hc(arg, degrees, columns=None, budget=DEFAULT_BUDGET) -> HomologyResult:
    """Cyclic homology of an algebra or cyclic module.

    The column window must cover max(degrees) + 1; window completeness
    is asserted by recomputing with one extra column.
    """
    degrees = list(degrees)
    top = max(degrees) + 1
    columns = top if columns is None else columns
    if columns < top:
        raise WindowTooSmall(
            f"column window {columns} cannot see degree {max(degrees)}")
    sm = _as_module(arg, top, budget)
    cc = cyclic_bicomplex(sm, columns, qtop=top)
    res = homology(total_complex(cc), degrees)
    wide = homology(total_complex(cyclic_bicomplex(sm, columns + 1, qtop=top,
                                                   check=False)), degrees)
    if any(res.betti[n] != wide.betti[n] for n in degrees):
        raise WindowTooSmall("results changed when the window grew")
    res.name = f"HC({getattr(arg, 'name', sm.name)})"
    return res


def bprime_homotopy_check(sm: SimplicialModule, degrees) -> bool:
    """Verify b'h + hb' = id degreewise; certifies odd-column acyclicity."""
    ident = True
    for n in degrees:
        lhs = sm.bprime(n + 1) @ extra_degeneracy(sm, n)
        if n >= 1:
            lhs = lhs + extra_degeneracy(sm, n - 1) @ sm.bprime(n)
        ident = ident and lhs == _identity(sm.rank(n), sm.dom)
    return ident


def connes_b(sm: SimplicialModule, n: int) -> Matrix:
    """The chain-level B = (1 - t) h N : C_n -> C_{n+1}."""
    return one_minus_t(sm, n + 1) @ extra_degeneracy(sm, n) @ norm_map(sm, n)


class SBIReport:
    """Homology-level I/S/B matrices and exactness verdicts per node."""

    def __init__(self, name=""):
        self.name = name
        self.i_maps = {}   # n -> matrix HH_n -> HC_n
        self.s_maps = {}   # n -> matrix HC_n -> HC_{n-2}
        self.b_maps = {}   # n -> matrix HC_n -> HH_{n+1}
        self.nodes = []    # (label, degree, im_dim, ker_dim, exact)

    @property
    def passed(self):
        return all(node[-1] for node in self.nodes)

    def rows(self):
        return [{"node": f"{lab}_{n}", "im_dim": im, "ker_dim": ker,
                 "exact": ok} for (lab, n, im, ker, ok) in self.nodes]


def _zero_matrix(rows, cols, dom):
    return Matrix.zeros(rows, cols, dom)


def connes_maps(arg, degrees, budget=DEFAULT_BUDGET) -> SBIReport:
    """Chain-level I, S, B and the exactness of the SBI sequence.

    B^2 = 0 and bB + Bb = 0 are checked as matrix identities before any
    homology is taken; exactness verdicts come from subspace equalities
    of the induced maps.
    """
    degrees = sorted(degrees)
    top = max(degrees) + 1
    sm = _as_module(arg, top, budget)
    dom = sm.dom
    cc_h = sm.chain_complex("unnormalized", top)
    tot = total_complex(cyclic_bicomplex(sm, top, qtop=top))

    bmats = {n: connes_b(sm, n) for n in range(top)}
    for n in range(top - 1):
        if not (bmats[n + 1] @ bmats[n]).is_zero():
            raise RelationFailure(f"B^2 != 0 at degree {n}")
    for n in range(top):
        anti = cc_h.d(n + 1) @ bmats[n]
        if n >= 1:
            anti = anti + bmats[n - 1] @ cc_h.d(n)
        if not anti.is_zero():
            raise RelationFailure(f"bB + Bb != 0 at degree {n}")

    # chain-level I (column-0 inclusion) and S (two-column quotient)
    i_mats = {}
    for n in range(top + 1):
        inc = Matrix.zeros(tot.rank(n), cc_h.rank(n), dom)
        if (0, n) in tot.offsets:
            off = tot.offsets[(0, n)]
            for r in range(cc_h.rank(n)):
                inc._add_to(off + r, r, dom.one)
        i_mats[n] = inc
    i_map = ChainMap(cc_h, tot, i_mats, name="I")
    s_map = _s_chain_map(sm, tot)

    h_hh = homology(cc_h, range(0, top))
    h_hc = homology(tot, range(0, top))

    rep = SBIReport(name=getattr(arg, "name", sm.name))
    for n in range(0, top):
        rep.i_maps[n] = induced_map(i_map, h_hh, h_hc, n)
        if n >= 2:
            rep.s_maps[n] = induced_map(s_map, h_hc, h_hc, n)
        else:
            rep.s_maps[n] = _zero_matrix(0, h_hc.betti[n], dom)
    for n in range(0, top - 1):
        rep.b_maps[n] = _induced_b(sm, bmats[n], tot, h_hc, h_hh, n)
    rep.b_maps[-1] = _zero_matrix(h_hh.betti[0], 0, dom)
    rep.b_maps[-2] = _zero_matrix(0, 0, dom)

    for n in degrees:
        # ... -> HH_n -I-> HC_n -S-> HC_{n-2} -B-> HH_{n-1} -> ...
        node_hh = exactness_at(rep.b_maps.get(n - 1, _zero_matrix(
            rep.i_maps[n].cols, 0, dom)), rep.i_maps[n])
        rep.nodes.append(("HH", n, rank(rep.b_maps[n - 1]) if n - 1 in rep.b_maps
                          else 0, _ker_dim(rep.i_maps[n]), node_hh))
        node_hc = exactness_at(rep.i_maps[n], rep.s_maps[n])
        rep.nodes.append(("HC", n, rank(rep.i_maps[n]),
                          _ker_dim(rep.s_maps[n]), node_hc))
        if n >= 2:
            node_lo = exactness_at(rep.s_maps[n], rep.b_maps[n - 2])
            rep.nodes.append(("HC", n - 2, rank(rep.s_maps[n]),
                              _ker_dim(rep.b_maps[n - 2]), node_lo))
    return rep


def _ker_dim(m: Matrix) -> int:
    return m.cols - rank(m)


def _s_chain_map(sm: SimplicialModule, tot: ChainComplex) -> ChainMap:
    """The two-column quotient S: Tot_n -> Tot_{n-2} as a chain map."""
    dom = sm.dom
    s_mats = {}
    for n in range(tot.lo, tot.hi + 1):
        proj = Matrix.zeros(tot.rank(n - 2), tot.rank(n), dom)
        for (p, q) in tot.cells.get(n, []):
            if p < 2 or (p - 2, q) not in tot.offsets:
                continue
            src, dst = tot.offsets[(p, q)], tot.offsets[(p - 2, q)]
            for r in range(sm.rank(q)):
                proj._add_to(dst + r, src + r, dom.one)
        s_mats[n] = proj
    return ChainMap(tot, tot, s_mats, shift=-2, name="S")


def _induced_b(sm, bmat, tot, h_hc, h_hh, n):
    """B on homology: column-0 component of an HC_n class, pushed by B."""
    dom = sm.dom
    tgt_reps = h_hh.reps[n + 1]
    bound = [list(v) for v in h_hh.boundary_image[n + 1].vectors]
    _, tgt_kernel, _ = rank_kernel_image(sm.boundary(n + 1))
    cols = []
    off = tot.offsets.get((0, n))
    for r in h_hc.reps[n]:
        col0 = [r[off + i] for i in range(sm.rank(n))] if off is not None \
            else [dom.zero] * sm.rank(n)
        v = bmat.apply(col0)
        if not tgt_kernel.contains(v):
            raise NotAChainMap(f"B image is not a cycle at degree {n}")
        x = solve_in_span([list(t) for t in tgt_reps] + bound, v, dom)
        if x is None:
            raise NotAChainMap(f"B image class not expressible at degree {n}")
        cols.append(x[:len(tgt_reps)])
    return Matrix.from_columns(cols, len(tgt_reps), dom)


class TowerReport:
    """S-tower image dimensions per degree, with stabilization flags."""

    def __init__(self, name=""):
        self.name = name
        self.towers = {}        # n -> list of image dims along S^k
        self.stabilized = {}    # n -> bool
        self.hh_vanishing_top = None  # degrees checked zero, or None
        self.stable = False     # overall flag; False means UNSTABLE

    def rows(self):
        return [{"degree": n, "tower": self.towers[n],
                 "stabilized": self.stabilized[n]}
                for n in sorted(self.towers)]


def hc_window(variant: str, arg, degrees, window: int,
              budget=DEFAULT_BUDGET):
    """Windowed negative or periodic cyclic homology plus tower evidence.

    Negative: columns -window..0.  Periodic: columns -window..max+2.
    The report carries per-degree S-tower image dimensions and an overall
    stability flag, true only when the normalized Hochschild homology
    vanishes identically in the top half of the inspected degree range —
    vanishing is computed, never assumed.
    """
    if variant not in ("negative", "periodic"):
        raise ValueError(f"unknown variant {variant!r}")
    if window < 1:
        raise WindowTooSmall("window must be at least 1")
    degrees = sorted(degrees)
    maxdeg = max(degrees)
    qtop = maxdeg + window + 2
    sm = _as_module(arg, qtop, budget)
    pmax = 0 if variant == "negative" else maxdeg + 2
    cc = cyclic_bicomplex(sm, pmax, pmin=-window, qtop=qtop)
    res = homology(total_complex(cc), degrees)
    res.name = f"HC^{'-' if variant == 'negative' else 'per'}({getattr(arg, 'name', sm.name)})"

    report = TowerReport(name=res.name)
    hc_top = maxdeg + 2
    tot = total_complex(cyclic_bicomplex(sm, hc_top + 1, qtop=min(qtop, hc_top + 1),
                                         check=False))
    h_hc = homology(tot, range(0, hc_top + 1))
    s_map = _s_chain_map(sm, tot)
    s_ind = {m: induced_map(s_map, h_hc, h_hc, m) for m in range(2, hc_top + 1)}
    for n in degrees:
        dims = [h_hc.betti[n]]
        acc = None
        for k in range(1, (hc_top - n) // 2 + 1):
            step = s_ind[n + 2 * k]
            acc = step if acc is None else acc @ step
            dims.append(rank(acc))
        report.towers[n] = dims
        report.stabilized[n] = len(dims) >= 2 and dims[-1] == dims[-2]

    check_top = maxdeg + 1
    half = (check_top + 1) // 2
    hh_res = hh(_algebra_of(arg, sm), range(half, check_top + 1), budget=budget) \
        if _algebra_of(arg, sm) is not None else None
    if hh_res is not None:
        vanished = all(hh_res.betti[m] == 0 for m in range(half, check_top + 1))
        report.stable = vanished
        if vanished:
            report.hh_vanishing_top = (half, check_top)
    return res, report


def _algebra_of(arg, sm):
    if isinstance(arg, FiniteAlgebra):
        return arg
    return getattr(sm, "algebra", None)
