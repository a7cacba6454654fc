"""Cyclic homology, the SBI sequence and the windowed variants."""

import pytest

from cychom.chains import homology, total_complex
from cychom.cyclic import (
    bprime_homotopy_check,
    connes_b,
    connes_maps,
    cyclic_bicomplex,
    hc,
    hc_window,
    norm_map,
    one_minus_t,
)
from cychom.chains import linearize_module
from cychom.domains import Q
from cychom.errors import WindowTooSmall
from cychom.groups import cyclic_group
from cychom.hochschild import (
    group_algebra,
    hochschild_module,
    product_field,
    truncated_polynomial,
)
from cychom.matrix import Matrix
from cychom.simplicial import cyclic_bar

from .oracle import dense_homology_dim


def test_hc_of_ground_field():
    A = truncated_polynomial(1, Q)
    res = hc(A, range(6))
    assert [res.betti[n] for n in range(6)] == [1, 0, 1, 0, 1, 0]


def test_hc_betti_matches_dense_oracle():
    A = truncated_polynomial(1, Q)
    top = 4
    sm = hochschild_module(A, top + 1, signed_cyclic=True)
    tot = total_complex(cyclic_bicomplex(sm, top + 1, qtop=top + 1))
    res = homology(tot, range(top))
    for n in range(top):
        d_in = tot.d(n + 1).to_dense_rows()
        d_out = tot.d(n).to_dense_rows()
        assert res.betti[n] == dense_homology_dim(
            d_out, d_in, tot.rank(n))


def test_hc0_is_the_algebra_for_commutative_inputs():
    for A in (truncated_polynomial(3, Q), product_field(2, Q)):
        assert hc(A, [0]).betti[0] == A.dim


def test_hc_of_group_algebra_vs_oracle():
    A = group_algebra(cyclic_group(2), Q)
    res = hc(A, range(3))
    top = 3
    sm = hochschild_module(A, top + 1, signed_cyclic=True)
    tot = total_complex(cyclic_bicomplex(sm, top + 1, qtop=top + 1))
    for n in range(3):
        d_in = tot.d(n + 1).to_dense_rows()
        d_out = tot.d(n).to_dense_rows()
        assert res.betti[n] == dense_homology_dim(
            d_out, d_in, tot.rank(n))


def test_hc_window_too_small():
    A = truncated_polynomial(1, Q)
    with pytest.raises(WindowTooSmall):
        hc(A, range(4), columns=2)
    with pytest.raises(WindowTooSmall):
        hc_window("periodic", A, range(2), window=0)
    with pytest.raises(ValueError):
        hc_window("bogus", A, range(2), window=2)


def test_bprime_contraction():
    for A in (truncated_polynomial(2, Q), group_algebra(cyclic_group(3), Q)):
        sm = hochschild_module(A, 5, signed_cyclic=True)
        assert bprime_homotopy_check(sm, range(4))


def test_norm_and_one_minus_t_compose_to_zero():
    A = truncated_polynomial(2, Q)
    sm = hochschild_module(A, 4, signed_cyclic=True)
    for n in range(3):
        assert (norm_map(sm, n) @ one_minus_t(sm, n)).is_zero()
        assert (one_minus_t(sm, n) @ norm_map(sm, n)).is_zero()


def test_hc_accepts_linearized_cyclic_sets():
    # the cyclic bar construction on Z/2 linearizes to the same cyclic
    # module as the group algebra, so HC must agree
    G = cyclic_group(2)
    top = 3
    sm = linearize_module(cyclic_bar(G, top + 2), Q, signed_t=True)
    res_set = hc(sm, range(top))
    res_alg = hc(group_algebra(G, Q), range(top))
    assert all(res_set.betti[n] == res_alg.betti[n] for n in range(top))


def test_connes_b_squares_to_zero():
    A = truncated_polynomial(2, Q)
    sm = hochschild_module(A, 5, signed_cyclic=True)
    for n in range(3):
        assert (connes_b(sm, n + 1) @ connes_b(sm, n)).is_zero()
        anti = sm.boundary(n + 1) @ connes_b(sm, n)
        if n >= 1:
            anti = anti + connes_b(sm, n - 1) @ sm.boundary(n)
        assert anti.is_zero()


def test_sbi_exact_for_ground_field():
    rep = connes_maps(truncated_polynomial(1, Q), range(4))
    assert rep.passed
    # S : HC_2 -> HC_0 is an isomorphism of one-dimensional spaces
    s2 = rep.s_maps[2]
    assert s2.rows == 1 and s2.cols == 1
    assert s2.entry(0, 0) != 0


def test_sbi_exact_for_dual_numbers():
    rep = connes_maps(truncated_polynomial(2, Q), range(4))
    assert rep.passed
    assert len(rep.nodes) > 0


def test_hc_window_flags():
    A = product_field(2, Q)
    res, report = hc_window("periodic", A, range(3), window=1)
    assert report.stable
    assert all(report.stabilized[n] for n in report.towers)

    B = truncated_polynomial(2, Q)
    _, report_b = hc_window("periodic", B, range(3), window=1)
    assert not report_b.stable


def test_hc_window_negative_of_field():
    A = truncated_polynomial(1, Q)
    res, report = hc_window("negative", A, range(3), window=2)
    assert [res.betti[n] for n in range(3)] == [1, 0, 0]
    assert report.stable
