"""Smoke tests for the gdrb python extension."""

import math

import numpy as np

import gdrb


def test_channel_algebra():
    ident = gdrb.SuperOp.identity(2)
    assert ident.dim == 2
    assert np.allclose(ident.mat, np.eye(4))

    x_ptm = gdrb.ptm_from_unitary(np.array([[0, 1], [1, 0]], dtype=complex))
    assert np.allclose(x_ptm.mat, np.diag([1.0, 1.0, -1.0, -1.0]))

    d = gdrb.depolarizing(0.9)
    pt = gdrb.decay_params(gdrb.compose(d, d))
    assert abs(pt.p - 0.81) < 1e-14
    assert abs(pt.t - 1.0) < 1e-14
    assert abs(gdrb.average_fidelity(d) - 0.95) < 1e-14

    theta = 0.3
    z = gdrb.ptm_z_theta(theta)
    assert abs(gdrb.infidelity(z) - (1 - math.cos(theta)) / 3) < 1e-14


def test_groups_and_twirl():
    group = gdrb.build_t_pauli_group()
    assert group.order == 12
    residual, ok = gdrb.verify_two_design(group, trials=25)
    assert ok, residual

    clifford = gdrb.build_clifford_group()
    assert clifford.order == 24

    z = gdrb.ptm_z_theta(0.4)
    tw = gdrb.twirl(z, group)
    expect = gdrb.depolarizing((1 + 2 * math.cos(0.4)) / 3)
    assert np.abs(tw.mat - expect.mat).max() < 1e-12


def test_decomposition_recovers_gate_independent_noise():
    group = gdrb.build_t_pauli_group()
    gs = gdrb.gate_independent_gateset(group, gdrb.depolarizing(0.97), side="right")
    dec = gdrb.solve_LR(gs)
    assert abs(dec.p - 0.97) < 1e-12
    assert abs(dec.t - 1.0) < 1e-12
    assert abs(gdrb.interpret(dec).r - (1 - dec.p) / 2) < 1e-14
    assert np.asarray(dec.L.mat).shape == (4, 4)


def test_simulation_and_fit():
    group = gdrb.build_t_pauli_group()
    gs = gdrb.random_unitary_gateset(group, 1e-3, seed=7)
    ds = gdrb.run_experiment(gs, [4, 8, 16, 32, 64], n_seq=50, seed=3)
    assert len(ds.rows) == 5
    assert all(0.0 <= row.mean <= 1.0 for row in ds.rows)
    assert ds.to_csv().startswith("m,mean,variance,num_sequences\n")

    fit = gdrb.fit_fixed_spam(ds)
    assert 0.9 < fit.p_est <= 1.0

    exact = gdrb.DecayDataset([(m, 0.3 * 0.95**m + 0.6, 0.0, 100) for m in [4, 8, 16, 32, 64]])
    free = gdrb.fit_free(exact)
    assert abs(free.p_est - 0.95) < 1e-8
    assert abs(free.A_est - 0.3) < 1e-8
    assert abs(free.B_est - 0.6) < 1e-8


def test_identity_gauge_analysis_and_bounds():
    group = gdrb.build_t_pauli_group()
    gs = gdrb.random_unitary_gateset(group, 1e-3, seed=11)
    analysis = gdrb.analyze_identity_gauge(gs)
    assert analysis.report.delta2 > 0
    assert analysis.bound.value > 0
    assert analysis.bound.denominator > 0
    assert abs(analysis.dec_identity.p - analysis.dec.p) < 1e-10

    exact = gdrb.brute_force_average(gs, 2)
    assert 0.0 <= exact <= 1.0


def test_counterexample_analytics():
    an = gdrb.counterexample_analytics(0.99, 0.09)
    assert abs(an.gamma - 0.99 * math.sin(0.045)) < 1e-12
    assert 7.0 <= an.ratio <= 10.0

    clifford = gdrb.build_clifford_group()
    gs = gdrb.depol_z_gateset(clifford, 0.99, 0.09)
    rep = gdrb.first_order_gamma(gs)
    assert abs(rep.gamma - an.gamma) < 1e-6

    try:
        gdrb.counterexample_analytics(1.5, 0.09)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for nu out of range")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    main()
