"""Smoke tests for the python bindings: every exposed operation runs and
returns sane values; numerics are covered in depth on the C++ side."""

import numpy as np
import pytest

import wl1


def test_version():
    assert wl1.__version__ == "0.1.0"


def test_model_and_kinds():
    m = wl1.SparsityModel([wl1.SignalClass(0.5, 0.4, 2.0),
                           wl1.SignalClass(0.5, 0.05, 4.0)])
    assert m.size == 2
    # Weights normalize to min omega = 1.
    assert m.classes[0].omega == pytest.approx(1.0)
    assert m.classes[1].omega == pytest.approx(2.0)
    assert m.support_fraction == pytest.approx(0.225)
    with pytest.raises(wl1.DomainError):
        wl1.SparsityModel([wl1.SignalClass(0.7, 0.1, 1.0)])


def test_exponents():
    m = wl1.SparsityModel([wl1.SignalClass(0.5, 0.4, 1.0),
                           wl1.SignalClass(0.5, 0.05, 3.0)])
    tau = [0.1, 0.2]
    com = wl1.psi_com(m, tau, wl1.ThresholdKind.Weak)
    assert com == pytest.approx(0.7221974114049676, rel=1e-12)
    pt = wl1.psi_tot(m, tau, wl1.ThresholdKind.Weak)
    assert pt.psi_tot == pytest.approx(com - pt.psi_int - pt.psi_ext)
    assert pt.witness.lambda_ == pytest.approx(0.3)


def test_threshold_and_weights():
    m = wl1.SparsityModel([wl1.SignalClass(1.0, 0.1, 1.0)])
    res = wl1.delta_c(m, wl1.ThresholdKind.Weak, grid=56, tol=1e-4)
    assert res.delta_c == pytest.approx(0.3288, abs=2e-3)
    assert res.kind == wl1.ThresholdKind.Weak

    rc = wl1.robustness_constant(0.5, 0.5, 0.5, 0.5)
    assert rc.value == pytest.approx(3.0)


def test_angles():
    ext = wl1.external_angle(wl1.FacePair(k1=1, k2=0, t1=1, t2=0,
                                          n1=3, n2=0, w1=1.0, w2=1.0))
    assert ext.value == pytest.approx(0.19591327601530364, rel=1e-9)

    est = wl1.internal_angle(wl1.FacePair(k1=1, k2=0, t1=1, t2=0,
                                          n1=4, n2=0, w1=1.0, w2=1.0),
                             20000, 3)
    assert abs(est.estimate - 0.5) < 5 * est.std_err + 1e-9


def test_failure_bound():
    fm = wl1.FiniteModel(n1=2, n2=2, k1=1, k2=1, m=1, w1=1.0, w2=2.0)
    fb = wl1.failure_bound(fm, 20000, 7)
    assert fb.clamped
    assert fb.bound == 1.0
    assert len(fb.terms) == 3


def test_sampling_and_recovery():
    m = wl1.SparsityModel([wl1.SignalClass(1.0, 0.1, 1.0)])
    inst = wl1.sample_model_instance(m, 40, 30, 5)
    assert inst.A.shape == (30, 40)
    assert np.allclose(inst.A @ inst.x0, inst.y)

    sol = wl1.solve_weighted_l1(inst.A, inst.y, inst.weights)
    assert sol.status == wl1.LpStatus.Optimal
    assert wl1.recovery_success(inst.x0, sol.x)


def test_null_space_check():
    rng = np.random.default_rng(1)
    A = rng.standard_normal((8, 12))
    rep = wl1.null_space_condition_check(A, [0, 3], np.ones(12))
    assert rep.exact
    assert rep.verdict in (wl1.NullSpaceVerdict.Holds,
                           wl1.NullSpaceVerdict.Violated)


def test_errors_are_mapped():
    with pytest.raises(wl1.DomainError):
        wl1.robustness_constant(1.0, 1.0, 0.9, 0.9)
    # DomainError subclasses the library-wide base.
    assert issubclass(wl1.DomainError, wl1.Wl1Error)
