import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from mrsolve import (
    ATOMIC,
    DomainError,
    NoBoundState,
    PotentialParams,
    QuantumState,
    UnitSystem,
    coulomb_limit,
    count_bound_states,
    critical_coupling,
    energy_nl,
    epsilon_nl,
    hulthen_energy,
    quantization_residual,
    shape_param_a,
)
from mrsolve.spectrum import lambda_param, shape_params

# [DERIVED] frozen from an independent mpmath root solve (40 digits) of the
# quantization condition lambda = lambda_n for eps, E = -eps^2 / (2 b^2).
ORACLE_LEVELS = [
    ((0, 1, 0.75, 40.0), -0.12057934836595722967),
    ((0, 1, 1.5, 40.0), -0.090022888329585766397),
    ((1, 1, 0.75, 20.0), -0.035267201581497160912),
    ((0, 2, 1.5, 1 / 0.075), -0.02181209348111201541),
    ((2, 0, 0.3, 40.0), -0.056329839677640603017),
    ((1, 3, 2.0, 20.0), -0.0022567324702519058935),
]

ns = st.integers(0, 8)
ls = st.integers(0, 8)
alphas = st.floats(-3.0, 4.0, allow_nan=False)
bs = st.floats(0.5, 200.0)


@pytest.mark.parametrize("args,expected", ORACLE_LEVELS)
def test_energy_against_root_solve(args, expected):
    n, l, alpha, b = args
    e = energy_nl(QuantumState(n, l), PotentialParams(2 * b, alpha, b))
    assert e == pytest.approx(expected, rel=1e-13)


def test_lambda_reduces_to_l():
    for l in range(6):
        assert lambda_param(0.0, l) == l
        assert lambda_param(1.0, l) == l


def test_a_below_one_for_s_waves():
    # l = 0 with 0 < alpha < 1 gives a = |1 - 2 alpha| < 1
    assert shape_param_a(0.5, 0) == 0.0
    assert lambda_param(0.5, 0) == -0.5


def test_negative_l():
    with pytest.raises(DomainError):
        shape_param_a(0.3, -1)


def test_unbound_raises_with_critical():
    s, p = QuantumState(3, 1), PotentialParams(5.0, 0.75, 10.0)
    with pytest.raises(NoBoundState) as ei:
        energy_nl(s, p)
    assert ei.value.critical == pytest.approx(critical_coupling(3, 1, 0.75))


@given(ns, ls, alphas, bs, st.floats(1e-3, 300.0))
def test_alpha_mirror_exact(n, l, alpha, b, excess):
    s = QuantumState(n, l)
    A = critical_coupling(n, l, alpha) + excess
    p = PotentialParams(A, alpha, b)
    q = p.mirrored()
    # 1 - 2(1 - alpha) = -(1 - 2 alpha) exactly in binary only when 1 - alpha is exact
    assume(1.0 - (1.0 - alpha) == alpha)
    assert shape_params(s, p) == shape_params(s, q)
    assert energy_nl(s, p) == energy_nl(s, q)


@given(ns, ls, alphas, bs)
def test_threshold_is_zero(n, l, alpha, b):
    s = QuantumState(n, l)
    p = PotentialParams(critical_coupling(n, l, alpha), alpha, b)
    assert abs(energy_nl(s, p, allow_threshold=True)) <= 1e-14
    with pytest.raises(NoBoundState):
        energy_nl(s, p)


@given(ns, ls, alphas, st.floats(1e-3, 300.0))
def test_quantization_residual_vanishes(n, l, alpha, excess):
    s = QuantumState(n, l)
    p = PotentialParams(critical_coupling(n, l, alpha) + excess, alpha, 7.0)
    scale = max(1.0, p.A)
    assert abs(quantization_residual(s, p)) <= 1e-10 * scale


def test_residual_nonzero_off_shell(well):
    s = QuantumState(0, 1)
    eps = epsilon_nl(s, well)
    assert abs(quantization_residual(s, well, eps * 1.01)) > 1e-3


@given(ns, ls, alphas, bs, st.floats(0.5, 50.0))
def test_levels_ordered_in_n(n, l, alpha, b, excess):
    A = critical_coupling(n + 1, l, alpha) + excess
    p = PotentialParams(A, alpha, b)
    assert energy_nl(QuantumState(n, l), p) < energy_nl(QuantumState(n + 1, l), p)


def test_count_bound_states(well):
    k = count_bound_states(well, 1, 50)
    assert 0 < k < 51
    assert energy_nl(QuantumState(k - 1, 1), well) < 0
    with pytest.raises(NoBoundState):
        energy_nl(QuantumState(k, 1), well)
    with pytest.raises(DomainError):
        count_bound_states(well, 1, -1)


def test_energy_scales_with_units(well):
    u = UnitSystem.molecular(1.0)
    s = QuantumState(0, 1)
    assert energy_nl(s, well, u) == pytest.approx(energy_nl(s, well) * 2.0 / u.kappa, rel=1e-14)


class TestHulthen:
    @given(st.integers(0, 5), st.integers(0, 5), st.floats(0.1, 5.0), st.floats(1e-4, 0.1))
    def test_matches_manning_rosen_alpha0(self, n, l, strength, delta):
        s = QuantumState(n, l)
        A = ATOMIC.kappa * strength / delta
        assume(A > s.principal**2 * 1.001)
        mr = energy_nl(s, PotentialParams(A, 0.0, 1.0 / delta))
        assert hulthen_energy(s, strength, delta) == pytest.approx(mr, rel=1e-12)

    def test_example(self):
        # (A - 1)^2 / (4 * 2 * 1600) with A = 80
        assert hulthen_energy(QuantumState(0, 0), 1.0, 0.025) == pytest.approx(-79**2 / 12800, rel=1e-15)

    @pytest.mark.parametrize("label", ["1s", "2p", "3d"])
    def test_coulomb_limit(self, label):
        s = QuantumState.from_label(label)
        assert hulthen_energy(s, 1.0, 1e-6) == pytest.approx(coulomb_limit(s, 1.0), rel=1e-5)

    @pytest.mark.parametrize("label", ["1s", "2p", "4f", "6h"])
    @pytest.mark.parametrize("delta", [1e-4, 1e-6])
    def test_coulomb_limit_leading_correction(self, label, delta):
        # A = 2 / delta, so E / E_coulomb = (1 - N^2 delta / 2)^2
        s = QuantumState.from_label(label)
        ratio = hulthen_energy(s, 1.0, delta) / coulomb_limit(s, 1.0)
        assert ratio == pytest.approx((1 - s.principal**2 * delta / 2) ** 2, rel=1e-12)

    def test_coulomb_values(self):
        assert coulomb_limit(QuantumState(0, 0), 1.0) == -0.5
        assert coulomb_limit(QuantumState(0, 1), 2.0) == -0.5

    def test_domain(self):
        with pytest.raises(DomainError):
            hulthen_energy(QuantumState(0, 0), 1.0, 0.0)
        with pytest.raises(NoBoundState):
            hulthen_energy(QuantumState(0, 0), 1.0, 3.0)
