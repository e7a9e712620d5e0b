import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from mrsolve import (
    ATOMIC,
    DomainError,
    NoInteriorMinimum,
    PotentialParams,
    QuantumState,
    UnitSystem,
    effective_potential,
    force_constant,
    potential_minimum,
    potential_v,
    potential_v_cd,
)
from mrsolve.core import centrifugal_factor

alphas = st.floats(-3.0, 4.0, allow_nan=False)
bs = st.floats(0.5, 100.0)
As = st.floats(0.1, 500.0)
xs = st.floats(1e-3, 50.0)


class TestParams:
    def test_rejects_nonpositive_b(self):
        with pytest.raises(DomainError):
            PotentialParams(1.0, 0.5, 0.0)

    @pytest.mark.parametrize("bad", [math.nan, math.inf])
    def test_rejects_nonfinite(self, bad):
        with pytest.raises(DomainError):
            PotentialParams(bad, 0.5, 1.0)

    def test_mirrored(self):
        p = PotentialParams(3.0, 0.25, 2.0).mirrored()
        assert p.alpha == 0.75 and p.A == 3.0 and p.b == 2.0


class TestUnits:
    def test_atomic(self):
        assert ATOMIC.kappa == 2.0
        assert ATOMIC.energy_scale(10.0) == pytest.approx(1 / 200)

    def test_molecular_kappa(self):
        u = UnitSystem.molecular(1.0, 1973.29, 931.494e6)
        assert u.kappa == pytest.approx(2 * 931.494e6 / 1973.29**2, rel=1e-15)
        assert u.energy_unit == "eV"

    def test_bad_mode(self):
        with pytest.raises(DomainError):
            UnitSystem("imperial")


class TestQuantumState:
    @pytest.mark.parametrize("label,n,l", [("2p", 0, 1), ("3d", 0, 2), ("4p", 2, 1), ("1s", 0, 0), ("6g", 1, 4)])
    def test_labels(self, label, n, l):
        s = QuantumState.from_label(label)
        assert (s.n, s.l) == (n, l)
        assert s.label == label

    @pytest.mark.parametrize("label", ["2f", "p", "0s", "3x", ""])
    def test_bad_labels(self, label):
        with pytest.raises(DomainError):
            QuantumState.from_label(label)

    def test_negative(self):
        with pytest.raises(DomainError):
            QuantumState(-1, 0)


class TestPotential:
    @given(As, alphas, bs, xs)
    def test_two_forms_agree(self, A, alpha, b, x):
        p = PotentialParams(A, alpha, b)
        v1, v2 = potential_v(x * b, p), potential_v_cd(x * b, p)
        assert v1 == pytest.approx(v2, rel=1e-9, abs=1e-12 * abs(A) / b**2)

    @given(As, alphas, bs, xs)
    def test_mirror_invariance(self, A, alpha, b, x):
        assume(1.0 - (1.0 - alpha) == alpha)
        p = PotentialParams(A, alpha, b)
        # alpha(alpha-1) and (1-alpha)(-alpha) differ only by rounding
        v, w = potential_v(x * b, p), potential_v(x * b, p.mirrored())
        assert v == pytest.approx(w, rel=1e-13, abs=1e-13 * (abs(A) + abs(p.shape_product)) / b**2)

    def test_vectorised(self, well):
        r = np.linspace(1.0, 100.0, 7)
        out = potential_v(r, well)
        assert out.shape == (7,)
        assert out[3] == potential_v(float(r[3]), well)

    @pytest.mark.parametrize("r", [0.0, -1.0, [1.0, 0.0]])
    def test_rejects_nonpositive_r(self, well, r):
        with pytest.raises(DomainError):
            potential_v(r, well)

    def test_long_range_decay(self, well):
        # tail is -A exp(-r/b) / (kappa b^2)
        r = 30 * well.b
        assert potential_v(r, well) == pytest.approx(-well.A * math.exp(-30) / (2 * well.b**2), rel=1e-10)


class TestMinimum:
    @given(As, st.floats(1.05, 4.0), bs)
    def test_minimum_is_stationary(self, A, alpha, b):
        p = PotentialParams(A, alpha, b)
        r0, vmin = potential_minimum(p)
        h = 1e-5 * r0
        assert potential_v(r0, p) == pytest.approx(vmin, rel=1e-12)
        assert potential_v(r0 + h, p) >= vmin - 1e-15 * abs(vmin)
        assert potential_v(r0 - h, p) >= vmin - 1e-15 * abs(vmin)

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 0.75])
    def test_no_minimum(self, alpha):
        with pytest.raises(NoInteriorMinimum):
            potential_minimum(PotentialParams(10.0, alpha, 1.0))

    def test_negative_A_rejected(self):
        with pytest.raises(NoInteriorMinimum):
            potential_minimum(PotentialParams(-1.0, 1.5, 1.0))

    @pytest.mark.parametrize("A,alpha,b", [(2.0, 1.5, 1.0), (80.0, 1.5, 40.0), (7.0, -0.5, 3.0)])
    def test_force_constant_matches_finite_difference(self, A, alpha, b):
        p = PotentialParams(A, alpha, b)
        r0, _ = potential_minimum(p)
        h = 1e-3 * r0
        fd = (potential_v(r0 + h, p) - 2 * potential_v(r0, p) + potential_v(r0 - h, p)) / h**2
        assert force_constant(p) == pytest.approx(fd, rel=1e-5)

    def test_force_constant_value(self):
        # A=2, alpha(alpha-1)=0.75, b=1: 4 * 3.5**2 / (8 * 0.421875 * 2)
        assert force_constant(PotentialParams(2.0, 1.5, 1.0)) == pytest.approx(
            4 * 3.5**2 / (8 * 0.75**3 * 2), rel=1e-15
        )


class TestCentrifugal:
    def test_approximation_short_range(self):
        r = 1e-3
        assert centrifugal_factor(r, 1.0, "approximate") == pytest.approx(1 / r**2, rel=1e-6)

    @given(xs)
    def test_approximation_is_upper_bound_minus_twelfth(self, x):
        # 1/(4 sinh^2(x/2)) = 1/x^2 - 1/12 + O(x^2), and stays below 1/x^2
        assert centrifugal_factor(x, 1.0, "approximate") <= centrifugal_factor(x, 1.0, "exact")

    def test_bad_mode(self):
        with pytest.raises(DomainError):
            centrifugal_factor(1.0, 1.0, "wkb")

    def test_effective_potential(self, well):
        r = 10.0
        expected = potential_v(r, well) + 2 / (2 * r**2)
        assert effective_potential(r, well, 1) == pytest.approx(expected, rel=1e-15)
        with pytest.raises(DomainError):
            effective_potential(r, well, -1)
