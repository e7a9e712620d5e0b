import logging

import numpy as np
import pytest

from mrsolve import (
    ConvergenceError,
    DomainError,
    PotentialParams,
    QuantumState,
    SolverConfig,
    approximation_error_report,
    energy_nl,
    numerov_eigenvalue,
)
from mrsolve.oracle import numerov_solve, reduced_potential
from mrsolve.tables import load_golden


def _setup(label, invb, alpha):
    s = QuantumState.from_label(label)
    b = 1.0 / invb
    return s, PotentialParams(2 * b, alpha, b)


@pytest.mark.parametrize(
    "label,invb,alpha",
    [("2p", 0.025, 0.75), ("3d", 0.075, 1.5), ("4p", 0.05, 0.75), ("6g", 0.025, 1.5), ("3p", 0.1, 1.5)],
)
def test_approximate_barrier_reproduces_closed_form(label, invb, alpha):
    s, p = _setup(label, invb, alpha)
    cfg = SolverConfig.for_state(s, p, "approximate")
    assert numerov_eigenvalue(p, s.l, s.n, "approximate", cfg) == pytest.approx(energy_nl(s, p), abs=1e-10)


@pytest.mark.parametrize("alpha", [0.25, 1.0])
def test_s_wave_modes_coincide(alpha):
    # no barrier for l = 0, so both modes solve the same operator
    s, p = QuantumState(1, 0), PotentialParams(80.0, alpha, 40.0)
    ex = numerov_eigenvalue(p, 0, 1, "exact", SolverConfig.for_state(s, p, "exact"))
    ap = numerov_eigenvalue(p, 0, 1, "approximate", SolverConfig.for_state(s, p, "approximate"))
    assert ex == ap
    assert ex == pytest.approx(energy_nl(s, p), abs=1e-10)


def test_exact_barrier_lies_above():
    # 1/r^2 exceeds its short-range replacement, so exact levels are higher
    s, p = _setup("3d", 0.05, 0.75)
    (e,) = approximation_error_report(p, [s])
    assert e.e_oracle_exact > e.e_closed
    assert e.err_approx < 0


def test_report_fields():
    s, p = _setup("2p", 0.05, 1.5)
    (entry,) = approximation_error_report(p, [s])
    d = entry.as_dict()
    assert d["state"] == "2p" and d["n"] == 0 and d["l"] == 1
    assert d["err_approx"] == entry.e_closed - entry.e_oracle_exact


def test_step_refinement_stable():
    # log grid is converged well before the default density; successive
    # halvings only move the level at the round-off floor
    s, p = _setup("2p", 0.025, 0.75)
    levels = [
        numerov_eigenvalue(p, 1, 0, "exact", SolverConfig.for_state(s, p, "exact", refine=r, min_points=100))
        for r in (0.25, 0.5, 1.0, 2.0)
    ]
    assert max(levels) - min(levels) < 1e-10


@pytest.mark.parametrize("label,invb,alpha", [("4p", 0.025, 0.75), ("4d", 0.05, 1.5)])
def test_eigenfunction_nodes(label, invb, alpha):
    s, p = _setup(label, invb, alpha)
    res = numerov_solve(p, s.l, s.n, "exact", SolverConfig.for_state(s, p, "exact"))
    assert res.nodes == s.n
    assert res.r.shape == res.u.shape
    assert res.bracket[0] <= res.energy <= res.bracket[1]
    assert res.evaluations > 0


def test_bracket_widening_logged(caplog):
    s, p = _setup("2p", 0.025, 0.75)
    e = energy_nl(s, p)
    base = SolverConfig.for_state(s, p, "exact")
    narrow = SolverConfig(base.r_min, base.r_max, base.n_points, (0.5 * e, 0.4 * e))
    with caplog.at_level(logging.INFO, logger="mrsolve"):
        got = numerov_eigenvalue(p, 1, 0, "exact", narrow)
    assert got == pytest.approx(-0.12052731, abs=1e-8)
    assert "widen" in caplog.text.lower()


def test_unreachable_level_raises():
    s, p = _setup("2p", 0.025, 0.75)
    base = SolverConfig.for_state(s, p, "exact")
    cfg = SolverConfig(base.r_min, base.r_max, base.n_points, base.energy_bracket, max_bisections=1)
    with pytest.raises(ConvergenceError):
        numerov_eigenvalue(p, 1, 30, "exact", cfg)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(r_min=0.0, r_max=1.0, n_points=100, energy_bracket=(-1, 0)),
        dict(r_min=1.0, r_max=2.0, n_points=5, energy_bracket=(-1, 0)),
        dict(r_min=1.0, r_max=2.0, n_points=100, energy_bracket=(0, -1)),
        dict(r_min=1.0, r_max=2.0, n_points=100, energy_bracket=(-1, 0), tol_energy=0.0),
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(DomainError):
        SolverConfig(**kwargs)


def test_reduced_potential_modes():
    p = PotentialParams(80.0, 0.75, 40.0)
    x = np.array([1e-3, 1.0, 100.0, 800.0])
    ex, ap = reduced_potential(x, p, 2, "exact"), reduced_potential(x, p, 2, "approximate")
    assert np.all(np.isfinite(ex)) and np.all(ex >= ap)
    with pytest.raises(DomainError):
        reduced_potential(x, p, 2, "bogus")


@pytest.mark.parametrize("cell", [c for c in load_golden(1, "ls") if c.invb == "0.025"][:6],
                         ids=lambda c: f"{c.state}-{c.alpha}")
def test_exact_barrier_matches_published_ls(cell):
    s, p = _setup(cell.state, float(cell.invb), cell.alpha)
    e = numerov_eigenvalue(p, s.l, s.n, "exact", SolverConfig.for_state(s, p, "exact"))
    assert e == pytest.approx(cell.value, abs=1e-5)
