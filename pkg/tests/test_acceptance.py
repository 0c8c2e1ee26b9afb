"""Acceptance suite: one test per shipping criterion, at stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to get one pass/fail
line per criterion.
"""

import json
import math
import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from platevac import em3d, limits_lab, regsum, scalar1d
from platevac.geometry import Geometry, Position
from platevac.limits_lab import CommutationModel
from platevac.regsum import PowerSeriesSpec, RegScheme
from platevac.scalar1d import Couplings

G1 = Geometry(1.0)
EPS_LADDER = (0.04, 0.02, 0.01, 0.005)


def pos(theta, g=G1):
    return Position.from_theta(theta, g)


def report(criterion: str, detail: str) -> None:
    print(f"[PASS] {criterion}: {detail}")


def test_criterion_01_zeta_values():
    from platevac import specfun

    dev1 = abs(specfun.riemann_zeta(-1.0) + 1.0 / 12.0)
    dev2 = abs(specfun.riemann_zeta(-2.0))
    assert dev1 < 1e-14
    assert dev2 < 1e-14
    report("criterion 01 zeta values", f"|dev| = {dev1:.2e}, {dev2:.2e} < 1e-14")


def test_criterion_02_free_total_through_engine(monkeypatch):
    calls = []
    original = regsum.zeta_regularize_power

    def spy(spec: PowerSeriesSpec):
        calls.append(spec)
        return original(spec)

    monkeypatch.setattr(regsum, "zeta_regularize_power", spy)
    value = scalar1d.free_total_energy(G1)
    exact = -math.pi / 24.0
    rel = abs(value - exact) / abs(exact)
    assert rel < 1e-12
    assert calls and calls[0].exponent == 1.0, "energy not routed through the engine"
    report(
        "criterion 02 free scalar total",
        f"-pi/24 within rel {rel:.2e}; engine called with exponent 1",
    )


def test_criterion_03_free_em_density_and_force():
    exact = -math.pi ** 2 / 720.0
    rng = np.random.default_rng(123)
    worst = 0.0
    for theta in rng.uniform(0.6, math.pi - 0.6, 100):
        pair = em3d.correlators(G1, pos(theta))
        worst = max(worst, abs(0.5 * (pair.e2 + pair.b2) - exact) / abs(exact))
    assert worst < 1e-12

    force = em3d.casimir_force_per_area(G1)
    analytic = math.pi ** 2 / 240.0
    force_rel = abs(force - analytic) / analytic
    assert force_rel < 1e-8
    report(
        "criterion 03 free EM density and force",
        f"density constant to {worst:.2e}; force numeric-vs-analytic {force_rel:.2e}",
    )


def test_criterion_04_cutoff_closed_form():
    worst = 0.0
    for eps in (0.05, 0.1, 0.5):
        for theta in (0.3, 1.0, 2.5):
            direct = math.fsum(
                math.exp(-eps * n) * math.sin(2.0 * theta * n) for n in range(1, 2001)
            )
            value = regsum.abel_sum_sin(eps, theta)
            worst = max(worst, abs(value - direct) / abs(direct))
    assert worst < 1e-10
    report("criterion 04 cutoff closed form", f"worst rel dev {worst:.2e} < 1e-10")


def test_criterion_05_expansion_residual_scaling():
    fits = limits_lab.epsilon_expansion_check([0.5, 1.0, 2.0], [0.04, 0.02, 0.01])
    slopes = [fit.slope for fit in fits]
    for slope in slopes:
        assert abs(slope - 4.0) <= 0.1
    report(
        "criterion 05 expansion residual scaling",
        "slopes " + ", ".join(f"{s:.3f}" for s in slopes) + " within 4.0 +/- 0.1",
    )


def test_criterion_06_scheme_agreement():
    tol = 1e-7 * math.pi / 16.0
    worst = 0.0
    for theta in np.linspace(0.2, math.pi - 0.2, 20):
        continued = scalar1d.electric_density(G1, pos(theta), RegScheme.zeta())
        samples = [
            (eps, scalar1d.electric_density(G1, pos(theta), RegScheme.cutoff(eps)))
            for eps in EPS_LADDER
        ]
        limit, _ = regsum.richardson_extrapolate(samples, order=2)
        worst = max(worst, abs(limit - continued))
    assert worst < tol
    report(
        "criterion 06 scheme agreement",
        f"worst |zeta - extrapolated cutoff| = {worst:.2e} < {tol:.2e}",
    )


def test_criterion_07_non_commutation():
    reportdata = limits_lab.commutation_report(
        G1,
        CommutationModel.FREE_SCALAR,
        deltas=[0.02, 0.01, 0.005, 0.0025],
        epsilons=[1e-3, 5e-4, 2.5e-4],
    )
    exponent = reportdata.window_fit_exponent
    assert abs(exponent + 1.0) <= 0.02
    finite = reportdata.sum_then_regularize
    assert finite == pytest.approx(-math.pi / 24.0, rel=1e-12)
    assert reportdata.cutoff_spread < 1e-8
    assert reportdata.verdict.agrees
    report(
        "criterion 07 non-commutation",
        f"window exponent {exponent:.4f}; finite route {finite:.10f}; "
        f"cutoff spread {reportdata.cutoff_spread:.2e} < 1e-8",
    )


def test_criterion_08_interacting_scalar():
    assert Fraction(1, 8) * Fraction(1, 18) == Fraction(1, 144)
    assert 8 * 18 == 144
    c0 = Couplings(alpha=0.0, m=1.0)
    assert scalar1d.interacting_total_energy(G1, c0) == scalar1d.free_total_energy(G1)
    c = Couplings(alpha=0.01, m=10.0)
    total = scalar1d.interacting_total_energy(G1, c)
    density_constant_part = -c.alpha * math.pi ** 2 / (8.0 * c.m ** 2 * G1.length ** 4) / 18.0
    recomposed = scalar1d.free_total_energy(G1) + G1.length * density_constant_part
    assert total == pytest.approx(recomposed, rel=1e-14)
    report(
        "criterion 08 interacting scalar",
        "8 * 18 = 144 exact; alpha = 0 reduces to the free total; "
        f"total {total:.10f} = free + L * constant density part",
    )


def test_criterion_09_em_correction_identity_and_scaling():
    assert 2 ** 7 * 3 ** 3 * 5 * 225 == 2 ** 7 * 3 ** 5 * 5 ** 3 == 3888000
    assert Fraction(11, 225) / (2 ** 7 * 3 ** 3 * 5) == Fraction(11, 3888000)
    c = em3d.EhCouplings(alpha=1.0 / 137.036, m=1.0)
    free = G1.length * em3d.free_casimir_density(G1)
    correction = G1.length * em3d.eh_correction_constant(G1, c)
    assert em3d.corrected_total_energy(G1, c) == free + correction
    g2 = Geometry(2.0)
    correction2 = g2.length * em3d.eh_correction_constant(g2, c)
    ratio = correction / correction2
    assert abs(ratio - 128.0) <= 1e-12 * 128.0
    report(
        "criterion 09 EM correction",
        f"rational identity exact; L-scaling ratio {ratio!r} = 128 within 1e-12",
    )


def test_criterion_10_near_plate_asymptotics():
    devs = {}
    for theta, tol in ((0.05, 1e-2), (0.01, 5e-4)):
        p = pos(theta)
        scaled = em3d.correlators(G1, p).e2 * 16.0 * math.pi ** 2 * p.z ** 4
        devs[theta] = abs(scaled / 3.0 - 1.0)
        assert devs[theta] < tol

    spec = limits_lab.GridSpec(200, limits_lab.Clustering.ENDPOINTS)
    scalar_profile = limits_lab.sample_profile(
        scalar1d.density_split, G1, RegScheme.zeta(), spec
    )
    scalar_fit = limits_lab.fit_divergence(
        scalar_profile, limits_lab.Endpoint.LEFT, component="electric",
        constant_part=-math.pi / 48.0,
    )
    assert abs(scalar_fit.exponent + 2.0) <= 0.02

    em_profile = limits_lab.sample_profile(
        lambda g, p, _s: em3d.correlators(g, p).e2, G1, RegScheme.zeta(), spec
    )
    em_fit = limits_lab.fit_divergence(
        em_profile, limits_lab.Endpoint.LEFT, component="electric",
        constant_part=-math.pi ** 2 / (16.0 * 45.0),
    )
    assert abs(em_fit.exponent + 4.0) <= 0.02

    c = em3d.EhCouplings()
    eh_profile = limits_lab.sample_profile(
        lambda g, p, _s: em3d.eh_correction_density(g, p, c), G1, RegScheme.zeta(), spec
    )
    eh_fit = limits_lab.fit_divergence(
        eh_profile, limits_lab.Endpoint.LEFT, component="electric",
        constant_part=em3d.eh_correction_constant(G1, c),
    )
    assert abs(eh_fit.exponent + 8.0) <= 0.1
    report(
        "criterion 10 near-plate asymptotics",
        f"scaled limits within {devs[0.05]:.2e}/{devs[0.01]:.2e}; exponents "
        f"{scalar_fit.exponent:.3f}, {em_fit.exponent:.3f}, {eh_fit.exponent:.3f}",
    )


def test_criterion_11_profile_dual_definitions():
    worst = 0.0
    for theta in np.linspace(0.15, math.pi - 0.15, 20):
        worst = max(
            worst,
            abs(em3d.profile_F(theta) - em3d.profile_F_via_cot_derivative(theta)),
        )
    assert worst < 1e-9
    report("criterion 11 profile dual definitions", f"worst |diff| = {worst:.2e} < 1e-9")


def test_criterion_12_cli_determinism_and_verify():
    cli = [sys.executable, "-m", "platevac"]
    args = [
        "density", "--model", "scalar", "--length", "1", "--grid", "21",
        "--format", "csv",
    ]
    env = os.environ.copy()
    first = subprocess.run(cli + args, capture_output=True, env=env)
    second = subprocess.run(cli + args, capture_output=True, env=env)
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout

    verify_run = subprocess.run(
        cli + ["verify", "--suite", "quick"], capture_output=True, env=env
    )
    assert verify_run.returncode == 0
    payload = json.loads(verify_run.stdout)
    assert payload["all_passed"] is True
    report(
        "criterion 12 CLI determinism",
        f"two identical runs byte-equal ({len(first.stdout)} bytes); "
        "verify quick exits 0",
    )
