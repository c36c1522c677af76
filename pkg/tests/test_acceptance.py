"""
End-to-end acceptance checks. Each test prints one ``ACCEPTANCE n: PASS|FAIL``
line (collected into the pytest terminal summary) and asserts the criterion
at its stated tolerance.
"""

from __future__ import annotations

import csv
import math
import time

import numpy as np
import pytest

from irrcorr import cli
from irrcorr.core import (
    OscillatorParams,
    build_diffusion,
    build_drift,
    equilibrium_covariance,
    integrate_covariance,
    is_stable,
    steady_state,
    steady_state_deviation,
    thermal_covariance,
)
from irrcorr.correlations import (
    discord_closed_form,
    discord_numeric,
    homodyne_branch,
    identical_oscillators_mi,
    mutual_information,
)
from irrcorr.entropy import (
    entropy_flux_trace,
    entropy_production_diagonal,
    entropy_production_offdiagonal,
    entropy_production_trace,
    entropy_rate,
    identical_oscillators_pi,
    stationary_entropy,
)
from irrcorr.optomech import OptomechConfig, evaluate, pi_small_g_expansion
from irrcorr.sampler import (
    STABILITY_MARGIN,
    SampleSpec,
    bound_configurations,
    bound_violations,
    draw_parameters,
    mutual_info_lower_asymptote,
    sample_steady_states,
)

from .conftest import ACCEPTANCE_LINES


def report(n: int, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def stable_draws(spec: SampleSpec, limit: int):
    out = []
    for w, g, na, nb in draw_parameters(spec):
        p = OscillatorParams(float(w), float(g), spec.kappa_a, spec.kappa_b, float(na), float(nb))
        if is_stable(build_drift(p), STABILITY_MARGIN):
            out.append(p)
            if len(out) == limit:
                break
    return out


def run_cli(tmp_path, name, *args):
    out = tmp_path / f"{name}.csv"
    code = cli.main([*args, "--out", str(out), "--workers", "1"])
    assert code == 0, f"cli {args} exited with {code}"
    lines = out.read_text(encoding="utf-8").splitlines()
    return list(csv.DictReader(l for l in lines if not l.startswith("#")))


def column(rows, key):
    return np.array([float(r[key]) for r in rows])


# 1 -----------------------------------------------------------------------------


def test_acceptance_1_three_way_agreement():
    params = stable_draws(SampleSpec(count=2000, seed=1), 1000)
    t0 = time.perf_counter()
    worst = 0.0
    for p in params:
        d = steady_state_deviation(p)
        s = equilibrium_covariance(p) + d
        a = entropy_production_diagonal(s, p, deviation=d).pi_s
        b = entropy_production_offdiagonal(s, p).pi_s
        c = entropy_production_trace(s, p, deviation=d)
        worst = max(worst, max(abs(a - b), abs(a - c), abs(b - c)) / abs(a))
    elapsed = time.perf_counter() - t0
    ok = len(params) >= 1000 and worst <= 1e-9 and elapsed < 10
    report(1, ok, f"{len(params)} states, worst relative spread {worst:.2e} (tol 1e-9), {elapsed:.2f} s (limit 10 s)")


# 2 -----------------------------------------------------------------------------


def test_acceptance_2_closed_forms():
    worst_pi = worst_pi_unequal = worst_mi = 0.0
    for kappa in (0.05, 0.1, 0.2, 0.5, 1.0):
        for frac in (0.05, 0.2, 0.5, 0.8, 0.95):
            G = frac * (kappa**2 + 1)
            for N in (0.0, 3.0):
                p = OscillatorParams(1.0, G, kappa, kappa, N, N)
                ref = stationary_entropy(p).pi_s
                worst_pi = max(worst_pi, abs(identical_oscillators_pi(kappa, kappa, G) / ref - 1))
                mi = mutual_information(steady_state(p))
                worst_mi = max(worst_mi, abs(identical_oscillators_mi(kappa, G) / mi - 1))
                kb = 2.5 * kappa
                Gu = frac * math.sqrt((kappa**2 + 1) * (kb**2 + 1))
                pu = OscillatorParams(1.0, Gu, kappa, kb, N, N)
                if is_stable(build_drift(pu), STABILITY_MARGIN):
                    refu = stationary_entropy(pu).pi_s
                    worst_pi_unequal = max(worst_pi_unequal, abs(identical_oscillators_pi(kappa, kb, Gu) / refu - 1))
    value = identical_oscillators_pi(0.2, 0.2, 0.1)
    ok = max(worst_pi, worst_pi_unequal, worst_mi) <= 1e-9 and abs(value - 1.9410e-3) <= 1e-7
    report(
        2,
        ok,
        f"production rate rel err {worst_pi:.1e} (unequal rates {worst_pi_unequal:.1e}), "
        f"mutual information rel err {worst_mi:.1e}, reference value {value:.10e}",
    )


# 3 -----------------------------------------------------------------------------


def test_acceptance_3_rate_balance():
    rng = np.random.default_rng(3)
    worst = 0.0
    min_pi = math.inf
    n = 0
    while n < 10:
        p = OscillatorParams(rng.uniform(0, 3), rng.uniform(0, 1.5), rng.uniform(0.1, 1), rng.uniform(0.1, 1), rng.uniform(0, 5), rng.uniform(0, 5))
        A = build_drift(p)
        if not is_stable(A, 1e-2):
            continue
        n += 1
        s0 = thermal_covariance(rng.uniform(0, 5), rng.uniform(0, 5))
        traj = integrate_covariance(s0, A, build_diffusion(p), 30.0)
        for s in traj.covariances:
            ds = entropy_rate(s, p)
            pi = entropy_production_trace(s, p)
            phi = entropy_flux_trace(s, p)
            worst = max(worst, abs(ds - phi - pi))
            min_pi = min(min_pi, pi)
    ok = worst <= 1e-8 and min_pi >= -1e-10
    report(3, ok, f"10 trajectories, max |dS/dt - Phi - Pi| = {worst:.2e}, min Pi = {min_pi:.3e}")


# 4 -----------------------------------------------------------------------------


def _ratios(errs):
    return [errs[0] / errs[1], errs[1] / errs[2]]


def test_acceptance_4_small_coupling_proportionality():
    ratios_mi = []
    ratios_d = []
    for N in (0.0, 1.0, 4.0):
        e_mi, e_d = [], []
        for G in (0.04, 0.02, 0.01):
            p = OscillatorParams(0.7, G, 0.2, 0.5, N, N)
            s = steady_state(p)
            pi = stationary_entropy(p).pi_s
            e_mi.append(abs(mutual_information(s) - pi / (2 * p.kappa_tot)))
            e_d.append(abs(discord_closed_form(s) - pi / (4 * p.kappa_tot * (N + 1))))
        ratios_mi += _ratios(e_mi)
        ratios_d += _ratios(e_d)
    ok = all(12 <= r <= 20 for r in ratios_mi + ratios_d)
    report(
        4,
        ok,
        f"mutual information ratios {min(ratios_mi):.3f}..{max(ratios_mi):.3f}, "
        f"discord ratios (N=0,1,4) {min(ratios_d):.3f}..{max(ratios_d):.3f} (target 16 +- 4)",
    )


# 5 -----------------------------------------------------------------------------


def test_acceptance_5_occupation_independence():
    base = dict(omega_a=0.7, G=0.3, kappa_a=0.2, kappa_b=0.5)
    pis, mis = [], []
    for N in (0.0, 1.0, 10.0):
        p = OscillatorParams(**base, N_a=N, N_b=N)
        pis.append(stationary_entropy(p).pi_s)
        mis.append(mutual_information(steady_state(p)))
    spread_pi = max(pis) - min(pis)
    spread_mi = max(mis) - min(mis)
    d0 = discord_closed_form(steady_state(OscillatorParams(**base)))
    d5 = discord_closed_form(steady_state(OscillatorParams(**base, N_a=5.0, N_b=5.0)))
    ok = spread_pi <= 1e-9 and spread_mi <= 1e-9 and abs(d0 - d5) > 1e-6
    report(5, ok, f"Pi spread {spread_pi:.1e}, I spread {spread_mi:.1e}, |D(N=0) - D(N=5)| = {abs(d0 - d5):.3e}")


# 6 -----------------------------------------------------------------------------


def test_acceptance_6_discord_oracle():
    params = stable_draws(SampleSpec(count=2000, seed=2), 1000)
    worst = 0.0
    hits = {True: 0, False: 0}
    for p in params:
        s = steady_state(p)
        hits[homodyne_branch(s)] += 1
        worst = max(worst, abs(discord_closed_form(s) - discord_numeric(s)[0]))
    ok = len(params) == 1000 and worst <= 1e-7 and min(hits.values()) >= 50
    report(6, ok, f"{len(params)} states, max |closed - numeric| = {worst:.2e}, homodyne {hits[True]}, general {hits[False]}")


# 7 -----------------------------------------------------------------------------


def test_acceptance_7_bounds():
    details = []
    total = 0
    for label, nr in (("N<=10", (0.0, 10.0)), ("N<=1", (0.0, 1.0))):
        spec = SampleSpec(N_a_range=nr, N_b_range=nr, count=10_000, seed=0)
        pts = sample_steady_states(spec)
        for kind in ("mutual_info", "discord"):
            v, uncovered = bound_violations(pts, kind, spec.kappa_a, spec.kappa_b, spec.N_max, tol=1e-6)
            total += len(v) + uncovered
            worst = max((x.excess for x in v), default=0.0)
            sides = sorted({x.side for x in v})
            details.append(f"{label} {kind}: {len(v)} violations {sides} worst {worst:.1e}")
    asym = mutual_info_lower_asymptote(0.5, 1.0)
    lower = bound_configurations("mutual_info", 0.5, 1.0, 10.0)["lower"]
    direct = lower.evaluate(1e3)[1]
    asym_ok = abs(asym - 0.5 * math.log(20.625)) <= 1e-3 and abs(direct - asym) <= 1e-3
    details.append(f"asymptote {asym:.6f}, direct at G=1e3 {direct:.6f}")
    report(7, total == 0 and asym_ok, "; ".join(details))


# 8 -----------------------------------------------------------------------------


def _local_maxima(y):
    return [i for i in range(1, len(y) - 1) if y[i] > y[i - 1] and y[i] > y[i + 1]]


def test_acceptance_8_figure_features(tmp_path):
    checks = {}

    rows = [r for r in run_cli(tmp_path, "fig2d", "sweep", "--config", "fig2d") if float(r["kappa_b"]) == 0.2]
    w, pi = column(rows, "omega_a"), column(rows, "pi_s")
    checks["fig2 peak at omega_a=1"] = (abs(w[np.argmax(pi)] - 1.0) <= 0.01, f"argmax {w[np.argmax(pi)]:.2f}")

    rows = run_cli(tmp_path, "fig3", "sweep", "--config", "fig3")
    argmins = []
    for G in (0.05, 0.2):
        sub = [r for r in rows if float(r["G"]) == G]
        ratio, pi = column(sub, "N_ratio"), column(sub, "pi_s")
        argmins.append(round(float(ratio[np.argmin(pi)]), 4))
    checks["fig3 minimum at N_b/N_a=1"] = (all(abs(a - 1) <= 0.01 for a in argmins), f"argmin {argmins}")

    rows = [r for r in run_cli(tmp_path, "fig5d", "sweep", "--config", "fig5d") if float(r["kappa_b"]) == 0.2]
    w, pi = column(rows, "omega_a"), column(rows, "pi_s")
    peaks = [round(float(w[i]), 2) for i in _local_maxima(pi)]
    checks["fig5(d) second peak"] = (len(peaks) >= 2, f"peaks at {peaks}")

    rows = run_cli(tmp_path, "fig8ab", "optomech", "--config", "fig8ab")
    stable = [r for r in rows if r["stable"] == "1"]
    d, mu_b, pi = column(stable, "Delta"), column(stable, "mu_b"), column(stable, "pi_s")
    sign_change = mu_b.min() < 0 < mu_b.max()
    checks["fig8 mu_b sign change, minimum at Delta=1"] = (
        sign_change and abs(d[np.argmin(mu_b)] - 1) <= 0.01,
        f"argmin {d[np.argmin(mu_b)]:.2f}",
    )
    tail = run_cli(tmp_path, "fig8tail", "optomech", "--config", "fig8ab", "--set", "Delta=-20,20")
    tail_ratio = max(column(tail, "pi_s")) / pi.max()
    checks["fig8 Pi(|Delta|=20) below 1e-6 of peak"] = (tail_ratio < 1e-6, f"ratio {tail_ratio:.2e}")

    rows = run_cli(tmp_path, "fig4c", "sweep", "--config", "fig4c")
    en = column(rows, "log_neg")
    checks["fig4(c) no entanglement"] = (bool(np.all(en == 0)), f"max E_N {en.max():.1e}")

    ok = all(v[0] for v in checks.values())
    detail = "; ".join(f"{k}: {'ok' if v[0] else 'FAILED'} ({v[1]})" for k, v in checks.items())
    report(8, ok, detail)


# 9 -----------------------------------------------------------------------------


def test_acceptance_9_optomech_expansion():
    deltas = np.linspace(-3, 3, 121)
    details = []
    ok = True
    for gamma in (1e-6, 1e-7):
        for g in (0.005, 1e-3, 1e-4, 1e-5, 1e-6):
            worst = 0.0
            unstable = 0
            for d in deltas:
                cfg = OptomechConfig(float(d), g, 0.2, gamma, 1e3)
                r = evaluate(cfg)
                if not r.stable:
                    unstable += 1
                    continue
                worst = max(worst, abs(pi_small_g_expansion(cfg) / r.pi_s - 1))
            passed = unstable == 0 and worst <= 0.02
            ok &= passed
            details.append(f"gamma_m={gamma:g} g={g:g}: max rel err {worst:.1e}, unstable {unstable}/{len(deltas)}")
    report(9, ok, "; ".join(details))


# 10 ----------------------------------------------------------------------------


def test_acceptance_10_determinism(tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / f"run{i}.csv"
        code = cli.main(["random", "--config", "fig6a", "--seed", "2024", "--out", str(out), "--workers", "1"])
        assert code == 0
        outs.append((out.read_bytes(), (tmp_path / f"run{i}.curves.csv").read_bytes()))
    ok = outs[0] == outs[1]
    report(10, ok, f"two seeded runs of the random command, {len(outs[0][0])} + {len(outs[0][1])} bytes, identical={ok}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
