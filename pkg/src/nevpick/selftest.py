"""Reduced invariant suite behind ``nevpick selftest``.

Each check runs a small seeded sweep and reports ``passed`` with the worst
quantity observed; the full-size sweeps live in the test suite.
"""

from __future__ import annotations

import time
from typing import Callable, List

import numpy as np

from .config import DEFAULT, Config


def _check(name: str, fn: Callable[[], dict]) -> dict:
    t0 = time.perf_counter()
    try:
        detail = fn()
        passed = bool(detail.pop("passed"))
    except Exception as exc:  # a crash is a failed check, reported rather than raised
        detail, passed = {"exception": f"{type(exc).__name__}: {exc}"}, False
    return {"name": name, "passed": passed, "seconds": round(time.perf_counter() - t0, 3), **detail}


def run_selftest(cfg: Config = DEFAULT, trials: int = 40) -> List[dict]:
    from . import testing
    from .funcalc import apply, predict_minpoly
    from .isospec import path_report
    from .nptest import InterpolationData, check_three_point, check_two_point, random_feasible_dataset, schwarz_check
    from .polynomials import from_sym_point, pi_n, roots
    from .spectra import minimal_polynomial_oracle, spectral_data
    from .symprod import chi_tau_identity_check

    rng = np.random.default_rng(cfg.seed)

    def minpoly():
        bad, done, worst = 0, 0, 0.0
        while done < trials:
            case = testing.random_jordan_case(rng)
            f = testing.random_holo_function(rng, case)
            if testing.image_separation(f, case) < testing.MIN_IMAGE_SEPARATION:
                continue
            done += 1
            sd = spectral_data(case.matrix, cfg)
            pred = predict_minpoly(f, case.matrix, cfg, sd)
            M, mag = apply(f, case.matrix, cfg, sd, return_scale=True)
            orc = minimal_polynomial_oracle(M, cfg, scale=mag)
            if orc.degree != pred.degree:
                bad += 1
                continue
            err = testing.grouped_mismatch(pred.factors, roots(orc, cfg))
            worst = max(worst, err)
            bad += err > 1e-6
        return {"passed": bad == 0, "trials": done, "failures": int(bad), "worst_root_error": worst}

    def projections():
        worst = 0.0
        for _ in range(trials):
            case = testing.random_jordan_case(rng)
            sd = spectral_data(case.matrix, cfg)
            n = sd.n
            E = sd.projections
            worst = max(worst, float(np.linalg.norm(sum(E) - np.eye(n))))
            for i, P in enumerate(E):
                worst = max(worst, float(np.linalg.norm(P @ P - P)))
                for Q in E[i + 1 :]:
                    worst = max(worst, float(np.linalg.norm(P @ Q)))
        return {"passed": worst <= 1e-7, "trials": trials, "worst": worst}

    def soundness():
        bad = 0
        for s in range(trials):
            N = 2 + s % 2
            data, _ = random_feasible_dataset(cfg.seed + s, 2 + s % 4, N, (0.1, 0.2, 0.3)[s % 3], cfg)
            v = check_two_point(data, cfg) if N == 2 else check_three_point(data, cfg)
            bad += v.infeasible
        return {"passed": bad == 0, "trials": trials, "false_refutations": int(bad)}

    def refutations():
        two = check_two_point(InterpolationData([0, 0.5], [[[0]], [[0.9]]], cfg), cfg)
        three = check_three_point(
            InterpolationData([0, 0.1, 0.2], [np.zeros((2, 2)), 0.01 * np.eye(2), np.diag([0.99, 0.99])], cfg), cfg
        )
        ok = two.infeasible and three.infeasible
        ok = ok and abs(two.witness["lhs"] - 0.9) <= 1e-9 and abs(two.witness["rhs"] - 0.5) <= 1e-9
        ok = ok and abs(three.witness["lhs"] - 0.99) <= 1e-9 and abs(three.witness["rhs"] - 0.2) <= 1e-9
        return {"passed": ok}

    def isospectral():
        worst = 0.0
        ok = True
        for _ in range(max(1, trials // 4)):
            n = int(rng.integers(1, 7))
            A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            rep = path_report(A, cfg)
            ok = ok and rep.passed
            worst = max(worst, rep.max_deviation / rep.tolerance)
        return {"passed": ok, "worst_relative_deviation": worst}

    def schwarz():
        worst = -np.inf
        ok = True
        for _ in range(max(1, trials // 4)):
            F = testing.random_schwarz_disc(rng, int(rng.integers(1, 6)))
            zs = 0.999 * np.sqrt(rng.uniform(size=64)) * np.exp(2j * np.pi * rng.uniform(size=64))
            rep = schwarz_check(F, zs, cfg, raise_on_failure=False)
            ok = ok and rep.passed
            worst = max(worst, rep.max_excess)
        return {"passed": ok, "max_excess": float(worst)}

    def round_trips():
        worst_chi = worst_roots = 0.0
        for _ in range(trials):
            n = int(rng.integers(2, 9))
            z = testing.random_disc_points(rng, n, 1.0)
            X = pi_n(z)
            worst_chi = max(worst_chi, chi_tau_identity_check(X, cfg, raise_on_failure=False).max_error)
            r = roots(from_sym_point(X), cfg)
            rows, cols = testing.match_multisets(z, r)
            worst_roots = max(worst_roots, float(np.max(np.abs(z[rows] - r[cols]))))
        return {"passed": worst_chi <= 1e-10 and worst_roots <= 1e-8, "chi_tau": worst_chi, "roots": worst_roots}

    return [
        _check("minimal polynomial of f(A) against brute force", minpoly),
        _check("spectral projection axioms", projections),
        _check("checker soundness on feasible data", soundness),
        _check("known refutations", refutations),
        _check("isospectral path keeps chi constant", isospectral),
        _check("Schwarz bound for discs through the origin", schwarz),
        _check("chi/companion and roots/pi_n round trips", round_trips),
    ]
