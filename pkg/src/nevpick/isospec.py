"""The isospectral entire curve ``f(zeta) = exp(-C zeta) (D + zeta U) exp(C zeta)``.

From a Schur form ``A = Q T Q*`` take ``D = diag(T)``, ``U = T - D`` and
``C = -log(Q)`` with the principal logarithm of the unitary ``Q``.  Then
``f(0) = D``, ``f(1) = A`` and every ``f(zeta)`` is similar to the upper
triangular ``D + zeta U``, so its characteristic polynomial is that of ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Sequence

import numpy as np
import scipy.linalg

from .config import DEFAULT, Config
from .errors import AssertionReport, NoConvergence, NotUnitary
from .spectra import as_matrix, chi


def schur_decompose(A, cfg: Config = DEFAULT):
    """Complex Schur form ``A = Q T Q*`` (LAPACK ``zgees`` via scipy)."""
    A = as_matrix(A)
    try:
        T, Q = scipy.linalg.schur(A, output="complex")
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NoConvergence(f"Schur decomposition failed: {exc}") from exc
    return Q, T


def matrix_exp(M) -> np.ndarray:
    """Scaling and squaring with a Pade core (``scipy.linalg.expm``)."""
    return scipy.linalg.expm(as_matrix(M))


def matrix_log_unitary(Q, tol: float = 1e-10) -> np.ndarray:
    """Principal logarithm of a unitary matrix, skew-Hermitian, angles in ``(-pi, pi]``.

    A unitary matrix is normal, so its complex Schur form is diagonal and the
    Schur vectors are orthonormal eigenvectors: ``Q = V diag(e^{i theta}) V*``.
    """
    Q = as_matrix(Q)
    n = Q.shape[0]
    err = float(np.linalg.norm(Q.conj().T @ Q - np.eye(n)))
    if err > tol * max(1.0, n):
        raise NotUnitary(f"||Q*Q - I|| = {err:.3e} exceeds tolerance", field="matrix")
    T, V = scipy.linalg.schur(Q, output="complex")
    w = np.diag(T)
    theta = np.angle(w)
    # eigenvalues at -1 up to rounding take theta = pi, never -pi
    theta[np.abs(w + 1) <= tol] = np.pi
    return (V * (1j * theta)) @ V.conj().T


@dataclass(frozen=True, eq=False)
class IsospectralPath:
    D: np.ndarray
    U: np.ndarray
    C: np.ndarray
    source: np.ndarray

    def __call__(self, zeta: complex) -> np.ndarray:
        E = matrix_exp(self.C * zeta)
        Einv = matrix_exp(-self.C * zeta)
        return Einv @ (self.D + zeta * self.U) @ E

    def deviation(self, zeta: complex, cfg: Config = DEFAULT) -> np.ndarray:
        """Componentwise ``|chi(f(zeta)) - chi(A)|``."""
        return np.abs(chi(self(zeta), cfg) - chi(self.source, cfg))


def isospectral_path(A, cfg: Config = DEFAULT) -> IsospectralPath:
    A = as_matrix(A)
    Q, T = schur_decompose(A, cfg)
    D = np.diag(np.diag(T))
    U = np.triu(T, 1)
    C = -matrix_log_unitary(Q)
    return IsospectralPath(D, U, C, A)


def default_samples(cfg: Config = DEFAULT) -> np.ndarray:
    """``grid_points`` each on ``[0, 1]``, the unit circle and the circle of radius 2."""
    m = cfg.grid_points
    circle = np.exp(2j * np.pi * np.arange(m) / m)
    return np.concatenate((np.linspace(0.0, 1.0, m).astype(complex), circle, 2 * circle))


@dataclass
class PathReport:
    samples: List[complex]
    deviations: List[List[float]]
    max_deviation: float
    tolerance: float
    endpoint_error: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "samples": [{"zeta": [z.real, z.imag], "deviation": d} for z, d in zip(self.samples, self.deviations)],
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "endpoint_error": self.endpoint_error,
            "passed": self.passed,
        }


def path_report(A, cfg: Config = DEFAULT, samples: Sequence[complex] = None) -> PathReport:
    """Sample ``chi`` along the path; tolerance ``path_tol * (1 + ||A||)**n``."""
    path = isospectral_path(A, cfg)
    A = path.source
    n = A.shape[0]
    zs = default_samples(cfg) if samples is None else np.asarray(samples, dtype=complex)
    target = chi(A, cfg)
    devs = [np.abs(chi(path(z), cfg) - target) for z in zs]
    worst = float(max(np.max(d) for d in devs)) if devs else 0.0
    tol = cfg.path_tol * (1 + float(np.linalg.norm(A))) ** n
    end = float(np.linalg.norm(path(1.0) - A))
    ok = worst <= tol and end <= 1e-8 * max(float(np.linalg.norm(A)), 1e-300)
    return PathReport([complex(z) for z in zs], [d.tolist() for d in devs], worst, tol, end, ok)


@dataclass
class PreservationReport:
    passed: bool
    max_deviation: float
    tolerance: float
    checked: int
    failures: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "checked": self.checked,
            "failures": self.failures,
        }


def spectrum_preservation_test(
    mapping: Callable[[np.ndarray], np.ndarray],
    A,
    cfg: Config = DEFAULT,
    n_path: int = 8,
    n_conjugates: int = 8,
    rng: np.random.Generator = None,
    raise_on_failure: bool = True,
) -> PreservationReport:
    """Check ``chi(map(A)) = chi(map(B))`` for ``B`` isospectral to ``A``.

    ``B`` runs over samples of the isospectral path of ``A`` and over random
    similarity conjugates of ``A`` (condition number at most 10).
    """
    from .testing import random_similarity

    A = as_matrix(A)
    n = A.shape[0]
    rng = np.random.default_rng(cfg.seed) if rng is None else rng
    path = isospectral_path(A, cfg)
    others = [path(z) for z in np.linspace(0.0, 1.0, n_path)]
    for _ in range(n_conjugates):
        S = random_similarity(rng, n, 10.0)
        others.append(S @ A @ np.linalg.inv(S))
    ref = chi(mapping(A), cfg)
    tol = cfg.path_tol * (1 + float(np.linalg.norm(A))) ** n
    failures = []
    worst = 0.0
    for i, B in enumerate(others):
        d = float(np.max(np.abs(chi(mapping(B), cfg) - ref)))
        worst = max(worst, d)
        if d > tol:
            failures.append({"sample": i, "deviation": d})
    report = PreservationReport(not failures, worst, tol, len(others), failures)
    if failures and raise_on_failure:
        raise AssertionReport(report)
    return report
