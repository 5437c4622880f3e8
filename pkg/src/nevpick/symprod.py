"""Maps on the symmetrized product ``Sigma^n``.

``Sigma^n phi (pi_n(z)) = pi_n(phi(z_1), ..., phi(z_n))`` is evaluated root-wise:
recover the ``z_j`` as roots of ``P_X``, map them, and symmetrize again.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

import numpy as np

from .config import DEFAULT, Config
from .errors import AssertionReport, DomainViolation, InputError, NumericalError
from .funcalc import HoloFunction, as_holo
from .polynomials import from_sym_point, pi_n, roots
from .spectra import chi, companion


@dataclass(frozen=True)
class InducedMap:
    """``phi`` acting on unordered ``n``-tuples through ``pi_n``."""

    phi: HoloFunction
    n: int
    disc_domain: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise InputError("n must be positive", field="n")
        object.__setattr__(self, "phi", as_holo(self.phi))

    def check_points(self, pts, cfg: Config = DEFAULT) -> None:
        """Raise :class:`DomainViolation` if some point lies outside ``phi``'s domain."""
        for p in pts:
            if self.disc_domain and not abs(p) < 1:
                raise DomainViolation(f"{p} lies outside the unit disc", field="X")
            try:
                self.phi.check_domain(p, cfg)
            except (InputError, NumericalError) as exc:
                raise DomainViolation(f"{p} is outside the domain of phi: {exc}", field="X") from exc


def sigma_n_phi(m: InducedMap, X, cfg: Config = DEFAULT) -> np.ndarray:
    X = np.asarray(X, dtype=complex).ravel()
    if X.size != m.n:
        raise InputError(f"SymPoint has {X.size} coordinates, map expects {m.n}", field="X")
    z = roots(from_sym_point(X), cfg)
    m.check_points(z, cfg)
    return pi_n(np.array([m.phi(p, cfg) for p in z], dtype=complex))


@dataclass
class IdentityReport:
    passed: bool
    max_error: float
    tolerance: float
    computed: List[complex] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "computed": [[c.real, c.imag] for c in self.computed],
        }


def chi_tau_identity_check(X, cfg: Config = DEFAULT, tol: float = 1e-10, raise_on_failure: bool = True) -> IdentityReport:
    """``chi(companion(X)) = X``, the companion matrix being a section of ``chi``."""
    X = np.asarray(X, dtype=complex).ravel()
    Y = chi(companion(X), cfg)
    err = float(np.max(np.abs(Y - X))) if X.size else 0.0
    report = IdentityReport(err <= tol, err, tol, [complex(c) for c in Y])
    if not report.passed and raise_on_failure:
        raise AssertionReport(report)
    return report
