"""Holomorphic functional calculus on matrices and minimal polynomials of ``f(A)``.

Every function kind exposes exact Taylor data at a point: polynomials and
rational functions (Blaschke products included) are expanded by synthetic
division, never by finite differences, because the minimal-polynomial
exponents jump with the order of vanishing of ``f'``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .config import DEFAULT, Config
from .discgeo import BlaschkeProduct
from .errors import DomainViolation, InputError, InsufficientDerivatives, PoleOnSpectrum
from .polynomials import ComplexPoly, roots, taylor_coefficients
from .spectra import SpectralData, cluster, spectral_data

INF = math.inf


class HoloFunction:
    """Base class: subclasses provide :meth:`taylor`."""

    kind = "abstract"

    def taylor(self, lam: complex, order: int, cfg: Config = DEFAULT) -> np.ndarray:
        """``[f(lam), f'(lam), f''(lam)/2!, ...]`` up to ``s**order``."""
        raise NotImplementedError

    def derivs(self, lam: complex, j_max: int, cfg: Config = DEFAULT) -> np.ndarray:
        t = self.taylor(lam, j_max, cfg)
        return t * np.array([math.factorial(j) for j in range(j_max + 1)], dtype=float)

    def __call__(self, lam: complex, cfg: Config = DEFAULT) -> complex:
        return complex(self.taylor(lam, 0, cfg)[0])

    def check_domain(self, lam: complex, cfg: Config = DEFAULT) -> None:
        pass

    def snap(self, lam: complex, cfg: Config = DEFAULT) -> complex:
        """Point at which to read off vanishing orders (see :class:`BlaschkeFunction`)."""
        return lam


class PolynomialFunction(HoloFunction):
    kind = "polynomial"

    def __init__(self, p: ComplexPoly):
        self.p = p if isinstance(p, ComplexPoly) else ComplexPoly(p)

    def taylor(self, lam, order, cfg=DEFAULT):
        t = taylor_coefficients(self.p, lam)
        out = np.zeros(order + 1, dtype=complex)
        k = min(order + 1, t.size)
        out[:k] = t[:k]
        return out

    def to_json(self):
        return {"kind": self.kind, **self.p.to_json()}


def _series_divide(num: np.ndarray, den: np.ndarray, order: int) -> np.ndarray:
    out = np.zeros(order + 1, dtype=complex)
    for k in range(order + 1):
        acc = num[k] if k < num.size else 0
        for i in range(1, min(k, den.size - 1) + 1):
            acc -= den[i] * out[k - i]
        out[k] = acc / den[0]
    return out


class RationalFunction(HoloFunction):
    kind = "rational"

    def __init__(self, num: ComplexPoly, den: ComplexPoly):
        self.num = num if isinstance(num, ComplexPoly) else ComplexPoly(num)
        self.den = den if isinstance(den, ComplexPoly) else ComplexPoly(den)
        if self.den.is_zero():
            raise InputError("denominator is the zero polynomial", field="den")
        self._poles = roots(self.den) if self.den.degree >= 1 else np.zeros(0, dtype=complex)

    def poles(self) -> np.ndarray:
        return self._poles

    def check_domain(self, lam, cfg=DEFAULT):
        if self._poles.size and np.min(np.abs(self._poles - lam)) <= cfg.pole_tol * max(1.0, abs(lam)):
            raise PoleOnSpectrum(f"{lam} is within pole_tol of a pole")

    def taylor(self, lam, order, cfg=DEFAULT):
        self.check_domain(lam, cfg)
        n = taylor_coefficients(self.num, lam)
        d = taylor_coefficients(self.den, lam)
        return _series_divide(n, d, order)

    def to_json(self):
        return {
            "kind": self.kind,
            "num": self.num.to_json()["coeffs"],
            "den": self.den.to_json()["coeffs"],
        }


class BlaschkeFunction(RationalFunction):
    kind = "blaschke"

    def __init__(self, b: BlaschkeProduct):
        self.b = b
        self.num = b.numerator()
        self.den = b.denominator()
        self._poles = np.array(b.poles(), dtype=complex)

    def snap(self, lam, cfg=DEFAULT):
        # eigenvalues that coincide with a zero up to clustering error are read at the zero itself
        for a, _ in self.b.zeros:
            if abs(lam - a) <= cfg.cluster_tol * max(1.0, abs(a)):
                return a
        return lam

    def to_json(self):
        return {"kind": self.kind, **self.b.to_json()}


class TableFunction(HoloFunction):
    """Derivative values given at finitely many points: ``[(lam, [f, f', f'', ...]), ...]``."""

    kind = "table"

    def __init__(self, points: Sequence[Tuple[complex, Sequence[complex]]], match_tol: float = 1e-9):
        self.points = [(complex(p), np.asarray(d, dtype=complex)) for p, d in points]
        self.match_tol = match_tol

    def _lookup(self, lam):
        for p, d in self.points:
            if abs(p - lam) <= self.match_tol * max(1.0, abs(p)):
                return d
        return None

    def check_domain(self, lam, cfg=DEFAULT):
        if self._lookup(lam) is None:
            raise DomainViolation(f"{lam} is not a tabulated point", field="points")

    def taylor(self, lam, order, cfg=DEFAULT):
        d = self._lookup(lam)
        if d is None:
            raise InsufficientDerivatives(f"no table entry at {lam}", field="points")
        if d.size < order + 1:
            raise InsufficientDerivatives(
                f"table entry at {lam} has {d.size} derivative(s), {order + 1} needed", field="points"
            )
        return d[: order + 1] / np.array([math.factorial(j) for j in range(order + 1)], dtype=float)

    def to_json(self):
        return {
            "kind": self.kind,
            "points": [
                {"at": [p.real, p.imag], "derivs": [[v.real, v.imag] for v in d]} for p, d in self.points
            ],
        }


def as_holo(f) -> HoloFunction:
    if isinstance(f, HoloFunction):
        return f
    if isinstance(f, ComplexPoly):
        return PolynomialFunction(f)
    if isinstance(f, BlaschkeProduct):
        return BlaschkeFunction(f)
    raise InputError(f"cannot interpret {type(f).__name__} as a holomorphic function", field="function")


def apply(f, A, cfg: Config = DEFAULT, sd: SpectralData = None, return_scale: bool = False):
    """``f(A) = sum_lam sum_{j < m(lam)} f^(j)(lam)/j! (A - lam I)**j E(lam)``.

    With ``return_scale`` also returns ``sum c_j ||(A - lam I)**j E(lam)||``
    where ``c_j`` bounds ``|f^(j)(lam)/j!|`` and the size of the data it was
    computed from: the magnitude that rounding errors in the result are
    relative to.  It is
    the right ``scale`` for :func:`spectra.minimal_polynomial_oracle` when
    ``f(A)`` may cancel to zero.
    """
    f = as_holo(f)
    sd = spectral_data(A, cfg) if sd is None else sd
    n = sd.n
    eye = np.eye(n, dtype=complex)
    out = np.zeros((n, n), dtype=complex)
    mag = 0.0
    for (lam, _, m), E in zip(sd.eigs, sd.projections):
        f.check_domain(lam, cfg)
        at = f.snap(lam, cfg)
        coeffs = f.taylor(at, m - 1, cfg)
        size = _rounding_scale(f, at) if return_scale else 0.0
        N = sd.matrix - lam * eye
        term = E.copy()
        for j in range(m):
            out += coeffs[j] * term
            mag += max(abs(coeffs[j]), size) * float(np.linalg.norm(term))
            term = N @ term
    return (out, mag) if return_scale else out


def ord_of_vanishing(f, lam: complex, cap: int, cfg: Config = DEFAULT, derivative: int = 0):
    """Order of vanishing of ``f^(derivative)`` at ``lam``; ``math.inf`` past ``cap``.

    Read from exact Taylor coefficients: the first coefficient above
    ``ord_tol`` times the largest one examined.
    """
    f = as_holo(f)
    lam = f.snap(lam, cfg)
    order = derivative + cap + 1
    t = f.taylor(lam, order, cfg)
    # Taylor coefficients of f^(d): c_{d+i} * (d+i)!/i!
    g = np.array(
        [t[derivative + i] * math.factorial(derivative + i) / math.factorial(i) for i in range(cap + 1)],
        dtype=complex,
    )
    mags = np.abs(g)
    scale = float(np.max(mags)) if isinstance(f, TableFunction) else max(float(np.max(mags)), _value_scale(f, lam, t))
    if scale == 0.0:
        return INF
    for i, v in enumerate(mags):
        if v > cfg.ord_tol * scale:
            return i
    return INF


def _value_scale(f: HoloFunction, lam: complex, t: np.ndarray) -> float:
    """Magnitude reference for structural kinds: Taylor data of the numerator pieces at ``lam``."""
    if isinstance(f, PolynomialFunction):
        return float(np.max(np.abs(t))) if t.size else 0.0
    if isinstance(f, RationalFunction):
        return float(np.max(np.abs(taylor_coefficients(f.num, lam)))) / max(abs(f.den(lam)), 1e-300)
    return 0.0


def _rounding_scale(f: HoloFunction, lam: complex) -> float:
    """Bound on the magnitudes summed while forming Taylor data at ``lam``."""

    def absval(p: ComplexPoly) -> float:
        return float(np.sum(np.abs(p.coeffs) * (1 + abs(lam)) ** np.arange(p.coeffs.size)))

    if isinstance(f, PolynomialFunction):
        return absval(f.p)
    if isinstance(f, RationalFunction):
        return absval(f.num) / max(abs(f.den(lam)), 1e-300)
    return 0.0


@dataclass
class MinpolyPrediction:
    factors: List[Tuple[complex, int]]
    constant_on_spectrum: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def poly(self) -> ComplexPoly:
        out = ComplexPoly([1])
        for nu, k in self.factors:
            out = out * ComplexPoly([-nu, 1]) ** k
        return out

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.factors)


def predict_minpoly(f, A, cfg: Config = DEFAULT, sd: SpectralData = None) -> MinpolyPrediction:
    """Factorization ``prod (t - nu)**k(nu)`` of the minimal polynomial of ``f(A)``.

    ``k(nu) = max floor((m(lam) - 1) / (ord_lam f' + 1)) + 1`` over spectral
    points ``lam`` with ``f(lam) = nu``.  Image points are grouped with
    :func:`spectra.cluster`.
    """
    f = as_holo(f)
    sd = spectral_data(A, cfg) if sd is None else sd
    images = []
    exps = []
    constant = False
    for lam, _, m in sd.eigs:
        f.check_domain(lam, cfg)
        nu = f(f.snap(lam, cfg), cfg)
        d = ord_of_vanishing(f, lam, m, cfg, derivative=1)
        if d is INF:
            constant = True
            k = 1
        else:
            k = (m - 1) // (d + 1) + 1
        images.append(nu)
        exps.append(k)
    groups = _group_images(images, cfg)
    factors = []
    for members in groups:
        nu = complex(np.mean([images[i] for i in members]))
        factors.append((nu, max(exps[i] for i in members)))
    notes = []
    if constant:
        notes.append("f' vanishes identically to the index at some eigenvalue; exponent 1 used there")
    return MinpolyPrediction(factors, constant, notes)


def _group_images(values: Sequence[complex], cfg: Config) -> List[List[int]]:
    scale = max([1.0] + [abs(v) for v in values])
    reps = cluster(values, cfg, scale)
    groups = [[] for _ in reps]
    for i, v in enumerate(values):
        g = int(np.argmin([abs(v - r) for r, _ in reps]))
        groups[g].append(i)
    return [g for g in groups if g]


def predicted_minpoly(f, A, cfg: Config = DEFAULT, sd: SpectralData = None) -> ComplexPoly:
    return predict_minpoly(f, A, cfg, sd).poly


def lincomb_nilpotent_minpoly(alphas: Sequence[complex], cfg: Config = DEFAULT) -> ComplexPoly:
    """Minimal polynomial of ``sum_j alphas[j] N**j`` for the n x n shift ``N``."""
    alphas = np.asarray(alphas, dtype=complex)
    n = alphas.size
    if n < 2:
        raise InputError("need at least two coefficients", field="alphas")
    l = n
    for j in range(1, n):
        if abs(alphas[j]) > cfg.zero_tol:
            l = j
            break
    return ComplexPoly([-alphas[0], 1]) ** ((n - 1) // l + 1)
