"""Unit-disc geometry: Moebius distance, automorphisms and finite Blaschke products."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Protocol, Sequence, Tuple

import numpy as np

from .config import DEFAULT, Config
from .errors import CoincidentPoints, InputError, OutOfDisc, PoleHit, SpectrumNotInDisc
from .polynomials import ComplexPoly, roots
from .spectra import SpectralData, spectral_data


def _check_in_disc(*zs: complex, name: str = "point") -> None:
    for z in zs:
        if not abs(z) < 1:
            raise OutOfDisc(f"{name} {z} is not in the open unit disc", field=name)


def mobius_distance(z1: complex, z2: complex) -> float:
    _check_in_disc(z1, z2)
    return abs((z1 - z2) / (1 - np.conj(z2) * z1))


class DiscAutomorphism:
    """``psi(zeta) = (zeta - center) / (1 - conj(center) zeta)``."""

    def __init__(self, center: complex):
        _check_in_disc(center, name="center")
        self.center = complex(center)

    def __call__(self, zeta):
        a = self.center
        return (zeta - a) / (1 - np.conj(a) * zeta)

    def inverse(self, w):
        a = self.center
        return (w + a) / (1 + np.conj(a) * w)

    def __repr__(self):
        return f"DiscAutomorphism({self.center})"


def disc_automorphism(center: complex) -> DiscAutomorphism:
    return DiscAutomorphism(center)


@dataclass(frozen=True)
class BlaschkeProduct:
    """``front * prod ((t - a) / (1 - conj(a) t))**mult`` over ``zeros``."""

    zeros: Tuple[Tuple[complex, int], ...]
    front: complex = 1.0 + 0j

    def __post_init__(self):
        if abs(abs(self.front) - 1) > 1e-12:
            raise InputError(f"front factor must be unimodular, got |front|={abs(self.front)}", field="front")
        for a, m in self.zeros:
            if not abs(a) < 1:
                raise InputError(f"Blaschke zero {a} outside the open disc", field="zeros")
            if int(m) != m or m < 1:
                raise InputError("zero multiplicities must be positive integers", field="zeros")

    @classmethod
    def from_zeros(cls, zeros: Sequence[complex], front: complex = 1.0) -> "BlaschkeProduct":
        """Build from a plain list of zeros (repeats allowed)."""
        groups = {}
        for a in zeros:
            groups[complex(a)] = groups.get(complex(a), 0) + 1
        return cls(tuple(groups.items()), complex(front))

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.zeros)

    def numerator(self) -> ComplexPoly:
        p = ComplexPoly([self.front])
        for a, m in self.zeros:
            p = p * ComplexPoly([-a, 1]) ** m
        return p

    def denominator(self) -> ComplexPoly:
        q = ComplexPoly([1])
        for a, m in self.zeros:
            q = q * ComplexPoly([1, -np.conj(a)]) ** m
        return q

    def poles(self):
        return [1 / np.conj(a) for a, _ in self.zeros if a != 0]

    def __call__(self, t):
        return blaschke_eval(self, t)

    def to_json(self) -> dict:
        return {
            "zeros": [{"a": [a.real, a.imag], "mult": int(m)} for a, m in self.zeros],
            "front": [self.front.real, self.front.imag],
        }


def blaschke_eval(b: BlaschkeProduct, t, pole_tol: float = DEFAULT.pole_tol):
    t_arr = np.asarray(t, dtype=complex)
    out = np.full(t_arr.shape, b.front, dtype=complex)
    for a, m in b.zeros:
        den = 1 - np.conj(a) * t_arr
        if np.any(np.abs(den) <= pole_tol):
            raise PoleHit(f"evaluation within {pole_tol} of the pole 1/conj({a})")
        out = out * ((t_arr - a) / den) ** m
    return complex(out) if out.ndim == 0 else out


def minimal_blaschke(W, cfg: Config = DEFAULT, sd: SpectralData = None) -> BlaschkeProduct:
    """Zeros at the distinct eigenvalues of ``W`` with multiplicity equal to their index."""
    sd = spectral_data(W, cfg) if sd is None else sd
    for lam, _, _ in sd.eigs:
        if abs(lam) >= 1 - cfg.eps_boundary:
            raise SpectrumNotInDisc(f"eigenvalue {lam} is not inside the disc (|.|={abs(lam)})", field="matrix")
    return BlaschkeProduct(tuple((lam, m) for lam, _, m in sd.eigs), 1.0 + 0j)


class CaratheodoryExtremal(Protocol):
    """Provider of the extremal map ``G(lam, z; .)`` for a planar domain."""

    def __call__(self, lam: complex, z: complex) -> Tuple[Callable[[complex], complex], float]: ...


def caratheodory_extremal_disc(lam: complex, z: complex, tol: float = 1e-14):
    """Extremal for the disc: a rotated automorphism sending ``lam`` to 0 and ``z`` to ``M(lam, z)``.

    Returns ``(g, g(z))``.
    """
    _check_in_disc(lam, z)
    if abs(lam - z) <= tol:
        raise CoincidentPoints("extremal needs distinct points")
    phi = DiscAutomorphism(lam)
    w = phi(z)
    rot = np.conj(w) / abs(w)

    def g(zeta):
        return rot * phi(zeta)

    value = abs(w)
    return g, float(value)


def blaschke_preimage(b: BlaschkeProduct, w: complex, cfg: Config = DEFAULT) -> np.ndarray:
    """Solutions of ``b(t) = w`` in the open disc, with multiplicity."""
    if abs(w) > 1:
        raise InputError(f"target {w} outside the closed disc", field="w")
    if b.degree == 0:
        return np.zeros(0, dtype=complex)
    p = b.numerator() - b.denominator() * w
    r = roots(p, cfg)
    return r[np.abs(r) < 1]
