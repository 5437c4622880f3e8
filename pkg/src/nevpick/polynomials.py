"""Complex polynomials in ascending coefficient order and the symmetrization map.

Coefficients are stored raw: ``ComplexPoly([2, -3, 1])`` is ``t**2 - 3t + 2``.
Nothing here normalizes implicitly; call :meth:`ComplexPoly.monic` when a
monic representative is wanted.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Sequence

import numpy as np

from .config import DEFAULT, Config
from .errors import InputError, ZeroPolynomial


class ComplexPoly:
    """Polynomial with complex coefficients, ``coeffs[k]`` multiplying ``t**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[complex]):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs, dtype=complex).ravel()
        # trailing (highest-degree) exact zeros carry no information
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else np.zeros(0, dtype=complex)
        c.setflags(write=False)
        self.coeffs = c

    @classmethod
    def from_roots(cls, roots: Iterable[complex], leading: complex = 1.0) -> "ComplexPoly":
        c = np.array([leading], dtype=complex)
        for r in roots:
            c = np.concatenate(([0], c)) - r * np.concatenate((c, [0]))
        return cls(c)

    @classmethod
    def monomial(cls, k: int, coef: complex = 1.0) -> "ComplexPoly":
        c = np.zeros(k + 1, dtype=complex)
        c[k] = coef
        return cls(c)

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1]) if len(self.coeffs) else 0j

    def monic(self) -> "ComplexPoly":
        if self.is_zero():
            raise ZeroPolynomial("the zero polynomial has no monic normalization")
        return ComplexPoly(self.coeffs / self.coeffs[-1])

    def trimmed(self, tol: float) -> "ComplexPoly":
        """Drop top coefficients smaller than ``tol * max|coeff|``."""
        if self.is_zero():
            return self
        scale = np.max(np.abs(self.coeffs))
        c = self.coeffs.copy()
        while len(c) and abs(c[-1]) <= tol * scale:
            c = c[:-1]
        return ComplexPoly(c)

    def __call__(self, t):
        return evaluate(self, t)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        c = np.zeros(n, dtype=complex)
        c[: len(self.coeffs)] += self.coeffs
        c[: len(other.coeffs)] += other.coeffs
        return ComplexPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return ComplexPoly(-self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return ComplexPoly(self.coeffs * other)
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return ComplexPoly([])
        return ComplexPoly(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ComplexPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(tuple(self.coeffs.tolist()))

    def __repr__(self):
        return f"ComplexPoly({[complex(c) for c in self.coeffs]})"

    def allclose(self, other: "ComplexPoly", atol: float = 1e-10) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, dtype=complex)
        b = np.zeros(n, dtype=complex)
        a[: len(self.coeffs)] = self.coeffs
        b[: len(other.coeffs)] = other.coeffs
        return bool(np.all(np.abs(a - b) <= atol))

    def to_json(self) -> dict:
        return {"coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}


def _coerce(p) -> ComplexPoly:
    if isinstance(p, ComplexPoly):
        return p
    if isinstance(p, (int, float, complex, np.number)):
        return ComplexPoly([p])
    return ComplexPoly(p)


def evaluate(p: ComplexPoly, t):
    """Horner evaluation; ``t`` may be a scalar or a numpy array (elementwise)."""
    acc = np.zeros_like(np.asarray(t, dtype=complex))
    for c in p.coeffs[::-1]:
        acc = acc * t + c
    return complex(acc) if acc.ndim == 0 else acc


def eval_matrix(p: ComplexPoly, A: np.ndarray) -> np.ndarray:
    """Matrix Horner evaluation ``p(A)``."""
    A = np.asarray(A, dtype=complex)
    eye = np.eye(A.shape[0], dtype=complex)
    acc = np.zeros_like(A)
    for c in p.coeffs[::-1]:
        acc = acc @ A + c * eye
    return acc


def derivative(p: ComplexPoly, order: int = 1) -> ComplexPoly:
    if order < 0:
        raise InputError("derivative order must be nonnegative", field="order")
    c = p.coeffs
    for _ in range(order):
        if len(c) <= 1:
            return ComplexPoly([])
        c = c[1:] * np.arange(1, len(c))
    return ComplexPoly(c)


def taylor_coefficients(p: ComplexPoly, center: complex) -> np.ndarray:
    """Coefficients of ``s -> p(center + s)`` in ascending powers of ``s``.

    Repeated synthetic division; exact up to rounding, no differencing.
    """
    c = p.coeffs.astype(complex).copy()
    n = len(c)
    out = np.zeros(n, dtype=complex)
    for k in range(n):
        # divide c by (t - center): remainder is the k-th Taylor coefficient
        m = len(c)
        q = np.zeros(max(m - 1, 0), dtype=complex)
        acc = 0j
        for i in range(m - 1, -1, -1):
            acc = acc * center + c[i]
            if i > 0:
                q[i - 1] = acc
        out[k] = acc
        c = q
    return out


def roots(p: ComplexPoly, cfg: Config = DEFAULT) -> np.ndarray:
    """All roots with multiplicity, as eigenvalues of the companion matrix."""
    from .spectra import companion_of_monic, eigenvalues

    if p.is_zero():
        raise ZeroPolynomial("cannot take roots of the zero polynomial")
    if p.degree < 1:
        return np.zeros(0, dtype=complex)
    q = p.monic()
    return eigenvalues(companion_of_monic(q.coeffs), cfg)


def root_residual_ok(p: ComplexPoly, r: complex, cfg: Config = DEFAULT) -> bool:
    bound = cfg.tol_root * (1 + abs(r)) ** p.degree * np.max(np.abs(p.coeffs))
    return abs(evaluate(p, r)) <= bound


def pi_n(z: Sequence[complex]) -> np.ndarray:
    """Elementary symmetric functions ``(S_1, ..., S_n)`` of ``z``."""
    z = np.asarray(z, dtype=complex).ravel()
    if z.size < 1:
        raise InputError("pi_n needs at least one point", field="z")
    # e[j] = S_j, built by expanding prod (1 + z_k x)
    e = np.zeros(z.size + 1, dtype=complex)
    e[0] = 1
    for k, zk in enumerate(z, start=1):
        e[1 : k + 1] = e[1 : k + 1] + zk * e[0:k]
    return e[1:]


def from_sym_point(X: Sequence[complex]) -> ComplexPoly:
    """The monic ``t**n + sum_j (-1)**j X_j t**(n-j)``."""
    X = np.asarray(X, dtype=complex).ravel()
    n = X.size
    c = np.zeros(n + 1, dtype=complex)
    c[n] = 1
    for j in range(1, n + 1):
        c[n - j] = (-1) ** j * X[j - 1]
    return ComplexPoly(c)


def binomial_sym_point(c: complex, n: int) -> np.ndarray:
    """``pi_n(c, ..., c)``: ``C(n, j) c**j``."""
    return np.array([comb(n, j) * c**j for j in range(1, n + 1)], dtype=complex)
