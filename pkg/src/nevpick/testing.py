"""Random generators with known ground truth, shared by the test suite and ``selftest``.

Matrices are built Jordan-first: pick eigenvalues and block sizes, then
conjugate by a similarity whose condition number is bounded, so the true
indices are known exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np


def jordan_block(lam: complex, size: int) -> np.ndarray:
    J = lam * np.eye(size, dtype=complex)
    if size > 1:
        J[np.arange(size - 1), np.arange(1, size)] = 1
    return J


def block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=complex)
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i : i + k, i : i + k] = b
        i += k
    return out


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_similarity(rng: np.random.Generator, n: int, cond: float) -> np.ndarray:
    """``U diag(s) V`` with singular values log-spaced in ``[1, cond]``."""
    s = np.exp(rng.uniform(0, np.log(cond), n))
    s[0], s[-1] = 1.0, cond
    return random_unitary(rng, n) @ np.diag(s) @ random_unitary(rng, n)


def random_disc_points(rng: np.random.Generator, k: int, radius: float = 0.9, min_sep: float = 0.0) -> np.ndarray:
    pts: List[complex] = []
    while len(pts) < k:
        r = radius * np.sqrt(rng.uniform())
        z = r * np.exp(2j * np.pi * rng.uniform())
        if all(abs(z - p) >= min_sep for p in pts):
            pts.append(z)
    return np.array(pts, dtype=complex)


@dataclass
class JordanCase:
    matrix: np.ndarray
    # eigenvalue -> list of Jordan block sizes
    structure: List[Tuple[complex, List[int]]]
    similarity: np.ndarray

    @property
    def indices(self):
        return {lam: max(sizes) for lam, sizes in self.structure}

    def minimal_poly_roots(self) -> List[complex]:
        out = []
        for lam, sizes in self.structure:
            out += [lam] * max(sizes)
        return out


def random_jordan_case(
    rng: np.random.Generator,
    n_max: int = 8,
    max_block: int = 4,
    cond: float = 10.0,
    radius: float = 0.9,
    min_sep: float = 0.25,
    n: int = None,
) -> JordanCase:
    n = int(rng.integers(1, n_max + 1)) if n is None else n
    sizes = []
    left = n
    while left:
        s = int(rng.integers(1, min(max_block, left) + 1))
        sizes.append(s)
        left -= s
    n_eigs = int(rng.integers(1, len(sizes) + 1))
    lams = random_disc_points(rng, n_eigs, radius, min_sep)
    owner = list(range(n_eigs)) + list(rng.integers(0, n_eigs, len(sizes) - n_eigs))
    rng.shuffle(owner)
    structure = {i: [] for i in range(n_eigs)}
    blocks = []
    for s, o in zip(sizes, owner):
        structure[o].append(s)
        blocks.append(jordan_block(lams[o], s))
    S = random_similarity(rng, n, cond)
    A = S @ block_diag(blocks) @ np.linalg.inv(S)
    return JordanCase(A, [(complex(lams[i]), structure[i]) for i in range(n_eigs)], S)


def match_multisets(a: Sequence[complex], b: Sequence[complex]) -> Tuple[np.ndarray, np.ndarray]:
    """Optimal assignment between two equal-size point multisets; returns index arrays."""
    from scipy.optimize import linear_sum_assignment

    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.size != b.size:
        raise ValueError(f"multiset sizes differ: {a.size} vs {b.size}")
    cost = np.abs(a[:, None] - b[None, :])
    return linear_sum_assignment(cost)


def grouped_mismatch(expected: Sequence[Tuple[complex, int]], computed: Sequence[complex]) -> float:
    """Largest gap between each expected point and the mean of its matched computed points.

    ``expected`` lists distinct values with multiplicities; the computed
    multiset is assigned to the expanded expected multiset optimally and
    averaged group-wise, since a k-fold root is only resolved to
    ``eps**(1/k)`` pointwise but its group mean is resolved to ``eps``.
    """
    flat = []
    owner = []
    for g, (v, k) in enumerate(expected):
        flat += [v] * k
        owner += [g] * k
    rows, cols = match_multisets(flat, computed)
    computed = np.asarray(computed, dtype=complex)
    sums = np.zeros(len(expected), dtype=complex)
    for r, c in zip(rows, cols):
        sums[owner[r]] += computed[c]
    return max(abs(sums[g] / k - v) for g, (v, k) in enumerate(expected))


def random_holo_function(rng: np.random.Generator, case: JordanCase):
    """Random Blaschke product (degree <= 4) or polynomial (degree <= 5).

    Zeros, and critical points of the polynomials, are planted on the
    spectrum of ``case`` often enough to exercise vanishing orders and
    collisions of image points.
    """
    from .discgeo import BlaschkeProduct
    from .funcalc import BlaschkeFunction, PolynomialFunction
    from .polynomials import ComplexPoly

    lams = [lam for lam, _ in case.structure]
    if rng.uniform() < 0.5:
        deg = int(rng.integers(1, 5))
        zs = []
        for _ in range(deg):
            if rng.uniform() < 0.6:
                zs.append(lams[rng.integers(len(lams))])
            else:
                zs.append(random_disc_points(rng, 1)[0])
        return BlaschkeFunction(BlaschkeProduct.from_zeros(zs, np.exp(2j * np.pi * rng.uniform())))
    deg = int(rng.integers(1, 6))
    if deg >= 2 and rng.uniform() < 0.5:
        lam = lams[rng.integers(len(lams))]
        r = int(rng.integers(2, deg + 1))
        g = ComplexPoly(rng.standard_normal(deg - r + 1) + 1j * rng.standard_normal(deg - r + 1))
        return PolynomialFunction(ComplexPoly([-lam, 1]) ** r * g + ComplexPoly([rng.standard_normal()]))
    return PolynomialFunction(ComplexPoly(rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)))


def image_separation(f, case: JordanCase, relative: bool = True) -> float:
    """Smallest gap between distinct values of ``f`` on the exact spectrum (``inf`` if one value).

    With ``relative`` the gap is divided by ``max(1, max |f(lam)|)``.  Root
    groups of a minimal polynomial closer than this are only resolved to the
    accuracy the gap allows, so oracle comparisons skip trials below ``0.1``.
    """
    vals = [f(lam) for lam, _ in case.structure]
    gaps = [abs(a - b) for i, a in enumerate(vals) for b in vals[i + 1 :] if abs(a - b) > 1e-12]
    if not gaps:
        return float("inf")
    gap = min(gaps)
    return gap / max([1.0] + [abs(v) for v in vals]) if relative else gap


MIN_IMAGE_SEPARATION = 0.1


def random_schwarz_disc(rng: np.random.Generator, n: int):
    """A holomorphic ``F: D -> Omega_n`` with ``F(0) = 0``.

    Alternates between ``zeta -> B(zeta X)`` for a Blaschke product with a
    zero at the origin and a Jordan-built ``X`` with spectrum in the disc,
    and ``zeta -> zeta G(zeta)`` for a matrix polynomial ``G`` scaled into the
    spectral ball.
    """
    from .config import DEFAULT
    from .discgeo import BlaschkeProduct
    from .funcalc import BlaschkeFunction, apply
    from .nptest import MatrixPolynomialDisc

    if rng.uniform() < 0.5:
        case = random_jordan_case(rng, n_max=n, n=n, max_block=3, cond=5.0, radius=0.95, min_sep=0.2)
        zeros = [0.0] + list(random_disc_points(rng, int(rng.integers(0, 3)), 0.9))
        f = BlaschkeFunction(BlaschkeProduct.from_zeros(zeros, np.exp(2j * np.pi * rng.uniform())))
        X = case.matrix

        def F(zeta):
            return apply(f, complex(zeta) * X, DEFAULT)

        return F
    deg = int(rng.integers(0, 3))
    coeffs = [rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) for _ in range(deg + 1)]
    G = MatrixPolynomialDisc(coeffs)
    grid = np.exp(2j * np.pi * np.arange(512) / 512)
    peak = float(np.max(np.abs(np.linalg.eigvals(np.stack([G(z) for z in grid])))))
    c = 0.98 / peak if peak > 0 else 1.0

    def F(zeta):
        return complex(zeta) * c * G(zeta)

    return F
