"""Dense eigenstructure of complex square matrices.

Eigenvalues come from LAPACK's QR iteration (``zgeev`` through scipy).  A
Jordan block of size ``m`` splits under rounding into ``m`` eigenvalues
spread over roughly ``eps**(1/m)``, so :func:`spectral_data` groups them with
a size-dependent radius and confirms every multi-point group by a rank test
on ``(A - cI)**k`` before trusting it.  The mean of a group is accurate to
first order even when its members are not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy.cluster.hierarchy import linkage, to_tree
from scipy.spatial.distance import pdist

from .config import DEFAULT, Config
from .errors import InputError, NoConvergence, NotAnEigenvalue
from .polynomials import ComplexPoly, pi_n, taylor_coefficients

_EPS = np.finfo(float).eps


def as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise InputError(f"expected a nonempty square matrix, got shape {A.shape}", field="matrix")
    if not np.all(np.isfinite(A)):
        raise InputError("matrix has non-finite entries", field="matrix")
    return A


def _scale(A: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(A, "fro")))


def eigenvalues(A, cfg: Config = DEFAULT) -> np.ndarray:
    A = as_matrix(A)
    try:
        w = scipy.linalg.eigvals(A)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NoConvergence(f"eigenvalue iteration failed: {exc}") from exc
    if not np.all(np.isfinite(w)):
        raise NoConvergence("eigenvalue iteration produced non-finite values")
    return w.astype(complex)


def _sort_key(z: complex):
    return (round(z.real, 12), round(z.imag, 12))


def cluster(eigs: Sequence[complex], cfg: Config = DEFAULT, scale: float = 1.0) -> List[Tuple[complex, int]]:
    """Union-find grouping of points closer than ``cluster_tol * max(1, scale)``.

    Returns ``(mean, count)`` pairs sorted by real then imaginary part.
    """
    pts = np.asarray(eigs, dtype=complex).ravel()
    radius = cfg.cluster_tol * max(1.0, scale)
    parent = list(range(pts.size))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(pts.size):
        for j in range(i + 1, pts.size):
            if abs(pts[i] - pts[j]) <= radius:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(pts.size):
        groups.setdefault(find(i), []).append(pts[i])
    out = [(complex(np.mean(g)), len(g)) for g in groups.values()]
    return sorted(out, key=lambda p: _sort_key(p[0]))


def _svals(M: np.ndarray) -> np.ndarray:
    try:
        return scipy.linalg.svdvals(M)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"SVD failed: {exc}") from exc


def numerical_rank(M: np.ndarray, cfg: Config = DEFAULT, reference: float = 0.0) -> int:
    """Singular values above ``rank_tol * max(sigma_max, reference)``."""
    s = _svals(M)
    if s.size == 0:
        return 0
    thresh = cfg.rank_tol * max(s[0], reference)
    if thresh == 0.0:
        return 0
    return int(np.sum(s > thresh))


def _power_ranks(A: np.ndarray, lam: complex, jmax: int, cfg: Config) -> List[int]:
    """``[rank((A - lam I)**j) for j in 0..jmax]``.

    Besides ``rank_tol * sigma_max`` of the power itself, singular values
    below ``rank_tol * ||A|| * ||(A - lam I)**(j-1)||`` count as zero: that is
    the size of rounding noise carried into the j-th power, and it makes
    ``A`` close to ``lam I`` read as ``lam I``.
    """
    n = A.shape[0]
    N = A - lam * np.eye(n)
    norm_a = float(np.linalg.norm(A, 2))
    ranks = [n]
    P = np.eye(n, dtype=complex)
    prev_norm = 1.0
    for j in range(1, jmax + 1):
        P = P @ N
        s = _svals(P)
        thresh = cfg.rank_tol * max(s[0], norm_a * prev_norm)
        r = int(np.sum(s > thresh)) if thresh > 0 else 0
        # powers of a matrix never gain rank; past a vanished power only noise remains
        ranks.append(min(r, ranks[-1]))
        prev_norm = float(s[0])
    return ranks


def _group_ok(A: np.ndarray, pts: np.ndarray, cfg: Config, scale: float, spread: float) -> bool:
    k = pts.size
    if k == 1:
        return True
    c = pts.mean()
    diam = float(np.max(np.abs(pts[:, None] - pts[None, :])))
    if diam <= cfg.cluster_tol * scale:
        return True
    if diam > spread * cfg.cluster_tol ** (1.0 / k):
        return False
    ranks = _power_ranks(A, c, k, cfg)
    return A.shape[0] - ranks[k] >= k


def spectral_clusters(A, cfg: Config = DEFAULT, eigs=None) -> List[Tuple[complex, int]]:
    """Distinct eigenvalues of ``A`` with algebraic multiplicities.

    Single-linkage dendrogram of the computed eigenvalues, cut top-down: a
    subtree is accepted as one eigenvalue when its diameter is below
    ``max(1, |spectrum|) * cluster_tol**(1/k)`` and ``(A - cI)**k`` has nullity ``k``.
    """
    A = as_matrix(A)
    w = eigenvalues(A, cfg) if eigs is None else np.asarray(eigs, dtype=complex)
    if w.size == 1:
        return [(complex(w[0]), 1)]
    scale = _scale(A)
    spread = max(1.0, float(np.max(np.abs(w))))
    Z = linkage(pdist(np.column_stack([w.real, w.imag])), method="single")
    root = to_tree(Z)
    out = []
    stack = [root]
    while stack:
        node = stack.pop()
        ids = node.pre_order()
        pts = w[ids]
        if _group_ok(A, pts, cfg, scale, spread):
            out.append((complex(pts.mean()), len(ids)))
        else:
            stack.extend([node.get_left(), node.get_right()])
    return sorted(out, key=lambda p: _sort_key(p[0]))


def index_of(A, lam: complex, cfg: Config = DEFAULT, alg_mult: int = None) -> int:
    """Smallest ``j >= 1`` with ``rank((A - lam I)**j) == rank((A - lam I)**(j+1))``."""
    A = as_matrix(A)
    n = A.shape[0]
    cap = n if alg_mult is None else alg_mult
    ranks = _power_ranks(A, lam, cap + 1, cfg)
    if ranks[1] == n:
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue (A - lam I has full numerical rank)")
    for j in range(1, cap + 1):
        if ranks[j] == ranks[j + 1]:
            return j
    return cap


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Clustered spectrum with algebraic multiplicities, indices and projections."""

    matrix: np.ndarray
    eigs: Tuple[Tuple[complex, int, int], ...]
    projections: Tuple[np.ndarray, ...] = field(repr=False)
    source_norm: float

    @property
    def values(self) -> List[complex]:
        return [e[0] for e in self.eigs]

    @property
    def indices(self) -> List[int]:
        return [e[2] for e in self.eigs]

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def nilpotent_part(self, i: int) -> np.ndarray:
        lam = self.eigs[i][0]
        return (self.matrix - lam * np.eye(self.n)) @ self.projections[i]

    def to_json(self, full: bool = False) -> dict:
        out = {
            "n": self.n,
            "eigenvalues": [
                {"value": [lam.real, lam.imag], "alg_mult": a, "index": m} for lam, a, m in self.eigs
            ],
            "source_norm": self.source_norm,
        }
        if full:
            from .serialization import matrix_to_json

            out["projections"] = [matrix_to_json(E) for E in self.projections]
        return out


def _inverse_power_series(lam: complex, others: Sequence[Tuple[complex, int]], order: int) -> np.ndarray:
    """Taylor coefficients at ``lam`` of ``prod (t - mu)**(-m)`` up to ``s**(order-1)``."""
    series = np.zeros(order, dtype=complex)
    series[0] = 1
    for mu, m in others:
        d = lam - mu
        # 1/(d + s) = sum (-1)^i s^i / d^(i+1)
        factor = np.array([(-1) ** i / d ** (i + 1) for i in range(order)], dtype=complex)
        for _ in range(m):
            series = np.convolve(series, factor)[:order]
    return series


def spectral_data(A, cfg: Config = DEFAULT) -> SpectralData:
    """Eigenvalues, indices and spectral projections of ``A``.

    ``E(lam) = q(A) * prod_{mu != lam} (A - mu I)**m(mu)`` where ``q`` is the
    truncated Taylor series of ``prod (t - mu)**(-m(mu))`` at ``lam``; this is
    the Hermite interpolant of the indicator of ``lam`` on the spectrum.
    """
    A = as_matrix(A)
    n = A.shape[0]
    clusters = spectral_clusters(A, cfg)
    eigs = []
    for lam, alg in clusters:
        eigs.append((lam, alg, index_of(A, lam, cfg, alg_mult=alg)))
    eye = np.eye(n, dtype=complex)
    projections = []
    for i, (lam, _, m) in enumerate(eigs):
        others = [(mu, mm) for j, (mu, _, mm) in enumerate(eigs) if j != i]
        q = _inverse_power_series(lam, others, m)
        N = A - lam * eye
        Q = np.zeros_like(A)
        P = eye.copy()
        for c in q:
            Q = Q + c * P
            P = P @ N
        for mu, mm in others:
            Q = Q @ np.linalg.matrix_power(A - mu * eye, mm)
        projections.append(Q)
    return SpectralData(A, tuple(eigs), tuple(projections), float(np.linalg.norm(A, "fro")))


def minimal_polynomial(A, cfg: Config = DEFAULT, sd: SpectralData = None) -> ComplexPoly:
    sd = spectral_data(A, cfg) if sd is None else sd
    out = ComplexPoly([1])
    for lam, _, m in sd.eigs:
        out = out * ComplexPoly([-lam, 1]) ** m
    return out


_ORACLE_C = 10.0


def minimal_polynomial_oracle(A, cfg: Config = DEFAULT, scale: float = None) -> ComplexPoly:
    """Least-degree monic annihilator from linear dependence of ``I, A, A**2, ...``.

    Brute force, deliberately independent of the eigenvalue machinery.
    ``A**k`` counts as dependent on lower powers when the least-squares
    residual is below ``dep_tol * ||A**k||`` plus the first-order effect on
    ``A**k`` of an error ``delta ~ n eps max(||A||, scale)`` in ``A``, namely
    ``delta * sum_i ||A**i|| ||A**(k-1-i)||``.  Pass ``scale`` (the magnitude
    of the data ``A`` was computed from) when ``A`` may be numerically zero,
    e.g. ``f(B)`` with ``f`` vanishing on the spectrum of ``B``.
    """
    A = as_matrix(A)
    n = A.shape[0]
    if n > cfg.oracle_max_n:
        raise InputError(f"oracle limited to n <= {cfg.oracle_max_n}", field="matrix")
    delta = _ORACLE_C * n * _EPS * max(float(np.linalg.norm(A)), 0.0 if scale is None else float(scale))
    # powers of the trace-centred matrix: same dependence, better scaled when
    # the spectrum sits in a small region away from the origin
    shift = complex(np.trace(A)) / n
    A = A - shift * np.eye(n)
    powers = [np.eye(n, dtype=complex).ravel()]
    norms_k = [1.0]
    P = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        P = P @ A
        target = P.ravel()
        V = np.column_stack(powers)
        cn = np.linalg.norm(V, axis=0)
        cn[cn == 0] = 1.0
        coef, *_ = np.linalg.lstsq(V / cn, target, rcond=None)
        coef = coef / cn
        resid = float(np.linalg.norm(V @ coef - target))
        norms_k.append(float(np.linalg.norm(target)))
        noise = delta * sum(norms_k[i] * norms_k[k - 1 - i] for i in range(k))
        if resid <= cfg.dep_tol * norms_k[k] + noise:
            return _shift_argument(ComplexPoly(np.concatenate((-coef, [1]))), -shift)
        powers.append(target)
    raise NoConvergence("no linear dependence found among I..A^n (Cayley-Hamilton violated numerically)")


def _shift_argument(p: ComplexPoly, c: complex) -> ComplexPoly:
    """``t -> p(t + c)``."""
    return ComplexPoly(taylor_coefficients(p, c))


def chi(A, cfg: Config = DEFAULT) -> np.ndarray:
    """Characteristic coordinates: ``det(tI - A) = t**n + sum (-1)**k chi_k t**(n-k)``."""
    return pi_n(eigenvalues(A, cfg))


def companion_of_monic(c: Sequence[complex]) -> np.ndarray:
    """Companion matrix of the monic polynomial with ascending coefficients ``c``.

    Ones on the subdiagonal; last column ``-c[0], ..., -c[n-1]`` top to bottom.
    """
    c = np.asarray(c, dtype=complex)
    n = c.size - 1
    C = np.zeros((n, n), dtype=complex)
    if n > 1:
        C[np.arange(1, n), np.arange(0, n - 1)] = 1
    C[:, n - 1] = -c[:n]
    return C


def companion(X: Sequence[complex]) -> np.ndarray:
    """``tau(X)``: companion matrix of ``t**n + sum (-1)**j X_j t**(n-j)``."""
    from .polynomials import from_sym_point

    return companion_of_monic(from_sym_point(X).coeffs)


def spectral_radius(A, cfg: Config = DEFAULT) -> float:
    """Largest modulus over clustered eigenvalues (group means, see module doc)."""
    return max(abs(lam) for lam, _ in spectral_clusters(A, cfg))
