"""Necessary conditions for spectral Nevanlinna-Pick interpolation into the spectral unit ball.

Both checkers can only refute: ``Infeasible`` means no holomorphic map
``F: D -> Omega_n`` with ``F(zeta_j) = W_j`` exists, ``Inconclusive`` means
the condition tested is satisfied and nothing more.

For the disc the extremal functions reduce to minimal Blaschke products up
to a unimodular factor, and every inequality below involves moduli only, so
no auxiliary point ``z`` appears and front factors are taken to be 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT, Config
from .discgeo import BlaschkeProduct, DiscAutomorphism, _check_in_disc, blaschke_preimage, minimal_blaschke, mobius_distance
from .errors import AssertionReport, CoincidentPoints, DimensionMismatch, EmptyPreimage, InputError
from .funcalc import INF, BlaschkeFunction, _group_images, ord_of_vanishing
from .spectra import SpectralData, as_matrix, spectral_data, spectral_radius

INFEASIBLE = "infeasible"
INCONCLUSIVE = "inconclusive"


def _c(z: complex) -> List[float]:
    return [float(np.real(z)), float(np.imag(z))]


class InterpolationData:
    """Nodes ``zeta_j`` in the disc and targets ``W_j`` with spectra in the disc.

    Spectral data of the targets is computed once on construction and reused
    by the checkers.  ``n = 1`` is accepted so scalar problems can be posed.
    """

    def __init__(self, nodes: Sequence[complex], targets: Sequence, cfg: Config = DEFAULT):
        self.nodes = tuple(complex(z) for z in nodes)
        self.targets = tuple(as_matrix(W) for W in targets)
        if len(self.nodes) != len(self.targets):
            raise DimensionMismatch(
                f"{len(self.nodes)} nodes but {len(self.targets)} targets", field="targets"
            )
        if len(self.nodes) < 2:
            raise InputError("need at least two interpolation conditions", field="nodes")
        for i, z in enumerate(self.nodes):
            _check_in_disc(z, name=f"nodes[{i}]")
        for i in range(len(self.nodes)):
            for j in range(i + 1, len(self.nodes)):
                if abs(self.nodes[i] - self.nodes[j]) <= cfg.node_tol:
                    raise CoincidentPoints(f"nodes {i} and {j} coincide", field=f"nodes[{j}]")
        n = self.targets[0].shape[0]
        for i, W in enumerate(self.targets):
            if W.shape[0] != n:
                raise DimensionMismatch(f"target {i} is {W.shape[0]}x{W.shape[0]}, expected {n}x{n}", field=f"targets[{i}]")
        self.n = n
        self.spectral = tuple(spectral_data(W, cfg) for W in self.targets)
        try:
            self.blaschke = tuple(minimal_blaschke(W, cfg, sd) for W, sd in zip(self.targets, self.spectral))
        except InputError as exc:
            i = next(i for i, sd in enumerate(self.spectral) if max(abs(l) for l in sd.values) >= 1 - cfg.eps_boundary)
            exc.field = f"targets[{i}]"
            raise

    @property
    def N(self) -> int:
        return len(self.nodes)

    def to_json(self) -> dict:
        from .serialization import matrix_to_json

        return {"nodes": [_c(z) for z in self.nodes], "targets": [matrix_to_json(W) for W in self.targets]}


@dataclass
class Verdict:
    status: str
    witness: Optional[dict] = None

    @property
    def infeasible(self) -> bool:
        return self.status == INFEASIBLE

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _max_abs(b: BlaschkeProduct, points: Sequence[complex], cfg: Config) -> Tuple[float, complex]:
    vals = [(abs(b(p)), p) for p in points]
    return max(vals, key=lambda v: v[0])


def check_two_point(data: InterpolationData, cfg: Config = DEFAULT) -> Verdict:
    """Two-point Schwarz inequality with minimal Blaschke products.

    ``max(max_{mu in sigma(W_2)} |b_1(mu)|, max_{lam in sigma(W_1)} |b_2(lam)|) <= M(zeta_1, zeta_2)``
    must hold for an interpolant to exist.
    """
    if data.N != 2:
        raise DimensionMismatch(f"check_two_point needs N = 2, got {data.N}", field="nodes")
    b1, b2 = data.blaschke
    s1, s2 = data.spectral
    v1, mu = _max_abs(b1, s2.values, cfg)
    v2, lam = _max_abs(b2, s1.values, cfg)
    lhs = max(v1, v2)
    rhs = mobius_distance(*data.nodes)
    witness = {
        "lhs": lhs,
        "rhs": rhs,
        "margin": cfg.verdict_margin,
        "max_b1_on_sigma_W2": {"value": v1, "at": _c(mu)},
        "max_b2_on_sigma_W1": {"value": v2, "at": _c(lam)},
    }
    if lhs > rhs + cfg.verdict_margin:
        return Verdict(INFEASIBLE, witness)
    return Verdict(INCONCLUSIVE, witness)


def _image_spectrum(b: BlaschkeProduct, sd: SpectralData, cfg: Config) -> List[Tuple[complex, List[int]]]:
    """``sigma(b(W))`` by spectral mapping: image points with the eigenvalue indices over each."""
    f = BlaschkeFunction(b)
    images = [f(f.snap(lam, cfg), cfg) for lam in sd.values]
    groups = _group_images(images, cfg)
    return [(complex(np.mean([images[i] for i in g])), g) for g in groups]


def q_exponent(nu: complex, j: int, k: int, data: InterpolationData, cfg: Config = DEFAULT) -> int:
    """``max floor((m(j, lam) - 1) / (ord_lam B_k' + 1)) + 1`` over ``lam in sigma(W_j)`` with ``B_k(lam) = nu``.

    ``j`` and ``k`` are 0-based positions in ``data``.
    """
    b = data.blaschke[k]
    sd = data.spectral[j]
    for image, members in _image_spectrum(b, sd, cfg):
        if abs(image - nu) <= cfg.cluster_tol * max(1.0, abs(nu)) or _same_group(image, nu, cfg):
            return _q_from_members(b, sd, members, cfg)
    raise EmptyPreimage(f"no eigenvalue of W_{j + 1} maps to {nu} under B_{k + 1}")


def _same_group(a: complex, b: complex, cfg: Config) -> bool:
    return len(_group_images([a, b], cfg)) == 1


def _q_from_members(b: BlaschkeProduct, sd: SpectralData, members: Sequence[int], cfg: Config) -> int:
    f = BlaschkeFunction(b)
    best = 1
    for i in members:
        lam, _, m = sd.eigs[i]
        d = ord_of_vanishing(f, lam, m, cfg, derivative=1)
        q = 1 if d is INF else (m - 1) // (d + 1) + 1
        best = max(best, q)
    return best


def _others(k: int) -> Tuple[int, int]:
    rest = [i for i in range(3) if i != k]
    return min(rest), max(rest)


def _branch_one(data, k, L, G, psi, images, qs, cfg) -> dict:
    """Strict containments followed by the two-sided max-product inequality."""
    rL, rG = abs(psi(data.nodes[L])), abs(psi(data.nodes[G]))
    out = {"containment": [], "passed": False}
    contained = True
    violated = False
    for j, r in ((L, rL), (G, rG)):
        worst = max(abs(nu) for nu, _ in images[j])
        entry = {"target": j + 1, "max_modulus": worst, "radius": r}
        if worst > r + cfg.verdict_margin:
            entry["status"] = "violated"
            violated = True
        elif worst >= r - cfg.verdict_margin:
            entry["status"] = "boundary"
        else:
            entry["status"] = "inside"
        out["containment"].append(entry)
        contained = contained and entry["status"] == "inside"
    if not contained:
        out["reason"] = "containment violated" if violated else "spectrum within verdict_margin of the boundary circle"
        if violated:
            bad = max(out["containment"], key=lambda e: e["max_modulus"] - e["radius"])
            out["lhs"], out["rhs"] = bad["max_modulus"], bad["radius"]
        out["decisive"] = violated
        return out
    wL, wG = psi(data.nodes[L]), psi(data.nodes[G])

    def side(mus, wm, nus, wn, qn):
        best = 0.0
        for mu, _ in mus:
            prod = 1.0
            for (nu, _), q in zip(nus, qn):
                prod *= mobius_distance(mu / wm, nu / wn) ** q
            best = max(best, prod)
        return best

    lhs = max(side(images[L], wL, images[G], wG, qs[G]), side(images[G], wG, images[L], wL, qs[L]))
    rhs = mobius_distance(data.nodes[L], data.nodes[G])
    out.update(lhs=lhs, rhs=rhs, q={str(L + 1): qs[L], str(G + 1): qs[G]})
    if lhs > rhs + cfg.verdict_margin:
        out["reason"] = "max-product inequality violated"
        out["decisive"] = True
        return out
    out["passed"] = True
    return out


def _branch_two(data, k, L, G, psi, images, cfg) -> dict:
    """Unimodular rotations ``u`` with ``B_k^{-1}{u psi_k(zeta_j)}`` inside ``sigma(W_j)`` for ``j = L, G``."""
    b = data.blaschke[k]
    wL, wG = psi(data.nodes[L]), psi(data.nodes[G])
    candidates = []
    moduli = []
    for j, w in ((G, wG), (L, wL)):
        for nu, _ in images[j]:
            u = nu / w
            moduli.append({"target": j + 1, "modulus": abs(u)})
            if abs(abs(u) - 1) <= cfg.unimodular_tol:
                candidates.append(u / abs(u))
    # preimages of a multiple zero are only resolved to about sqrt of the clustering tolerance
    tol = math.sqrt(cfg.cluster_tol)
    rejected = []
    for u in candidates:
        ok = True
        for j, w in ((G, wG), (L, wL)):
            pre = blaschke_preimage(b, u * w, cfg)
            spectrum = data.spectral[j].values
            scale = max(1.0, data.spectral[j].source_norm)
            miss = [t for t in pre if min(abs(t - s) for s in spectrum) > tol * scale]
            if miss:
                ok = False
                rejected.append({"u": _c(u), "target": j + 1, "stray_preimage": _c(miss[0])})
                break
        if ok:
            return {
                "passed": True,
                "theta": float(np.angle(u)),
                "candidates": len(candidates),
                "moduli": moduli,
                "rejected": rejected,
            }
    return {"passed": False, "candidates": len(candidates), "moduli": moduli, "rejected": rejected}


def check_three_point(data: InterpolationData, cfg: Config = DEFAULT) -> Verdict:
    """Three-point necessary condition, for each ``k`` one of two branches must hold.

    The conditions are required for every ``k``, so a failure of both
    branches at a single ``k`` refutes.  A branch-one failure is decisive
    only when a containment or the inequality is violated by more than
    ``verdict_margin``; spectra within the margin of the boundary circle make
    branch one fail without supporting a refutation.
    """
    if data.N != 3:
        raise DimensionMismatch(f"check_three_point needs N = 3, got {data.N}", field="nodes")
    per_k = []
    for k in range(3):
        L, G = _others(k)
        psi = DiscAutomorphism(data.nodes[k])
        b = data.blaschke[k]
        images = {j: _image_spectrum(b, data.spectral[j], cfg) for j in (L, G)}
        qs = {j: [_q_from_members(b, data.spectral[j], members, cfg) for _, members in images[j]] for j in (L, G)}
        one = _branch_one(data, k, L, G, psi, images, qs, cfg)
        record = {"k": k + 1, "L": L + 1, "G": G + 1, "branch1": one}
        if not one["passed"]:
            two = _branch_two(data, k, L, G, psi, images, cfg)
            record["branch2"] = two
            if not two["passed"] and one.get("decisive"):
                witness = dict(record)
                witness.update(
                    lhs=one["lhs"],
                    rhs=one["rhs"],
                    margin=cfg.verdict_margin,
                    reading="conditions hold for each k; failure of both branches at one k refutes",
                )
                return Verdict(INFEASIBLE, witness)
        per_k.append(record)
    return Verdict(INCONCLUSIVE, {"per_k": per_k, "margin": cfg.verdict_margin})


@dataclass
class SchwarzReport:
    passed: bool
    samples: int
    max_excess: float
    violations: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "samples": self.samples,
            "max_excess": self.max_excess,
            "violations": self.violations,
        }


def schwarz_check(F: Callable[[complex], np.ndarray], samples: Sequence[complex], cfg: Config = DEFAULT, raise_on_failure: bool = True) -> SchwarzReport:
    """Check ``rho(F(zeta)) <= |zeta| + schwarz_tol`` for a disc ``F`` into the spectral ball with ``F(0) = 0``."""
    rho0 = spectral_radius(F(0.0), cfg)
    if rho0 > cfg.schwarz_tol:
        raise InputError(f"F(0) has spectral radius {rho0}, expected 0", field="F")
    violations = []
    worst = -math.inf
    for z in samples:
        z = complex(z)
        rho = spectral_radius(F(z), cfg)
        excess = rho - abs(z)
        worst = max(worst, excess)
        if excess > cfg.schwarz_tol:
            violations.append({"zeta": _c(z), "rho": rho, "bound": abs(z)})
    report = SchwarzReport(not violations, len(samples), worst, violations)
    if violations and raise_on_failure:
        raise AssertionReport(report)
    return report


class MatrixPolynomialDisc:
    """``zeta -> sum_k zeta**k C_k``, a holomorphic matrix-valued map."""

    def __init__(self, coeffs: Sequence[np.ndarray]):
        self.coeffs = [np.asarray(C, dtype=complex) for C in coeffs]

    def __call__(self, zeta) -> np.ndarray:
        out = np.zeros_like(self.coeffs[0])
        for C in reversed(self.coeffs):
            out = out * zeta + C
        return out


def random_feasible_dataset(seed: int, n: int, N: int, margin: float = 0.2, cfg: Config = DEFAULT, degree: int = None):
    """Interpolation data read off a random disc into the spectral ball.

    A random matrix polynomial ``P`` is scaled by ``c`` so that the largest
    spectral radius of ``cP`` over 512 points of the unit circle is
    ``1 - margin`` less a little slack.  ``log rho(cP)`` is subharmonic, so the
    bound holds on the whole disc and ``W_j = cP(zeta_j)`` admits the
    interpolant ``cP``.
    """
    if N not in (2, 3):
        raise InputError("N must be 2 or 3", field="N")
    if n < 1:
        raise InputError("n must be positive", field="n")
    if not 0 < margin < 1:
        raise InputError("margin must lie in (0, 1)", field="margin")
    rng = np.random.default_rng(seed)
    degree = int(rng.integers(0, 4)) if degree is None else degree
    coeffs = [rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) for _ in range(degree + 1)]
    P = MatrixPolynomialDisc(coeffs)
    grid = np.exp(2j * np.pi * np.arange(512) / 512)
    stack = np.stack([P(z) for z in grid])
    peak = float(np.max(np.abs(np.linalg.eigvals(stack))))
    if peak == 0.0:
        c = 1.0
    else:
        c = (1 - margin) * (1 - 1e-3) / peak
    F = MatrixPolynomialDisc([c * C for C in coeffs])
    nodes = []
    while len(nodes) < N:
        r = 0.9 * math.sqrt(rng.uniform())
        z = r * np.exp(2j * np.pi * rng.uniform())
        if all(abs(z - w) > 0.05 for w in nodes):
            nodes.append(complex(z))
    data = InterpolationData(nodes, [F(z) for z in nodes], cfg)
    return data, F
