"""Brute-force ground truth for tiny instances, with KKT certificates.

Every solver claim in the test suite bottoms out here.  The oracles
enumerate candidate tight sets of the cone constraints and solve each
candidate's KKT system by dense factorization, so they share no
algorithmic machinery with the production path (no isotonic regression,
no Newton iteration, no bracketing); only the basic vocabulary types
are reused.  Costs are exponential in n and the entry points enforce
small-n caps.

Certificates report a worst-case KKT violation measured relative to the
data scale (values are divided by ``1 + max(|data|, tau)``), so the
acceptance threshold means the same thing for inputs of magnitude 1e-3
and 1e3.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import Instance, Weights, owl_norm, signed_sort

__all__ = [
    "KktCertificate",
    "oracle_cone",
    "cone_certificate",
    "oracle_ball",
    "ball_certificate",
    "oracle_dual_norm",
]

MAX_N_CONE = 12
MAX_N_BALL = 10

# A candidate tight set is accepted when its scaled KKT violation is
# below this; the true tight set lands around machine epsilon, so the
# threshold only has to reject genuinely wrong candidates.
_ACCEPT_TOL = 1e-10

# Solutions whose linear system was too ill-conditioned to trust are
# rejected by the residual of the solve itself.
_SOLVE_RTOL = 1e-8


@dataclass(frozen=True)
class KktCertificate:
    """Optimality evidence for one enumerated solution.

    x : the optimizer, in the caller's coordinates.
    y : equality multiplier (ball problems), None for the cone.
    z : inequality multipliers, one per cone constraint, >= 0; for ball
        problems they refer to the sorted coordinates.
    max_violation : worst scaled KKT residual (stationarity, primal and
        dual feasibility, complementarity), relative to the data scale.
    """

    x: np.ndarray
    y: float | None
    z: np.ndarray
    max_violation: float

    @property
    def multipliers(self):
        return self.y, self.z


def _difference_rows(n: int) -> np.ndarray:
    """Constraint rows: x[i] - x[i+1] for i < n-1, then x[n-1]."""
    rows = np.eye(n) - np.eye(n, k=1)
    return rows


def _subsets(n: int):
    """All index subsets of range(n), smallest first."""
    idx = np.arange(n)
    for k in range(n + 1):
        for combo in combinations(idx, k):
            yield np.asarray(combo, dtype=np.intp)


def cone_certificate(d) -> KktCertificate:
    """Projection of ``d`` onto the monotone nonnegative cone, certified.

    Enumerates all 2**n tight sets; for each, projects onto the
    corresponding subspace by a dense solve and accepts the first
    candidate whose multipliers and slacks check out.
    """
    d = np.asarray(d, dtype=np.float64)
    n = d.size
    if d.ndim != 1 or n == 0:
        raise ValueError("d must be a nonempty vector")
    if n > MAX_N_CONE:
        raise ValueError(f"cone oracle capped at n = {MAX_N_CONE}, got {n}")
    big = _difference_rows(n)
    scale = 1.0 + float(np.max(np.abs(d)))
    best = None
    for gamma in _subsets(n):
        if gamma.size == 0:
            x = d.copy()
            z = np.zeros(n)
        else:
            bg = big[gamma]
            try:
                s = np.linalg.solve(bg @ bg.T, bg @ d)
            except np.linalg.LinAlgError:
                continue
            x = d - bg.T @ s
            z = np.zeros(n)
            z[gamma] = -s
        viol = _kkt_violation_cone(big, d, x, z, scale)
        if viol <= _ACCEPT_TOL:
            return KktCertificate(x=x, y=None, z=z, max_violation=viol)
        if best is None or viol < best:
            best = viol
    raise RuntimeError(
        f"no tight set satisfied the cone KKT conditions (best violation "
        f"{best}); this indicates a bug in the oracle itself")


def _kkt_violation_cone(big, d, x, z, scale) -> float:
    slack = big @ x
    stationarity = float(np.max(np.abs(x - d - big.T @ z)))
    primal = float(max(0.0, -slack.min()))
    dual = float(max(0.0, -z.min()))
    comp = float(np.max(np.abs(z * slack)))
    return max(stationarity / scale, primal / scale, dual / scale,
               comp / scale ** 2)


def oracle_cone(d) -> np.ndarray:
    """Cone projection by enumeration; see :func:`cone_certificate`."""
    return cone_certificate(d).x


def ball_certificate(inst: Instance) -> KktCertificate:
    """Ball projection of ``inst.b`` by enumeration, certified.

    Feasible inputs short-circuit to ``b`` with zero multipliers.
    Otherwise the projection is computed in sorted coordinates, where
    it solves the cone-and-hyperplane problem: for each tight set the
    bordered system in (x, y, z) is solved densely, and the first
    candidate passing all KKT checks is mapped back through the sort.
    Near-singular candidate systems are rejected by the residual of
    their own solve.
    """
    b = inst.b
    lam = inst.weights.values
    tau = inst.tau
    n = inst.n
    if n > MAX_N_BALL:
        raise ValueError(f"ball oracle capped at n = {MAX_N_BALL}, got {n}")
    if owl_norm(b, inst.weights) <= tau:
        return KktCertificate(x=b.copy(), y=0.0, z=np.zeros(n),
                              max_violation=0.0)

    sort, w = signed_sort(b)
    big = _difference_rows(n)
    scale = 1.0 + max(float(np.max(np.abs(b))), tau)
    best = None
    for gamma in _subsets(n):
        m = gamma.size
        bg = big[gamma]
        kkt = np.zeros((n + 1 + m, n + 1 + m))
        kkt[:n, :n] = np.eye(n)
        kkt[:n, n] = lam
        kkt[n, :n] = lam
        if m:
            kkt[:n, n + 1:] = -bg.T
            kkt[n + 1:, :n] = bg
        rhs = np.concatenate([w, [tau], np.zeros(m)])
        try:
            sol = np.linalg.solve(kkt, rhs)
        except np.linalg.LinAlgError:
            continue
        if not np.all(np.isfinite(sol)):
            continue
        if np.max(np.abs(kkt @ sol - rhs)) > _SOLVE_RTOL * (1.0 + np.max(np.abs(rhs))):
            continue  # condition guard: the factorization lost the system
        x = sol[:n]
        y = float(sol[n])
        z = np.zeros(n)
        z[gamma] = sol[n + 1:]
        viol = _kkt_violation_ball(big, lam, tau, w, x, y, z, scale)
        if viol <= _ACCEPT_TOL:
            return KktCertificate(x=sort.apply_inverse(x), y=y, z=z,
                                  max_violation=viol)
        if best is None or viol < best:
            best = viol
    raise RuntimeError(
        f"no tight set satisfied the ball KKT conditions (best violation "
        f"{best}); this indicates a bug in the oracle itself")


def _kkt_violation_ball(big, lam, tau, w, x, y, z, scale) -> float:
    slack = big @ x
    stationarity = float(np.max(np.abs(x - w + y * lam - big.T @ z)))
    radius = abs(float(np.dot(lam, x)) - tau)
    primal = float(max(0.0, -slack.min()))
    dual = float(max(0.0, -z.min(), -y))
    comp = float(np.max(np.abs(z * slack)))
    return max(stationarity / scale, radius / scale, primal / scale,
               dual / scale, comp / scale ** 2)


def oracle_ball(inst: Instance) -> np.ndarray:
    """Ball projection by enumeration; see :func:`ball_certificate`."""
    return ball_certificate(inst).x


def oracle_dual_norm(y, weights: Weights) -> float:
    """Dual norm by support-function enumeration over extreme points.

    The primal unit ball's extreme points put weight
    ``1 / (lam_1 + ... + lam_k)`` on some k coordinates with arbitrary
    signs; the maximizing choice aligns signs with ``y`` on its k
    largest magnitudes, so it suffices to scan k.
    """
    y = np.asarray(y, dtype=np.float64)
    if not isinstance(weights, Weights):
        weights = Weights(weights)
    n = weights.n
    if y.ndim != 1 or y.size != n:
        raise ValueError(f"y must be a vector of length {n}")
    if n > MAX_N_BALL:
        raise ValueError(f"dual-norm oracle capped at n = {MAX_N_BALL}, got {n}")
    order = np.argsort(-np.abs(y), kind="stable")
    signs = np.sign(y[order])
    signs[signs == 0.0] = 1.0
    lam = weights.values
    best = 0.0
    for k in range(1, n + 1):
        point = np.zeros(n)
        point[order[:k]] = signs[:k] / float(np.sum(lam[:k]))
        best = max(best, float(np.dot(point, y)))
    return best
