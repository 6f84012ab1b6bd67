"""Shared domain types: weight vectors, problem instances, signed sorts.

The ordered weighted L1 (OWL1) norm of a vector ``x`` under a
nonincreasing nonnegative weight vector ``lam`` is the inner product of
``lam`` with the magnitudes of ``x`` sorted in nonincreasing order.  It
interpolates between the L1 norm (all weights one) and a scaled Linf
norm (single positive leading weight).  Everything in this package
revolves around projecting onto a ball of this norm.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "Weights",
    "Instance",
    "SignedSort",
    "owl_norm",
    "signed_sort",
    "is_trivial",
]

# Relative slack used by the trivial-case gate: a point whose norm exceeds
# the radius by at most this factor counts as inside the ball, so the
# solver is never launched on a (numerically) feasible point.
INSIDE_RTOL = 1e-15


def _clean_vector(values, name: str) -> np.ndarray:
    """Copy ``values`` into a read-only 1-d float64 array, or complain."""
    arr = np.array(values, dtype=np.float64, copy=True)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must contain only finite values")
    arr.flags.writeable = False
    return arr


class Weights:
    """Weight vector defining an OWL1 norm.

    Parameters
    ----------
    values : array_like of shape (n,)
        Nonincreasing, nonnegative weights with ``values[0] > 0``.
        Validation is strict: unsorted or negative input raises instead
        of being silently re-sorted, because reordering the weights
        changes the norm.

    Attributes
    ----------
    values : ndarray
        The validated weights, read-only.
    """

    def __init__(self, values):
        arr = _clean_vector(values, "weights")
        if np.any(arr < 0):
            raise ValueError("weights must be nonnegative")
        if np.any(np.diff(arr) > 0):
            raise ValueError("weights must be nonincreasing")
        if arr[0] <= 0:
            raise ValueError("weights must have a positive leading entry "
                             "(an all-zero weight vector defines no norm)")
        self.values = arr

    @property
    def n(self) -> int:
        return self.values.size

    def __repr__(self) -> str:
        return f"Weights({self.values.tolist()!r})"


class Instance:
    """A projection instance: point ``b``, weights, and ball radius ``tau``.

    ``tau`` must be strictly positive; the zero-radius ball degenerates
    to a point and a negative radius is meaningless, so both are
    rejected at construction.
    """

    def __init__(self, b, weights, tau):
        self.b = _clean_vector(b, "b")
        if not isinstance(weights, Weights):
            weights = Weights(weights)
        if weights.n != self.b.size:
            raise ValueError(
                f"b has length {self.b.size} but weights has length {weights.n}")
        tau = float(tau)
        if not np.isfinite(tau) or tau <= 0:
            raise ValueError(f"tau must be positive and finite, got {tau}")
        self.weights = weights
        self.tau = tau

    @property
    def n(self) -> int:
        return self.b.size

    def __repr__(self) -> str:
        return f"Instance(n={self.n}, tau={self.tau})"


class SignedSort:
    """Signed permutation sending a vector to its sorted magnitudes.

    ``apply(v)`` computes ``P v`` where ``P`` is the orthogonal matrix
    with ``P b = |b| sorted nonincreasing``; ``apply_inverse`` computes
    ``P.T v``.  Ties in ``|b|`` are broken by original position and the
    sign of a zero entry is recorded as ``+1``, so the permutation is a
    deterministic function of ``b``.

    Attributes
    ----------
    perm : ndarray of int
        ``perm[k]`` is the original position of the k-th sorted entry.
    signs : ndarray
        ``+1.0`` or ``-1.0`` per sorted position.
    """

    def __init__(self, perm, signs):
        perm = np.array(perm, dtype=np.intp, copy=True)
        signs = np.array(signs, dtype=np.float64, copy=True)
        if perm.ndim != 1 or perm.shape != signs.shape:
            raise ValueError("perm and signs must be 1-d arrays of equal length")
        if not np.all(np.abs(signs) == 1.0):
            raise ValueError("signs must be +1 or -1")
        perm.flags.writeable = False
        signs.flags.writeable = False
        self.perm = perm
        self.signs = signs

    @property
    def n(self) -> int:
        return self.perm.size

    def apply(self, v) -> np.ndarray:
        """Return ``P v``: permute then flip signs."""
        v = np.asarray(v, dtype=np.float64)
        if v.size != self.n:
            raise ValueError(f"expected length {self.n}, got {v.size}")
        return self.signs * v[self.perm]

    def apply_inverse(self, u) -> np.ndarray:
        """Return ``P.T u``; exact inverse of :meth:`apply` (P is orthogonal)."""
        u = np.asarray(u, dtype=np.float64)
        if u.size != self.n:
            raise ValueError(f"expected length {self.n}, got {u.size}")
        out = np.empty_like(u)
        out[self.perm] = self.signs * u
        return out


def owl_norm(x, weights) -> float:
    """Evaluate the OWL1 norm: dot of sorted magnitudes with the weights.

    Parameters
    ----------
    x : array_like of shape (n,)
    weights : Weights or array_like
        Must have the same length as ``x``.

    Returns
    -------
    float
        ``sum(weights[i] * sorted(|x|, descending)[i])``; zero iff
        ``x`` has no nonzero entry under a positive weight.
    """
    x = np.asarray(x, dtype=np.float64)
    lam = weights.values if isinstance(weights, Weights) else np.asarray(weights)
    if x.size != lam.size:
        raise ValueError(f"x has length {x.size} but weights has length {lam.size}")
    mags = np.sort(np.abs(x))[::-1]
    return float(np.dot(mags, lam))


def signed_sort(b) -> tuple[SignedSort, np.ndarray]:
    """Sort magnitudes nonincreasing, remembering how to undo it.

    Returns
    -------
    sort : SignedSort
        The signed permutation ``P`` with ``P b`` sorted (stable
        tie-break on original position; zero entries get sign ``+1``).
    sorted : ndarray
        ``|b|`` in nonincreasing order, equal to ``sort.apply(b)``.
    """
    b = np.asarray(b, dtype=np.float64)
    order = np.argsort(-np.abs(b), kind="stable")
    signs = np.sign(b[order])
    signs[signs == 0.0] = 1.0
    sort = SignedSort(order, signs)
    return sort, sort.apply(b)


def is_trivial(inst: Instance) -> bool:
    """True when ``b`` already lies in the ball, so the projection is ``b``.

    The comparison allows a relative slack of ``INSIDE_RTOL`` above
    ``tau``: boundary points (norm equal to the radius up to roundoff)
    belong to the closed ball.
    """
    return owl_norm(inst.b, inst.weights) <= inst.tau * (1.0 + INSIDE_RTOL)
