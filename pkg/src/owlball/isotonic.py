"""Projection onto the monotone nonnegative cone ``x1 >= ... >= xn >= 0``.

The unconstrained-order part is plain nonincreasing isotonic regression,
solved by the pool-adjacent-violators algorithm (PAVA): a single
left-to-right pass with a stack of blocks, merging while a block mean
violates the ordering against its predecessor.  The nonnegativity
constraint is then a clamp of the pooled values at zero, which cannot
trigger further merging.  We delegate the PAVA pass to
``scipy.optimize.isotonic_regression`` (a C implementation of exactly
this stack algorithm) and keep two guarantees on top of it:

* pooling a run of bitwise-identical entries returns that entry
  bit-for-bit (no ``sum/k`` roundoff), so projecting an already feasible
  vector is exactly the identity;
* the reported blocks are canonical: values strictly decrease from one
  block to the next, with at most one trailing zero block, so the active
  set read off the block structure is the maximal one.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import isotonic_regression

__all__ = ["ConeProjection", "project_cone", "active_set"]


class ConeProjection:
    """Result of :func:`project_cone`.

    Attributes
    ----------
    x : ndarray
        The projection; nonincreasing with nonnegative entries.
    block_starts : ndarray of int
        First index of each constant block.  Blocks are half-open
        ``[block_starts[k], block_starts[k+1])`` runs partitioning
        ``range(n)``; values strictly decrease across blocks.
    block_values : ndarray
        Common value of ``x`` on each block (the mean of the input over
        the block, clamped at zero).  ``block_values[-1] == 0`` exactly
        when the trailing constraint ``xn >= 0`` is active.
    """

    def __init__(self, x, block_starts, block_values):
        self.x = x
        self.block_starts = block_starts
        self.block_values = block_values
        for arr in (x, block_starts, block_values):
            arr.flags.writeable = False

    @property
    def n(self) -> int:
        return self.x.size

    @property
    def num_blocks(self) -> int:
        return self.block_starts.size

    @property
    def block_lengths(self) -> np.ndarray:
        return np.diff(np.append(self.block_starts, self.n))

    @property
    def blocks(self) -> list[tuple[int, int, float]]:
        """Blocks as ``(start, end, value)`` tuples with half-open ends."""
        ends = np.append(self.block_starts[1:], self.n)
        return [(int(s), int(e), float(v))
                for s, e, v in zip(self.block_starts, ends, self.block_values)]


def project_cone(d) -> ConeProjection:
    """Euclidean projection of ``d`` onto the monotone nonnegative cone.

    Parameters
    ----------
    d : array_like of shape (n,)
        Any real vector; the input order is used as-is (no sorting).

    Returns
    -------
    ConeProjection
        Minimizer of ``0.5*||x - d||**2`` over nonincreasing nonnegative
        ``x``, with its constant-block structure.  O(n).
    """
    d = np.asarray(d, dtype=np.float64)
    if d.ndim != 1:
        raise ValueError(f"d must be one-dimensional, got shape {d.shape}")
    if d.size == 0:
        raise ValueError("d must not be empty")

    res = isotonic_regression(d, increasing=False)
    starts = np.asarray(res.blocks[:-1], dtype=np.intp)
    values = np.asarray(res.x, dtype=np.float64)[starts].copy()

    # Repair pooled runs of identical entries to the exact common value.
    mn = np.minimum.reduceat(d, starts)
    mx = np.maximum.reduceat(d, starts)
    tied = mn == mx
    values[tied] = d[starts[tied]]

    np.maximum(values, 0.0, out=values)

    # Canonical structure: merge adjacent blocks whose clamped values tie
    # (in particular the all-nonpositive tail collapses into one zero block).
    if values.size > 1:
        keep = np.empty(values.size, dtype=bool)
        keep[0] = True
        np.not_equal(values[1:], values[:-1], out=keep[1:])
        starts = starts[keep]
        values = values[keep]

    lengths = np.diff(np.append(starts, d.size))
    x = np.repeat(values, lengths)
    return ConeProjection(x, starts, values)


def active_set(p: ConeProjection) -> np.ndarray:
    """Indices of the cone constraints that are tight at ``p.x``.

    Constraint ``i < n-1`` is ``x[i] - x[i+1] >= 0`` and constraint
    ``n-1`` is ``x[n-1] >= 0`` (0-based).  The answer is read off the
    block structure, never from float comparisons on ``x``: equality
    constraints are exactly the within-block positions, and the last
    constraint is tight iff the final block value is zero.

    Returns
    -------
    ndarray of int
        Sorted tight-constraint indices.
    """
    n = p.n
    tight = np.ones(n, dtype=bool)
    tight[p.block_starts[1:] - 1] = False      # slack between adjacent blocks
    tight[n - 1] = p.block_values[-1] == 0.0
    return np.flatnonzero(tight)
