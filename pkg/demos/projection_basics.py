"""Tour of the projector on small vectors.

The ordered weighted L1 norm pairs the sorted magnitudes of a vector
with a nonincreasing weight vector.  Two weight choices recover old
friends: constant weights give the L1 ball, a single leading weight
gives the ball whose dual is L-infinity.  This script projects a few
hand-picked vectors so the clipping and pooling behavior is visible.

Run:  python3 demos/projection_basics.py
"""

import numpy as np

from owlball import Instance, Weights, owl_norm, project_ball


def show(title, b, lam, tau):
    inst = Instance(b, Weights(lam), tau)
    res = project_ball(inst)
    print(f"\n{title}")
    print(f"  b      = {np.asarray(b)}")
    print(f"  lam    = {np.asarray(lam)},  tau = {tau}")
    print(f"  norm(b)= {owl_norm(np.asarray(b, dtype=float), inst.weights):.4f}")
    print(f"  x      = {res.x.round(4)}")
    if res.report is None:
        print("  (already inside the ball: projection is the identity)")
    else:
        print(f"  solved in {res.report.iterations} Newton iterations, "
              f"residual {res.report.residual_eta:.1e}")


def main():
    # L1 weights: the classic soft shrinkage toward a simplex-like face.
    show("L1 ball (constant weights)",
         [3.0, -1.0, 0.5], [1.0, 1.0, 1.0], 2.0)

    # Only the largest magnitude is charged: projecting clips the peaks
    # down to a common level, like a water-filling in reverse.
    show("dual of L-infinity (single leading weight)",
         [3.0, 1.0, -2.5], [1.0, 0.0, 0.0], 2.0)

    # Strictly decreasing weights sit in between: large entries are
    # charged more, so they shrink more, and nearby magnitudes pool
    # into shared plateaus.
    show("graded weights pool neighboring magnitudes",
         [5.0, 4.9, 1.0, -0.9, 0.1], [2.0, 1.5, 1.0, 0.7, 0.1], 4.0)

    # An interior point is returned unchanged, bit for bit.
    show("interior point", [0.2, -0.1, 0.05], [1.0, 0.5, 0.25], 1.0)

    # Signs and order never matter: the projection commutes with signed
    # permutations of the input.
    rng = np.random.default_rng(0)
    b = rng.standard_normal(6)
    lam = np.sort(np.abs(rng.standard_normal(6)))[::-1]
    w = Weights(lam)
    tau = 0.5 * owl_norm(b, w)
    x = project_ball(Instance(b, w, tau)).x
    perm = rng.permutation(6)
    signs = rng.choice([-1.0, 1.0], 6)
    x2 = project_ball(Instance(signs * b[perm], w, tau)).x
    print("\nequivariance under signed permutations")
    print(f"  max |P(sign*perm(b)) - sign*perm(P(b))| = "
          f"{np.max(np.abs(x2 - signs * x[perm])):.2e}")


if __name__ == "__main__":
    main()
