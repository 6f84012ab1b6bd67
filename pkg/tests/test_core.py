import numpy as np
import pytest

from owlball import Instance, SignedSort, Weights, is_trivial, owl_norm, signed_sort
from owlball.core import INSIDE_RTOL


class TestWeights:
    def test_valid_construction(self):
        w = Weights([3.0, 2.0, 2.0, 0.0])
        assert w.n == 4
        assert np.array_equal(w.values, [3.0, 2.0, 2.0, 0.0])
        assert not w.values.flags.writeable

    def test_copies_input(self):
        raw = np.array([2.0, 1.0])
        w = Weights(raw)
        raw[0] = 99.0
        assert w.values[0] == 2.0

    @pytest.mark.parametrize("bad", [
        [1.0, 2.0],          # increasing
        [1.0, -0.5],         # negative
        [0.0, 0.0],          # no positive entry
        [],                  # empty
        [1.0, np.nan],       # non-finite
        [[1.0], [0.5]],      # not 1-d
    ])
    def test_rejects_invalid(self, bad):
        with pytest.raises(ValueError):
            Weights(bad)


class TestInstance:
    def test_valid_construction(self):
        inst = Instance([3.0, 1.0], Weights([1.0, 1.0]), 2.0)
        assert inst.n == 2
        assert inst.tau == 2.0

    def test_accepts_raw_weight_arrays(self):
        inst = Instance([1.0, 0.0], [1.0, 1.0], 2.0)
        assert isinstance(inst.weights, Weights)

    @pytest.mark.parametrize("tau", [0.0, -1.0, np.nan, np.inf])
    def test_rejects_bad_tau(self, tau):
        with pytest.raises(ValueError):
            Instance([3.0, 1.0], Weights([1.0, 1.0]), tau)

    def test_rejects_dimension_mismatch(self):
        with pytest.raises(ValueError):
            Instance([3.0, 1.0, 0.0], Weights([1.0, 1.0]), 2.0)

    def test_rejects_nonfinite_b(self):
        with pytest.raises(ValueError):
            Instance([np.inf, 1.0], Weights([1.0, 1.0]), 2.0)


class TestSignedSort:
    def test_basic_example(self):
        sort, w = signed_sort(np.array([-3.0, 1.0, 2.0]))
        assert np.array_equal(w, [3.0, 2.0, 1.0])
        assert np.array_equal(sort.apply_inverse(w), [-3.0, 1.0, 2.0])

    def test_sorted_input_is_fixed_point(self):
        sort, w = signed_sort(np.array([5.0, 2.0, 0.0]))
        assert np.array_equal(w, [5.0, 2.0, 0.0])
        assert np.array_equal(sort.perm, [0, 1, 2])

    def test_stable_tie_break(self):
        sort, w = signed_sort(np.array([2.0, -2.0]))
        assert np.array_equal(w, [2.0, 2.0])
        assert np.array_equal(sort.perm, [0, 1])
        assert np.array_equal(sort.signs, [1.0, -1.0])

    def test_zero_entries_get_positive_sign(self):
        sort, w = signed_sort(np.array([0.0, -1.0]))
        assert np.array_equal(w, [1.0, 0.0])
        assert sort.signs[np.flatnonzero(sort.perm == 0)[0]] == 1.0
        assert np.array_equal(sort.apply_inverse(w), [0.0, -1.0])

    def test_round_trip_is_bitwise_identity(self):
        # P is a signed permutation, so apply followed by apply_inverse
        # moves values without arithmetic: equality must be exact.
        rng = np.random.default_rng(7)
        for _ in range(100):
            v = rng.standard_normal(rng.integers(1, 40))
            sort, _ = signed_sort(v)
            assert np.array_equal(sort.apply_inverse(sort.apply(v)), v)

    def test_matrix_is_orthogonal(self):
        rng = np.random.default_rng(8)
        b = rng.standard_normal(6)
        sort, _ = signed_sort(b)
        P = np.zeros((6, 6))
        for k in range(6):
            P[k, sort.perm[k]] = sort.signs[k]
        assert np.array_equal(P.T @ P, np.eye(6))

    def test_rejects_bad_signs(self):
        with pytest.raises(ValueError):
            SignedSort([0, 1], [1.0, 0.5])

    def test_apply_rejects_wrong_length(self):
        sort, _ = signed_sort(np.array([1.0, 2.0]))
        with pytest.raises(ValueError):
            sort.apply([1.0, 2.0, 3.0])


class TestOwlNorm:
    def test_hand_example(self):
        assert owl_norm([-3.0, 5.0], Weights([2.0, 1.0])) == 13.0

    def test_zero_vector(self):
        assert owl_norm(np.zeros(5), Weights(np.ones(5))) == 0.0

    def test_l1_specialization(self):
        rng = np.random.default_rng(11)
        w = Weights(np.ones(9))
        for _ in range(100):
            x = rng.standard_normal(9)
            assert owl_norm(x, w) == pytest.approx(np.sum(np.abs(x)), rel=1e-14)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            owl_norm([1.0, 2.0, 3.0], Weights([1.0, 1.0]))

    def test_invariant_under_signed_sort(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            n = rng.integers(1, 20)
            lam = np.sort(np.abs(rng.standard_normal(n)))[::-1]
            if lam[0] == 0.0:
                continue
            w = Weights(lam)
            b = rng.standard_normal(n)
            sort, sorted_b = signed_sort(b)
            assert owl_norm(b, w) == pytest.approx(owl_norm(sorted_b, w), rel=1e-14)

    def test_absolute_homogeneity(self):
        rng = np.random.default_rng(13)
        w = Weights(np.sort(rng.random(8))[::-1] + 0.1)
        for _ in range(100):
            x = rng.standard_normal(8)
            c = rng.standard_normal()
            assert owl_norm(c * x, w) == pytest.approx(
                abs(c) * owl_norm(x, w), rel=1e-15, abs=1e-300)

    def test_triangle_inequality(self):
        rng = np.random.default_rng(14)
        w = Weights(np.sort(rng.random(10))[::-1] + 0.05)
        for _ in range(1000):
            x = rng.standard_normal(10)
            y = rng.standard_normal(10)
            lhs = owl_norm(x + y, w)
            rhs = owl_norm(x, w) + owl_norm(y, w)
            assert lhs <= rhs * (1.0 + 1e-14)


class TestTrivialGate:
    def test_strictly_inside(self):
        assert is_trivial(Instance([1.0, 0.0], Weights([1.0, 1.0]), 2.0))

    def test_strictly_outside(self):
        assert not is_trivial(Instance([3.0, 1.0], Weights([1.0, 1.0]), 2.0))

    def test_boundary_counts_as_inside(self):
        # The ball is closed: norm exactly tau is feasible.
        assert is_trivial(Instance([2.0, 0.0], Weights([1.0, 1.0]), 2.0))

    def test_gate_has_relative_slack(self):
        # Norm within tau*(1 + INSIDE_RTOL) still counts as inside, so a
        # roundoff-level overshoot never launches the solver.
        b = np.array([2.0, 0.0])
        w = Weights([1.0, 1.0])
        kappa = owl_norm(b, w)
        assert is_trivial(Instance(b, w, kappa / (1.0 + 0.5 * INSIDE_RTOL)))
        assert not is_trivial(Instance(b, w, kappa / (1.0 + 10.0 * INSIDE_RTOL)))
