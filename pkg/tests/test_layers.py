import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from artmuse.nn import layers


def rand(shape, seed=0, dtype=np.float64):
    return np.random.default_rng(seed).normal(size=shape).astype(dtype)


class TestConv2d:
    def test_padding_identity_single_pixel(self):
        x = np.ones((1, 1, 1, 1))
        out, _ = layers.conv2d_forward(x, np.ones((3, 3, 1, 1)), np.zeros(1))
        assert out.shape == (1, 1, 1, 1)
        assert out[0, 0, 0, 0] == pytest.approx(1.0)

    def test_center_tap_stride2_hand_oracle(self):
        # values 1..16 row-major; a delta kernel at stride 2 must sample the
        # input at even coordinates
        x = np.arange(1, 17, dtype=np.float64).reshape(1, 4, 4, 1)
        w = np.zeros((3, 3, 1, 1))
        w[1, 1, 0, 0] = 1.0
        out, _ = layers.conv2d_forward(x, w, np.zeros(1), stride=(2, 2))
        np.testing.assert_array_equal(
            out.reshape(2, 2), [[1.0, 3.0], [9.0, 11.0]]
        )

    def test_delta_kernel_stride1_is_identity(self):
        x = rand((2, 5, 7, 3), seed=1)
        w = np.zeros((3, 3, 3, 3))
        for c in range(3):
            w[1, 1, c, c] = 1.0
        out, _ = layers.conv2d_forward(x, w, np.zeros(3))
        np.testing.assert_allclose(out, x, atol=1e-12)

    def test_output_dims_ceil_rule(self):
        for h, s, expected in [(7, 2, 4), (8, 2, 4), (9, 3, 3), (5, 4, 2)]:
            x = rand((1, h, h, 1))
            out, _ = layers.conv2d_forward(
                x, rand((3, 3, 1, 2), seed=2), np.zeros(2), stride=(s, s)
            )
            assert out.shape[1:3] == (expected, expected)

    def test_shape_errors_name_the_dimension(self):
        with pytest.raises(layers.ShapeError, match="rank-4"):
            layers.conv2d_forward(rand((4, 4, 1)), rand((3, 3, 1, 2)),
                                  np.zeros(2))
        with pytest.raises(layers.ShapeError, match="channels"):
            layers.conv2d_forward(rand((1, 4, 4, 2)), rand((3, 3, 1, 2)),
                                  np.zeros(2))
        with pytest.raises(layers.ShapeError, match="bias"):
            layers.conv2d_forward(rand((1, 4, 4, 1)), rand((3, 3, 1, 2)),
                                  np.zeros(3))

    def test_backward_matches_finite_differences(self):
        x = rand((2, 6, 6, 2), seed=3)
        w = rand((3, 3, 2, 4), seed=4) * 0.5
        b = rand((4,), seed=5) * 0.1
        out, cache = layers.conv2d_forward(x, w, b, stride=(2, 2))
        upstream = rand(out.shape, seed=6)
        dx, dw, db = layers.conv2d_backward(upstream, cache)

        def loss(xx, ww, bb):
            o, _ = layers.conv2d_forward(xx, ww, bb, stride=(2, 2))
            return float((o * upstream).sum())

        eps = 1e-6
        for arr, grad in [(x, dx), (w, dw), (b, db)]:
            flat = arr.reshape(-1)
            for idx in np.random.default_rng(7).choice(
                flat.size, size=min(12, flat.size), replace=False
            ):
                orig = flat[idx]
                flat[idx] = orig + eps
                plus = loss(x, w, b)
                flat[idx] = orig - eps
                minus = loss(x, w, b)
                flat[idx] = orig
                numeric = (plus - minus) / (2 * eps)
                assert grad.reshape(-1)[idx] == pytest.approx(
                    numeric, rel=1e-5, abs=1e-8
                )


class TestBatchNorm:
    def test_constant_batch_normalizes_to_zero(self):
        x = np.full((4, 3), 7.0)
        out, _, _, _ = layers.batchnorm_forward(
            x, np.ones(3), np.zeros(3), np.zeros(3), np.ones(3), "train"
        )
        np.testing.assert_allclose(out, 0.0, atol=1e-6)

    def test_two_point_batch_hand_oracle(self):
        # values {0, 2}: mean 1, var 1 -> normalized to -+1/sqrt(1+eps)
        x = np.array([[0.0], [2.0]])
        out, _, _, _ = layers.batchnorm_forward(
            x, np.ones(1), np.zeros(1), np.zeros(1), np.ones(1), "train"
        )
        expected = 1.0 / np.sqrt(1.0 + 1e-5)
        np.testing.assert_allclose(
            out.ravel(), [-expected, expected], rtol=1e-12
        )
        assert out.ravel() == pytest.approx([-1.0, 1.0], abs=1e-4)

    def test_infer_with_unit_stats_is_identity(self):
        x = rand((5, 4), seed=8)
        out, _, _, _ = layers.batchnorm_forward(
            x, np.ones(4), np.zeros(4), np.zeros(4), np.ones(4), "infer"
        )
        np.testing.assert_allclose(out, x / np.sqrt(1.0 + 1e-5), rtol=1e-12)

    def test_train_batch_of_one_rejected(self):
        with pytest.raises(ValueError, match="variance undefined"):
            layers.batchnorm_forward(
                np.ones((1, 3)), np.ones(3), np.zeros(3),
                np.zeros(3), np.ones(3), "train",
            )

    def test_running_stats_momentum_update(self):
        x = np.array([[0.0], [2.0]])
        _, _, mean, var = layers.batchnorm_forward(
            x, np.ones(1), np.zeros(1), np.zeros(1), np.ones(1), "train"
        )
        assert mean[0] == pytest.approx(0.1 * 1.0)   # 0.9*0 + 0.1*1
        assert var[0] == pytest.approx(0.9 * 1.0 + 0.1 * 1.0)

    def test_conv_layout_normalizes_per_channel(self):
        x = rand((3, 4, 4, 2), seed=9)
        out, _, _, _ = layers.batchnorm_forward(
            x, np.ones(2), np.zeros(2), np.zeros(2), np.ones(2), "train"
        )
        np.testing.assert_allclose(out.mean(axis=(0, 1, 2)), 0.0, atol=1e-12)
        np.testing.assert_allclose(out.var(axis=(0, 1, 2)), 1.0, atol=1e-4)


class TestRelu:
    def test_examples(self):
        out, _ = layers.relu_forward(np.array([-1.0, 0.0, 2.0]))
        np.testing.assert_array_equal(out, [0.0, 0.0, 2.0])
        out, _ = layers.relu_forward(np.array([-3.0, -0.5]))
        np.testing.assert_array_equal(out, [0.0, 0.0])

    def test_backward_gates_on_positive_input(self):
        _, cache = layers.relu_forward(np.array([-1.0, 2.0]))
        dx = layers.relu_backward(np.array([5.0, 5.0]), cache)
        np.testing.assert_array_equal(dx, [0.0, 5.0])

    @given(hnp.arrays(np.float64, hnp.array_shapes(max_dims=3),
                      elements=st.floats(-1e6, 1e6)))
    def test_idempotent(self, x):
        once, _ = layers.relu_forward(x)
        twice, _ = layers.relu_forward(once)
        np.testing.assert_array_equal(once, twice)


class TestDense:
    def test_identity_weights(self):
        x = rand((3, 4), seed=10)
        out, _ = layers.dense_forward(x, np.eye(4), np.zeros(4))
        np.testing.assert_allclose(out, x)

    def test_affine_example(self):
        out, _ = layers.dense_forward(
            np.array([[1.0, 2.0]]), np.eye(2), np.array([3.0, 4.0])
        )
        np.testing.assert_array_equal(out, [[4.0, 6.0]])

    def test_inner_dim_mismatch(self):
        with pytest.raises(layers.ShapeError, match="inner dimensions"):
            layers.dense_forward(rand((2, 3)), rand((4, 5)), np.zeros(5))

    def test_backward_shapes_and_values(self):
        x, w, b = rand((3, 4), seed=11), rand((4, 2), seed=12), np.zeros(2)
        _, cache = layers.dense_forward(x, w, b)
        dout = rand((3, 2), seed=13)
        dx, dw, db = layers.dense_backward(dout, cache)
        np.testing.assert_allclose(dx, dout @ w.T)
        np.testing.assert_allclose(dw, x.T @ dout)
        np.testing.assert_allclose(db, dout.sum(axis=0))


class TestSoftmaxCrossEntropy:
    def test_uniform_logits_loss_is_log_c(self):
        for c in (2, 5, 27):
            loss, _ = layers.softmax_cross_entropy(
                np.zeros((3, c)), np.zeros(3, dtype=int)
            )
            assert loss == pytest.approx(np.log(c), rel=1e-12)

    def test_saturated_correct_logit(self):
        logits = np.zeros((1, 3))
        logits[0, 1] = 1000.0
        loss, _ = layers.softmax_cross_entropy(logits, np.array([1]))
        assert loss == pytest.approx(0.0, abs=1e-12)

    def test_hand_softmax_example(self):
        logits = np.array([[0.0, np.log(3.0)]])
        loss, grad = layers.softmax_cross_entropy(logits, np.array([0]))
        assert loss == pytest.approx(np.log(4.0), rel=1e-12)
        np.testing.assert_allclose(
            layers.softmax(logits), [[0.25, 0.75]], rtol=1e-12
        )
        np.testing.assert_allclose(grad, [[0.25 - 1.0, 0.75]], rtol=1e-12)

    def test_label_out_of_range(self):
        with pytest.raises(ValueError, match="label out of range"):
            layers.softmax_cross_entropy(np.zeros((2, 3)), np.array([0, 3]))

    @settings(max_examples=50)
    @given(st.integers(0, 2 ** 31 - 1), st.integers(1, 6), st.integers(2, 9))
    def test_softmax_rows_sum_to_one(self, seed, n, c):
        logits = np.random.default_rng(seed).normal(scale=50.0, size=(n, c))
        probs = layers.softmax(logits)
        np.testing.assert_allclose(probs.sum(axis=1), 1.0, atol=1e-6)
        assert (probs >= 0).all()
