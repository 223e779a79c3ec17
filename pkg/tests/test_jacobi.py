import numpy as np

from spectraform import symmetric_eig


def test_matches_numpy_eigh():
    rng = np.random.default_rng(10)
    for _ in range(200):
        S = rng.standard_normal((4, 4))
        S = 0.5 * (S + S.T)
        w, V = symmetric_eig(S)
        ref = np.linalg.eigvalsh(S)[::-1]
        np.testing.assert_allclose(w, ref, atol=1e-12 * max(1.0, np.abs(ref).max()))
        # Each returned pair must actually be an eigenpair of S.
        np.testing.assert_allclose(S @ V, V * w, atol=1e-11)
        np.testing.assert_allclose(V.T @ V, np.eye(4), atol=1e-12)


def test_descending_order_and_sign_convention():
    w, V = symmetric_eig(np.diag([1.0, 3.0, 2.0, -5.0]))
    np.testing.assert_array_equal(w, [3.0, 2.0, 1.0, -5.0])
    for k in range(4):
        col = V[:, k]
        assert col[np.argmax(np.abs(col))] > 0


def test_deterministic():
    rng = np.random.default_rng(11)
    S = rng.standard_normal((4, 4))
    S = 0.5 * (S + S.T)
    w1, V1 = symmetric_eig(S)
    w2, V2 = symmetric_eig(S)
    np.testing.assert_array_equal(w1, w2)
    np.testing.assert_array_equal(V1, V2)


def test_handles_tiny_and_huge_scales():
    for scale in (1e-30, 1e-8, 1.0, 1e8, 1e30):
        S = scale * np.array(
            [[2.0, 1.0, 0.0, 0.0], [1.0, 2.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.5], [0.0, 0.0, 0.5, 1.0]]
        )
        w, V = symmetric_eig(S)
        np.testing.assert_allclose(
            w, np.linalg.eigvalsh(S)[::-1], rtol=1e-12, atol=1e-300
        )


def test_already_diagonal_with_duplicates():
    w, V = symmetric_eig(np.eye(4))
    np.testing.assert_array_equal(w, np.ones(4))
    np.testing.assert_allclose(V.T @ V, np.eye(4), atol=0)
