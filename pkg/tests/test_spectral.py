import numpy as np
import pytest

from qrank.errors import DimensionError, NumericalError
from qrank.services.generators import gen_cycle, gen_gnc, gen_random, gen_scale_free, gen_tree
from qrank.services.graph import adjacency_matrix
from qrank.services.pagerank import google_matrix
from qrank.services.spectral import (
    dump_factors_csv,
    is_unitary,
    scattering_unitary,
    shift_matrix,
    svd,
    unitary_from_svd,
)
from qrank.services.walk import build_operators


def _reconstruct(triple):
    return (triple.p * triple.singular_values) @ triple.q


def test_svd_reconstructs_matrix(scale_free):
    a = adjacency_matrix(scale_free)
    triple = svd(a)

    np.testing.assert_allclose(_reconstruct(triple), a, atol=1e-10)
    assert is_unitary(triple.p)[0]
    assert is_unitary(triple.q)[0]
    assert np.all(np.diff(triple.singular_values) <= 0)


def test_svd_pivots_are_real_positive(scale_free):
    triple = svd(adjacency_matrix(scale_free))

    for j in range(triple.n):
        column = triple.p[:, j]
        k = int(np.argmax(np.round(np.abs(column), 10)))
        assert abs(column[k].imag) < 1e-12
        assert column[k].real > 0


def test_svd_is_deterministic():
    a = adjacency_matrix(gen_random(15, 0.2, seed=9))
    first, second = svd(a), svd(a.copy())

    np.testing.assert_array_equal(first.p, second.p)
    np.testing.assert_array_equal(first.q, second.q)


def test_svd_factors_are_read_only(small_tree):
    triple = svd(adjacency_matrix(small_tree))

    with pytest.raises(ValueError):
        triple.p[0, 0] = 0.0


def test_zero_matrix_gives_identity_factors():
    triple = svd(np.zeros((3, 3)))

    np.testing.assert_array_equal(triple.p, np.eye(3))
    np.testing.assert_array_equal(triple.q, np.eye(3))
    np.testing.assert_array_equal(triple.singular_values, np.zeros(3))
    np.testing.assert_array_equal(unitary_from_svd(triple), np.eye(3))


def test_svd_rejects_non_square():
    with pytest.raises(DimensionError):
        svd(np.ones((2, 3)))


def test_svd_rejects_non_finite():
    a = np.eye(2)
    a[0, 1] = np.nan
    with pytest.raises(NumericalError):
        svd(a)


def test_single_edge_scattering_matrix(single_edge):
    u = scattering_unitary(adjacency_matrix(single_edge))

    expected = np.array([[0.0, 1.0], [np.exp(1j), 0.0]])
    np.testing.assert_allclose(u, expected, atol=1e-12)


def test_cycle_scattering_is_phased_permutation(cycle3):
    # all singular values are 1, so U = e^{i} · A for any choice of factors
    a = adjacency_matrix(cycle3)
    np.testing.assert_allclose(scattering_unitary(a), np.exp(1j) * a, atol=1e-12)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_scattering_unitary_on_random_graphs(seed):
    u = scattering_unitary(adjacency_matrix(gen_random(20, 0.15, seed=seed)))
    ok, deviation = is_unitary(u)

    assert ok
    assert deviation < 1e-10


def test_scattering_unitary_on_tree():
    assert is_unitary(scattering_unitary(adjacency_matrix(gen_tree(3, 3))))[0]


def test_is_unitary_reports_deviation():
    ok, deviation = is_unitary(2 * np.eye(2))

    assert not ok
    assert deviation == pytest.approx(3.0)


def test_shift_matrix_sources(small_tree):
    a = adjacency_matrix(small_tree)

    np.testing.assert_array_equal(shift_matrix(small_tree, "adjacency", orientation="source-columns"), a)
    np.testing.assert_array_equal(shift_matrix(small_tree, "adjacency", orientation="source-rows"), a.T)
    np.testing.assert_array_equal(shift_matrix(small_tree), a.T)
    np.testing.assert_allclose(
        shift_matrix(small_tree, "google", p=0.2, convention="damping", orientation="source-columns"),
        google_matrix(small_tree, 0.2, "damping"),
    )
    np.testing.assert_allclose(
        shift_matrix(small_tree, "google", p=0.2, convention="damping"),
        google_matrix(small_tree, 0.2, "damping").T,
    )
    with pytest.raises(ValueError):
        shift_matrix(small_tree, "laplacian")
    with pytest.raises(ValueError):
        shift_matrix(small_tree, orientation="diagonal")


def test_single_edge_default_shift(single_edge):
    u = scattering_unitary(shift_matrix(single_edge))

    expected = np.array([[0.0, np.exp(1j)], [1.0, 0.0]])
    np.testing.assert_allclose(u, expected, atol=1e-12)


def test_tree_shift_sends_parents_to_children(small_tree):
    u = scattering_unitary(shift_matrix(small_tree))

    for parent in (0, 1, 2):
        expected = np.zeros(7, dtype=complex)
        expected[[2 * parent + 1, 2 * parent + 2]] = np.exp(1j * np.sqrt(2.0)) / np.sqrt(2.0)
        np.testing.assert_allclose(u[:, parent], expected, atol=1e-10)


def test_tree_shift_with_source_columns_sends_children_to_parents(small_tree):
    u = scattering_unitary(shift_matrix(small_tree, orientation="source-columns"))

    for child in range(1, 7):
        expected = np.zeros(7, dtype=complex)
        expected[(child - 1) // 2] = np.exp(1j)
        np.testing.assert_allclose(u[:, child], expected, atol=1e-10)


def test_identity_scatters_to_a_global_phase():
    np.testing.assert_allclose(scattering_unitary(np.eye(4)), np.exp(1j) * np.eye(4), atol=1e-12)


def test_google_shift_is_unitary(small_tree):
    assert is_unitary(scattering_unitary(shift_matrix(small_tree, "google")))[0]


def test_dump_factors_csv(tmp_path, small_tree):
    triple = svd(adjacency_matrix(small_tree))
    u = unitary_from_svd(triple)
    written = dump_factors_csv(triple, u, tmp_path / "factors")

    assert len(written) == 7
    np.testing.assert_allclose(np.loadtxt(tmp_path / "factors" / "lambda.csv", delimiter=","), triple.singular_values)
    u_real = np.loadtxt(tmp_path / "factors" / "U_real.csv", delimiter=",")
    np.testing.assert_allclose(u_real, u.real)


def _corpus():
    graphs = [gen_tree(b, depth) for b in (2, 3) for depth in range(1, 5)]
    graphs += [gen_scale_free(n, m, seed) for n in (16, 32, 64) for m in (1, 2) for seed in range(3)]
    graphs += [gen_gnc(n, seed) for n in (10, 30, 50) for seed in range(3)]
    graphs += [gen_cycle(n) for n in range(2, 9)]
    graphs += [gen_random(20, 0.1, seed) for seed in range(8)]
    return graphs


def test_corpus_operators_are_unitary():
    corpus = _corpus()
    assert len(corpus) >= 50

    for g in corpus:
        ops = build_operators(g)
        blocks = ops.coin_blocks
        np.testing.assert_allclose(blocks @ np.swapaxes(blocks, 1, 2), np.broadcast_to(np.eye(2), blocks.shape), atol=1e-12)
        ok, deviation = is_unitary(ops.scatter)
        assert ok, f"n={g.n}: deviation {deviation:.2e}"


def test_singular_values_match_eigenvalue_oracle(scale_free):
    a = adjacency_matrix(scale_free)
    expected = np.linalg.eigvalsh(a.T @ a)[::-1]

    np.testing.assert_allclose(svd(a).singular_values ** 2, expected, atol=1e-9)


def test_tree_singular_values_match_eigenvalue_oracle():
    g = gen_tree(2, 5)
    m = shift_matrix(g)
    singular_values = svd(m).singular_values

    np.testing.assert_allclose(singular_values ** 2, np.linalg.eigvalsh(m.T @ m)[::-1], atol=1e-9)
    # 31 internal nodes with two children each, 32 leaves
    np.testing.assert_allclose(singular_values[:31], np.full(31, np.sqrt(2.0)), atol=1e-12)
    np.testing.assert_allclose(singular_values[31:], np.zeros(32), atol=1e-12)
