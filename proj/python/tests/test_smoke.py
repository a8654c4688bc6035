import numpy as np
import pytest

import gumap


@pytest.fixture
def grid():
    return gumap.synth_graph("grid", 100, seed=1)


def test_graph_from_edges():
    g = gumap.Graph.from_edges([("a", "b"), ("b", "c"), ("c", "a"), ("a", "a")])
    assert g.num_vertices == 3
    assert g.num_edges == 3
    assert g.dropped_edges == 1
    assert g.labels == ["a", "b", "c"]
    assert g.neighbors(0) == [1, 2]


@pytest.mark.parametrize("algo", gumap.ALGORITHMS)
def test_layout_runs_and_is_deterministic(grid, algo):
    xy, report = gumap.layout(grid, algo=algo, iterations=30, seed=3)
    assert xy.shape == (100, 2)
    assert np.isfinite(xy).all()
    assert report["algorithm"] == algo
    again, _ = gumap.layout(grid, algo=algo, iterations=30, seed=3)
    assert np.array_equal(xy, again)


def test_unknown_algorithm(grid):
    with pytest.raises(ValueError):
        gumap.layout(grid, algo="tsne")


def test_metrics_beat_random(grid):
    xy, _ = gumap.layout(grid, iterations=100)
    good = gumap.metrics(grid, xy)
    rand = gumap.metrics(grid, np.random.default_rng(0).uniform(size=(100, 2)))
    assert good["stress"] < rand["stress"]
    assert 0.0 <= good["np"] <= 1.0
    with pytest.raises(ValueError):
        gumap.metrics(grid, np.zeros((5, 2)))


def test_sparsify_and_resistance():
    g = gumap.synth_graph("scale_free", 60, m0=10, seed=2)
    r = gumap.effective_resistance(g)
    assert len(r) == g.num_edges
    assert sum(r) == pytest.approx(g.num_vertices - 1, rel=1e-9)
    s = gumap.sparsify(g)
    assert s.num_edges == int(np.ceil(60 * np.log2(60)))
    assert s.is_connected()


def test_knn_weights(grid):
    edges = gumap.knn(grid, k=5)
    assert edges
    for i, j, d, h in edges:
        assert i < j
        assert d >= 1
        assert 0 < h <= 1


def test_fit_ab_and_svg(grid):
    a, b = gumap.fit_ab()
    assert a == pytest.approx(1.577, abs=1e-3)
    assert b == pytest.approx(0.895, abs=1e-3)
    svg = gumap.render_svg(grid, gumap.spectral_init(grid))
    assert svg.startswith("<svg")
