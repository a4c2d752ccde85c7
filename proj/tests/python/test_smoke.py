import math

import pytest

import dsoracle


def four_cycle():
    return dsoracle.Graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)])


def test_graph_basics():
    g = four_cycle()
    assert g.num_vertices == 4
    assert g.num_edges == 4
    assert g.unweighted
    assert g.weight(0, 2) is None
    assert g.edges()[0] == (0, 1, 1.0)
    with pytest.raises(ValueError):
        dsoracle.Graph(2, [(0, 0, 1)])


def test_sssp3_detour_and_cut_vertex():
    o = dsoracle.Sssp3Oracle.build(four_cycle(), 0)
    dist, path = o.query(2, 1)
    assert dist == 2
    assert path == [0, 3, 2]
    dist, path = dsoracle.Sssp3Oracle.build(dsoracle.generate_path(5), 0).query(4, 2)
    assert math.isinf(dist)
    assert path is None


def test_sssp_eps_matches_exact_within_bound():
    g = dsoracle.generate_grid(2, 12)
    o = dsoracle.SsspEpsOracle.build(g, 0, 0.5)
    for x in range(1, g.num_vertices):
        for v in range(g.num_vertices):
            if v == x:
                continue
            exact, _ = dsoracle.exact_replacement(g, 0, v, x)
            dist, _ = o.query(v, x)
            assert exact <= dist <= 1.5 * exact or (math.isinf(exact) and math.isinf(dist))


def test_sssp_eps_rejects_weighted():
    g = dsoracle.generate_gnp(20, 0.3, seed=1, max_weight=5)
    with pytest.raises(ValueError, match="unweighted required"):
        dsoracle.SsspEpsOracle.build(g, 0, 0.5)


def test_apasp_stretch_and_probes():
    g = dsoracle.generate_gnp(25, 0.2, seed=3)
    o = dsoracle.ApaspOracle.build(g, 2, 0.5, seed=3)
    for u in range(0, 25, 4):
        for v in range(25):
            for x in [None] + list(range(0, 25, 5)):
                if x in (u, v):
                    continue
                exact, _ = dsoracle.exact_replacement(g, u, v, x)
                dist, path = o.query(u, v, x)
                if math.isinf(exact):
                    assert math.isinf(dist) and path is None
                    continue
                assert exact <= dist <= 4.5 * exact
                assert path[0] == u and path[-1] == v
                assert o.probes(u, v, x) <= 4


def test_container_round_trip_is_byte_identical():
    g = dsoracle.generate_gnp(30, 0.15, seed=5)
    for kind in ("sssp3", "sssp-eps", "apasp"):
        c = dsoracle.build_container(g, kind, source=2, epsilon=0.5, k=2, seed=7)
        text = c.save()
        back = dsoracle.load_container(text, g)
        assert back.kind == kind
        assert back.save() == text
        for v in range(30):
            assert back.query(1, v, None) == c.query(1, v, None)


def test_container_errors():
    g = dsoracle.generate_cycle(8)
    text = dsoracle.build_container(g, "sssp3", source=0).save()
    with pytest.raises(dsoracle.ContainerError, match="fingerprint"):
        dsoracle.load_container(text, dsoracle.generate_path(8))
    corrupt = text.replace('"root":0', '"root":1')
    assert corrupt != text
    with pytest.raises(dsoracle.ContainerError, match="fingerprint"):
        dsoracle.load_container(corrupt)
    with pytest.raises(dsoracle.ContainerError):
        dsoracle.load_container("{}")


def test_verify_report():
    g = dsoracle.generate_gnp(40, 0.2, seed=1, max_weight=10)
    c = dsoracle.build_container(g, "sssp3", source=0)
    report = dsoracle.verify(g, c)
    assert report["ok"]
    assert report["max_stretch"] <= 3
    assert report["queries"] == 40 + 39 * 39


def test_container_file_round_trip(tmp_path):
    g = dsoracle.generate_cycle(10)
    graph_file = tmp_path / "cycle.gr"
    dsoracle.save_graph(str(graph_file), g)
    loaded = dsoracle.load_graph(str(graph_file))
    assert loaded.content_hash == g.content_hash
    c = dsoracle.build_container(loaded, "sssp-eps", source=0, epsilon=0.25)
    path = tmp_path / "c.json"
    c.write(str(path))
    back = dsoracle.read_container(str(path), g)
    assert back.query(0, 5, 1) == c.query(0, 5, 1)
    assert back.params["epsilon"] == 0.25
