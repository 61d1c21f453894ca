import math

import pytest

import minorpack as mp


def test_graph_basics():
    g = mp.Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.n == 4
    assert g.m == 3
    assert g.neighbors(1) == [0, 2]
    assert g.has_edge(0, 1)
    assert not g.has_edge(0, 3)
    with pytest.raises(ValueError):
        mp.Graph(2, [(0, 0)])


def test_named_graphs_and_digest():
    k4 = mp.named_graph("K4")
    assert k4.n == 4 and k4.m == 6
    assert mp.graph_digest(k4) == mp.graph_digest(mp.Graph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)]))
    assert len(mp.connected_components(mp.named_graph("2K2"))) == 2


def test_exact_pathwidth():
    width, bags = mp.exact_pathwidth(mp.named_graph("C4"))
    assert width == 2
    assert all(len(b) <= 3 for b in bags)
    assert mp.exact_pathwidth(mp.named_graph("P7"))[0] == 1
    assert mp.pathwidth_at_most(mp.named_graph("K4"), 2) is None
    assert mp.pathwidth_at_most(mp.named_graph("K4"), 3) is not None


def test_find_model():
    c5 = mp.named_graph("C5")
    model = mp.find_model(mp.named_graph("K3"), c5)
    assert model is not None
    assert sum(len(s) for s in model) <= 5
    assert mp.find_model(mp.named_graph("K3"), mp.named_graph("P6")) is None

    rooted = mp.find_rooted_model(mp.named_graph("K2"), [0], mp.named_graph("P3"), [1])
    assert rooted is not None
    assert 1 in rooted[0]


def test_oracles_koenig():
    c5 = mp.named_graph("C5")
    fam = [mp.named_graph("K2")]
    nu, packing = mp.nu_exact(fam, c5)
    tau, cover = mp.tau_exact(fam, c5)
    assert (nu, tau) == (2, 3)  # matching and vertex cover of C5
    assert len(packing) == 2
    assert len(cover) == 3


def test_klogk_and_forest_transversal():
    k4 = mp.named_graph("K4")
    x = mp.klogk_transversal(mp.named_graph("K2"), k4)
    t, k = 2, 2
    assert len(x) <= 3 * (t + 1) * k * math.log2((t + 1) * k) - t

    y = mp.forest_transversal([mp.named_graph("2K2")], mp.named_graph("C5"))
    assert isinstance(y, list)


def test_duality_certificate():
    fam = [mp.named_graph("P3")]
    g = mp.named_graph("5K3")
    cert = mp.ep_duality(fam, g, "practical")
    assert len(cert["packing"]) == 5
    assert len(cert["transversal"]) == 5
    assert cert["ratio"] == 1.0
    assert cert["mode"] == "practical"


def test_fpt():
    k3 = mp.named_graph("K3")
    assert mp.fpt_pw_deletion(k3, 1, 1) is None
    result = mp.fpt_pw_deletion(k3, 1, 2)
    assert result is not None and len(result) == 2
    # pathwidth(P1) = 0 < 1, so the empty set already works; P5 needs deletions
    assert mp.fpt_pw_deletion(mp.named_graph("P1"), 1, 0) == []
    assert mp.fpt_pw_deletion(mp.named_graph("P5"), 1, 0) is None


def test_minimal_pw_subgraph():
    g = mp.named_graph("C4")
    assert sorted(mp.minimal_pw_subgraph(g, 2)) == [0, 1, 2, 3]


def test_cap_errors():
    with pytest.raises(mp.CapExceededError):
        mp.nu_exact([mp.named_graph("K2")], mp.named_graph("K13"))
