import networkx as nx
import pytest

from curvekit.analytics import adjacency_graph
from curvekit.expansion import CurveSetLedger, expand_once
from curvekit.verify import run_suite
from curvekit.verify.export import ExportError, export, induced_subgraph, load_json


def test_catalog_round_trip(cat13):
    back = load_json(export(cat13, "json"))
    for key in ("C", "D", "A", "Y"):
        assert list(back[key]) == list(cat13[key])


def test_ledger_round_trip(cat05):
    ledger, _ = expand_once(cat05["O"])
    back = load_json(export(ledger, "json"))
    assert isinstance(back, CurveSetLedger)
    assert back.to_json() == ledger.to_json()


def test_curve_and_triangulation_round_trip(cat21):
    c = cat21.alpha(3)
    assert load_json(export(c, "json")) == c
    assert load_json(export(cat21.tri, "json")).dumps() == cat21.tri.dumps()


def test_graph_round_trip(cat14):
    G = adjacency_graph([cat14.a0(i) for i in range(4)])
    back = load_json(export(G, "json"))
    assert nx.utils.graphs_equal(G, back)


def test_report_exports_as_data():
    r = run_suite("g0-complexity2", "0,5")
    data = load_json(export(r, "json"))
    assert data["verdict"] == "pass" and data["kind"] == "report"


def test_basis_subgraph_dot(cat05):
    text = export(cat05, "dot")
    G = induced_subgraph(list(cat05["Y"]))
    assert G.number_of_nodes() == 15
    assert text.count("[label=") == 15
    assert text.count(" -- ") == G.number_of_edges() == 25


def test_cycle_dot(cat13):
    G = adjacency_graph([cat13.a0(i) for i in range(3)])
    text = export(G, "dot", name="adjacency")
    assert text.startswith("graph adjacency {")
    assert text.count(" -- ") == 3


def test_export_writes_file(tmp_path, cat05):
    out = tmp_path / "y.json"
    text = export(cat05, "json", str(out))
    assert out.read_text() == text


def test_unknown_format(cat05):
    with pytest.raises(ExportError):
        export(cat05, "yaml")
    with pytest.raises(ExportError):
        export(object(), "json")
    with pytest.raises(ExportError):
        load_json('{"kind": "mystery"}')
