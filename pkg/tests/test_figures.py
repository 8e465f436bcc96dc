from oreweave.figures import save_coref_figure, save_trace_figure
from oreweave.fixtures import fixture_maps
from oreweave.harvest import UnionGraph, co_referenced, trace
from oreweave.rdf import Uri

SAC = Uri("http://example.org/cens/seismology/data/seismic-sac")


def test_trace_figure_renders_to_a_file(tmp_path):
    union = UnionGraph.from_maps(fixture_maps("seismology"))
    result = trace(union, SAC, max_depth=3)
    out = tmp_path / "trace.png"
    save_trace_figure(result, out)
    assert out.stat().st_size > 0
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_trace_figure_handles_a_single_node(tmp_path):
    union = UnionGraph.from_maps([])
    result = trace(union, SAC)
    out = tmp_path / "single.png"
    save_trace_figure(result, out)
    assert out.stat().st_size > 0


def test_coref_figure_renders_to_a_file(tmp_path):
    union = UnionGraph.from_maps(fixture_maps("seismology"))
    out = tmp_path / "coref.png"
    save_coref_figure(co_referenced(union), out)
    assert out.stat().st_size > 0


def test_coref_figure_handles_the_empty_case(tmp_path):
    out = tmp_path / "empty.png"
    save_coref_figure({}, out)
    assert out.stat().st_size > 0


def test_svg_output_is_supported(tmp_path):
    union = UnionGraph.from_maps(fixture_maps("seismology"))
    out = tmp_path / "coref.svg"
    save_coref_figure(co_referenced(union), out)
    assert b"<svg" in out.read_bytes()
