"""
Quick smoke tests for the command line, the JSON codec, the emitters and
the golden store.
Run:  python -m pytest tests/test_cli.py
"""
import io
import json
import os
import sys

import pytest

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import main
from algebra.laurent import LaurentPoly
from brokenlines.broken_lines import theta_function
from cluster.seed import Seed
from config import settings
from emitters.dot import emit_dot
from emitters.json_codec import (decode_broken_line, decode_diagram, decode_laurent, dumps,
                                 encode_broken_line, encode_diagram, encode_laurent)
from emitters.svg import emit_svg
from emitters.tikz import emit_tikz
from quiver.ar_theory import ar_component
from quiver.quiver import Quiver
from scattering.cluster_complex import cluster_complex_diagram
from scattering.rank2 import ScatteringEngine
from utils import golden_store
from utils.errors import SchemaError, UnsupportedError


def _run(*argv):
    out = io.StringIO()
    code = main.run(list(argv), stdout=out)
    return code, out.getvalue()


@pytest.fixture
def golden_dir(tmp_path, monkeypatch):
    monkeypatch.setattr(settings, "GOLDEN_DIR", str(tmp_path / "golden"))
    return tmp_path / "golden"


def test_cli_commands():
    print("=" * 60)
    print("TEST: main.run() output and exit codes")
    print("=" * 60)

    assert _run("ar", "--tau", "2,3") == (0, "(0, 1)\n")

    code, out = _run("ar", "--classify", "5,6", "--json")
    assert code == 0
    assert json.loads(out) == {"component": "P", "label": "tau^-2 P(1)", "dim": [5, 6]}

    code, out = _run("ar", "--side", "P", "--bound", "2", "--dot")
    assert code == 0
    assert sum(1 for line in out.splitlines() if "->" in line) == 10

    code, out = _run("mutate", "--b", "2", "--word", "1", "--json")
    payload = json.loads(out)
    assert payload["g_vectors"] == [[-1, 0], [0, 1]]
    assert payload["c_matrix"] == [[-1, 0], [0, 1]]

    code, out = _run("grass", "--D", "1,2", "--e", "0,1", "--json")
    payload = json.loads(out)
    assert payload["euler_characteristic"] == 2
    assert payload["polynomial"] == "q + 1"

    code, out = _run("theta", "--b", "2", "--m", "1,-1,0,0", "--order", "4", "--json")
    assert code == 0
    value = decode_laurent(json.loads(out)["value"])
    assert value == LaurentPoly(2, {(1, -1, 0, 0): 1, (-1, -1, 0, 1): 1, (-1, 1, 1, 1): 1})
    print("  PASSED")
    print()


def test_cli_errors(monkeypatch):
    print("=" * 60)
    print("TEST: exit codes 2 (input) and 3 (resources)")
    print("=" * 60)

    assert _run("ar", "--tau", "1,2")[0] == 2
    assert _run("grass", "--D", "1,x", "--e", "0,1")[0] == 2
    assert _run("cc", "--D", "1,1", "--svg")[0] == 2
    assert _run("nosuch")[0] == 2
    assert _run()[0] == 2

    monkeypatch.setattr(settings, "MAX_GRASSMANNIAN_CELLS", 1)
    assert _run("grass", "--D", "2,3", "--e", "1,2")[0] == 3
    print("  PASSED")
    print()


def test_job_file(tmp_path):
    print("=" * 60)
    print("TEST: --job JSON files")
    print("=" * 60)

    job = tmp_path / "job.json"
    job.write_text(json.dumps({"command": "ar", "args": {"tau": [2, 3], "json": True}}),
                   encoding="utf-8")
    code, out = _run("--job", str(job))
    assert code == 0
    assert json.loads(out) == {"tau": [0, 1]}

    job.write_text("[1, 2]", encoding="utf-8")
    assert _run("--job", str(job))[0] == 2
    print("  PASSED")
    print()


def test_check_targets(golden_dir):
    print("=" * 60)
    print("TEST: check --only tau records and then matches its golden file")
    print("=" * 60)

    assert _run("check", "--only", "tau,hn_phases") == (0, "PASS tau\nPASS hn_phases\n")
    assert (golden_dir / "tau.json").exists()
    assert _run("check", "--only", "tau")[0] == 0
    code, out = _run("check", "--only", "theta_path,ar_order,path_independence")
    assert (code, out) == (0, "PASS theta_path\nPASS ar_order\nPASS path_independence\n")
    assert (golden_dir / "ar_order.json").exists()
    assert _run("check", "--only", "nosuch")[0] == 2
    print("  PASSED")
    print()


def test_golden_store(golden_dir):
    print("=" * 60)
    print("TEST: golden_store.has_changed()")
    print("=" * 60)

    assert golden_store.load_golden("sample") is None
    assert not golden_store.has_changed("sample", {"a": 1, "b": [1, 2]})
    assert not golden_store.has_changed("sample", {"b": [1, 2], "a": 1})
    assert golden_store.has_changed("sample", {"a": 2, "b": [1, 2]})
    assert golden_store.load_golden("sample") == {"a": 1, "b": [1, 2]}
    assert golden_store.has_changed("sample", {"a": 2, "b": [1, 2]}, update=True)
    assert not golden_store.has_changed("sample", {"a": 2, "b": [1, 2]})
    # golden files are written with the codec's canonical text
    assert (golden_dir / "sample.json").read_text(encoding="utf-8") == dumps({"a": 2, "b": [1, 2]})
    assert golden_store.dumps is dumps

    (golden_dir / "broken.json").write_text("{not json", encoding="utf-8")
    assert golden_store.load_golden("broken") is None
    print("  PASSED")
    print()


def test_json_round_trip():
    print("=" * 60)
    print("TEST: encode → decode → encode is byte-identical")
    print("=" * 60)

    diagram = ScatteringEngine(2, 4).complete()
    text = dumps(encode_diagram(diagram))
    assert dumps(encode_diagram(decode_diagram(json.loads(text)))) == text

    complex_a3 = cluster_complex_diagram(Seed.from_quiver(Quiver.type_a(3)), 4, order=2)
    text = dumps(encode_diagram(complex_a3))
    assert dumps(encode_diagram(decode_diagram(json.loads(text)))) == text

    result = theta_function((1, -1, 0, 0), (3, 2), diagram)
    for line in result.lines:
        text = dumps(encode_broken_line(line))
        assert dumps(encode_broken_line(decode_broken_line(json.loads(text), diagram))) == text

    poly = result.value
    assert decode_laurent(encode_laurent(poly)) == poly
    with pytest.raises(SchemaError):
        decode_laurent({"rank": 2})
    with pytest.raises(SchemaError):
        decode_diagram([])
    print("  PASSED")
    print()


def test_emitters():
    print("=" * 60)
    print("TEST: SVG / TikZ / DOT emitters")
    print("=" * 60)

    diagram = ScatteringEngine(2, 4).complete()
    lines = theta_function((1, -1, 0, 0), (3, 2), diagram).lines
    svg = emit_svg(diagram, lines)
    assert svg.startswith("<svg")
    assert svg.count('class="ray"') == len(diagram.rays())

    tikz = emit_tikz(diagram, lines)
    assert tikz.startswith("\\begin{tikzpicture}")
    assert tikz.rstrip().endswith("\\end{tikzpicture}")

    dot = emit_dot(ar_component(Quiver.kronecker(2), "P", bound=1))
    assert dot.count("->") == 6
    assert "P(1)\\n(1,2)" in dot

    with pytest.raises(UnsupportedError):
        emit_svg(cluster_complex_diagram(Seed.from_quiver(Quiver.type_a(3)), 2, order=2))
    print("  PASSED")
    print()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
