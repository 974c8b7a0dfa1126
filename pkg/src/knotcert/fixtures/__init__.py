"""Bundled diagram, graph, and move-script fixtures.

Regenerate with scripts/build_fixtures.py; the files are committed so the
test suite and the CLI defaults never depend on the generator.
"""

from __future__ import annotations

from pathlib import Path

from ..diagram import Diagram, parse_diagram
from ..graphcore import Graph, MoveScript, graph_from_json, script_from_json

_DIR = Path(__file__).resolve().parent

G7_DIAGRAM = "g7_figure2.json"
K7_DIAGRAM = "k7_control.json"
TREFOIL_DIAGRAM = "trefoil.json"
FIGURE8_DIAGRAM = "figure8.json"
HOPF_DIAGRAM = "hopf.json"
G7_SCRIPT = "g7_script.json"
G7_GRAPH = "g7_graph.json"


def fixture_path(name: str) -> Path:
    p = _DIR / name
    if not p.exists():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return p


def load_diagram(name: str) -> Diagram:
    return parse_diagram(fixture_path(name).read_text())


def load_graph(name: str) -> Graph:
    return graph_from_json(fixture_path(name).read_text())


def load_script(name: str) -> MoveScript:
    return script_from_json(fixture_path(name).read_text())
