import math
import xml.etree.ElementTree as ET

from dimwit.report import ReportRow, bound_lines, read_csv, render_svg, write_csv

SVG = "{http://www.w3.org/2000/svg}"


def test_bound_lines():
    i3 = bound_lines("i3")
    assert [n for _, n in i3] == ["bit", "qubit", "trit,qutrit"]
    assert [v for v, _ in i3] == [3.0, 1 + 2 * math.sqrt(2), 5.0]
    i4 = bound_lines("i4")
    assert [n for _, n in i4] == ["bit", "qubit", "trit", "qutrit", "quart,ququart"]
    assert round(i4[3][0], 4) == 7.9689


def test_single_row_chart():
    svg = render_svg([ReportRow("only", 5.6, 0.01, 5.65, "i4")])
    root = ET.fromstring(svg)
    assert len(list(root.iter(SVG + "rect"))) == 2
    dashed = [l for l in root.iter(SVG + "line") if l.get("stroke-dasharray")]
    assert len(dashed) == 5


def test_svg_is_deterministic_and_escaped():
    rows = [ReportRow("a<b & c", 3.5, 0.02, 3.83, "i3"), ReportRow("d", 7.0, 0.0, 7.0, "i4")]
    assert render_svg(rows) == render_svg(rows)
    root = ET.fromstring(render_svg(rows))
    assert "a<b & c" in [t.text for t in root.iter(SVG + "text")]


def test_csv_round_trip(tmp_path):
    rows = [ReportRow("x", 1 / 3, 2 ** -0.5, math.pi), ReportRow("y, quoted", 5.0, 0.0, float("nan"))]
    p = tmp_path / "r.csv"
    write_csv(rows, p)
    back = read_csv(p)
    assert back[0] == rows[0]
    assert back[1].label == "y, quoted" and math.isnan(back[1].theory)
