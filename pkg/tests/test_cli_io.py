import json

import pytest

from geocover.cli import run
from geocover.errors import InstanceError, InvalidPolygon
from geocover.generators import generate_random_polygon
from geocover.geometry import validate_polygon
from geocover.greedy import CoverSolution, contiguous_greedy
from geocover.io import emit_instance, emit_solution, parse_instance
from geocover.oracle import verify_coverage

SQUARE = b'{"vertices": [[0,0],[0,1],[1,1],[1,0]], "radius": 1}'
THIN = b'{"vertices": [[0,0],[0,8],[0.1,8],[0.1,0]], "radius": 2}'


def _write(tmp_path, data, name="fence.json"):
    p = tmp_path / name
    p.write_bytes(data)
    return p


def test_parse_square():
    inst = parse_instance(SQUARE)
    assert inst.radius == 1.0 and len(inst.polygon) == 4
    assert inst.polygon_unit().area == 1.0


def test_parse_scales():
    inst = parse_instance(THIN)
    assert inst.radius == 2.0
    assert (0.05, 4.0) in inst.scaled_vertices()


def test_radius_defaults_to_one():
    assert parse_instance(b'{"vertices": [[0,0],[0,1],[1,0]]}').radius == 1.0


@pytest.mark.parametrize(
    "doc",
    [b'{"radius": 1}', b"not json", b'{"vertices": [[0,0],[1]]}', b'{"vertices": [[0,0],[0,1],[1,0]], "radius": -1}',
     b'{"vertices": [[0,0],[0,"a"],[1,0]]}', b"[1, 2]"],
)
def test_parse_errors(doc):
    with pytest.raises(InstanceError):
        parse_instance(doc)


def test_parse_invalid_polygon():
    with pytest.raises(InvalidPolygon):
        parse_instance(b'{"vertices": [[0,0],[1,1],[0,1],[1,0]]}')


def test_round_trip():
    inst = parse_instance(THIN)
    again = parse_instance(emit_instance(inst))
    assert again == inst
    assert parse_instance(emit_instance(again)) == again


def test_emit_one_disk():
    sol = CoverSolution([(0.5, 0.5)], 1, 3, 0)
    doc = json.loads(emit_solution(sol, "json"))
    assert list(doc) == ["centers", "count", "sum_q", "verified", "gaps"]
    assert doc["count"] == 1 and doc["centers"] == [[0.5, 0.5]]


def test_scaling_law():
    inst = parse_instance(THIN)
    sol = contiguous_greedy(inst.polygon_unit(), 0)
    direct = contiguous_greedy(validate_polygon([(x / 2, y / 2) for x, y in inst.polygon]), 0)
    doc = json.loads(emit_solution(sol, "json", inst.radius))
    assert doc["centers"] == [[c[0] * 2, c[1] * 2] for c in direct.centers]


def test_svg_rectangle():
    P = validate_polygon([(0, 0), (0, 0.1), (8, 0.1), (8, 0)])
    sol = contiguous_greedy(P, 0)
    svg = emit_solution(sol, "svg", P=P, report=verify_coverage(P, sol.centers)).decode()
    assert svg.startswith("<svg") and svg.count("<circle") == sol.k
    assert "<polyline" in svg


def test_generator_deterministic():
    a = generate_random_polygon(8, 1, "star")
    assert a == generate_random_polygon(8, 1, "star")
    validate_polygon(a)
    for shape in ("walk", "corridor"):
        validate_polygon(generate_random_polygon(12, 3, shape))


def test_generator_corridor_ratio():
    P = validate_polygon(generate_random_polygon(64, 7, "corridor"))
    assert P.perimeter / P.n >= 20


def test_cli_cover_verify(tmp_path, capsys):
    src = _write(tmp_path, THIN)
    out = tmp_path / "centers.json"
    assert run(["cover", str(src), "--algorithm", "greedy", "--out", str(out), "--verify"]) == 0
    doc = json.loads(out.read_text())
    assert doc["verified"] is True and doc["gaps"] == []
    assert "verify: ok" in capsys.readouterr().err


def test_cli_corridor_svg(tmp_path):
    src = _write(tmp_path, b'{"vertices": [[0,0],[0,1],[8,1],[8,0]]}')
    svg = tmp_path / "plan.svg"
    assert run(["cover", str(src), "--algorithm", "corridor", "--corridor-threshold", "2.5", "--svg", str(svg),
                "--out", str(tmp_path / "o.json")]) == 0
    assert svg.read_text().startswith("<svg")
    assert json.loads((tmp_path / "o.json").read_text())["sum_q"] == 0


def test_cli_opt_brute(tmp_path, capsys):
    src = _write(tmp_path, SQUARE)
    assert run(["cover", str(src), "--opt-brute", "--grid", "0.05"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["opt_bracket"] == [1, 1]


def test_cli_input_error(tmp_path, capsys):
    src = _write(tmp_path, b'{"radius": 1}')
    assert run(["cover", str(src)]) == 2
    assert "input error" in capsys.readouterr().err
    assert run(["cover", str(tmp_path / "missing.json")]) == 2


def test_cli_verify_failure(tmp_path, monkeypatch, capsys):
    import geocover.greedy as greedy_mod

    # drop the last disk so the cover has a hole
    real = greedy_mod.contiguous_greedy

    def broken(P, start_vertex=0):
        sol = real(P, start_vertex)
        return CoverSolution(sol.centers[:-1], sol.k - 1, sol.sum_Q, sol.start_vertex)

    monkeypatch.setattr(greedy_mod, "contiguous_greedy", broken)
    src = _write(tmp_path, THIN)
    assert run(["cover", str(src), "--verify"]) == 3
    err = capsys.readouterr().err
    assert "FAILED" in err and "gap" in err


def test_cli_generate(tmp_path):
    out = tmp_path / "g.json"
    assert run(["generate", "--n", "10", "--seed", "2", "--out", str(out)]) == 0
    parse_instance(out.read_bytes())


def test_cli_report(tmp_path):
    assert run(["report", "--out-dir", str(tmp_path), "--sizes", "16", "--widths", "10"]) == 0
    for name in ("scaling.csv", "rectangles.csv", "runtime.png", "sum_q.png", "rectangle_greedy.png"):
        assert (tmp_path / name).stat().st_size > 0


def test_cli_numeric_failure(tmp_path, monkeypatch):
    import geocover.greedy as greedy_mod
    from geocover.errors import NumericalCertificationFailure

    def fail(P, start_vertex=0):
        raise NumericalCertificationFailure("root not bracketed")

    monkeypatch.setattr(greedy_mod, "contiguous_greedy", fail)
    assert run(["cover", str(_write(tmp_path, SQUARE))]) == 4
