import json

import numpy as np
import pytest

import polyheart.cli as cli
from polyheart.errors import NoConvergence
from polyheart.svgout import render_report_svg


def run(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_heart_square(tmp_path, capsys):
    jpath = tmp_path / "r.json"
    spath = tmp_path / "r.svg"
    code, out, err = run(
        ["heart", "--body", "square", "--dirs", "360",
         "--json", str(jpath), "--svg", str(spath)],
        capsys,
    )
    assert code == 0 and err == ""
    assert "point" in out
    rep = json.loads(jpath.read_text())
    assert rep["schema"] == 1
    assert rep["heart"]["kind"] == "point"
    assert np.allclose(rep["heart"]["vertices"][0], [0.5, 0.5], atol=1e-9)
    # SVG re-rendered from the stored report is byte-identical
    assert spath.read_text() == render_report_svg(rep)


def test_heart_direction_monotonicity_cli(tmp_path, capsys):
    hearts = {}
    for dirs in (96, 192):
        p = tmp_path / f"h{dirs}.json"
        code, _, _ = run(
            ["heart", "--body", "triangle:0,0,2,0.3,0.4,1.1",
             "--dirs", str(dirs), "--json", str(p)],
            capsys,
        )
        assert code == 0
        hearts[dirs] = json.loads(p.read_text())["heart"]
    coarse = np.array(hearts[96]["vertices"])
    fine = np.array(hearts[192]["vertices"])
    # every vertex of the finer heart lies inside the coarser hull
    from polyheart.geometry import ConvexPolygon, point_in

    hull = ConvexPolygon(coarse)
    for v in fine:
        assert point_in(hull, v, eps=1e-7 * hull.diameter)


def test_body_file_input(tmp_path, capsys):
    spec = {"vertices": [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]}
    p = tmp_path / "body.json"
    p.write_text(json.dumps(spec))
    code, out, _ = run(["bounds", "--body", str(p)], capsys)
    assert code == 0
    assert "lambda1 upper" in out


def test_generator_file_input(tmp_path, capsys):
    spec = {"generator": {"name": "regular_ngon", "args": [6, 1.0]}}
    p = tmp_path / "gen.json"
    p.write_text(json.dumps(spec))
    code, out, _ = run(["santalo", "--body", str(p)], capsys)
    assert code == 0


def test_invalid_body_exits_1(capsys):
    code, _, err = run(["heart", "--body", "nosuch"], capsys)
    assert code == 1
    msg = json.loads(err)
    assert msg["error"]["type"] == "InvalidPolygon"


def test_nonconvex_vertices_exit_1(tmp_path, capsys):
    spec = {"vertices": [[0, 0], [2, 0], [2, 2], [1, 0.5], [0, 2]]}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(spec))
    code, _, err = run(["heart", "--body", str(p)], capsys)
    assert code == 1
    assert json.loads(err)["error"]["type"] == "InvalidPolygon"


def test_grid_too_coarse_exits_1(capsys):
    code, _, err = run(["pde-verify", "--body", "square", "--h", "0.4"], capsys)
    assert code == 1
    assert json.loads(err)["error"]["type"] == "GridTooCoarse"


def test_inconsistency_exits_2(monkeypatch, capsys):
    def boom(*a, **k):
        raise NoConvergence("stuck")

    monkeypatch.setattr(cli, "full_verify", boom)
    code, _, err = run(["pde-verify", "--body", "square", "--h", "0.02"], capsys)
    assert code == 2
    assert json.loads(err)["error"]["type"] == "NoConvergence"


def test_pde_verify_square(capsys):
    code, out, err = run(["pde-verify", "--body", "square", "--h", "0.02"], capsys)
    assert code == 0, err
    assert "membership: ok" in out


def test_fourier_check(capsys):
    code, out, _ = run(["fourier-check", "--body", "square"], capsys)
    assert code == 0
    assert "transform at zero" in out


def test_polar_subcommand(capsys):
    code, out, _ = run(["polar", "--body", "rectangle:2,1"], capsys)
    assert code == 0
    assert "polar area at centroid: 4" in out
