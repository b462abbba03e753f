import csv
import io
import subprocess
import sys

import numpy as np
import pytest

from udgsp.cli import main
from udgsp.files import InputError, format_points, format_tree, parse_points, parse_tree
from udgsp.geom import PointSet
from udgsp.oracle import bfs_oracle, build_explicit
from udgsp.weighted import weighted_sssp

CHAIN_FILE = "4\n# a chain\n0 0\n0.9 0\n1.8 0\n2.7 0\n"


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


@pytest.fixture
def chain(tmp_path):
    p = tmp_path / "chain.txt"
    p.write_text(CHAIN_FILE)
    return p


def test_solve_chain_unweighted(chain):
    code, text = run(["solve", "-i", str(chain), "-s", "0"])
    assert code == 0
    assert text.splitlines() == ["source 0 radius 1.0 mode unweighted",
                                 "0 0 -1", "1 1 0", "2 2 1", "3 3 2"]


def test_solve_weighted_17_digits(chain, tmp_path):
    out = tmp_path / "t.txt"
    code, _ = run(["solve", "-i", str(chain), "--mode", "weighted", "-o", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[2] == "1 0.90000000000000002 0"
    tree = parse_tree(out.read_text())
    assert tree.dist[3] == weighted_sssp(parse_points(CHAIN_FILE), 0).dist[3]


def test_solve_is_byte_deterministic(tmp_path):
    pts = tmp_path / "p.txt"
    run(["gen", "--n", "400", "--degree", "8", "--seed", "3", "-o", str(pts)])
    outs = [run(["solve", "-i", str(pts), "--mode", m, "-s", "5"])[1]
            for m in ("weighted", "weighted", "unweighted", "unweighted")]
    assert outs[0] == outs[1] and outs[2] == outs[3]


def test_gen_round_trip(tmp_path, monkeypatch):
    monkeypatch.delenv("UDG_SEED", raising=False)
    code, text = run(["gen", "--n", "200", "--shape", "clusters", "--side", "9", "--seed", "4"])
    assert code == 0
    ps = parse_points(text)
    assert format_points(ps) == text
    monkeypatch.setenv("UDG_SEED", "4")
    assert run(["gen", "--n", "200", "--shape", "clusters", "--side", "9", "--seed", "99"])[1] == text


def test_gen_grid_then_solve_center(tmp_path):
    pts = tmp_path / "grid.txt"
    assert run(["gen", "--n", "9", "--shape", "grid", "--side", "2", "-o", str(pts)])[0] == 0
    code, text = run(["solve", "-i", str(pts), "-s", "4"])
    dist = [int(line.split()[1]) for line in text.splitlines()[1:]]
    ref = bfs_oracle(build_explicit(parse_points(pts.read_text())), 4).dist
    assert dist == ref.tolist() == [1, 1, 1, 1, 0, 1, 1, 1, 1]


def test_verify_exit_codes(tmp_path, chain):
    pts = tmp_path / "p.txt"
    run(["gen", "--n", "300", "--degree", "5", "--seed", "1", "-o", str(pts)])
    code, text = run(["verify", "-i", str(pts), "-s", "3"])
    assert code == 0 and text.count(": ok") == 2
    assert run(["verify", "-i", str(chain), "-s", "9"])[0] == 2


def test_verify_reports_mismatch(monkeypatch, chain):
    import udgsp.cli as cli

    real = cli.solve

    def broken(ps, source, mode, radius, **kw):
        tree = real(ps, source, mode, radius, **kw)
        dist = tree.dist.copy()
        dist[-1] += 1
        return type(tree)(tree.source, dist, tree.parent.copy(), tree.radius, tree.mode)

    monkeypatch.setattr(cli, "solve", broken)
    code, text = run(["verify", "-i", str(chain), "--mode", "unweighted"])
    assert code == 1 and "MISMATCH" in text


@pytest.mark.parametrize("content, fragment", [
    ("3\n0 0\n1 1\n", "expected 3 coordinate lines"),
    ("2\n0 0\n1 x\n", "line 3"),
    ("2\n0 0\n1 nan\n", "line 3"),
    ("x\n", "line 1"),
    ("1\n0 0\n1 1\n", "line 3"),
    ("1\n0 0 0\n", "line 2"),
])
def test_parse_errors_carry_line_numbers(content, fragment):
    with pytest.raises(InputError, match=fragment):
        parse_points(content)


def test_input_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n0 0\n")
    assert run(["solve", "-i", str(bad)])[0] == 2
    assert run(["solve", "-i", str(tmp_path / "missing.txt")])[0] == 2


def test_tree_round_trip():
    ps = PointSet([(0, 0), (0.3, 0.1), (5, 5)])
    tree = weighted_sssp(ps, 0)
    back = parse_tree(format_tree(tree))
    assert np.array_equal(back.dist, tree.dist)
    assert np.array_equal(back.parent, tree.parent)
    assert format_tree(tree).splitlines()[3] == "2 inf -1"


def test_bench_csv(monkeypatch):
    monkeypatch.delenv("UDG_SEED", raising=False)
    code, text = run(["bench", "--sizes", "64", "128", "--seeds", "2", "--mode", "both"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["n", "mode", "build_ms", "solve_ms", "explicit_oracle_ms", "dt_edges", "bcp_ops"]
    assert [(r["n"], r["mode"]) for r in rows] == [("64", "unweighted"), ("64", "weighted"),
                                                   ("128", "unweighted"), ("128", "weighted")]
    assert int(rows[0]["dt_edges"]) > 0 and int(rows[1]["bcp_ops"]) > 0
    assert float(rows[2]["explicit_oracle_ms"]) >= 0
    # identical apart from timing columns
    again = list(csv.DictReader(io.StringIO(run(["bench", "--sizes", "64", "128", "--seeds", "2",
                                                 "--mode", "both"])[1])))
    strip = lambda rs: [(r["n"], r["mode"], r["dt_edges"], r["bcp_ops"]) for r in rs]
    assert strip(rows) == strip(again)


def test_plot_svg(tmp_path, chain):
    tree = tmp_path / "t.txt"
    run(["solve", "-i", str(chain), "-o", str(tree)])
    code, svg = run(["plot", "-i", str(chain), "-t", str(tree)])
    assert code == 0
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count('<g id="level-') == 4
    assert svg.count("<line") == 3


def test_console_entry_point(chain):
    res = subprocess.run([sys.executable, "-m", "udgsp.cli", "solve", "-i", str(chain)],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("source 0")
