import json
import subprocess
import sys
from fractions import Fraction

import pytest

from osresonance import formats
from osresonance.cli import main
from osresonance.incidence import braid


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def braid_file(tmp_path):
    p = tmp_path / "braid.txt"
    p.write_text(formats.write_arrangement(braid()))
    return str(p)


def test_components_on_braid_file(capsys, braid_file):
    code, out, _ = run(capsys, "components", braid_file)
    assert code == 0
    assert out.splitlines()[0] == "5 components"
    assert out.count("component ") == 5


def test_labelings_star4(capsys, tmp_path):
    g = tmp_path / "star4.txt"
    g.write_text(formats.write_graph(5, [(1, k) for k in range(2, 6)]))
    code, out, _ = run(capsys, "labelings", "--graph", str(g), "--up-to-symmetry")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "20 labelings" and len(lines) == 21
    code, out, _ = run(capsys, "labelings", "--graph", str(g), "--json")
    assert len(json.loads(out)) == 263


def test_realize_example(capsys, tmp_path):
    m = tmp_path / "s.txt"
    m.write_text("4\n1 0 0 0\n0 3 -1 -1\n0 -1 3 -1\n0 -1 -1 3\n")
    code, out, _ = run(capsys, "realize", "--matrix", str(m))
    assert code == 0 and out.strip() == "no realizations"


def test_realize_d4_up_to_automorphism(capsys, tmp_path):
    m = tmp_path / "d4.txt"
    m.write_text(formats.write_matrix([[2, -1, -1, -1, -1], [-1, 2, 0, 0, 0], [-1, 0, 2, 0, 0],
                                       [-1, 0, 0, 2, 0], [-1, 0, 0, 0, 2]]))
    code, out, _ = run(capsys, "realize", "--matrix", str(m), "--up-to", "automorphism")
    assert code == 0 and out.splitlines()[0] == "3 realizations"
    code, out, _ = run(capsys, "realize", "--matrix", str(m), "--limit", "2", "--json")
    assert len(json.loads(out)) == 2


def test_classify(capsys, tmp_path):
    m = tmp_path / "a2.txt"
    m.write_text("3\n2 -1 -1\n-1 2 -1\n-1 -1 2\n")
    code, out, _ = run(capsys, "classify", "--matrix", str(m))
    assert code == 0
    assert "affine (null vector (1, 1, 1))" in out and "verdict: affine" in out


def test_resonance_weights(capsys, braid_file, tmp_path):
    w = tmp_path / "w.txt"
    w.write_text("1 -1 0 0 -1 1\n1 1 -2 0 0 0\n1/2 -1/2 0 0 0 0\n")
    code, out, _ = run(capsys, "resonance", braid_file, "--weights", str(w))
    assert code == 0
    assert out.count("dim H1: 1") == 2 and out.count("dim H1: 0") == 1
    code, out, _ = run(capsys, "resonance", braid_file, "--weights", str(w), "--json")
    data = json.loads(out)
    assert data[2]["weight"][0] == "1/2"
    assert [Fraction(x) for x in data[2]["weight"]] == [Fraction(1, 2), Fraction(-1, 2), 0, 0, 0, 0]


def test_json_round_trip_and_stability(capsys, braid_file):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "components", braid_file, "--json", "--seed", "4")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    data = json.loads(outs[0])
    assert json.loads(json.dumps(data)) == data
    assert data[4]["affine_blocks"] == [[1, 6], [2, 5], [3, 4]]


def test_complete_components_and_family_names(capsys):
    code, out, _ = run(capsys, "components", "monomial:2", "--complete")
    assert code == 0 and out.splitlines()[0] == "19 components"
    code, out, _ = run(capsys, "components", "hessian", "--threads", "2")
    assert out.splitlines()[0] == "10 components"


def test_flats_and_generate(capsys, tmp_path):
    target = tmp_path / "m2.txt"
    code, _, _ = run(capsys, "generate", "monomial", "2", "-o", str(target))
    assert code == 0
    code, out, _ = run(capsys, "flats", str(target))
    assert "L'(2): 7 multiple points" in out
    code, out, _ = run(capsys, "generate", "braid")
    assert formats.parse_arrangement(out).flats2 == braid().flats2


def test_latin(capsys, tmp_path):
    code, out, _ = run(capsys, "latin", "--n", "2", "--count-blocks", "3")
    assert code == 0 and out.splitlines()[0] == "n 2, 3 blocks, 4 rows"
    sq = tmp_path / "sq.txt"
    sq.write_text("3\n1 2 3\n2 3 1\n3 1 2\n")
    code, out, _ = run(capsys, "latin", "--n", "3", "--count-blocks", "3", "--squares", str(sq), "--count")
    assert code == 0 and "normalized systems: 2" in out
    code, _, err = run(capsys, "latin", "--n", "3", "--count-blocks", "4", "--squares", str(sq))
    assert code == 1 and "expected 4" in err


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--k-for-n", "3")
    assert out.splitlines() == ["n 3: k <= 4", "equality at k = n + 1: True"]
    code, out, _ = run(capsys, "bounds", "--f", "10", "2", "--json")
    data = json.loads(out)
    assert data["coefficients"] == ["3", "-19", "-3"]
    lo, hi = (Fraction(x) for x in data["root_interval"])
    assert Fraction(64874, 10000) < lo <= hi < Fraction(64875, 10000)
    assert data["max_d"] == 6 and data["line_bound"] == 77
    code, out, _ = run(capsys, "bounds", "--f", "4", "2")
    assert "root: none" in out and "max d: unbounded" in out
    code, out, _ = run(capsys, "bounds", "--check", "hessian", "10")
    assert "tight True" in out
    code, _, err = run(capsys, "bounds", "--check", "braid", "9")
    assert code == 1 and "outside 1..5" in err


def test_exit_codes(capsys, tmp_path):
    code, _, _ = run(capsys, "flats", "braid", "--bogus")
    assert code == 2
    code, _, _ = run(capsys)
    assert code == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("lines 3\ncoeffs\n1 0 0\n0 1 0\n0 0 x\n")
    code, _, err = run(capsys, "flats", str(bad))
    assert code == 1 and "line 5:" in err
    code, _, err = run(capsys, "flats", str(tmp_path / "missing.txt"))
    assert code == 1 and "no such file" in err
    m = tmp_path / "m.txt"
    m.write_text("2\n1 2\n2 1\n")
    code, _, err = run(capsys, "realize", "--matrix", str(m))
    assert code == 1 and "off-diagonal" in err


def test_module_entry_point(braid_file):
    res = subprocess.run([sys.executable, "-m", "osresonance", "components", braid_file],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.startswith("5 components")
