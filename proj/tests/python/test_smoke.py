import json
import os
import subprocess
from fractions import Fraction

import pytest

import pebblekit as pk


def test_coverage_and_ceiling_of_a_unit_of_two():
    d = pk.Distribution(pk.Grid(11, 11), {(5, 5): 2})
    cov = pk.coverage(d)
    assert cov["cov"] == 5
    assert cov["ratio"] == Fraction(5, 2)
    assert pk.ceiling_infinite(d) == Fraction(17, 2)
    assert pk.weight(d, (5, 7)) == Fraction(1, 2)


def test_moves_and_reachability():
    g = pk.Grid(9, 9)
    d = pk.Distribution(g, {(4, 4): 4})
    assert pk.apply_move(d, (4, 4), (4, 5)).entries() == {(4, 4): 2, (4, 5): 1}
    assert pk.is_reachable(d, (4, 6))
    assert not pk.is_reachable(pk.Distribution(g, {(4, 4): 3}), (4, 6))
    assert pk.can_move_k(pk.Distribution(g, {(4, 4): 8}), (4, 5), 4)
    with pytest.raises(ValueError):
        pk.apply_move(pk.Distribution(g, {(4, 4): 1}), (4, 4), (4, 5))


def test_exact_lp():
    res = pk.solve_lp([1, 1], [[1, 2], [2, 1]], [1, "1"])
    assert res["status"] == "optimal"
    assert res["objective_value"] == Fraction(2, 3)
    assert res["certificate_verified"]
    p = pk.unit_excess_problem()
    res = pk.solve_lp(p["objective"], p["constraints"], p["rhs"])
    assert res["objective_value"] == Fraction(12, 25)
    value, witness = pk.fractional_optimal_pebbling(pk.Grid(5, 5, torus=True))
    assert value == 4
    assert pk.fractional_solvable(witness)


def test_generators():
    d = pk.generate("stripes", n=1, m=1)
    assert d.size() == 12
    assert pk.coverage(d)["ratio"] == 1
    diag = pk.gen_diag7(pk.Grid(14, 14, torus=True))
    assert diag.size() == 56 and pk.is_solvable(diag)
    u = pk.generate("uniform-frac", width=9, height=9, torus=True, q=Fraction(1, 9))
    assert u.size() == Fraction(9)
    assert pk.find_density7_pattern()["min_weight"] == "1143/1024"


def test_text_format_round_trip():
    d = pk.parse_distribution("grid 3 3 plane\npebble 1 1 4\n")
    assert d.entries() == {(1, 1): 4}
    assert pk.parse_distribution(d.serialize()) == d
    assert "4" in pk.render(d)
    c = pk.parse_distribution("grid 2 2 torus continuous\npebble 0 0 1/9\n")
    assert c[(0, 0)] == Fraction(1, 9)


def test_optimal_search():
    pi, witness = pk.optimal_pebbling_number(pk.Grid(2, 2))
    assert pi == 3 and pk.is_solvable(witness)
    with pytest.raises(pk.BudgetExceeded):
        pk.optimal_pebbling_number(pk.Grid(3, 3), candidate_cap=5)


@pytest.mark.skipif("PEBBLEKIT_CLI" not in os.environ, reason="CLI path not given")
def test_cli(tmp_path):
    cli = os.environ["PEBBLEKIT_CLI"]
    out = tmp_path / "f.txt"
    subprocess.run([cli, "gen", "fig4", "-n", "1", "-m", "1", "-o", str(out)], check=True)
    report = json.loads(subprocess.run([cli, "analyze", str(out), "--coverage"], check=True,
                                       capture_output=True, text=True).stdout)
    assert report["schema_version"] == pk.SCHEMA_VERSION
    assert report["coverage"]["ratio"] == "1/1"
    unit = tmp_path / "u.txt"
    unit.write_text("grid 9 9 plane\npebble 4 4 2\n")
    report = json.loads(subprocess.run([cli, "analyze", str(unit), "--ceiling", "--infinite-mode"], check=True,
                                       capture_output=True, text=True).stdout)
    assert report["ceiling"] == "17/2"
    bad = subprocess.run([cli, "gen", "diag7", "--torus", "13", "13"], capture_output=True, text=True)
    assert bad.returncode == 2
