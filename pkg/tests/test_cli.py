import csv
import json

import pytest

from quartshape.cli import EXIT_COVERAGE, EXIT_OK, EXIT_VALIDATION, main, read_config


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture(scope="module")
def tables(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    orbits = d / "orbits.csv"
    assert main(["enumerate", "--disc-bound", "300", "--out", str(orbits)]) == EXIT_OK
    shapes = d / "shapes.csv"
    assert main(["shapes", "--table", str(orbits), "--out", str(shapes)]) == EXIT_OK
    return d, orbits, shapes


def test_enumerate_split_orbit(tmp_path):
    out = tmp_path / "o.csv"
    assert main(["enumerate", "--disc-bound", "1", "--out", str(out)]) == EXIT_OK
    rows = _rows(out)
    assert len(rows) == 1 and rows[0]["disc"] == "1" and rows[0]["stabilizer"] == "24"
    manifest = json.loads((tmp_path / "o.csv.manifest.json").read_text())
    assert manifest["command"] == "enumerate" and manifest["config"]["disc_bound"] == 1


def test_enumerate_is_byte_deterministic(tables, tmp_path):
    _, orbits, _ = tables
    again = tmp_path / "again.csv"
    assert main(["enumerate", "--disc-bound", "300", "--out", str(again), "--threads", "2"]) == EXIT_OK
    assert again.read_bytes() == orbits.read_bytes()


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# a comment\ndisc-bound = 50\nout = %s\n" % (tmp_path / "from_cfg.csv"))
    assert read_config(str(cfg))["disc_bound"] == "50"
    assert main(["enumerate", "--config", str(cfg)]) == EXIT_OK
    assert main(["enumerate", "--config", str(cfg), "--disc-bound", "1"]) == EXIT_OK
    assert len(_rows(tmp_path / "from_cfg.csv")) == 1
    bad = tmp_path / "bad.cfg"
    bad.write_text("no equals sign\n")
    assert main(["enumerate", "--config", str(bad)]) == EXIT_VALIDATION
    bad.write_text("colour = red\n")
    assert main(["enumerate", "--config", str(bad)]) == EXIT_VALIDATION


def test_invalid_flags(tmp_path):
    assert main(["enumerate", "--disc-bound", "0", "--out", str(tmp_path / "x.csv")]) == EXIT_VALIDATION
    assert main(["enumerate", "--out", str(tmp_path / "x.csv")]) == EXIT_VALIDATION


def test_sieve_identity(tables, tmp_path):
    _, orbits, _ = tables
    out = tmp_path / "sieve.csv"
    assert main(["sieve", "--table", str(orbits), "--out", str(out)]) == EXIT_OK
    rows = _rows(out)
    assert rows[0]["q"] == "1" and int(rows[0]["N_Wq"]) == len(_rows(orbits))
    ie = next(r for r in rows if r["q"] == "inclusion_exclusion")
    dm = next(r for r in rows if r["q"] == "direct_maximal")
    assert ie["N_Wq"] == dm["N_Wq"]
    assert main(["sieve", "--table", str(orbits), "--disc-bound", "1000", "--out", str(out)]) == EXIT_COVERAGE


def test_shapes_of_split_orbit(tmp_path):
    o = tmp_path / "o.csv"
    s = tmp_path / "s.csv"
    main(["enumerate", "--disc-bound", "1", "--out", str(o)])
    assert main(["shapes", "--table", str(o), "--out", str(s)]) == EXIT_OK
    r = _rows(s)[0]
    assert abs(float(r["x"]) - 0.5) < 1e-12 and abs(float(r["y"]) - 3 ** 0.5 / 2) < 1e-12
    assert abs(float(r["g11"]) - 0.75 * 4 ** (1 / 3)) < 1e-12


def test_shapes_missing_columns(tmp_path):
    t = tmp_path / "t.csv"
    t.write_text("a11,a22\n1,2\n")
    assert main(["shapes", "--table", str(t), "--out", str(tmp_path / "s.csv")]) == EXIT_VALIDATION
    assert main(["shapes", "--table", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "s.csv")]) \
        == EXIT_VALIDATION


def test_weyl_constant_functions_count(tables, tmp_path):
    _, _, shapes = tables
    out = tmp_path / "w.csv"
    assert main(["weyl", "--shapes", str(shapes), "--out", str(out), "--xs", "100,300",
                 "--functions", "constant"]) == EXIT_OK
    for r in _rows(out):
        assert r["S"] == r["N"]
    assert main(["weyl", "--shapes", str(shapes), "--out", str(out), "--xs", "1000",
                 "--functions", "constant"]) == EXIT_COVERAGE
    # mean-zero functions are randomized through their centring
    assert main(["weyl", "--shapes", str(shapes), "--out", str(out), "--xs", "300"]) == EXIT_VALIDATION


def test_weyl_default_functions_with_ks(tables, tmp_path):
    _, _, shapes = tables
    out, ks = tmp_path / "w.csv", tmp_path / "ks.csv"
    assert main(["weyl", "--shapes", str(shapes), "--out", str(out), "--ks-out", str(ks), "--xs", "150,300",
                 "--seed", "1", "--samples", "20000"]) == EXIT_OK
    assert len(_rows(out)) == 10 and len(_rows(ks)) == 2


def test_lfun_domination_and_coverage(tables, tmp_path):
    _, _, shapes = tables
    out = tmp_path / "l.csv"
    assert main(["lfun", "--shapes", str(shapes), "--out", str(out), "--j", "0", "--q", "1,2,3",
                 "--functions", "constant"]) == EXIT_OK
    rows = {r["q"]: float(r["re"]) for r in _rows(out)}
    assert rows["2"] <= rows["1"] and rows["3"] <= rows["1"]
    assert main(["lfun", "--shapes", str(shapes), "--out", str(out), "--j", "0", "--M", "5000",
                 "--functions", "constant"]) == EXIT_COVERAGE


def test_sample_haar(tmp_path, capsys):
    out = tmp_path / "h.csv"
    assert main(["sample-haar", "--rank", "3", "--count", "1000", "--out", str(out)]) == EXIT_VALIDATION
    assert main(["sample-haar", "--rank", "3", "--count", "1000", "--seed", "4", "--out", str(out)]) == EXIT_OK
    first = out.read_bytes()
    assert main(["sample-haar", "--rank", "3", "--count", "1000", "--seed", "4", "--out", str(out)]) == EXIT_OK
    assert out.read_bytes() == first and len(_rows(out)) == 1000


def test_selftest(capsys):
    assert main(["selftest", "--seed", "1"]) == EXIT_OK
    assert "FAIL" not in capsys.readouterr().out
