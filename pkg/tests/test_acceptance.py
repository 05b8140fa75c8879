"""Acceptance suite: one PASS/FAIL line per criterion.

    pytest -v tests/test_acceptance.py     # inside the full suite
    python tests/test_acceptance.py        # standalone, prints the twelve lines

The orbit corpus (|disc| <= 16000, default box scale) is built once through the CLI
and cached under pytest's cache directory, keyed by its manifest.
"""
import csv
import json
import os
import sys

import pytest

from quartshape import __version__, acceptance
from quartshape.cli import ORBIT_COLUMNS, main
from quartshape.oracles.hunter import smallest_totally_real_s4

BOUND = max(acceptance.WEYL_XS)


def corpus_table(directory: str) -> str:
    path = os.path.join(directory, f"orbits{BOUND}.csv")
    manifest = path + ".manifest.json"
    if os.path.exists(manifest):
        with open(manifest) as fh:
            m = json.load(fh)
        if m["version"] == __version__ and m["config"]["disc_bound"] == BOUND and m["config"]["box_scale"] == "2":
            return path
    rc = main(["enumerate", "--disc-bound", str(BOUND), "--out", path])
    assert rc == 0, f"corpus enumeration exited with {rc}"
    return path


def load_corpus(path):
    with open(path, newline="") as fh:
        return acceptance.corpus_from_rows(list(csv.DictReader(fh)))


@pytest.fixture(scope="session")
def corpus(request):
    d = str(request.config.cache.mkdir("quartshape-corpus"))
    return load_corpus(corpus_table(d))


@pytest.fixture(scope="session")
def small(corpus):
    return acceptance._within(corpus, acceptance.CORPUS_BOUND)


@pytest.fixture(scope="session")
def s4(corpus):
    return acceptance.s4_points(corpus)


def _report(capsys, outcome):
    with capsys.disabled():
        print("\n" + outcome.line())
    assert outcome.passed, outcome.detail


def test_criterion_01_equivariance(capsys):
    _report(capsys, acceptance.run_one(1, acceptance.check_equivariance))


def test_criterion_02_rings(capsys, small):
    _report(capsys, acceptance.run_one(2, acceptance.check_rings, small))


def test_criterion_03_maximality(capsys, small):
    _report(capsys, acceptance.run_one(3, acceptance.check_maximality, small))


def test_criterion_04_sieve(capsys, corpus):
    _report(capsys, acceptance.run_one(4, acceptance.check_sieve, corpus, acceptance.CORPUS_BOUND))


def test_criterion_05_covolume(capsys, small):
    _report(capsys, acceptance.run_one(5, acceptance.check_covolume, small))


def test_criterion_06_shapes(capsys):
    _report(capsys, acceptance.run_one(6, acceptance.check_shape_regressions))


def test_criterion_07_resolvents(capsys, small):
    _report(capsys, acceptance.run_one(7, acceptance.check_resolvents, small))


def test_criterion_08_bessel(capsys):
    _report(capsys, acceptance.run_one(8, acceptance.check_bessel))


def test_criterion_09_hecke(capsys):
    _report(capsys, acceptance.run_one(9, acceptance.check_hecke))


def test_criterion_10_haar(capsys):
    _report(capsys, acceptance.run_one(10, acceptance.check_haar))


def test_criterion_11_equidistribution(capsys, s4):
    _report(capsys, acceptance.run_one(11, acceptance.check_equidistribution, s4))


def test_criterion_12_smallest_s4(capsys, corpus):
    _report(capsys, acceptance.run_one(12, acceptance.check_smallest_s4, corpus, smallest_totally_real_s4))


if __name__ == "__main__":
    here = os.path.join(os.path.dirname(os.path.abspath(__file__)), ".cache")
    os.makedirs(here, exist_ok=True)
    outcomes = acceptance.run_all(load_corpus(corpus_table(here)), smallest_totally_real_s4)
    sys.exit(0 if all(o.passed for o in outcomes) else 1)
