"""Smoke tests for the _cmlj extension module and the CLI binary."""

import json
import os
import subprocess

import pytest

import _cmlj


def test_version():
    assert _cmlj.__version__


def test_j_of_lambda_classic_values():
    j = _cmlj.j_of_lambda("-1")
    assert j["re"].startswith("1728")
    assert float(j["im"]) == 0.0
    j2 = _cmlj.j_of_lambda("2")
    assert j2["re"].startswith("1728")


def test_j_of_lambda_rejects_degenerate():
    with pytest.raises(Exception):
        _cmlj.j_of_lambda("1")


def test_enumerate_counts():
    assert len(_cmlj.enumerate(2)) == 3
    assert len(_cmlj.enumerate(3)) == 4
    orbits = _cmlj.enumerate(4, allow_square=True)
    assert len(orbits) == 7
    exempt = [o for o in orbits if o["square_policy_exempt"]]
    assert len(exempt) == 2


def test_q_expansion_printed_value():
    v = _cmlj.j_q_expansion("0", "1.4142135623730950488016887242096980785696718753769",
                            n_terms=4)
    assert abs(float(v["re"]) - 7999.997704) < 1e-5


def test_theta_oracle():
    out = _cmlj.j_theta_oracle("0", "1")
    assert abs(float(out["lambda"]["re"]) - 0.5) < 1e-30
    assert out["j"]["re"].startswith("1728")


def test_isogeny_candidates():
    cands = _cmlj.j2_candidates("-1")
    js = sorted(round(float(c["j"]["re"])) for c in cands)
    assert js == [1728, 287496, 287496]


def test_recognize():
    cand = _cmlj.recognize_quadratic("-3375")
    assert cand["degree"] == 1
    assert cand["min_poly"] == ["3375", "1"]


def test_solve_small():
    groups = _cmlj.solve(3, 1, starts=800, seed=0)
    assert len(groups) == 1
    assert abs(float(groups[0]["rep"]["j"]["re"])) < 1e-40


def cli_path():
    return os.environ.get("CMLJ_CLI")


@pytest.mark.skipif(not os.environ.get("CMLJ_CLI"), reason="CLI path not set")
def test_cli_enumerate_json():
    out = subprocess.run([cli_path(), "enumerate", "--d", "2"], capture_output=True,
                         text=True, check=True)
    doc = json.loads(out.stdout)
    assert doc["results"]["count"] == 3
    assert doc["command"] == "enumerate"


@pytest.mark.skipif(not os.environ.get("CMLJ_CLI"), reason="CLI path not set")
def test_cli_usage_error_exit_code():
    out = subprocess.run([cli_path(), "enumerate", "--d", "1"], capture_output=True,
                         text=True)
    assert out.returncode == 2
