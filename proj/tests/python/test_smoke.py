import math

import pytest

import prerep


def test_algebra_counts():
    doc = prerep.check("algebra", n=1)
    assert doc["schema_version"] == prerep.schema_version
    suite = doc["suites"][0]
    assert suite["failed"] == 0
    assert suite["passed"] + suite["deviates"] == 45


def test_ground_state():
    rep = prerep.solve("ground")["suites"][0]["reports"][0]
    assert rep["status"] == "Pass"
    assert rep["normalizable"]


def test_spectrum_degree_one():
    reps = prerep.solve("spectrum", degree=1)["suites"][0]["reports"]
    spins = {m["spin"] for m in reps[1]["multiplets"]}
    assert spins == {0.5}


def test_bell_and_chsh():
    p = prerep.bell_probabilities(math.pi / 3)
    assert p == pytest.approx((3 / 8, 1 / 8, 1 / 8, 3 / 8), abs=1e-12)
    assert prerep.chsh_classical_bound() == 2
    s = prerep.chsh(0, math.pi / 4, math.pi / 8, 3 * math.pi / 8)
    assert abs(s) == pytest.approx(2 * math.sqrt(2), abs=1e-9)


def test_detectors():
    rep = prerep.sim("detectors", count=4, seed=3)["suites"][0]["reports"][0]
    assert rep["status"] == "Pass"
    assert len(rep["branches"]) == 4


def test_errors():
    with pytest.raises(prerep.DomainError):
        prerep.check("algebra", n=0)
    with pytest.raises(prerep.DomainError):
        prerep.check("algebra", colour=1)
    with pytest.raises(prerep.CapExceeded):
        prerep.solve("scaling", n=8)


def test_cli_in_process():
    code, out, err = prerep.run("sim", "chsh")
    assert code == 0
    assert '"schema_version": 1' in out
    assert "chsh" in err
    assert prerep.run("check", "algebra", "--n", "0")[0] == 2
