"""The command-line surface: outputs, exit codes, JSON stability."""

import io
import json
import os

import pytest

from superalg.cli import run_command

DATA = os.path.join(os.path.dirname(__file__), "..", "data")


def run(argv):
    buf = io.StringIO()
    code = run_command(argv, out=buf)
    return code, buf.getvalue()


def data(name):
    return os.path.join(DATA, name)


def test_ksdim():
    code, out = run(["ksdim", data("xy.salg")])
    assert code == 0
    assert out.strip() == "Ksdim = 1|0"
    code, out = run(["ksdim", data("lambda2.salg"), "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["result"] == "0|2"
    assert payload["certificate"]["elements"] == ["y1", "y2"]


def test_bar_and_gr():
    code, out = run(["bar", data("xy.salg")])
    assert code == 0 and "even x" in out
    code, out = run(["gr", data("x2-y1y2.salg"), "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["result"]["odd_weight_homogeneous"] is True
    assert "x^2" in payload["result"]["relations"]


def test_ann():
    code, out = run(["ann", data("xy.salg"), "--element", "y"])
    assert code == 0
    assert "x" in out and "y" in out


def test_odd_params_and_regular():
    code, out = run(["odd-params", data("xy1y2.salg")])
    assert code == 0 and "y1" in out
    code, _ = run(["odd-regular", data("lambda2.salg"), "--seq", "y1, y2"])
    assert code == 0
    code, _ = run(["odd-regular", data("xy.salg"), "--seq", "y"])
    assert code == 1  # predicate false


def test_phi_dim():
    code, out = run(["phi-dim", data("lambda2.salg")])
    assert code == 0 and "2" in out
    code, out = run(["phi-dim", data("xy.salg"), "--point", "x = 1"])
    assert code == 0 and "0" in out


def test_localize():
    code, out = run(["localize", data("xy.salg"), "--element", "x"])
    assert code == 0 and "inverse variable t" in out


def test_mono_check():
    code, _ = run(
        ["mono-check", data("a11.salg"), data("xy.salg"), "--images", "x -> x; y -> y"]
    )
    assert code == 0
    # purely even source into a target with surviving odd part: fails
    code, _ = run(
        ["mono-check", data("xy.salg"), data("a11.salg"), "--images", "x -> x; y -> y"]
    )
    assert code in (0, 1, 2)


def test_hc_commands():
    code, out = run(["hc", "validate", "unipotent"])
    assert code == 0 and "FAIL" not in out
    code, out = run(["hc", "validate", data("unipotent.shc")])
    assert code == 0
    code, out = run(["hc", "mul", "unipotent", "g[[1,2],[0,1]] e(s,1)", "e(t,1)"])
    assert code == 0 and "e(t + s, 1)" in out
    code, out = run(["hc", "inv", "unipotent", "g[[1,1],[0,1]] e(s,1)"])
    assert code == 0 and "e(-s, 1)" in out
    code, out = run(["hc", "sdim", "sl2-standard"])
    assert code == 0 and "3|2" in out
    code, _ = run(["hc", "graded", "gl1-weight"])
    assert code == 0
    code, _ = run(["hc", "graded", "unipotent"])
    assert code == 1


def test_orbit_commands():
    code, out = run(
        ["orbit", data("a11.salg"), "--derivation", "translate", "--point", "x = 2"]
    )
    assert code == 0
    assert "I = (x - 2)" in out and "trivial" in out and "0|1" in out
    code, out = run(
        ["orbit", data("a11.salg"), "--derivation", "scale", "--point", "x = 0"]
    )
    assert code == 0 and "full" in out
    code, out = run(
        [
            "verify-orbits",
            data("a11.salg"),
            "--derivation",
            "scale",
            "--point",
            "x = 0",
            "--point",
            "x = 1",
        ]
    )
    assert code == 0 and out.count("checks ok") == 2


def test_named_blocks_from_file():
    # derivations and points declared inside the document are addressable
    code, out = run(
        ["orbit", data("xy.salg"), "--derivation", "scale", "--point", "origin"]
    )
    # phi(y) = x on k[x|y]/(xy): phi(x*y) = x^2 not in the ideal -> input error
    assert code == 2


def test_input_errors():
    code, _ = run(["ksdim", data("missing.salg")])
    assert code == 2
    code, _ = run(["ann", data("xy.salg"), "--element", "zz"])
    assert code == 2
    code, _ = run(["nonsense"])
    assert code == 2
    code, _ = run(["ksdim", data("xy.salg"), "--field", "fp", "4"])
    assert code == 2


def test_finite_field_flag():
    code, out = run(["ksdim", data("xy.salg"), "--field", "fp", "5"])
    assert code == 0 and "1|0" in out


def test_json_outputs_are_stable():
    for argv in (
        ["ksdim", data("xy.salg"), "--json"],
        ["gr", data("x2-y1y2.salg"), "--json"],
        ["orbit", data("a11.salg"), "--derivation", "translate", "--point", "x = 2", "--json"],
    ):
        _, out1 = run(argv)
        _, out2 = run(argv)
        assert out1 == out2
        json.loads(out1)  # valid JSON
