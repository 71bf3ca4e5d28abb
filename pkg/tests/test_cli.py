import io
import json
import shutil
import subprocess
import sys

import pytest

from abcf.cli import EX_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_expand_sqrt2():
    code, text = run("expand", "--a", "-1", "--b", "0", "--x", "sqrt(2)")
    assert code == 0
    obj = json.loads(text)
    assert obj["head"] == [2] and obj["period"] == [2, 4]
    assert obj["convergents"][:3] == ["2/1", "3/2", "10/7"]


def test_verify_measure_suite_passes():
    code, text = run("verify", "--suite", "measure", "--a", "-4/5", "--b", "2/5", "--format", "text")
    assert code == 0
    assert text.count("PASS") == 5


def test_verify_failure_exit_code():
    code, text = run("verify", "--suite", "sofic", "--a", "-5/7", "--b", "3/7", "--format", "text")
    assert code == 2
    assert "FAIL markov" in text


def test_domain_svg(tmp_path):
    svg = tmp_path / "d.svg"
    code, text = run("domain", "--a", "-4/5", "--b", "2/5", "--svg", str(svg))
    assert code == 0
    body = svg.read_text()
    # background plus one element per drawn rectangle
    assert body.count("<rect") - 1 >= 5
    obj = json.loads(text)
    assert {"u": ["-2", "-3/2"], "w": ["-1/3", "inf"], "component": "upper"} in obj["rectangles"]


def test_svg_does_not_change_stored_values(tmp_path):
    _, plain = run("domain", "--a", "-4/5", "--b", "2/5")
    _, with_svg = run("domain", "--a", "-4/5", "--b", "2/5", "--svg", str(tmp_path / "x.svg"))
    assert plain == with_svg


def test_outputs_are_deterministic(tmp_path):
    paths = []
    for i in range(2):
        csv_path = tmp_path / f"dens{i}.csv"
        code, text = run("measure", "--a", "-4/5", "--b", "2/5", "--qn", "500", "--samples", "5", "--seed", "3", "--density", str(csv_path))
        assert code == 0
        paths.append((csv_path.read_bytes(), text))
    assert paths[0] == paths[1]
    assert paths[0][0].startswith(b"# a=-4/5 b=2/5 seed=3")


def test_simulate_is_deterministic(tmp_path):
    a = run("simulate", "--a", "-1/2", "--b", "1/2", "--samples", "5000", "--seed", "4")
    b = run("simulate", "--a", "-1/2", "--b", "1/2", "--samples", "5000", "--seed", "4")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["seed"] == 4


def test_usage_errors():
    assert run("bogus")[0] == EX_USAGE
    assert run()[0] == EX_USAGE
    assert run("expand", "--x", "2")[0] == EX_USAGE
    assert run("expand", "--a", "-1", "--b", "0")[0] == EX_USAGE


def test_domain_errors_exit_one():
    assert run("measure", "--a", "-1", "--b", "0")[0] == 1
    assert run("expand", "--a", "1/2", "--b", "1", "--x", "1")[0] == 1
    assert run("expand", "--a", "-1", "--b", "0", "--x", "sqrt(")[0] == 1


def test_code_dual_sofic_commands(tmp_path):
    code, text = run("code", "--a", "-1/2", "--b", "1/2", "--u", "-sqrt(5)/7", "--w", "sqrt(5)+1/3", "--window", "4")
    assert code == 0
    obj = json.loads(text)
    assert set(obj["digits"]) == {str(k) for k in range(-4, 5)}
    assert obj["cross_section"]["arc"] == "C"
    assert len(obj["return_times"]) == 4
    code, text = run("dual", "--a", "-1/2", "--b", "1/2", "--check")
    assert code == 0 and json.loads(text)["dual"] == ["(1-sqrt(5))/2", "(-1+sqrt(5))/2"]
    matrix = tmp_path / "m.csv"
    code, text = run("sofic", "--a", "-1", "--b", "0", "--check", "2 3 1", "--matrix", str(matrix))
    assert code == 0 and json.loads(text)["check"]["admissible"] is False
    assert matrix.read_text().splitlines()[1] == "from,2,+"


@pytest.mark.skipif(shutil.which("abcf") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["abcf", "expand", "--a", "-1", "--b", "0", "--x", "sqrt(2)"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["period"] == [2, 4]
    proc = subprocess.run(["abcf", "nope"], capture_output=True, text=True)
    assert proc.returncode == EX_USAGE


def test_module_entry():
    proc = subprocess.run([sys.executable, "-m", "abcf.cli", "expand", "--a", "-1/2", "--b", "1/2", "--x", "1/2"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["head"] == [1, 2]
