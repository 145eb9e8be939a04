import json
from importlib import resources

import pytest

from mdpfaffian import cli
from mdpfaffian.generators import random_surface
from mdpfaffian.surface import save


def data(name):
    return str(resources.files("mdpfaffian") / "data" / name)


def run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_text(capsys):
    code, out, _ = run(capsys, "compute", data("annulus.json"), "--ring", "polynomial")
    assert code == 0
    assert "Z_MD = 5+a*b+2*a*d+2*b*c+c*d+a*b*c*d" in out
    assert "beta=11" in out


def test_compute_single_beta(capsys):
    code, out, _ = run(capsys, "compute", data("annulus.json"), "--ring", "polynomial", "--beta", "11", "--json")
    assert code == 0 and json.loads(out)["total"] == "a*b+c*d"


def test_two_vertices(capsys):
    code, out, _ = run(capsys, "compute", data("two_vertices.json"), "--ring", "polynomial")
    assert code == 0 and out.strip().endswith("Z_MD = y1*y2")


def test_single_edge(capsys):
    code, out, _ = run(capsys, "compute", data("single_edge.json"), "--ring", "polynomial")
    assert out.strip().endswith("Z_MD = x+y1*y2")


def test_json_is_deterministic(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(save(random_surface(3, 7, 1, b=2)))
    outs = [run(capsys, "compute", str(path), "--json", "--jobs", "2", "--dump-curves")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    rec = json.loads(outs[0])
    assert rec["pfaffian_count"] == 8 and len(rec["curves"]["alphas"]) == 2


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", data("annulus.json"), "--ring", "polynomial")
    assert code == 0
    assert "FAIL" not in out and "PASS  bijection-lemma[11]" in out


def test_orient_and_enumerate_and_dimer(capsys):
    code, out, _ = run(capsys, "orient", data("annulus.json"), "--ring", "polynomial", "--beta", "11", "--json")
    assert code == 0 and len(json.loads(out)["orientation"]) == 6
    code, out, _ = run(capsys, "enumerate", data("annulus.json"), "--ring", "polynomial", "--json")
    rec = json.loads(out)
    assert rec["by_beta"] == {"00": "5+2*a*d+2*b*c+a*b*c*d", "11": "a*b+c*d"} and rec["coverings"] == 12
    code, out, _ = run(capsys, "dimer", data("annulus.json"), "--ring", "polynomial")
    assert code == 0 and out.strip().endswith("Z_D = 5")


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "4x2", "--json")
    rows = json.loads(out)["rows"]
    assert code == 0 and rows[0]["agree"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "/nonexistent.json"],
        ["compute", data("annulus.json")],  # symbolic weights need the polynomial ring
        ["compute", data("annulus.json"), "--ring", "polynomial", "--beta", "10"],
        ["enumerate", data("annulus.json"), "--ring", "polynomial", "--max-oracle", "2"],
    ],
)
def test_invalid_input_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    rec = json.loads(err)
    assert rec["exit_code"] == 1 and rec["error"]


def test_internal_error_exit_code(capsys, monkeypatch):
    from mdpfaffian.md_pfaffian import InvariantViolation

    def boom(*a, **k):
        raise InvariantViolation("inner sum not divisible")

    monkeypatch.setattr(cli, "boundary_md_partition", boom)
    code, _, err = run(capsys, "compute", data("annulus.json"), "--ring", "polynomial")
    assert code == 2 and json.loads(err)["error"] == "InvariantViolation"


def test_module_entry_point():
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-m", "mdpfaffian", "compute", data("annulus.json"), "--ring", "polynomial"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0 and "Z_MD" in out.stdout
