import json
import subprocess
import sys

import pytest

from semiring_lab.cli import main
from semiring_lab.core import builtin, direct_product, load


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    data = json.loads(out)
    assert data["schema_version"] == 1
    assert data["exit_code"] == code
    return code, data


def test_check(capsys):
    code, out, _ = run(capsys, "check", "builtin:D3")
    assert code == 0
    assert "unit: 1" in out and "idempotent: true" in out
    code, data = run_json(capsys, "check", "builtin:R2")
    assert data["unit"] is None and data["n"] == 2


def test_ideals_s8_lattice(capsys):
    code, out, _ = run(capsys, "ideals", "builtin:S8", "--lattice")
    assert code == 0
    assert out.startswith("S8: 9 ideals")
    assert "modular: false" in out
    assert "pentagon: bottom=" in out
    code, data = run_json(capsys, "ideals", "builtin:S8", "--lattice")
    assert len(data["ideals"]) == 9
    assert len(data["lattice"]["hasse"]) == 11
    assert data["lattice"]["modular"] is False and data["lattice"]["pentagon"]


def test_dot_file(capsys, tmp_path):
    pydot = pytest.importorskip("pydot")
    path = tmp_path / "s8.dot"
    code, out, _ = run(capsys, "ideals", "builtin:S8", "--dot", str(path))
    assert code == 0
    [graph] = pydot.graph_from_dot_data(path.read_text())
    nodes = [n for n in graph.get_nodes() if n.get_name() not in ("node", "edge", "graph")]
    assert len(nodes) == 9
    assert len(graph.get_edges()) == 11


def test_congruences_d3(capsys):
    code, out, _ = run(capsys, "congruences", "builtin:D3")
    assert code == 0
    assert "{0,a}|{1}  kernel {0,a}" in out
    assert "{0}|{a,1}  kernel {0}" in out
    code, data = run_json(capsys, "congruences", "builtin:D3", "--lattice")
    assert [c["blocks"] for c in data["congruences"]] == ["{0}|{a}|{1}", "{0,a}|{1}", "{0}|{a,1}", "{0,a,1}"]
    assert data["lattice"]["distributive"] is True


def test_kernels_d3(capsys):
    code, out, _ = run(capsys, "kernels", "builtin:D3")
    assert code == 0
    assert out.startswith("D3: 3 kernels (chain)")
    assert "Theta={0,a}|{1} Phi={0}|{a,1}" in out
    assert "= {0,a,1} != {0,a}" in out
    code, data = run_json(capsys, "kernels", "builtin:D2")
    assert data["join_failure"] is None


def test_product_round_trip(capsys, tmp_path):
    path = tmp_path / "p.json"
    code, out, _ = run(capsys, "product", "builtin:R4", "builtin:D2", "--out", str(path))
    assert code == 0 and "8 elements" in out
    S = load(str(path))
    P = direct_product(builtin("R4"), builtin("D2")).base
    assert S.elem_names == P.elem_names and S.add == P.add and S.mul == P.mul
    code, out, _ = run(capsys, "ideals", str(path))
    assert "17 ideals" in out


def test_decompose_ideals(capsys):
    code, out, _ = run(capsys, "decompose", "builtin:R4", "builtin:D2", "--ideals")
    assert code == 1
    lines = out.splitlines()
    assert lines[0].endswith("17 ideals, 7 skew")
    assert len(lines) == 8
    code, _, _ = run(capsys, "decompose", "builtin:D2", "builtin:D3", "--ideals")
    assert code == 0


def test_decompose_kernels(capsys):
    code, out, _ = run(capsys, "decompose", "builtin:R2", "builtin:D2", "--kernels")
    assert code == 1
    assert "(direct only)" in out
    code, data = run_json(capsys, "decompose", "builtin:D2", "builtin:D2", "--kernels")
    assert code == 0 and data["not_strongly_decomposable"] == []


def test_audit_and_csv(capsys, tmp_path):
    ideal_csv, kernel_csv = tmp_path / "i.csv", tmp_path / "k.csv"
    code, out, _ = run(
        capsys, "audit", "builtin:R4", "builtin:D2", "--csv", str(ideal_csv), "--kernel-csv", str(kernel_csv)
    )
    assert code == 0
    assert "holds on all 17 ideals" in out
    assert "{(0|0),(0|1),(a|1)}" in out
    assert len(ideal_csv.read_text().splitlines()) == 18
    assert len(kernel_csv.read_text().splitlines()) == 18


def test_malcev(capsys):
    code, out, _ = run(capsys, "malcev", "builtin:D3", "--scheme", "dist0")
    assert code == 0 and "passes" in out.splitlines()[0]
    code, out, _ = run(capsys, "malcev", "builtin:R2", "--scheme", "dist0")
    assert code == 1 and "t1(x,x) = t2(x,x): fails at x=1" in out
    code, out, _ = run(capsys, "malcev", "builtin:Z2F", "--scheme", "ddck")
    assert code == 0
    code, _, err = run(capsys, "malcev", "builtin:R2", "--scheme", "ddck")
    assert code == 2 and "signature" in err


def test_malcev_custom_terms(capsys):
    code, _, _ = run(capsys, "malcev", "builtin:D2", "--scheme", "dist0", "--terms", "0", "y*x", "x")
    assert code == 0
    code, _, _ = run(capsys, "malcev", "builtin:D2", "--scheme", "ddck", "--m", "3",
                     "--terms", "1", "0", "0", "0", "1", "y", "x*z + y*u", "y*z + v")
    assert code == 0
    code, _, err = run(capsys, "malcev", "builtin:D2", "--scheme", "ddck", "--terms", "1", "0")
    assert code == 2
    code, _, err = run(capsys, "malcev", "builtin:D2", "--scheme", "dist0", "--terms", "0", "x+", "x")
    assert code == 2 and "term syntax" in err


def test_numeric(capsys):
    code, out, _ = run(capsys, "numeric", "--bases", "2,2", "--gen", "4,6", "--query", "4,0")
    assert code == 1 and out == "member: false\n"
    code, out, _ = run(capsys, "numeric", "--bases", "2,2", "--gen", "4,6", "--query", "8,12")
    assert code == 0 and out == "member: true\n"
    code, _, err = run(capsys, "numeric", "--bases", "2,2", "--gen", "4,6", "--query", "3,0")
    assert code == 2


def test_invalid_algebra_names_axiom(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "name": "bad", "elements": ["0", "1"], "zero": "0",
        "add": [["0", "1"], ["1", "1"]], "mul": [["0", "1"], ["0", "1"]],
    }))
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "mul_commutative" in err and "(0, 1)" in err


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "check", "builtin:NOPE")[0] == 2
    (tmp_path / "junk.json").write_text("{not json")
    assert run(capsys, "check", str(tmp_path / "junk.json"))[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["ideals", "builtin:D2", "--bogus"])
    assert exc.value.code == 2


def test_bad_thread_setting(capsys, monkeypatch):
    monkeypatch.setenv("SEMIRING_LAB_THREADS", "many")
    assert run(capsys, "check", "builtin:D2")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["ideals", "builtin:S8", "--lattice"],
        ["audit", "builtin:R4", "builtin:D2", "--json"],
        ["congruences", "builtin:R4", "--lattice", "--json"],
    ],
)
def test_output_is_deterministic(capsys, monkeypatch, argv):
    outputs = []
    for threads in ("1", "4", "1"):
        monkeypatch.setenv("SEMIRING_LAB_THREADS", threads)
        outputs.append(run(capsys, *argv)[1])
    assert outputs[0] == outputs[1] == outputs[2]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "semiring_lab", "numeric", "--bases", "2,2", "--gen", "4,6", "--query", "0,6"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 1 and proc.stdout == "member: false\n"
