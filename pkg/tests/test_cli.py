import json
import shutil
import subprocess
import sys

import pytest

from ringgroups.cli import main
from ringgroups.presentation import load_presentation


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_normalize(capsys, corpus):
    assert run(capsys, "normalize", corpus / "A.grp", "b a b^-1")[:2] == (0, "a\n")
    assert run(capsys, "normalize", corpus / "F2.grp", "x1 x1^-1")[:2] == (0, "1\n")
    assert run(capsys, "normalize", corpus / "A.grp", "[a,b]")[:2] == (0, "1\n")
    code, _, err = run(capsys, "normalize", corpus / "A.grp", "a^")
    assert code == 2 and "1:3" in err
    code, _, err = run(capsys, "normalize", corpus / "A.grp", "z")
    assert code == 2 and "unknown generator" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "enumerate", tmp_path / "nope.grp")
    assert code == 2 and "nope.grp" in err


def test_enumerate(capsys, corpus):
    assert run(capsys, "enumerate", corpus / "HopfB.grp")[:2] == (0, "index = 8\n")
    assert run(capsys, "enumerate", corpus / "HopfB.grp", "--subgroup", "tau_H")[:2] == (0, "index = 2\n")
    assert run(capsys, "enumerate", corpus / "R11.grp", "--max-cosets", "300")[:2] == (2, "out of space at 300\n")
    assert run(capsys, "--max-cosets", "300", "enumerate", corpus / "R11.grp")[:2] == (2, "out of space at 300\n")
    code, out, _ = run(capsys, "--json", "enumerate", corpus / "RingC.grp")
    assert code == 0 and json.loads(out) == {"closed": True, "index": 2}


def test_abelianize(capsys, corpus):
    assert run(capsys, "abelianize", corpus / "HopfBQuat.grp")[1] == "Z/2 + Z/2\n"
    assert run(capsys, "abelianize", corpus / "A.grp")[1] == "Z^3\n"
    out = json.loads(run(capsys, "abelianize", corpus / "R11_theorem_literal.grp", "--json")[1])
    assert out["free_rank"] == 1 and out["torsion"] == [2] * 5


def test_extend(capsys, corpus, tmp_path):
    target = tmp_path / "out.grp"
    code, _, _ = run(capsys, "extend", corpus / "HopfB.ext", "-o", target)
    assert code == 0
    got, want = load_presentation(target), load_presentation(corpus / "HopfB.grp")
    assert (got.generators, got.relators) == (want.generators, want.relators)
    code, out, _ = run(capsys, "extend", corpus / "OrderHopfE.ext", "--validate", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["ok"] and payload["result_order"] == 4


def test_tietze(capsys, corpus):
    code, out, _ = run(capsys, "tietze", corpus / "OrderHopfE.grp")
    assert code == 0 and out == "group OrderHopfE\ngens tau_H\nrel tau_H^4\n"
    code, out, _ = run(capsys, "tietze", corpus / "OrderHopfE.grp", "--eliminate", "ell")
    assert "ell" not in out
    code, _, err = run(capsys, "tietze", corpus / "RingC.grp", "--eliminate", "tau_C")
    assert code == 2 and "error" in err


def test_check_hom(capsys, corpus, tmp_path):
    code, out, _ = run(capsys, "check-hom", corpus / "D_tau_C.hom", "--witness", "2")
    assert code == 0 and "[[1, 0, 0], [0, 1, 0], [0, 0, -1]]" in out and "no inner witness" in out
    code, out, _ = run(capsys, "check-hom", corpus / "D_g_a.hom", "--witness", "1")
    assert code == 0 and "inner by a" in out
    bad = tmp_path / "bad.hom"
    bad.write_text("hom bad : Presentation_Hplus -> A\nmap g_a -> c\nmap g_b -> b\nmap eps_C -> c\n")
    code, out, _ = run(capsys, "check-hom", bad)
    assert code == 1 and "g_a g_b g_a^-1 g_b^-1" in out


def test_motion_check(capsys, corpus, tmp_path):
    code, out, _ = run(capsys, "motion", "check", "s")
    assert code == 0 and "closes 2 1 3: ok" in out
    code, out, _ = run(capsys, "motion", "check", corpus / "g_a.mot", "--json")
    assert code == 0 and json.loads(out)["valid"]
    broken = tmp_path / "broken.mot"
    text = (corpus / "tau_C.mot").read_text().replace("closes 1 2 3", "closes 2 1 3")
    broken.write_text(text)
    code, out, _ = run(capsys, "motion", "check", broken)
    assert code == 1 and "mismatch" in out


def test_verify_filter(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "loop_braid")
    lines = [line for line in out.splitlines() if line.startswith("CHECK ")]
    assert code == 0 and len(lines) == 6
    assert all(line.split()[1].startswith("loop_braid.") and line.split()[2] == "PASS" for line in lines)
    assert run(capsys, "verify-paper", "--only", "nonsense")[0] == 2


def test_verify_detects_corrupted_corpus(capsys, corpus, tmp_path):
    bad = tmp_path / "corpus"
    shutil.copytree(corpus, bad)
    quat = bad / "HopfBQuat.grp"
    quat.write_text("group HopfBQuat\ngens tau_H s\nrel s^2 = (tau_H s)^2\n")
    (bad / "OrderHopf.grp").unlink()
    code, out, _ = run(capsys, "verify-paper", "--only", "orders", "--corpus", bad, "--max-cosets", "500")
    assert code == 1
    status = {line.split()[1]: line.split()[2] for line in out.splitlines() if line.startswith("CHECK ")}
    assert status["orders.hopf_quat"] == "FAIL" and status["orders.ordered_hopf"] == "FAIL"
    assert status["orders.hopf"] == "PASS"


def test_verify_json_and_determinism(capsys):
    first = run(capsys, "verify-paper", "--only", "orders", "--json")
    second = run(capsys, "verify-paper", "--only", "orders", "--json")
    assert first[0] == 0 and first[1] == second[1]
    payload = json.loads(first[1])
    assert payload["failed"] == 0 and all(c["anchor"] for c in payload["checks"])


def test_module_entry_point(corpus):
    out = subprocess.run([sys.executable, "-m", "ringgroups", "abelianize", str(corpus / "OrderHopf.grp")],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "Z/4\n"


def test_help_lists_commands(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--help"])
    assert info.value.code == 0
    out = capsys.readouterr().out
    for cmd in ["normalize", "check-hom", "enumerate", "abelianize", "extend", "tietze", "motion", "verify-paper"]:
        assert cmd in out
