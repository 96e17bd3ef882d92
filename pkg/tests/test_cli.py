import json
import subprocess
import sys
from dataclasses import replace

import pytest

from cached import algebra
from quasihopf.cli import main
from quasihopf.corpus import CORPUS_DIR, perturbed_fixtures, trivial_module_algebra
from quasihopf.fields import QQ
from quasihopf.fileformat import (dump_comodule_algebra, dump_module_algebra, dump_morphism,
                                  dump_quasi_hopf, load, write_document)
from quasihopf.linalg import LinearMap
from quasihopf.representations import regular_comodule

C = CORPUS_DIR


def run(*argv):
    return main([str(a) for a in argv])


def report_of(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_pass_violation_malformed_triple(capsys):
    assert run("verify", C / "h2.qha") == 0
    assert run("verify", C / "h2_bad_pentagon.qha") == 1
    out = capsys.readouterr().out
    assert "FAIL  (q3)" in out
    assert run("verify", C / "malformed.qha") == 2


@pytest.mark.parametrize("path", sorted(p.name for p in C.iterdir()))
def test_every_corpus_file(path):
    stem = path.rsplit(".", 1)[0]
    expected = 2 if stem == "malformed" else 1 if stem in perturbed_fixtures() else 0
    assert run("verify", C / path, "-q") == expected


def test_report_file_structure(tmp_path):
    rep = tmp_path / "r.json"
    assert run("verify", C / "h2_bad_alpha.qha", "--report", rep) == 1
    doc = report_of(rep)
    assert doc["status"] == "fail"
    q6 = next(c for c in doc["checks"] if c["id"] == "(q6)")
    assert q6["tag"] == "(q6)" and q6["result"] == "fail" and q6["witnesses"]
    assert all(c["result"] == "pass" for c in doc["checks"] if c["tag"] == "(q5)")
    assert set(doc) == {"command", "status", "checks", "info", "timings"}


def test_error_report(tmp_path):
    rep = tmp_path / "r.json"
    assert run("verify", tmp_path / "nope.qha", "--report", rep) == 2
    doc = report_of(rep)
    assert doc["status"] == "error" and doc["checks"] == [] and "nope" in doc["error"]


def test_reports_are_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for r in (a, b):
        run("roundtrip", "-a", C / "h2_id.ma", "-H", C / "h2.qha", "--report", r, "--no-timings")
    assert a.read_bytes() == b.read_bytes()
    assert "timings" not in report_of(a)


def test_module_file_without_hopf_needs_H(tmp_path):
    MA = load(C / "z2_id.ma")
    path = write_document(dump_module_algebra(MA, embed_hopf=False), tmp_path / "a.ma")
    assert run("verify", path) == 2
    assert run("verify", path, "-H", C / "z2.qha") == 0
    assert run("verify", path, "-H", C / "sweedler.qha") == 2


def test_smash_k_over_z2_is_regular_comodule(tmp_path):
    assert run("smash", "-a", C / "z2_triv.ma", "-H", C / "z2.qha", "-o", tmp_path) == 0
    CA = load(tmp_path / "smash.ca")
    R = regular_comodule(CA.H)
    assert CA.B.same_structure(R.B) and CA.coaction == R.coaction
    assert CA.phi_rho.coords == R.phi_rho.coords


def test_smash_then_decompose_write_read_verify(tmp_path):
    s, d = tmp_path / "s", tmp_path / "d"
    assert run("smash", "-a", C / "h2_id.ma", "-H", C / "h2.qha", "-o", s) == 0
    assert load(s / "smash.ca").B.dim == 4
    rep = tmp_path / "d.json"
    assert run("decompose", "-B", s / "smash.ca", "-H", C / "h2.qha", "-v", s / "j.mor",
               "-o", d, "-a", C / "h2_id.ma", "--report", rep) == 0
    info = report_of(rep)["info"]
    assert info["dim_A"] == 2 and info["A_isomorphic_to_expected"] is True
    emitted = sorted(p.name for p in (*s.iterdir(), *d.iterdir()))
    assert emitted == ["A.ma", "j.mor", "psi.mor", "smash.ca", "theta.mor"]
    for p in (*s.iterdir(), *d.iterdir()):
        assert run("verify", p, "-q") == 0, p.name


def test_unverified_input_stops_before_writing(tmp_path):
    bad_H, _ = perturbed_fixtures()["h2_bad_pentagon"]
    a = write_document(dump_module_algebra(trivial_module_algebra(bad_H)), tmp_path / "a.ma")
    out = tmp_path / "out"
    assert run("smash", "-a", a, "-H", C / "h2_bad_pentagon.qha", "-o", out) == 1
    assert not out.exists()


def test_decompose_regular_hopf_gives_dimension_one(tmp_path):
    Hq = load(C / "sweedler.qha")
    b = write_document(dump_comodule_algebra(regular_comodule(Hq)), tmp_path / "b.ca")
    v = write_document(dump_morphism(LinearMap.identity(4, QQ), "comodule_algebra"),
                       tmp_path / "v.mor")
    rep = tmp_path / "r.json"
    assert run("decompose", "-B", b, "-H", C / "sweedler.qha", "-v", v, "-o", tmp_path / "o",
               "--report", rep) == 0
    assert report_of(rep)["info"]["dim_A"] == 1


def test_decompose_names_failed_precondition(tmp_path, capsys):
    s = tmp_path / "s"
    run("smash", "-a", C / "h2_triv.ma", "-H", C / "h2.qha", "-o", s)
    v = write_document(dump_morphism(LinearMap([[1, 0], [0, -1]], QQ), "comodule_algebra"),
                       tmp_path / "v.mor")
    capsys.readouterr()
    assert run("decompose", "-B", s / "smash.ca", "-H", C / "h2.qha", "-v", v,
               "-o", tmp_path / "o") == 1
    assert "FAIL  precondition v:morph-Φ_ρ" in capsys.readouterr().out
    assert not (tmp_path / "o").exists()


def test_decompose_rejects_misshapen_v(tmp_path):
    s = tmp_path / "s"
    run("smash", "-a", C / "h2_triv.ma", "-H", C / "h2.qha", "-o", s)
    v = write_document(dump_morphism(LinearMap.identity(3, QQ)), tmp_path / "v.mor")
    assert run("decompose", "-B", s / "smash.ca", "-H", C / "h2.qha", "-v", v,
               "-o", tmp_path / "o") == 2


@pytest.mark.parametrize("a, h", [("z2_triv", "z2"), ("h2_id", "h2"),
                                  ("sweedler_id", "sweedler")])
def test_roundtrip_command(tmp_path, a, h):
    rep = tmp_path / "r.json"
    assert run("roundtrip", "-a", C / f"{a}.ma", "-H", C / f"{h}.qha", "--report", rep) == 0
    info = report_of(rep)["info"]
    n = info["dim_A"]
    assert len(info["isomorphism"]) == n and all(len(r) == n for r in info["isomorphism"])


def test_field_override_and_environment(tmp_path, monkeypatch):
    rep = tmp_path / "r.json"
    assert run("smash", "-a", C / "h2_id.ma", "-H", C / "h2.qha", "-o", tmp_path,
               "--field", "gf:7") == 0
    assert load(tmp_path / "smash.ca").B.field.spec == "gf:7"
    assert run("verify", C / "h2.qha", "--field", "gf:2") == 2
    monkeypatch.setenv("QUASIHOPF_FIELD", "gf:3")
    doc = json.loads((C / "z2.qha").read_text())
    del doc["field"]
    p = tmp_path / "z2.qha"
    p.write_text(json.dumps(doc))
    assert run("verify", p, "--report", rep) == 0


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["smash", "-a", "x"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quasihopf", "verify", str(C / "k.qha"), "-q"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "status: pass"


def test_alpha_beta_are_normalized_before_checking(tmp_path):
    Hq = load(C / "z2.qha")
    skewed = replace(Hq, alpha=Hq.alpha.scale(QQ(2)), beta=Hq.beta.scale(QQ(1) / 2))
    path = write_document(dump_quasi_hopf(skewed), tmp_path / "z2s.qha")
    rep = tmp_path / "r.json"
    assert run("verify", path, "--report", rep) == 0
    assert report_of(rep)["info"]["normalized_alpha_beta"] is True
