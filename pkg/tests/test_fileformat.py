import copy
import json

import pytest

from cached import NAMES, PAIRS, algebra, module_algebra, smash
from quasihopf.algebra import verify_associative_unital
from quasihopf.corpus import CORPUS_DIR, perturbed_fixtures, regular_module_algebra
from quasihopf.fields import GF, QQ
from quasihopf.fileformat import (FormatError, Morphism, Partial, dump_algebra,
                                  dump_comodule_algebra, dump_module_algebra, dump_morphism,
                                  dump_quasi_hopf, load, read_document, to_json,
                                  validate_document, write_document)
from quasihopf.quasi_hopf import QuasiHopfAlgebra, verify_quasi_bialgebra, verify_quasi_hopf
from quasihopf.representations import ComoduleAlgebra, ModuleAlgebra


@pytest.mark.parametrize("name", NAMES)
def test_golden_quasi_hopf_files(name):
    text = (CORPUS_DIR / f"{name}.qha").read_text(encoding="utf-8")
    assert text == to_json(dump_quasi_hopf(algebra(name)))


@pytest.mark.parametrize("name, kind", PAIRS)
def test_golden_module_algebra_files(name, kind):
    text = (CORPUS_DIR / f"{name}_{kind}.ma").read_text(encoding="utf-8")
    assert text == to_json(dump_module_algebra(module_algebra(name, kind)))


@pytest.mark.parametrize("name", list(perturbed_fixtures()))
def test_golden_perturbation_files_fail_as_labelled(name):
    _, axiom = perturbed_fixtures()[name]
    Hq = load(CORPUS_DIR / f"{name}.qha")
    report = verify_quasi_bialgebra(Hq).extend(verify_quasi_hopf(Hq))
    assert axiom in report.failed_axioms


def test_malformed_fixture_is_rejected():
    with pytest.raises(FormatError, match="comment"):
        load(CORPUS_DIR / "malformed.qha")


@pytest.mark.parametrize("field", [QQ, GF(7)], ids=["rational", "gf7"])
@pytest.mark.parametrize("name", NAMES)
def test_quasi_hopf_roundtrip(name, field):
    doc = dump_quasi_hopf(algebra(name, field))
    back = load(doc)
    assert isinstance(back, QuasiHopfAlgebra)
    assert dump_quasi_hopf(back) == doc
    assert doc["field"] == field.spec


@pytest.mark.parametrize("name, kind", PAIRS)
def test_module_and_comodule_roundtrip(name, kind):
    doc = dump_module_algebra(module_algebra(name, kind))
    assert dump_module_algebra(load(doc)) == doc
    CA, j = smash(name, kind)
    cdoc = dump_comodule_algebra(CA)
    back = load(cdoc)
    assert isinstance(back, ComoduleAlgebra)
    assert dump_comodule_algebra(back) == cdoc
    mor = load(dump_morphism(j, "comodule_algebra", source=dump_quasi_hopf(CA.H), target=cdoc))
    assert isinstance(mor, Morphism) and mor.matrix == j
    assert mor.source is mor.target.H


def test_algebra_document():
    A = module_algebra("sweedler", "id").A
    back = load(dump_algebra(A))
    assert back.same_structure(A) and back.labels == A.labels
    assert verify_associative_unital(back).ok


def test_output_is_deterministic(tmp_path):
    doc = dump_comodule_algebra(smash("h2", "id")[0])
    a = write_document(doc, tmp_path / "a.ca").read_bytes()
    b = write_document(copy.deepcopy(doc), tmp_path / "b.ca").read_bytes()
    assert a == b
    assert json.loads(a) == doc


def test_field_resolution_order(monkeypatch):
    doc = dump_quasi_hopf(algebra("h2"))
    assert load(doc).field == QQ
    assert load(doc, field="gf:7").field == GF(7)
    del doc["field"]
    monkeypatch.setenv("QUASIHOPF_FIELD", "gf:5")
    assert load(doc).field == GF(5)
    monkeypatch.delenv("QUASIHOPF_FIELD")
    assert load(doc).field == QQ


def test_field_override_that_kills_a_denominator():
    with pytest.raises(FormatError):
        load(dump_quasi_hopf(algebra("h2")), field="gf:2")


def test_partial_then_bind():
    MA = module_algebra("h2", "id")
    doc = dump_module_algebra(MA, embed_hopf=False)
    part = load(doc)
    assert isinstance(part, Partial)
    bound = part.bind(MA.H)
    assert isinstance(bound, ModuleAlgebra) and bound.H is MA.H
    assert load(doc, hopf=MA.H).H is MA.H


def test_mismatched_embedded_hopf_is_rejected():
    doc = dump_module_algebra(module_algebra("z2", "id"))
    with pytest.raises(FormatError, match="differs"):
        load(doc, hopf=algebra("h2"))


def _h2_doc():
    return dump_quasi_hopf(algebra("h2"))


def _mutations():
    def drop(d):
        del d["payload"]["beta"]

    def extra(d):
        d["payload"]["algebra"]["note"] = 1

    def version(d):
        d["schema_version"] = "2"

    def kind(d):
        d["kind"] = "group"

    def scalar(d):
        d["payload"]["alpha"][0] = [1, 1, 1, 1]

    def index(d):
        d["payload"]["phi"][0][0] = 5

    def mult_index(d):
        d["payload"]["algebra"]["mult"][0][2] = 2

    def shape(d):
        d["payload"]["antipode"].pop()

    def zero_den(d):
        d["payload"]["coproduct"][0][0] = [1, 0]

    def field(d):
        d["field"] = "real"

    def labels(d):
        d["payload"]["algebra"]["basis"] = ["1", "1"]

    def not_int(d):
        d["payload"]["beta"][0] = [0, "1", 1]

    return [drop, extra, version, kind, scalar, index, mult_index, shape, zero_den, field,
            labels, not_int]


@pytest.mark.parametrize("mutate", _mutations(), ids=lambda f: f.__name__)
def test_malformed_documents(mutate):
    doc = _h2_doc()
    mutate(doc)
    with pytest.raises(FormatError):
        load(doc)


def test_schema_validation_alone():
    validate_document(_h2_doc())
    with pytest.raises(FormatError):
        validate_document([])


def test_unreadable_and_invalid_json(tmp_path):
    with pytest.raises(FormatError):
        read_document(tmp_path / "missing.qha")
    bad = tmp_path / "bad.qha"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(FormatError):
        load(bad)


def test_regular_module_algebra_reloads_over_gf7():
    MA = regular_module_algebra(algebra("sweedler", GF(7)))
    back = load(dump_module_algebra(MA))
    assert back.action == MA.action
