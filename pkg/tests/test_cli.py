import shutil

import pytest

from countersign.cli import main
from countersign.corpus import data_path


@pytest.fixture
def files(tmp_path):
    for name in ("example1.model", "counterparts-self-ref.proof", "naive-counterparts.ledger",
                 "counterparts-self-ref.ledger"):
        shutil.copy(data_path(name), tmp_path / name)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_false(files, capsys):
    code, out, _ = run(capsys, "eval", files / "example1.model", "--world", "w0",
                       "--formula", "(says A p)")
    assert (code, out) == (1, "false\n")


def test_eval_true_with_trace(files, capsys):
    code, out, _ = run(capsys, "eval", files / "example1.model", "--world", "w1",
                       "--formula", "(sign A (imp (says B p) p))", "--trace", "--sexpr")
    assert code == 0
    assert out.startswith("(eval w1 (sign A (imp (says B p) p)) true (height 0)")


def test_check_proof(files, capsys):
    code, out, _ = run(capsys, "check-proof", files / "counterparts-self-ref.proof")
    assert (code, out) == (0, "accept\n")
    code, out, _ = run(capsys, "check-proof", files / "counterparts-self-ref.proof", "--sexpr")
    assert out == "(verdict accept)\n"


def test_check_proof_reject(tmp_path, capsys):
    f = tmp_path / "bad.proof"
    f.write_text("(proof (goal (says A p)) (hyp 1 p) (line 2 (says A p) (nec-says 1 A)))")
    code, out, _ = run(capsys, "check-proof", f, "--sexpr")
    assert (code, out) == (1, "(verdict reject 2 purity-violation)\n")


def test_fmt_idempotent(files, capsys):
    code, once, _ = run(capsys, "fmt", files / "example1.model")
    assert code == 0
    canon = files / "canon.model"
    canon.write_text(once)
    code, twice, _ = run(capsys, "fmt", canon)
    assert code == 0 and twice == once


def test_commands_do_not_touch_inputs(files, capsys):
    before = {p.name: p.read_bytes() for p in files.iterdir()}
    run(capsys, "fmt", files / "example1.model")
    run(capsys, "check-model", files / "example1.model")
    run(capsys, "saturate", files / "naive-counterparts.ledger")
    assert {p.name: p.read_bytes() for p in files.iterdir()} == before


def test_check_model(files, capsys):
    code, out, _ = run(capsys, "check-model", files / "example1.model", "--sexpr")
    assert (code, out) == (0, "(violations)\n")
    bad = files / "bad.model"
    bad.write_text("(model (worlds w) (agents A) (atoms p) (says-edge w A w) (sign w A p))")
    code, out, _ = run(capsys, "check-model", bad, "--sexpr")
    assert (code, out) == (1, "(violations (sc2 w A p w))\n")


def test_extend_entails(files, capsys):
    q = files / "queries"
    q.write_text("(queries p (imp p p))")
    code, out, _ = run(capsys, "extend-entails", files / "example1.model", "--queries", q,
                       "--sexpr")
    assert code == 0
    assert out == ("(entails-relation\n  (entails (imp p p) w0)\n  (entails (imp p p) w1)\n"
                   "  (entails p w1))\n")


def test_saturate(files, capsys):
    code, out, _ = run(capsys, "saturate", files / "counterparts-self-ref.ledger",
                       "--goal", "p", "--parties", "A,B")
    assert code == 0 and "A, B all assent" in out
    code, out, _ = run(capsys, "saturate", files / "naive-counterparts.ledger",
                       "--goal", "p", "--parties", "A,B", "--sexpr")
    assert code == 1 and out.startswith("(meeting-of-minds false")
    code, out, _ = run(capsys, "saturate", files / "naive-counterparts.ledger", "--sexpr")
    assert code == 0 and out.startswith("(assents")


def test_bound_warning(files, capsys, monkeypatch):
    monkeypatch.setenv("COUNTERSIGN_BOUND", "1")
    code, _, err = run(capsys, "saturate", files / "counterparts-self-ref.ledger")
    assert code == 0 and "round 1 still added facts" in err
    code, _, err = run(capsys, "saturate", files / "counterparts-self-ref.ledger", "--bound", "6")
    assert err == ""


def test_scenarios(capsys):
    code, out, _ = run(capsys, "scenario", "naive-counterparts")
    assert code == 0 and out.startswith("scenario naive-counterparts: pass")
    code, out, _ = run(capsys, "list-scenarios", "--sexpr")
    assert code == 0 and "(smart-contract (topics smart-contract))" in out


@pytest.mark.parametrize("argv, needle", [
    (["eval", "{m}", "--world", "w0", "--formula", "(says A"], "--formula:1:1: error: unbalanced"),
    (["eval", "{m}", "--world", "w9", "--formula", "p"], "unknown world w9"),
    (["eval", "{m}", "--world", "w0", "--formula", "(sign A ?x)"], "sentences"),
    (["eval", "{m}", "--world", "w0", "--formula", "(says Z p)"], "undeclared agent Z"),
    (["check-proof", "{d}/missing.proof"], "missing.proof"),
    (["scenario", "nope"], "unknown scenario nope"),
    (["scenario"], "give a scenario name or --all"),
    (["saturate", "{d}/naive-counterparts.ledger", "--goal", "p"], "--goal needs --parties"),
    (["saturate", "{d}/naive-counterparts.ledger", "--bound", "0"], "must be positive"),
])
def test_errors(files, capsys, argv, needle):
    argv = [a.format(m=files / "example1.model", d=files) for a in argv]
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert needle in err


def test_parse_error_names_the_file(tmp_path, capsys):
    f = tmp_path / "broken.model"
    f.write_text("(model\n  (worlds w0)\n  (agents A)\n  (true-at w0 q))")
    code, _, err = run(capsys, "check-model", f)
    assert code == 2 and err.startswith(f"{f}:4:")


def test_ungrounded_query(files, capsys):
    q = files / "q"
    q.write_text("(queries (this ?x (entails ?x p)))")
    code, _, err = run(capsys, "extend-entails", files / "example1.model", "--queries", q)
    assert code == 2 and "left of an entailment" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
