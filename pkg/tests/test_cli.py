from __future__ import annotations

from pathlib import Path

import pytest

from sullivan import cli
from sullivan.cohomology import ToomerResult
from sullivan.errors import ParseError

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def _run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# model file parsing


def test_parse_model_file_roundtrip():
    mf = cli.parse_model_file(str(FIXTURES / "pure_n37.model"))
    assert mf.model.k == 3
    assert mf.model.algebra.ngens == 5


def test_parse_text_duplicate_d_line():
    source = "generator x2 2\ngenerator y5 5\nd y5 = x2^3\nd y5 = x2^3\n"
    with pytest.raises(ParseError) as err:
        cli.parse_model_text(source)
    assert err.value.line == 4


def test_parse_text_unknown_generator_in_d_line():
    source = "generator x2 2\nd z9 = x2^3\n"
    with pytest.raises(ParseError) as err:
        cli.parse_model_text(source)
    assert "z9" in str(err.value)


def test_parse_text_generator_after_d_line():
    source = "generator x2 2\nd x2 = x2^2\ngenerator y5 5\n"
    with pytest.raises(ParseError):
        cli.parse_model_text(source)


def test_parse_text_bad_degree():
    with pytest.raises(ParseError):
        cli.parse_model_text("generator x2 two\n")


def test_parse_text_requires_generators():
    with pytest.raises(ParseError):
        cli.parse_model_text("# empty file\n")


def test_parse_text_polynomial_error_carries_line():
    source = "generator x2 2\ngenerator y5 5\nd y5 = x2^^3\n"
    with pytest.raises(ParseError) as err:
        cli.parse_model_text(source)
    assert err.value.line == 3


# ---------------------------------------------------------------------------
# commands and exit codes


def test_info_structured(capsys):
    code, out, _ = _run(
        capsys, "info", FIXTURES / "pure_n37.model", "--format", "structured"
    )
    assert code == 0
    assert "model.k = 3" in out
    assert "model.formal_dimension = 37" in out
    assert "elapsed" not in out


def test_info_human_has_timing(capsys):
    code, out, _ = _run(capsys, "info", FIXTURES / "pure_n37.model")
    assert code == 0
    assert out.splitlines()[0].startswith("== info")
    assert "elapsed_seconds" in out


def test_validate_minimality_violation_exits_1(capsys):
    code, _, err = _run(capsys, "validate", FIXTURES / "bad_linear.model")
    assert code == 1
    assert "word length" in err


def test_missing_file_exits_1(capsys):
    code, _, err = _run(capsys, "validate", FIXTURES / "does_not_exist.model")
    assert code == 1
    assert "cannot read" in err


def test_usage_error_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["toomer", "--method", "bogus", str(FIXTURES / "pure_n37.model")])
    assert exc.value.code == 1


def test_nonelliptic_toomer_exits_2(capsys):
    code, _, err = _run(capsys, "toomer", FIXTURES / "truncated_n37.model")
    assert code == 2
    assert "not elliptic" in err


def test_spectral_on_k2_exits_2(capsys, tmp_path):
    path = tmp_path / "s2.model"
    path.write_text("generator x2 2\ngenerator y3 3\nd y3 = x2^2\n")
    code, _, err = _run(capsys, "toomer", path, "--method", "spectral")
    assert code == 2
    assert "k = 3" in err or "k=3" in err


def test_small_max_degree_is_inconclusive(capsys):
    code, _, err = _run(
        capsys, "toomer", FIXTURES / "pure_n37.model", "--max-degree", "10"
    )
    assert code == 2
    assert "inconclusive" in err


def test_elliptic_certificate_structured(capsys):
    code, out, _ = _run(
        capsys,
        "elliptic",
        FIXTURES / "truncated_n37.model",
        "--format",
        "structured",
    )
    assert code == 0
    assert "elliptic.status = not_elliptic" in out
    assert "elliptic.nonvanishing_degrees = " in out


def test_toomer_both_agree(capsys):
    code, out, _ = _run(
        capsys,
        "toomer",
        FIXTURES / "pure_n35.model",
        "--format",
        "structured",
    )
    assert code == 0
    assert "toomer.oracle.e0 = 6" in out
    assert "toomer.spectral.e0 = 6" in out
    assert "toomer.agree = true" in out


def test_method_disagreement_exits_3(capsys, monkeypatch):
    # fake an oracle that disagrees with the spectral answer
    def broken_oracle(model):
        return ToomerResult(e0=99, method="oracle", representative=model.algebra.one())

    monkeypatch.setattr(cli, "toomer_oracle", broken_oracle)
    code, out, err = _run(
        capsys,
        "toomer",
        FIXTURES / "pure_n35.model",
        "--format",
        "structured",
    )
    assert code == 3
    assert "toomer.agree = false" in out
    assert "disagree" in err


def test_internal_inconsistency_exits_3(capsys, monkeypatch):
    from sullivan.errors import InternalInconsistencyError

    def exploding(model):
        raise InternalInconsistencyError("forced failure")

    monkeypatch.setattr(cli, "spectral_run", exploding)
    code, _, err = _run(capsys, "toomer", FIXTURES / "pure_n35.model")
    assert code == 3
    assert "internal inconsistency" in err


def test_cohomology_range(capsys):
    code, out, _ = _run(
        capsys,
        "cohomology",
        FIXTURES / "pure_n37.model",
        "--degree",
        "0",
        "--to",
        "4",
        "--format",
        "structured",
    )
    assert code == 0
    assert "cohomology.dim.0 = 1" in out
    assert "cohomology.dim.4 = 1" in out


def test_delta_cohomology_command(capsys):
    code, out, _ = _run(
        capsys,
        "delta-cohomology",
        FIXTURES / "pure_n35.model",
        "--degree",
        "35",
        "--format",
        "structured",
    )
    assert code == 0
    assert "delta.dim_total = 2" in out
    assert "delta.class.0.v = x6^2*y23" in out


def test_top_class_command(capsys):
    code, out, _ = _run(
        capsys,
        "top-class",
        FIXTURES / "pure_n37.model",
        "--format",
        "structured",
    )
    assert code == 0
    assert "top_class.degree = 37" in out


def test_murillo_command(capsys):
    code, out, _ = _run(
        capsys, "murillo", FIXTURES / "pure_n37.model", "--format", "structured"
    )
    assert code == 0
    assert "murillo.entry.2.1 = x2*x6^2" in out
    assert "murillo.class = x2*x6^5*y5 - x2^2*x6^3*y15" in out


def test_selftest_command(capsys):
    code, out, _ = _run(
        capsys, "selftest", "--cases", "10", "--format", "structured"
    )
    assert code == 0
    assert "selftest.leibniz.ok = true" in out
    assert "selftest.poincare_duality.ok = true" in out


# ---------------------------------------------------------------------------
# golden reports


@pytest.mark.parametrize("stem", ["pure_n37", "pure_n35"])
def test_golden_report(capsys, stem):
    path = FIXTURES / f"{stem}.model"
    code, out, _ = _run(capsys, "report", path, "--format", "structured")
    assert code == 0
    golden = GOLDEN / f"report_{stem[5:]}.txt"  # report_n37.txt / report_n35.txt
    expected = golden.read_text().splitlines()
    got = out.splitlines()
    assert len(got) == len(expected)
    for e_line, g_line in zip(expected, got):
        if e_line.startswith("model.path = "):
            assert g_line.startswith("model.path = ")
            assert g_line.endswith(f"{stem}.model")
        else:
            assert g_line == e_line
