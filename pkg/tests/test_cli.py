"""
Tests for the qlattice command line.

Commands run in-process through run(); stdout carries the result document.
"""

import json
import tempfile
from collections.abc import Iterator
from pathlib import Path

import pytest
from loguru import logger

from qlattice.__main__ import run
from qlattice.families import build_B, build_K
from qlattice.gfq import field_new
from qlattice.models import SearchCertificate
from qlattice.storage import CertificateStorage
from qlattice.subspace import Family, layer_family

GF2 = field_new(2)


@pytest.fixture(autouse=True)
def _drop_captured_sinks() -> Iterator[None]:
    """run() binds loguru to the captured stderr; unbind it afterwards."""
    yield
    logger.remove()


def _output(capsys: pytest.CaptureFixture[str]) -> dict[str, object]:
    return json.loads(capsys.readouterr().out)


class TestArithmeticCommands:
    """qbinom, enum and bounds."""

    def test_qbinom(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Values are printed as decimal strings in compact JSON."""
        assert run(["qbinom", "--m", "4", "--k", "2", "--q", "2"]) == 0
        assert capsys.readouterr().out == '{"value":"35"}\n'

    def test_qbinom_table(self, capsys: pytest.CaptureFixture[str]) -> None:
        """--format table prints a field table."""
        assert run(["qbinom", "--m", "4", "--k", "2", "--q", "2", "--format", "table"]) == 0
        out = capsys.readouterr().out
        assert "Field" in out and "35" in out

    def test_negative_argument_is_an_input_error(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Library errors exit 2 with a message on stderr."""
        assert run(["qbinom", "--m", "-1", "--k", "0", "--q", "2"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_enum_count(self, capsys: pytest.CaptureFixture[str]) -> None:
        """--count-only reports the layer size."""
        assert run(["enum", "--n", "3", "--k", "1", "--q", "2", "--count-only"]) == 0
        assert _output(capsys)["count"] == "7"

    def test_enum_writes_family_file(self, capsys: pytest.CaptureFixture[str]) -> None:
        """--out writes the layer in canonical order."""
        with tempfile.TemporaryDirectory() as temp_dir:
            out = Path(temp_dir) / "lines.txt"
            assert run(["enum", "--n", "3", "--k", "2", "--q", "3", "--out", str(out)]) == 0
            family = Family.from_text(out.read_text(encoding="utf-8"))
            assert len(family) == 13
            assert out.read_text(encoding="utf-8") == family.to_text()
        assert _output(capsys)["count"] == "13"

    def test_bounds(self, capsys: pytest.CaptureFixture[str]) -> None:
        """A bound document carries its formula and the independent recheck."""
        assert run(["bounds", "--theorem", "1.3", "--n", "4", "--s", "2", "--q", "2"]) == 0
        document = _output(capsys)
        assert document["id"] == "1.3"
        assert document["value"] == "5"
        assert document["hypothesis_ok"] is True
        assert document["formula_ok"] is True

    @pytest.mark.parametrize(
        ("theorem", "flags", "value"),
        [
            ("1.2", ["--s", "2"], "16"),
            ("1.3", ["--s", "2"], "5"),
            ("1.4", ["--s", "2"], "15"),
            ("1.5", [], "35"),
            ("1.6", ["--n", "5", "--s", "4"], "141"),
            ("2.1", ["--n", "5", "--k", "2", "--t", "1"], "15"),
            ("2.2", ["--n", "6", "--k", "2"], "7"),
            ("2.5", ["--a", "1", "--b", "3"], "9"),
            ("2.6", ["--n", "5", "--a", "2", "--b", "2", "--t", "1"], "44"),
            ("2.7", ["--k", "1"], "4"),
            ("conj5.1", ["--s", "3"], "13"),
        ],
    )
    def test_every_theorem_id(
        self, theorem: str, flags: list[str], value: str, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Each numeric id evaluates its bound; --n defaults to 4 unless given."""
        # Arrange
        argv = ["bounds", "--theorem", theorem, "--q", "2", *flags]
        if "--n" not in flags:
            argv += ["--n", "4"]

        # Act
        code = run(argv)

        # Assert
        assert code == 0
        document = _output(capsys)
        assert document["id"] == theorem
        assert document["value"] == value
        assert document["formula_ok"] is True

    def test_full_antichain_reports_both_parts(self, capsys: pytest.CaptureFixture[str]) -> None:
        """1.5 gives the middle layer and the next best antichain."""
        assert run(["bounds", "--theorem", "1.5", "--n", "4", "--q", "2"]) == 0
        parts = _output(capsys)["parts"]
        assert isinstance(parts, list)
        assert [part["value"] for part in parts] == ["35", "29"]

    def test_odd_antichain_is_flagged_conjectural(self, capsys: pytest.CaptureFixture[str]) -> None:
        """conj5.1 evaluates but is marked conjectural."""
        assert run(["bounds", "--theorem", "conj5.1", "--n", "4", "--s", "3", "--q", "2"]) == 0
        assert _output(capsys)["conjectural"] is True

    @pytest.mark.parametrize(
        ("theorem", "s"),
        [("1.4", "4"), ("1.5", "3"), ("1.6", "3"), ("conj5.1", "2")],
    )
    def test_bounds_rejects_wrong_case(self, theorem: str, s: str) -> None:
        """The antichain ids only accept their own range and parity of s."""
        assert run(["bounds", "--theorem", theorem, "--n", "4", "--s", s, "--q", "2"]) == 2

    def test_descriptive_alias(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Descriptive names resolve to the same id."""
        assert run(["bounds", "--theorem", "suboptimal-union", "--n", "4", "--s", "2", "--q", "2"]) == 0
        document = _output(capsys)
        assert document["id"] == "1.3"
        assert document["value"] == "5"

    def test_bounds_missing_parameter(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Each theorem names the flags it needs."""
        assert run(["bounds", "--theorem", "2.1", "--n", "5", "--q", "2", "--k", "2"]) == 2
        assert "--t is required" in capsys.readouterr().err

    def test_unknown_choice_is_a_usage_error(self) -> None:
        """argparse rejects unknown theorems with exit code 2."""
        with pytest.raises(SystemExit) as excinfo:
            run(["bounds", "--theorem", "nonsense", "--n", "4", "--q", "2"])
        assert excinfo.value.code == 2


class TestFamilyCommands:
    """family and check."""

    def test_family_then_check(self, capsys: pytest.CaptureFixture[str]) -> None:
        """A built family file passes the predicate it was built for."""
        with tempfile.TemporaryDirectory() as temp_dir:
            # Arrange
            out = Path(temp_dir) / "b.txt"

            # Act
            built = run(["family", "--name", "B", "--n", "3", "--s", "2", "--q", "2", "--out", str(out)])
            document = _output(capsys)
            checked = run(["check", "--pred", "antichain", "--file", str(out)])

            # Assert
            assert built == 0 and checked == 0
            assert document["size"] == "5"
            assert document["layers"] == {"1": 4, "2": 1}
            assert Family.from_text(out.read_text(encoding="utf-8")) == build_B(3, 2, 2)
            assert _output(capsys)["holds"] is True

    def test_failed_predicate_exits_one(self, capsys: pytest.CaptureFixture[str]) -> None:
        """K[3,2] is not 1-union."""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "k.txt"
            path.write_text(build_K(3, 2, 2).to_text(), encoding="utf-8")
            assert run(["check", "--pred", "s-union", "--s", "1", "--file", str(path)]) == 1
            assert _output(capsys)["holds"] is False
            assert run(["check", "--pred", "s-union", "--file", str(path)]) == 2
            assert "--s is required" in capsys.readouterr().err

    def test_missing_file(self, capsys: pytest.CaptureFixture[str]) -> None:
        """An unreadable input file exits 2."""
        assert run(["check", "--pred", "antichain", "--file", "/nonexistent/family.txt"]) == 2
        assert "error:" in capsys.readouterr().err


class TestSearchCommands:
    """search and verify."""

    def test_search_writes_certificate(self, capsys: pytest.CaptureFixture[str]) -> None:
        """--out saves the certificate and starts the run history."""
        with tempfile.TemporaryDirectory() as temp_dir:
            out = Path(temp_dir) / "cert.json"
            code = run(["search", "max-union", "--n", "3", "--q", "2", "--s", "2", "--out", str(out)])
            document = _output(capsys)
            assert code == 0
            assert document["maximum"] == 8
            assert document["witnesses"] == [build_K(3, 2, 2).to_text()]
            assert out.exists()
            assert (Path(temp_dir) / "runs.jsonl").exists()

    def test_search_with_powerset(self, capsys: pytest.CaptureFixture[str]) -> None:
        """--powerset switches the solver."""
        assert run(["search", "max-antichain", "--n", "3", "--q", "2", "--s", "3", "--powerset"]) == 0
        document = _output(capsys)
        assert document["maximum"] == 7
        assert document["solver"] == "PowersetSolver"

    def test_intersecting_search_rejects_exclusion(self, capsys: pytest.CaptureFixture[str]) -> None:
        """There is no optimal-family exclusion for the intersecting problem."""
        code = run(["search", "max-intersecting", "--n", "3", "--q", "2", "--t", "1", "--exclude-optimal"])
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_verify_shadow(self, capsys: pytest.CaptureFixture[str]) -> None:
        """A passing verification exits 0."""
        assert run(["verify", "shadow", "--n", "3", "--k", "2", "--q", "2"]) == 0
        document = _output(capsys)
        assert document["passed"] is True
        assert document["tested"] == 127

    def test_verify_out_of_range(self, capsys: pytest.CaptureFixture[str]) -> None:
        """A lemma outside its hypothesis is an input error."""
        assert run(["verify", "shade", "--n", "4", "--k", "2", "--q", "2"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_verify_disjoint_count(self, capsys: pytest.CaptureFixture[str]) -> None:
        """The disjoint-count verb needs no --k and checks every (m, l) pair."""
        assert run(["verify", "disjoint-count", "--n", "3", "--q", "2"]) == 0
        document = _output(capsys)
        assert document["tested"] == 6
        assert document["mode"] == "exhaustive"


class TestAuditCommand:
    """audit reads a stored certificate back and re-checks it."""

    def test_audit_of_a_fresh_search(self, capsys: pytest.CaptureFixture[str]) -> None:
        """A certificate written by search passes its own re-check."""
        with tempfile.TemporaryDirectory() as temp_dir:
            # Arrange
            out = Path(temp_dir) / "cert.json"
            argv = ["search", "max-union", "--n", "4", "--q", "2", "--s", "2", "--exclude-optimal", "--out", str(out)]
            assert run(argv) == 0
            capsys.readouterr()

            # Act
            code = run(["audit", "--file", str(out)])

            # Assert
            document = _output(capsys)
            assert code == 0
            assert document["holds"] is True
            assert document["failures"] == []
            assert document["maximum"] == 5
            assert document["history"] == {"runs": 1, "valid": 1}

    def test_audit_flags_a_bad_witness(self, capsys: pytest.CaptureFixture[str]) -> None:
        """A witness that breaks its recorded constraint fails the audit."""
        with tempfile.TemporaryDirectory() as temp_dir:
            # Arrange
            planes = layer_family(GF2, 3, 2)
            out = Path(temp_dir) / "cert.json"
            CertificateStorage(out).save(
                SearchCertificate(
                    problem="max-union",
                    parameters={"n": 3, "q": 2, "s": 2},
                    constraints=["2-union"],
                    exclusion=None,
                    maximum=len(planes),
                    witnesses=[planes],
                    nodes_explored=0,
                    complete=True,
                )
            )

            # Act
            code = run(["audit", "--file", str(out)])

            # Assert
            document = _output(capsys)
            assert code == 1
            assert document["holds"] is False
            assert document["failures"] == ["witness 0 fails 2-union"]

    def test_audit_of_a_missing_certificate(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Nothing readable at --file is an input error."""
        with tempfile.TemporaryDirectory() as temp_dir:
            assert run(["audit", "--file", str(Path(temp_dir) / "absent.json")]) == 2
        assert "no readable certificate" in capsys.readouterr().err
