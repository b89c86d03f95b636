"""Tests for the problem-file grammar, parser, certificate files, tables and CLI."""
import io
import json
import pytest
from unittest.mock import patch
from src.dgcat.homotopy import homotopy_category
from src.dgcat.presentation import LinearCategoryPresentation
from src.frontend.cli import run_command
from src.frontend.grammar import (Line, iter_lines, parse_coordinates, parse_linear_combination, parse_tuple)
from src.frontend.parser import parse_document, parse_presentation, parse_problem
from src.frontend.serializer import parse_certificate, serialize_certificate
from src.frontend.tables import cohomology_records, h0_records, render_records, transcript_records
from src.graded.field import Field
from src.lift.certificate import verify_certificate
from src.lift.lifter import lift_natural_transformation
from src.utils.errors import CertificateError, NaturalityFails, ParseError, ValidationError

INVALID_CATEGORY = """\
CATEGORY P
OBJECTS X
HOM X X
basis id degree 0
basis x degree -1
basis y degree 0
basis z degree 1
UNIT X id
DIFF
d x = y
d y = z
"""


class TestGrammar:
    """Test cases for the line-level grammar."""

    @pytest.fixture
    def line(self):
        """A dummy source line."""
        return Line(3, "d t = 2*s0 - s1")

    def test_iter_lines_strips_comments(self):
        """Test blank lines and comments are dropped with numbering kept."""
        lines = list(iter_lines("# header\n\nFIELD q  # rationals\r\nCATEGORY E\n"))
        assert [(line.number, line.text) for line in lines] == [(3, "FIELD q"), (4, "CATEGORY E")]

    def test_non_ascii(self):
        """Test a non-ASCII character is located."""
        with pytest.raises(ParseError) as excinfo:
            list(iter_lines("FIELD q\nCATEGORY É\n"))
        assert (excinfo.value.line, excinfo.value.column) == (2, 10)

    def test_linear_combination(self, q, line):
        """Test signs, scalars and fractions."""
        combination = parse_linear_combination("2*s0 - s1 + 1/3*t", q, line, 7)
        assert combination == {"s0": q(2), "s1": q(-1), "t": q("1/3")}

    def test_repeated_labels_cancel(self, q, line):
        """Test repeated labels are summed and zeros dropped."""
        assert parse_linear_combination("s0 + s0 - 2*s0", q, line, 7) == {}
        assert parse_linear_combination(" 0", q, line, 7) == {}

    def test_reduction_mod_p(self, f2, line):
        """Test coefficients are reduced in F_2."""
        assert parse_linear_combination("3*s0 + 2*s1", f2, line, 7) == {"s0": f2(1)}

    def test_missing_operator(self, q, line):
        """Test two terms without a sign in between."""
        with pytest.raises(ParseError) as excinfo:
            parse_linear_combination("s0 s1", q, line, 7)
        assert excinfo.value.column == 10

    def test_division_by_zero(self, q, line):
        """Test 1/0 is a located error."""
        with pytest.raises(ParseError):
            parse_linear_combination("1/0*s0", q, line, 7)

    def test_tuple(self, line):
        """Test (f_d, ..., f_1) parsing."""
        assert parse_tuple(" (b, a)", line, 1) == ("b", "a")
        with pytest.raises(ParseError):
            parse_tuple("(b, )", line, 1)
        with pytest.raises(ParseError):
            parse_tuple("b, a", line, 1)

    def test_coordinates(self, q, line):
        """Test bracketed coordinates."""
        assert parse_coordinates("[1 1/2]", q, line, 1) == [q(1), q("1/2")]
        with pytest.raises(ParseError):
            parse_coordinates("1 0", q, line, 1)


class TestParser:
    """Test cases for problem-file parsing."""

    @pytest.fixture
    def inst1_text(self, problems_dir):
        """Text of the inst1 problem file."""
        return (problems_dir / "inst1.prob").read_text(encoding="ascii")

    def test_document(self, inst1_text):
        """Test categories, functors and the transform section are read."""
        document = parse_document(inst1_text)
        assert document.field == Field("q")
        assert list(document.categories) == ["E", "B"]
        assert isinstance(document.category("E"), LinearCategoryPresentation)
        B = document.category("B")
        assert B.hom_space("X", "Y").dims == {-1: 1, 0: 2}
        assert B.d(B.basis("t")) == B.basis("s0") - B.basis("s1")
        assert document.functor("G").component(("a",)) == B.basis("s1")
        assert document.transforms["phi"].source == "F"

    def test_units_created(self, inst1_text):
        """Test objects with no endomorphisms get id_<object> units."""
        B = parse_presentation(inst1_text, "B")
        assert B.unit("X") == B.basis("id_X")
        assert B.hom_space("X", "X").dims == {0: 1}

    @patch("src.frontend.parser.logger")
    def test_created_unit_logged(self, mock_logger, inst1_text):
        """Test a created unit is reported as a warning."""
        parse_presentation(inst1_text, "B")
        messages = [str(c.args[0]) for c in mock_logger.warning.call_args_list]
        assert any("no UNIT line for X" in m and "id_X" in m for m in messages)

    @patch("src.frontend.parser.logger")
    def test_inferred_unit_logged(self, mock_logger):
        """Test picking the first degree-0 endomorphism as unit is reported."""
        P = parse_presentation("CATEGORY P\nOBJECTS X\nHOM X X\nbasis e degree 0\n")
        assert P.units["X"] == "e"
        mock_logger.warning.assert_called_once()
        assert "'e'" in mock_logger.warning.call_args.args[0]

    @patch("src.frontend.parser.logger")
    def test_declared_unit_not_logged(self, mock_logger):
        """Test a UNIT line produces no warning."""
        P = parse_presentation("CATEGORY P\nOBJECTS X\nHOM X X\nbasis idX degree 0\nUNIT X idX\n")
        assert P.units["X"] == "idX"
        mock_logger.warning.assert_not_called()

    def test_field_override(self, inst1_text):
        """Test --field replaces the FIELD line."""
        document = parse_document(inst1_text, field_override="f3")
        assert document.field == Field("f3")

    def test_problem(self, inst1_text):
        """Test the parsed problem matches inst1."""
        problem = parse_problem(inst1_text, name="inst1")
        assert problem.phi_bar["E0"] == problem.h0_B.identity_class("X")
        assert problem.name == "inst1"

    def test_coordinates_transform(self, problems_dir):
        """Test classes given as coordinates; (2, 1) is not natural."""
        with pytest.raises(NaturalityFails):
            parse_problem((problems_dir / "inst1_unnatural.prob").read_text(encoding="ascii"))

    def test_chain_file(self, problems_dir):
        """Test the chain problem over F_3 parses and lifts."""
        problem = parse_problem((problems_dir / "chain3.prob").read_text(encoding="ascii"))
        assert problem.field == Field("f3")
        assert problem.E.compose(problem.E.basis("b"), problem.E.basis("a")) == problem.E.basis("c")
        certificate = lift_natural_transformation(problem)
        assert verify_certificate(certificate).is_valid
        assert certificate.iso_flag is True

    def test_unknown_label(self, inst1_text):
        """Test an unknown label in DIFF is reported with its position."""
        with pytest.raises(ParseError) as excinfo:
            parse_document(inst1_text.replace("d t = s0 - s1", "d t = s0 - s9"))
        assert (excinfo.value.line, excinfo.value.column) == (16, 12)
        assert excinfo.value.exit_code == 2

    def test_unknown_component_label(self, inst1_text):
        """Test a functor value outside the target is a parse error."""
        with pytest.raises(ParseError):
            parse_document(inst1_text.replace("comp 1 (a) = s1", "comp 1 (a) = s9"))

    def test_field_must_come_first(self):
        """Test FIELD after another section."""
        with pytest.raises(ParseError):
            parse_document("CATEGORY E\nOBJECTS A\nFIELD q\n")

    def test_missing_transform(self, inst1_text):
        """Test lifting needs a TRANSFORM section."""
        text = inst1_text.split("TRANSFORM")[0]
        with pytest.raises(ParseError):
            parse_problem(text)

    def test_invalid_category(self):
        """Test axiom violations surface while parsing."""
        with pytest.raises(ValidationError) as excinfo:
            parse_document(INVALID_CATEGORY)
        assert excinfo.value.axiom == "d-squared"


class TestSerializer:
    """Test cases for certificate files."""

    @pytest.fixture
    def certificate(self, inst1_lift_problem):
        """Certified inst1 lift."""
        return lift_natural_transformation(inst1_lift_problem)

    def test_deterministic(self, certificate):
        """Test serializing twice gives the same text."""
        assert serialize_certificate(certificate) == serialize_certificate(certificate)

    def test_reparse(self, certificate, inst1_lift_problem):
        """Test a parsed certificate serializes back to the same text and verifies."""
        text = serialize_certificate(certificate)
        parsed = parse_certificate(text, inst1_lift_problem)
        assert serialize_certificate(parsed) == text
        assert verify_certificate(parsed).is_valid
        assert parsed.transformation.component(("a",)) == -inst1_lift_problem.B.basis("t")

    def test_content(self, certificate):
        """Test the stored fields."""
        data = json.loads(serialize_certificate(certificate))
        assert data["format"] == "dglift-certificate/1"
        assert data["d_max"] == 2
        assert data["iso"] is True
        assert data["components"] == [{"tuple": ["a"], "value": [["t", "-1"]]}]

    def test_digest_mismatch(self, certificate, inst1_lift_problem):
        """Test an edited certificate is rejected."""
        text = serialize_certificate(certificate).replace('"iso":true', '"iso":false')
        with pytest.raises(CertificateError) as excinfo:
            parse_certificate(text, inst1_lift_problem)
        assert "digest" in str(excinfo.value)

    def test_wrong_problem(self, certificate, problems_dir):
        """Test a certificate checked against another problem."""
        other = parse_problem((problems_dir / "chain3.prob").read_text(encoding="ascii"))
        with pytest.raises(CertificateError) as excinfo:
            parse_certificate(serialize_certificate(certificate), other)
        assert excinfo.value.problems

    def test_not_json(self, inst1_lift_problem):
        """Test garbage input."""
        with pytest.raises(CertificateError):
            parse_certificate("not json", inst1_lift_problem)


class TestTables:
    """Test cases for tabular output."""

    def test_empty(self):
        """Test an empty table."""
        assert render_records([]) == "(none)"

    def test_render(self):
        """Test columns appear in the rendered text."""
        text = render_records([{"degree": -1, "dimension": 0}])
        assert "degree" in text and "dimension" in text

    def test_cohomology(self, inst1_data):
        """Test the cohomology table of B(X, Y)."""
        rows = cohomology_records(inst1_data["B"].hom("X", "Y"))
        assert rows == [
            {"degree": -1, "dim": 1, "cocycles": 0, "coboundaries": 0, "cohomology": 0},
            {"degree": 0, "dim": 2, "cocycles": 2, "coboundaries": 1, "cohomology": 1},
        ]

    def test_h0(self, inst1_data):
        """Test the H0 table."""
        rows = h0_records(homotopy_category(inst1_data["B"]))
        dims = {(row["source"], row["target"]): row["dim"] for row in rows}
        assert dims == {("X", "X"): 1, ("X", "Y"): 1, ("Y", "X"): 0, ("Y", "Y"): 1}

    def test_transcript(self, inst1_lift_problem):
        """Test transcript rows for each stage."""
        rows = transcript_records(lift_natural_transformation(inst1_lift_problem).transcript)
        assert rows[0] == {"stage": 0, "input": "E0", "data": "id_X", "value": "id_X"}
        assert rows[2] == {"stage": 1, "input": "a", "data": "-s0 + s1", "value": "-t"}


class TestCli:
    """Test cases for the command-line interface."""

    @pytest.fixture
    def inst1_path(self, problems_dir):
        """Path to the inst1 problem file."""
        return str(problems_dir / "inst1.prob")

    def run(self, argv):
        out = io.StringIO()
        return run_command(argv, out), out.getvalue()

    def test_validate(self, inst1_path):
        """Test validate reports every category and functor."""
        code, output = self.run(["validate", inst1_path])
        assert code == 0
        assert "CATEGORY B: valid" in output
        assert "FUNCTOR G: valid" in output

    def test_validate_invalid(self, tmp_path):
        """Test validate exits 1 on an axiom violation."""
        path = tmp_path / "bad.prob"
        path.write_text(INVALID_CATEGORY, encoding="ascii")
        code, output = self.run(["validate", str(path)])
        assert code == 1
        assert "CATEGORY P: INVALID" in output
        assert "d-squared" in output

    def test_cohomology(self, inst1_path):
        """Test the cohomology command."""
        code, output = self.run(["cohomology", inst1_path, "B", "X", "Y"])
        assert code == 0
        assert "cohomology" in output

    def test_h0(self, inst1_path):
        """Test the h0 command."""
        code, output = self.run(["h0", inst1_path, "B"])
        assert code == 0
        assert "dim" in output

    def test_check_functor(self, inst1_path):
        """Test the check-functor command."""
        code, output = self.run(["check-functor", inst1_path, "F", "--dmax", "3"])
        assert code == 0
        assert "FUNCTOR F up to degree 3: OK" in output

    def test_lift_to_stdout(self, inst1_path):
        """Test lift without --out prints the certificate."""
        code, output = self.run(["lift", inst1_path])
        assert code == 0
        assert json.loads(output)["iso"] is True

    def test_lift_and_certify(self, inst1_path, tmp_path):
        """Test lift --out followed by certify."""
        cert = tmp_path / "inst1.cert"
        code, output = self.run(["lift", inst1_path, "--out", str(cert)])
        assert code == 0
        assert output.startswith("LIFTED d_max=2 iso=true")
        assert cert.exists()
        code, output = self.run(["certify", str(cert), inst1_path])
        assert code == 0
        assert output.splitlines() == ["VERIFIED", "iso: true"]

    def test_certify_tampered(self, inst1_path, tmp_path):
        """Test certify exits 1 on an edited certificate."""
        cert = tmp_path / "inst1.cert"
        self.run(["lift", inst1_path, "--out", str(cert)])
        cert.write_text(cert.read_text(encoding="ascii").replace('"d_max":2', '"d_max":3'), encoding="ascii")
        code, _ = self.run(["certify", str(cert), inst1_path])
        assert code == 1

    def test_lift_verbose(self, inst1_path, tmp_path):
        """Test --verbose prints the transcript."""
        code, output = self.run(["lift", inst1_path, "--out", str(tmp_path / "c"), "--verbose"])
        assert code == 0
        assert "-s0 + s1" in output

    def test_lift_vanishing_fails(self, problems_dir):
        """Test exit 1 and the failure table when H^-1 is nonzero."""
        code, output = self.run(["lift", str(problems_dir / "inst1_no_vanishing.prob")])
        assert code == 1
        assert "dimension" in output

    def test_lift_unnatural(self, problems_dir):
        """Test exit 1 for a non-natural class."""
        code, _ = self.run(["lift", str(problems_dir / "inst1_unnatural.prob")])
        assert code == 1

    def test_parse_error(self, inst1_path, tmp_path):
        """Test exit 2 on a malformed file."""
        path = tmp_path / "bad.prob"
        with open(inst1_path, encoding="ascii") as handle:
            path.write_text(handle.read().replace("basis t degree -1", "basis t degree minus"), encoding="ascii")
        code, _ = self.run(["lift", str(path)])
        assert code == 2

    def test_missing_file(self, tmp_path):
        """Test exit 1 for an unreadable file."""
        code, _ = self.run(["validate", str(tmp_path / "missing.prob")])
        assert code == 1
