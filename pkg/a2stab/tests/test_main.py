"""
End-to-end tests of the ``a2stab`` command line.

Each command runs through ``main`` in-process; JSON output is checked
against the shipped schema files.
"""

import json
import logging

import jsonschema
import pytest

from a2stab.core import tilting as tl
from a2stab.main import format_json, main
from a2stab.utils.logging_config import PACKAGE_LOGGER
from a2stab.utils.metrics import metrics

CASE_B_Z1 = "-0.30901699437494745+0.95105651629515353i"
CASE_B_Z2 = "0.17207791154425395+1.0864571746546515i"


@pytest.fixture(autouse=True)
def detach_cli_logging():
    """main() attaches a stderr handler; drop it so the next capsys stream is used."""
    yield
    logger = logging.getLogger(PACKAGE_LOGGER)
    logger.handlers.clear()
    logger.setLevel(logging.NOTSET)
    logger.propagate = True


@pytest.fixture
def run(capsys):
    """Run the CLI and return (exit code, stdout)."""

    def invoke(*argv: str) -> tuple[int, str]:
        code = main(list(argv))
        return code, capsys.readouterr().out

    return invoke


@pytest.fixture
def validate(schema_dir):
    """Validate parsed JSON output against one of the shipped schemas."""

    def check(name: str, data: dict) -> None:
        schema = json.loads((schema_dir / f"{name}.json").read_text())
        jsonschema.Draft202012Validator(schema).validate(data)

    return check


class TestFormatJson:
    def test_full_precision_floats(self):
        assert format_json(0.1) == "0.10000000000000001"

    def test_numeric_lists_inline(self):
        assert format_json({"z": [1.5, -2]}) == '{\n  "z": [1.5, -2]\n}'

    def test_rejects_non_finite(self):
        with pytest.raises(TypeError):
            format_json(float("nan"))

    def test_output_parses(self):
        data = {"a": [[1, 2], [3, 4]], "b": None, "c": "x", "d": True}
        assert json.loads(format_json(data)) == data


@pytest.mark.integration
class TestBraidCommand:
    """Test ``braid eval``, ``braid auteq`` and ``braid compose``."""

    def test_braid_relation(self, run, validate):
        """Test that aba and bab evaluate to the same braid."""
        code, out = run("braid", "eval", "aba", "bab")
        data = json.loads(out)
        assert code == 0
        assert data["equal"] is True
        validate("braid_eval", data)

    def test_different_words(self, run):
        _, out = run("braid", "eval", "ab", "ba")
        assert json.loads(out)["equal"] is False

    def test_single_word(self, run):
        _, out = run("braid", "eval", "(ab)^2")
        data = json.loads(out)
        assert data["equal"] is None
        assert data["words"][0]["expanded"] == "abab"

    def test_tau_is_a_shift(self, run, validate):
        """Test that (ab)^3 is the shift [3n−4] at n = 3."""
        code, out = run("braid", "auteq", "-n", "3", "--word", "((ab)^3)", "--shift", "0")
        data = json.loads(out)
        assert code == 0
        assert data["shift"] == 5
        assert data["sl2"] == [[1, 0], [0, 1]]
        assert data["expsum"] == 0
        validate("auteq", data)

    def test_compose_inverse(self, run, validate):
        code, out = run("braid", "compose", "-n", "4", "--word", "a", "--then-word", "A")
        data = json.loads(out)
        assert code == 0
        assert data["shift"] == 0
        assert data["expsum"] == 0
        assert data["kmatrix"] == [[1, 0], [0, 1]]
        validate("auteq", data)

    def test_infinite_level(self, run, validate):
        code, out = run("braid", "auteq", "-n", "inf", "--sigma-power", "2")
        data = json.loads(out)
        assert code == 0
        assert data["n"] == "inf"
        assert data["sigma_power"] is not None
        validate("auteq", data)

    def test_oversized_power(self, run, validate):
        code, out = run("braid", "eval", "(ab)^999999999")
        data = json.loads(out)
        assert code == 2
        assert data["code"] == "parse_error"
        validate("error", data)

    def test_malformed_word(self, run, validate):
        """Test that a bad word gives exit code 2 and an error object."""
        code, out = run("braid", "eval", "abx")
        data = json.loads(out)
        assert code == 2
        assert data["code"] == "parse_error"
        validate("error", data)

    def test_bad_level(self, run):
        code, out = run("braid", "auteq", "-n", "1", "--word", "a")
        assert code == 2
        assert json.loads(out)["code"] == "invalid_level"


@pytest.mark.integration
class TestGraphCommand:
    def test_json_counts(self, run, validate):
        code, out = run("graph", "-n", "3", "--radius", "2", "--projective")
        data = json.loads(out)
        nodes, edges = tl.psl2_ball(3, 2)
        assert code == 0
        assert len(data["nodes"]) == nodes
        assert len(data["edges"]) == edges
        validate("graph", data)

    def test_dot(self, run):
        code, out = run("graph", "-n", "2", "--radius", "1", "--format", "dot")
        assert code == 0
        assert out.startswith('digraph "exchange" {')

    def test_json_flag_overrides_format(self, run):
        _, out = run("graph", "-n", "4", "--radius", "1", "--format", "svg", "--json")
        assert json.loads(out)["n"] == 4

    def test_svg_deterministic(self, run):
        argv = ("graph", "-n", "3", "--radius", "2", "--projective", "--format", "svg")
        code, first = run(*argv)
        _, second = run(*argv)
        assert code == 0
        assert first.startswith("<?xml")
        assert first == second

    def test_radius_cap(self, run, validate):
        code, out = run("graph", "-n", "3", "--radius", "1000")
        data = json.loads(out)
        assert code == 2
        assert data["code"] == "validation_error"
        validate("error", data)


@pytest.mark.integration
class TestPeriodsCommand:
    def test_closed_form_value(self, run, validate):
        """Test the n = 4 period at (a, b) = (−1, 0) against its antiderivative."""
        code, out = run("periods", "eval", "--n", "4", "--a=-1", "--b", "0", "--cycle", "1")
        data = json.loads(out)
        assert code == 0
        assert abs(complex(*data["value"])) == pytest.approx(0.25, abs=1e-10)
        validate("period_value", data)

    def test_pair(self, run, validate):
        code, out = run("periods", "pair", "--n", "3", "--a=-1", "--b", "0.1")
        assert code == 0
        validate("period_pair", json.loads(out))

    def test_repeated_root(self, run, validate):
        """Test that a domain error maps to exit code 3."""
        code, out = run("periods", "eval", "--n", "3", "--a", "0", "--b", "0")
        data = json.loads(out)
        assert code == 3
        assert data["code"] == "discriminant"
        validate("error", data)

    def test_bad_complex(self, run):
        code, out = run("periods", "eval", "--n", "3", "--a", "one", "--b", "0")
        assert code == 2
        assert json.loads(out)["code"] == "invalid_argument"

    def test_deterministic(self, run):
        argv = ("periods", "pair", "--n", "5", "--a", "0.3+0.2i", "--b", "1")
        assert run(*argv) == run(*argv)


@pytest.mark.integration
class TestOdeAndMapCommands:
    def test_hypergeometric_residual(self, run, validate):
        code, out = run("ode", "check", "--n", "5", "--z", "0.3+0.2i")
        data = json.loads(out)
        assert code == 0
        assert data["ok"] is True
        assert data["residual"] < 1e-6
        validate("residual", data)

    def test_exact_exponents(self, run, validate):
        code, out = run("map", "exponents", "--n", "3")
        data = json.loads(out)
        assert code == 0
        assert data["exact"] == pytest.approx([0.5, 1.0, 1 / 3])
        validate("exponents", data)

    def test_eval_needs_parameter(self, run):
        code, _ = run("map", "eval", "--n", "3")
        assert code == 2


@pytest.mark.integration
class TestRegionCommand:
    def test_outside(self, run, validate):
        code, out = run("region", "classify", "--n", "3", "--z", "0.9")
        data = json.loads(out)
        assert code == 0
        assert data["verdict"] == "outside"
        validate("region", data)

    def test_interior(self, run):
        _, out = run("region", "classify", "--n", "3", "--z=-0.25")
        assert json.loads(out)["verdict"] == "interior"

    def test_classify_takes_one_point(self, run):
        code, _ = run("region", "classify", "--n", "3", "--z", "0.1", "--z", "0.2")
        assert code == 2

    def test_svg(self, run):
        code, out = run("region", "svg", "--n", "4", "--z", "0.9", "--z=-0.5")
        assert code == 0
        assert 'class="outside"' in out


@pytest.mark.integration
class TestStabCommand:
    def test_case_a(self, run, validate):
        code, out = run("stab", "classify", "--n", "5", "--phase1", "0.25", "--phase2", "0.75")
        data = json.loads(out)
        assert code == 0
        assert data["verdict"] == "case_a_interior"
        validate("classify", data)

    def test_upsilon_boundary(self, run):
        _, out = run("stab", "classify", "--n", "3", "--phase1", "0.25", "--phase2", "0.75", "--modulus2", "1.5")
        assert json.loads(out)["verdict"] == "boundary_upsilon"

    def test_charges_on_canonical_heart(self, run):
        _, out = run("stab", "classify", "--n", "4", f"--z1={CASE_B_Z1}", f"--z2={CASE_B_Z2}")
        data = json.loads(out)
        assert data["verdict"] == "case_b_interior"
        assert data["g"] is not None

    def test_zero_charge(self, run, validate):
        code, out = run("stab", "classify", "--n", "3", "--z1", "0", "--z2", "1")
        data = json.loads(out)
        assert code == 3
        assert data["code"] == "invalid_charge"
        validate("error", data)

    def test_unpaired_phase(self, run):
        code, out = run("stab", "classify", "--n", "3", "--phase1", "0.25")
        assert code == 2
        assert json.loads(out)["code"] == "invalid_argument"

    def test_reduce(self, run, validate):
        code, out = run("stab", "reduce", "--n", "3", "--word", "abA", f"--z1={CASE_B_Z1}", f"--z2={CASE_B_Z2}")
        data = json.loads(out)
        assert code == 0
        assert data["verdict"] != "outside"
        validate("reduce", data)

    def test_walk_without_crossing(self, run, validate):
        code, out = run(
            "stab", "walk", "--n", "3", "--z1", "i", "--z2", "-1+i", "--to1", "1+i", "--to2", "-1+2i", "--steps", "8"
        )
        data = json.loads(out)
        assert code == 0
        assert data["heart_changed"] is False
        validate("walk", data)

    @pytest.mark.slow
    def test_roundtrip(self, run, validate):
        code, out = run("stab", "roundtrip", "--n", "3", "--samples", "3", "--seed", "7")
        data = json.loads(out)
        assert code == 0
        assert data["ok"] is True
        validate("roundtrip", data)


@pytest.mark.integration
class TestMonodromyCommand:
    @pytest.mark.slow
    def test_integral_matrix(self, run, validate):
        code, out = run("monodromy", "--n", "3")
        data = json.loads(out)
        assert code == 0
        assert data["integer_matrix"] is not None
        validate("monodromy", data)

    def test_infinite_level_rejected(self, run):
        code, out = run("monodromy", "--n", "inf")
        assert code == 2
        assert json.loads(out)["code"] == "invalid_level"


class TestGlobalFlags:
    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main(["--version"])
        assert exc_info.value.code == 0
        assert "a2stab" in capsys.readouterr().out

    def test_metrics_on_stderr(self, capsys):
        metrics.reset()
        main(["--metrics", "--log-level", "ERROR", "braid", "eval", "ab"])
        captured = capsys.readouterr()
        assert json.loads(captured.err)["commands_total"] == {"braid.eval": 1}
        assert json.loads(captured.out)["words"][0]["word"] == "ab"

    def test_errors_counted(self, capsys):
        metrics.reset()
        main(["braid", "eval", "x"])
        capsys.readouterr()
        assert metrics.errors_total == {"braid.eval.parse_error": 1}
