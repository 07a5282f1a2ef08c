import json

import pytest

from semiconj.chains import Chain, chain_to_json
from semiconj.cli import main
from semiconj.expr import parse_expression
from semiconj.families import chebyshev, zhukovsky
from semiconj.ratmap import Z, right_divide


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--output", "structured")
    return code, json.loads(out)


class TestGolden:
    def test_bounds_4(self, capsys):
        code, out, _ = run(capsys, "bounds", "4")
        assert code == 0
        assert out == "theta = 1\nchain bound = 28\nstep bound = 28\nprimitive degree bound = 60\n"

    def test_bounds_structured(self, capsys):
        code, rec = run_json(capsys, "bounds", "5")
        assert code == 0
        assert rec["theta"]["expr"] == "log2(84)"
        assert (rec["theta"]["floor"], rec["theta"]["ceil"]) == (6, 7)
        assert rec["primitive_degree_bound"] == 60

    def test_portrait_delta(self, capsys):
        code, out, _ = run(capsys, "portrait", "Delta")
        assert code == 0
        assert out.strip() == "({1,2}@0, {1,2}@1, {3}@inf)"

    def test_family(self, capsys):
        code, out, _ = run(capsys, "family", "T(3)")
        assert code == 0
        assert out.splitlines()[0] == "T(3) = 4*z^3 - 3*z"

    def test_orbifold(self, capsys):
        code, rec = run_json(capsys, "orbifold", "z^3")
        assert code == 0
        assert rec["O2"]["signature"] == "(3,3)"
        assert rec["O2"]["euler_char"] == "2/3"


class TestVerdicts:
    def test_verify_semi_true(self, capsys):
        code, out, _ = run(capsys, "verify-semi", "z^2", "z^3", "z^2")
        assert (code, out.strip()) == (0, "true")

    def test_verify_semi_false(self, capsys):
        code, out, _ = run(capsys, "verify-semi", "z^2", "z+1", "z^2")
        assert (code, out.strip()) == (1, "false")

    def test_verify_semi_chebyshev(self, capsys):
        assert run(capsys, "verify-semi", "T(2)", "T(3)", "T(2)")[0] == 0

    def test_verify_square(self, capsys):
        assert run(capsys, "verify-square", "z^2", "z^3", "z^3", "z^2")[0] == 0
        assert run(capsys, "verify-square", "z^2", "z^3", "z^2", "z^3")[0] == 0
        assert run(capsys, "verify-square", "z^2", "z^3", "z^2", "z^2")[0] == 1

    def test_verify_square_good(self, capsys):
        code, rec = run_json(capsys, "verify-square", "z^2", "z^3", "z^3", "z^2", "--good")
        assert code == 0 and rec["goodness"]["verdict"] is True
        code, rec = run_json(capsys, "verify-square", "z^2", "z^4", "z^4", "z^2", "--good")
        assert code == 1 and rec["goodness"]["verdict"] is False

    def test_classify_negative_expression(self, capsys):
        code, out, _ = run(capsys, "classify", "--output", "structured", "--", "-T(5)")
        rec = json.loads(out)
        assert code == 0
        assert (rec["special"], rec["n"], rec["sign"]) == ("ChebyshevConjugate", 5, -1)

    def test_luroth(self, capsys):
        code, rec = run_json(capsys, "luroth", "z^6", "z^4")
        assert code == 0
        assert rec["degree_index"] == 2 and rec["primitive"] is False
        U = parse_expression(rec["U"])
        assert U.degree == 2
        assert right_divide(Z**6, U) is not None and right_divide(Z**4, U) is not None

    def test_decompose(self, capsys):
        code, rec = run_json(capsys, "decompose", "z^6", "z^2")
        assert code == 0
        assert all(rec["checks"].values())


class TestExitCodes:
    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "portrait", "z^1.5")
        assert code == 2
        assert "exponent must be an integer at position 2" in err

    def test_parse_error_structured(self, capsys):
        code, rec = run_json(capsys, "portrait", "(z+1")
        assert code == 2 and rec["error"] == "parse-error"

    def test_degree_cap(self, capsys):
        assert run(capsys, "portrait", "z^50", "--max-degree", "10")[0] == 3
        assert run(capsys, "family", "T(50)", "--max-degree", "10")[0] == 3

    def test_infinite_group(self, capsys):
        code, rec = run_json(capsys, "symmetry", "z^3")
        assert code == 4 and rec["error"] == "InfiniteGroup"

    def test_finite_group(self, capsys):
        code, rec = run_json(capsys, "symmetry", "T(3)")
        assert code == 0 and rec["order"] == 2

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "chain-check", str(tmp_path / "nope.json"))[0] == 2

    def test_bad_usage(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["bounds"])
        assert info.value.code == 2


class TestStructured:
    @pytest.mark.parametrize(
        "argv",
        [
            ("classify", "Omega"),
            ("portrait", "Gamma"),
            ("orbifold", "Delta"),
            ("bounds", "88"),
            ("decompose", "z^6", "z^2"),
        ],
    )
    def test_deterministic(self, capsys, argv):
        a = run(capsys, *argv, "--output", "structured")
        b = run(capsys, *argv, "--output", "structured")
        assert a == b
        json.loads(a[1])


class TestChainCheck:
    def test_valid_chain(self, capsys, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(chain_to_json(Chain(((chebyshev(3), zhukovsky(1)), (Z**3, zhukovsky(1))))))
        code, rec = run_json(capsys, "chain-check", str(path))
        assert code == 0 and rec["valid"] is True and rec["length"] == 2

    def test_invalid_chain(self, capsys, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"steps": [["z^2", "z^3"], ["z^2", "z+z^2"]]}))
        code, rec = run_json(capsys, "chain-check", str(path))
        assert code == 1 and rec["valid"] is False

    def test_wrong_basis(self, capsys, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"basis": "z^5", "steps": [["z^2", "z^3"]]}))
        assert run(capsys, "chain-check", str(path))[0] == 2
