import io
import json

import pytest

from possing.cli import run


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def invoke_json(argv):
    code, out, err = invoke(argv + ["--json"])
    return code, (json.loads(out) if out else None), err


class TestParsing:
    def test_tau_command(self):
        code, rep, _ = invoke_json(
            ["tau", "--char", "2", "--vars", "x,y", "x^5+x^2*y^2+y^4"]
        )
        assert code == 0
        assert rep["result"]["tjurina"] == 16

    def test_weight_list(self):
        code, rep, _ = invoke_json(
            ["val", "--char", "2", "--vars", "x,y", "--weights", "4,6;5,5",
             "x^5+x^2*y^2+y^4"]
        )
        assert code == 0
        assert rep["result"]["value"] == 20

    def test_composite_characteristic_rejected(self):
        code, _, err = invoke(["tau", "--char", "4", "--vars", "x,y", "x^2+y^2"])
        assert code == 1
        assert "prime" in err

    def test_unknown_variable(self):
        code, _, err = invoke(["tau", "--vars", "x,y", "x+z"])
        assert code == 1
        assert "unknown variable" in err

    def test_malformed_weights(self):
        code, _, err = invoke(
            ["val", "--vars", "x,y", "--weights", "1,zzz", "x+y"]
        )
        assert code == 1

    def test_missing_polynomial(self):
        code, _, _ = invoke(["mu", "--vars", "x,y"])
        assert code == 1


class TestCommands:
    def test_mu_infinite_serializes(self):
        code, rep, _ = invoke_json(
            ["mu", "--char", "2", "--vars", "x,y", "x^5+x^2*y^2+y^4"]
        )
        assert code == 0 and rep["result"]["milnor"] == "inf"

    def test_newton(self):
        code, rep, _ = invoke_json(
            ["newton", "--vars", "x,y", "x*y^4+x^2*y^3+x^3*y^2-x^4*y^2+x^7"]
        )
        assert code == 0
        assert rep["result"]["vertices"] == [[1, 4], [3, 2], [7, 0]]
        assert rep["result"]["convenient"] is False

    def test_cpoly_from_weights(self):
        code, rep, _ = invoke_json(
            ["cpoly", "--vars", "x,y", "--weights", "1,2;3,1"]
        )
        assert code == 0
        assert rep["result"]["weights"] == [[1, 2], [3, 1]]

    def test_inform(self):
        code, rep, _ = invoke_json(
            ["inform", "--char", "7", "--vars", "x,y", "--weights", "4,7",
             "x^7+x^6*y+y^4"]
        )
        assert code == 0
        assert rep["result"]["initial_form"] == "x^7+y^4"

    def test_conditions_e33(self):
        code, rep, _ = invoke_json(
            ["conditions", "--char", "3", "--vars", "x,y", "x^12+x^3*y^2+y^3"]
        )
        assert code == 0
        res = rep["result"]
        assert res["contact_graded_finite"] is True
        assert res["contact_graded_exact"] is False
        assert res["tjurina"] == 21
        assert res["dim_gr_contact"] == 22

    def test_regbasis_q10(self):
        code, rep, _ = invoke_json(
            ["regbasis", "--char", "2", "--vars", "x,y,z", "--weights", "9,8,6",
             "--mode", "contact", "x^2*z+y^3+z^4"]
        )
        assert code == 0
        res = rep["result"]
        assert res["dimension"] == 16 and res["max_valuation"] == 35

    def test_innd(self):
        code, rep, _ = invoke_json(
            ["innd", "--char", "7", "--vars", "x,y", "x^5+x^2*y^2+y^4"]
        )
        assert code == 0 and rep["result"]["inner_nondegenerate"] is True

    def test_classify_quasihomogeneous(self):
        code, rep, _ = invoke_json(
            ["classify", "--vars", "x,y,z", "--weights", "9,8,6", "x^2*z+y^3+z^4"]
        )
        assert code == 0
        res = rep["result"]
        assert res["quasihomogeneous"]["weights"] == [9, 8, 6]
        assert res["semi_quasihomogeneous_right"] is True
        assert res["milnor_equals_tjurina"] is True

    def test_normalform_q10(self):
        code, rep, _ = invoke_json(
            ["normalform", "--char", "2", "--vars", "x,y,z", "--weights", "9,8,6",
             "--mode", "contact", "x^2*z+y^3+z^4+x*y*z^2"]
        )
        assert code == 0
        res = rep["result"]
        assert res["coefficients"] == {"x*y*z^2": 1}
        assert res["principal_part"] == "z^4+y^3+x^2*z"  # canonical order

    def test_determinacy(self):
        code, rep, _ = invoke_json(
            ["determinacy", "--char", "2", "--vars", "x,y,z", "--weights", "9,8,6",
             "--mode", "contact", "x^2*z+y^3+z^4"]
        )
        assert code == 0
        assert rep["result"]["filtered_bound"] == 5


class TestRefusals:
    def test_normalform_refusal_exit_code(self):
        code, out, err = invoke(
            ["normalform", "--char", "2", "--vars", "x,y", "--mode", "contact",
             "--scan-bound", "24", "x^5+x^2*y^2+y^4"]
        )
        assert code == 2
        assert "refused" in err and "witness_ray" in err

    def test_truncate_generic_fallback(self):
        code, rep, _ = invoke_json(
            ["normalform", "--char", "2", "--vars", "x,y", "--mode", "contact",
             "--scan-bound", "24", "--truncate-generic", "x^5+x^2*y^2+y^4"]
        )
        assert code == 0
        assert rep["result"]["generic_bound"] == 30


class TestDeterminism:
    def test_json_round_trip_identical(self):
        argv = ["conditions", "--char", "3", "--vars", "x,y", "x^12+x^3*y^2+y^3",
                "--json"]
        out1, out2 = io.StringIO(), io.StringIO()
        assert run(argv, out=out1) == 0
        assert run(argv, out=out2) == 0
        rep1 = json.loads(out1.getvalue())
        rep2 = json.loads(out2.getvalue())
        rep1.pop("timing_ms"), rep2.pop("timing_ms")
        assert rep1 == rep2
        # byte-identical re-serialization
        blob = json.dumps(rep1, sort_keys=True, indent=2)
        assert blob == json.dumps(json.loads(blob), sort_keys=True, indent=2)

    def test_text_output_renders(self):
        code, out, _ = invoke(["tau", "--char", "2", "--vars", "x,y",
                               "x^5+x^2*y^2+y^4"])
        assert code == 0
        assert "tjurina" in out and "16" in out
