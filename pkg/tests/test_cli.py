import dataclasses
import io
import json
import subprocess
import sys


from conwaykit import catalog as catalog_module
from conwaykit.cli import EXIT_MISMATCH, EXIT_OK, EXIT_PARSE, EXIT_UNDEFINED, run
from conwaykit.conway import MOD3_ALGEBRA, homfly, trivial_algebra_table
from conwaykit.diagram import LinkDiagram
from conwaykit.poly import LaurentPoly, make_vars, parse_poly

from conftest import closure


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


class TestCompute:
    def test_trefoil_jck(self):
        code, out, _ = call("compute", "--braid", "s1^3", "--invariant", "jck-tilde")
        assert code == EXIT_OK
        text = out.split(":", 1)[1].strip()
        expected = parse_poly("-a^{-4}-2a^{-2}+t^2a^{-2}+z(a^{-3}+a^{-5}+ta^{-4})", make_vars("a t z"))
        assert parse_poly(text, expected.vars) == expected

    def test_unknot_homfly(self):
        code, out, _ = call("compute", "--braid", "", "--strands", "1", "--invariant", "homfly")
        assert code == EXIT_OK and out == "homfly: 1\n"

    def test_several_invariants(self):
        code, out, _ = call("compute", "--braid", "s1^2", "--invariant", "lk", "--invariant", "components",
                            "--invariant", "writhe", "--invariant", "crossings")
        assert code == EXIT_OK
        assert out.splitlines() == ["lk: 1", "components: 2", "writhe: 2", "crossings: 2"]

    def test_supersig(self):
        code, out, _ = call("compute", "--braid", "s1^3", "--invariant", "supersig", "--u", "0.5", "--v", "0.5")
        assert code == EXIT_OK and "sigma=-2" in out
        code, out, _ = call("compute", "--braid", "s1^3", "--invariant", "supersig", "--u", "0.5", "--v", "0.5",
                            "--epsilon", "1e-9")
        assert code == EXIT_OK and "sigma=-2" in out

    def test_supersig_needs_positive_product(self):
        code, _, err = call("compute", "--braid", "s1^3", "--invariant", "supersig", "--u", "1", "--v", "-1")
        assert code == EXIT_PARSE and "u*v > 0" in err

    def test_undefined_exit(self):
        code, _, err = call("compute", "--braid", "s1^2 s1^-1 s2^2 s2^1 s2^1 s1^1 s2^1", "--invariant", "supersig",
                            "--u", "3", "--v", "1")
        assert code == EXIT_UNDEFINED and err.startswith("undefined:")

    def test_parse_error_exit(self):
        code, _, err = call("compute", "--braid", "s1^x")
        assert code == EXIT_PARSE and "position" in err
        code, _, _ = call("compute", "--bogus")
        assert code == EXIT_PARSE

    def test_diagram_file(self, tmp_path):
        f = tmp_path / "trefoil.txt"
        f.write_text(closure("s1^3").to_text())
        code, out, _ = call("compute", "--diagram", str(f), "--invariant", "homfly", "--json")
        assert code == EXIT_OK
        obj = json.loads(out)
        assert LaurentPoly.from_json(obj["homfly"]) == homfly(closure("s1^3"))
        code, _, _ = call("compute", "--diagram", str(tmp_path / "missing.txt"))
        assert code == EXIT_PARSE

    def test_finite_algebra(self, tmp_path):
        f = tmp_path / "alg.txt"
        f.write_text(MOD3_ALGEBRA.to_text())
        code, out, _ = call("compute", "--braid", "s1^3", "--invariant", "finite", "--algebra", str(f))
        assert code == EXIT_OK and out == "finite: 2\n"

    def test_json_round_trip(self):
        for inv in ("homfly", "jones", "kauffman", "q", "jck-tilde", "jones-from-kauffman"):
            code, out, _ = call("compute", "--braid", "s1 s2^-1 s1 s2^-1", "--invariant", inv, "--json")
            assert code == EXIT_OK
            p = LaurentPoly.from_json(json.loads(out)[inv])
            code, text, _ = call("compute", "--braid", "s1 s2^-1 s1 s2^-1", "--invariant", inv)
            assert parse_poly(text.split(":", 1)[1].strip(), p.vars) == p

    def test_deterministic(self):
        argv = ("compute", "--braid", "s1^-2 s2^3 s1^-2 s2", "--invariant", "homfly", "--invariant", "kauffman",
                "--json")
        assert call(*argv) == call(*argv)
        argv = ("compute", "--braid", "s1^-2 s2^3 s1^-2 s2", "--invariant", "jck")
        assert call(*argv) == call(*argv)

    def test_cache_flag(self):
        a = call("compute", "--braid", "s1^5 s2 s1^-1 s2", "--invariant", "homfly")
        b = call("compute", "--braid", "s1^5 s2 s1^-1 s2", "--invariant", "homfly", "--cache")
        assert a == b


class TestVerify:
    def test_all_pass(self):
        code, out, _ = call("verify", "--all")
        assert code == EXIT_OK
        assert out.rstrip().endswith("all pass")
        assert "m11_449 printed: matches the mirror image only (documented)" in out

    def test_single_entry_json(self):
        code, out, _ = call("verify", "--entry", "8_8", "--json")
        assert code == EXIT_OK
        obj = json.loads(out)
        assert all(row["ok"] for k, row in obj["8_8"].items() if k != "printed")
        assert obj["8_8"]["printed"] == "matches after corrections"

    def test_unknown_entry(self):
        code, _, err = call("verify", "--entry", "nope")
        assert code == EXIT_PARSE and "nope" in err

    def test_mismatch_exit(self, monkeypatch):
        real = catalog_module.get_entry("right_trefoil")
        wrong = dataclasses.replace(real, homfly=homfly(closure("s1^-3")))
        monkeypatch.setattr(catalog_module, "get_entry", lambda name: wrong)
        code, out, _ = call("verify", "--entry", "right_trefoil")
        assert code == EXIT_MISMATCH
        assert "right_trefoil homfly: FAIL" in out and "expected:" in out and "computed:" in out


class TestOther:
    def test_census_summary(self):
        code, out, _ = call("census", "--census-size", "3", "--summary")
        assert code == EXIT_OK
        assert out.splitlines() == ["size=3 count=9", "conventions: sequence=9 pair=9 none=10"]

    def test_census_json(self):
        code, out, _ = call("census", "--census-size", "4", "--json")
        obj = json.loads(out)
        assert code == EXIT_OK and obj["count"] == 51 and len(obj["representatives"]) == 51

    def test_census_size_error(self):
        assert call("census", "--census-size", "7")[0] == EXIT_PARSE

    def test_catalog(self):
        code, out, _ = call("catalog", "list")
        assert code == EXIT_OK and out.splitlines()[0].startswith("8_8")
        code, out, _ = call("catalog", "show", "13_6714")
        assert code == EXIT_OK and "braid as printed:" in out
        assert call("catalog", "show", "nope")[0] == EXIT_PARSE
        code, out, _ = call("catalog", "show", "conway_knot", "--json")
        LinkDiagram.from_text(json.loads(out)["diagram"]).validate()

    def test_axioms(self, tmp_path):
        good = tmp_path / "good.txt"
        good.write_text(trivial_algebra_table(3).to_text())
        assert call("axioms", str(good))[0] == EXIT_OK
        bar = [list(r) for r in MOD3_ALGEBRA.bar]
        bar[0][0] = 1 if bar[0][0] != 1 else 2
        text = MOD3_ALGEBRA.to_text().splitlines()
        text[1:1 + MOD3_ALGEBRA.n] = [" ".join(map(str, r)) for r in bar]
        bad = tmp_path / "bad.txt"
        bad.write_text("\n".join(text) + "\n")
        code, out, _ = call("axioms", str(bad))
        assert code == EXIT_MISMATCH and "violations found" in out
        junk = tmp_path / "junk.txt"
        junk.write_text("not a table\n")
        assert call("axioms", str(junk))[0] == EXIT_PARSE

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "conwaykit", "compute", "--braid", "s1^3", "--invariant",
                               "conway"], capture_output=True, text=True)
        assert proc.returncode == 0 and proc.stdout == "conway: 1 + z^2\n"
