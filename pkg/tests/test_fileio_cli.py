import json
import shutil
from fractions import Fraction

import pytest

from ggm_obstruct import cli
from ggm_obstruct.errors import ManifoldSyntaxError, SchemaError
from ggm_obstruct.fileio import parse_manifold, serialize_manifold, spec_digest
from ggm_obstruct.manifold import validate
from ggm_obstruct.report import (
    INCONCLUSIVE,
    LS2_NOT_APPLICABLE,
    OBSTRUCTED_C_PRIME,
    RunOptions,
    fraction_str,
    load_example,
    run,
)

from conftest import EXAMPLE_PATH, random_population, example4d_spec

N3 = {
    "dimension": 3,
    "blocks": [{"id": "a", "genus": 0, "boundary": ["p", "q", "r"]}],
    "gluings": [{"from": "p", "to": "q", "matrix": [[0, 1], [-1, 0]]}],
}


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(path)


class TestParse:
    def test_bundled_example(self):
        spec = parse_manifold(EXAMPLE_PATH.read_text())
        assert spec.dimension == 4
        assert len(spec.blocks) == 1 and len(spec.gluings) == 3
        assert len(spec.blocks[0].boundary) == 7
        assert spec.notes
        assert spec.gluings == example4d_spec().gluings
        assert validate(spec).boundary_tori == ("0",)

    def test_string_integers(self):
        obj = json.loads(json.dumps(N3))
        obj["gluings"][0]["matrix"] = [["0", "1"], ["-1", "0"]]
        obj["dimension"] = "3"
        assert parse_manifold(json.dumps(obj)) == parse_manifold(json.dumps(N3))

    def test_huge_integers(self):
        big = 10**30
        obj = json.loads(json.dumps(N3))
        obj["gluings"][0]["matrix"] = [[1, str(big)], [0, 1]]
        spec = parse_manifold(json.dumps(obj))
        assert spec.gluings[0].matrix[0, 1] == big

    def test_syntax_error_position(self):
        with pytest.raises(ManifoldSyntaxError) as exc:
            parse_manifold('{"dimension": 4,\n "blocks": [}')
        assert exc.value.line == 2

    @pytest.mark.parametrize(
        "mutate, field",
        [
            (lambda o: o.update(blocks=[]), "blocks"),
            (lambda o: o["gluings"][0].update(matrix=[[1, 1, 0], [0, 1, 0], [0, 0, 1]]), "gluings[0].matrix"),
            (lambda o: o["gluings"][0].update(matrix=[[1, 1], [0]]), "gluings[0].matrix[1]"),
            (lambda o: o["blocks"][0].update(genus=1.5), "blocks[0].genus"),
            (lambda o: o["blocks"][0].update(genus=True), "blocks[0].genus"),
            (lambda o: o["blocks"][0].pop("id"), "blocks[0]"),
            (lambda o: o.update(extra=1), "manifold"),
            (lambda o: o["blocks"][0].update(boundary="pqr"), "blocks[0].boundary"),
        ],
    )
    def test_schema_errors(self, mutate, field):
        obj = json.loads(json.dumps(N3))
        mutate(obj)
        with pytest.raises(SchemaError) as exc:
            parse_manifold(json.dumps(obj))
        assert exc.value.field == field

    def test_round_trip_population(self):
        for m in random_population(31, 30, dimensions=(3, 4, 5)):
            text = serialize_manifold(m.spec)
            assert parse_manifold(text) == m.spec
        spec = load_example()
        assert parse_manifold(serialize_manifold(spec)) == spec

    def test_digest_stable(self):
        spec = load_example()
        assert spec_digest(spec) == spec_digest(parse_manifold(serialize_manifold(spec, indent=None)))


class TestRun:
    def test_example_report(self):
        rep = run(load_example())
        assert rep.ls1.variables == 24 and rep.ls1.equations == 20
        assert rep.ls2.variables == 3 and rep.ls2.equations == 3
        assert rep.ls2.bound == 0 and rep.ls1.bound == 4
        assert rep.ls2.corank == 0
        assert rep.verdict == OBSTRUCTED_C_PRIME
        assert any("discrepancy" in n for n in rep.notes)
        d = rep.to_dict()
        assert d["ls2"]["lemma_bound"] == "0"
        assert "discrepancy" in rep.to_text()

    def test_dimension_three(self):
        rep = run(parse_manifold(json.dumps(N3)))
        assert rep.verdict == LS2_NOT_APPLICABLE
        assert rep.ls2 is None and rep.ls1.corank > 0
        assert "not applicable" in rep.to_text()

    def test_ls1_only(self):
        rep = run(load_example(), RunOptions(systems="ls1"))
        assert rep.ls2 is None and rep.verdict == INCONCLUSIVE

    def test_bound_rendering(self):
        assert run(parse_manifold(json.dumps(N3))).to_dict()["ls1"]["lemma_bound"] == "3"
        assert fraction_str(Fraction(-3, 4)) == "-3/4"
        assert fraction_str(Fraction(4, 2)) == "2"

    def test_self_test_deterministic(self):
        a = run(load_example(), RunOptions(self_test=5, seed=3))
        b = run(load_example(), RunOptions(self_test=5, seed=3))
        assert a.to_dict() == b.to_dict()
        assert a.self_test["passed"] and a.self_test["trials"] == 5

    def test_dump_systems(self, tmp_path):
        run(load_example(), RunOptions(dump_dir=str(tmp_path)))
        ls1 = json.loads((tmp_path / "ls1.json").read_text())
        ls2 = json.loads((tmp_path / "ls2.json").read_text())
        assert ls1["num_equations"] == 20 and ls1["corank"] == 4
        assert [r["coefficients"] for r in ls2["rows"]] == [[-1, -4, -3], [1, -2, 0], [3, -12, -15]]
        assert ls2["rows"][0]["tag"] == "glue 1->-1 (0,0)"

    def test_validated_input_accepted(self):
        m = validate(load_example())
        assert run(m).verdict == OBSTRUCTED_C_PRIME


class TestCli:
    def test_check_example_text(self, capsys):
        code = cli.main(["check", str(EXAMPLE_PATH)])
        out = capsys.readouterr().out
        assert code == cli.EXIT_OBSTRUCTED
        assert "c' = 0" in out and "OBSTRUCTED_C_PRIME" in out

    def test_check_json(self, capsys):
        code = cli.main(["check", str(EXAMPLE_PATH), "--json", "--self-test", "4", "--seed", "1"])
        rep = json.loads(capsys.readouterr().out)
        assert code == 10
        assert rep["ls1"]["corank"] == 4 and rep["ls2"]["corank"] == 0
        assert rep["self_test"]["passed"]

    def test_inconclusive_exit(self, tmp_path, capsys):
        path = write(tmp_path, "n3.json", N3)
        assert cli.main(["check", path]) == cli.EXIT_OK
        assert cli.main(["check", path, "--ls2-only"]) == cli.EXIT_OK
        assert "LS2_NOT_APPLICABLE" in capsys.readouterr().out

    def test_invalid_exit(self, tmp_path, capsys):
        bad = json.loads(json.dumps(N3))
        bad["blocks"][0]["boundary"] = ["p", "q"]
        path = write(tmp_path, "bad.json", bad)
        assert cli.main(["check", path]) == cli.EXIT_INVALID
        assert "bad_euler" in capsys.readouterr().err
        assert cli.main(["check", path, "--json"]) == cli.EXIT_INVALID
        assert json.loads(capsys.readouterr().out)["error"] == "bad_euler"
        assert cli.main(["check", write(tmp_path, "syn.json", "{")]) == cli.EXIT_INVALID
        assert cli.main(["check", str(tmp_path / "missing.json")]) == cli.EXIT_INVALID

    def test_dump_systems_flag(self, tmp_path):
        cli.main(["check", str(EXAMPLE_PATH), "--dump-systems", str(tmp_path / "d")])
        assert (tmp_path / "d" / "ls1.json").exists() and (tmp_path / "d" / "ls2.json").exists()

    @pytest.mark.parametrize("jobs", ["1", "2"])
    def test_batch(self, tmp_path, capsys, jobs):
        shutil.copy(EXAMPLE_PATH, tmp_path / "a.json")
        write(tmp_path, "b.json", N3)
        code = cli.main(["check", "--batch", str(tmp_path), "--json", "--jobs", jobs])
        results = json.loads(capsys.readouterr().out)
        assert [r["exit_code"] for r in results] == [10, 0]
        assert code == cli.EXIT_OBSTRUCTED
        write(tmp_path, "c.json", "{")
        assert cli.main(["check", "--batch", str(tmp_path)]) == cli.EXIT_INVALID

    def test_example_command(self, capsys):
        assert cli.main(["example"]) == 0
        assert parse_manifold(capsys.readouterr().out) == load_example()

    def test_missing_file_argument(self, capsys):
        assert cli.main(["check"]) == cli.EXIT_INVALID
