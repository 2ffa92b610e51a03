"""CLI: subcommands, exit codes, schema validation, determinism."""

import json

import jsonschema
import pytest

from latdev.cli import SCHEMAS, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def ncn_lattice(tmp_path):
    return write(tmp_path, "ncn.json", {
        "downsets_of": {"elements": ["c", "a", "b"],
                        "leq": [["c", "a"], ["c", "b"]]}})


@pytest.fixture
def chain4(tmp_path):
    return write(tmp_path, "chain4.json", {
        "elements": ["0", "a", "b", "1"],
        "leq": [["0", "a"], ["a", "b"], ["b", "1"]]})


@pytest.fixture
def chain4_dev(tmp_path, chain4):
    order = ["0", "a", "b", "1"]
    d = {}
    for i, x in enumerate(order):
        for j, y in enumerate(order):
            d[f"{x},{y}"] = "0" if i <= j else x
    d["b,a"] = "1"
    return write(tmp_path, "dev.json", {"d": d})


def schema_check(sub, out):
    jsonschema.validate(json.loads(out), SCHEMAS[sub])


class TestLattice:
    def test_check_non_cn_exits_1(self, capsys, ncn_lattice):
        code, out = run_cli(capsys, "lattice", "check", ncn_lattice)
        assert code == 1
        rep = json.loads(out)
        assert rep["completely_normal"] is False
        assert set(rep["completely_normal_counterexample"]) == \
            {"{c,a}", "{c,b}"}
        schema_check("lattice check", out)

    def test_check_chain_exits_0(self, capsys, chain4):
        code, out = run_cli(capsys, "lattice", "check", chain4)
        assert code == 0
        assert json.loads(out)["completely_normal"] is True
        schema_check("lattice check", out)

    def test_dot_output(self, capsys, chain4):
        code, out = run_cli(capsys, "--format", "dot",
                            "lattice", "check", chain4)
        assert code == 0 and out.startswith("digraph")
        assert '"0" -> "a"' in out

    def test_dot_prime_ideals(self, capsys, ncn_lattice):
        code, out = run_cli(capsys, "--format", "dot", "lattice", "check",
                            ncn_lattice, "--prime-ideals")
        assert code == 0 and out.startswith("digraph")

    def test_missing_file_exits_2(self, capsys, tmp_path):
        code, _ = run_cli(capsys, "lattice", "check",
                          str(tmp_path / "absent.json"))
        assert code == 2

    def test_bad_lattice_exits_2(self, capsys, tmp_path):
        p = write(tmp_path, "bad.json",
                  {"elements": ["x", "y"], "leq": []})
        code, _ = run_cli(capsys, "lattice", "check", p)
        assert code == 2


class TestDeviation:
    def test_check_reports_properties(self, capsys, chain4, chain4_dev):
        code, out = run_cli(capsys, "deviation", "check",
                            "--lattice", chain4, "--map", chain4_dev)
        assert code == 0
        rep = json.loads(out)
        assert rep["valid"] and not rep["properties"]["right_antitone"]
        schema_check("deviation check", out)

    def test_check_invalid_map(self, capsys, chain4, tmp_path):
        d = {f"{x},{y}": "0" for x in "0ab1" for y in "0ab1"}
        p = write(tmp_path, "zero.json", {"d": d})
        code, out = run_cli(capsys, "deviation", "check",
                            "--lattice", chain4, "--map", p)
        assert code == 1
        rep = json.loads(out)
        assert rep["violation"]["axiom"] == 1

    def test_search_and_enumerate(self, capsys, chain4, ncn_lattice):
        code, out = run_cli(capsys, "deviation", "search",
                            "--lattice", chain4, "--monotone")
        assert code == 0 and json.loads(out)["found"]
        schema_check("deviation search", out)
        code, out = run_cli(capsys, "deviation", "search",
                            "--lattice", ncn_lattice)
        assert code == 1 and not json.loads(out)["found"]
        code, out = run_cli(capsys, "deviation", "enumerate",
                            "--lattice", chain4, "--limit", "3")
        assert code == 0 and json.loads(out)["count"] == 3
        schema_check("deviation enumerate", out)


class TestAdjust:
    def test_adjust_restores_antitonicity(self, capsys, chain4, chain4_dev):
        code, out = run_cli(capsys, "adjust", "--lattice", chain4,
                            "--map", chain4_dev, "--order", "0,a,b,1")
        assert code == 0
        rep = json.loads(out)
        assert rep["d_prime"]["b,a"] == "b"
        assert rep["d_prime"]["b,0"] == "b"
        schema_check("adjust", out)

    def test_shadow_flag_same_result(self, capsys, chain4, chain4_dev):
        _, out1 = run_cli(capsys, "adjust", "--lattice", chain4,
                          "--map", chain4_dev, "--order", "0,a,b,1")
        _, out2 = run_cli(capsys, "adjust", "--lattice", chain4,
                          "--map", chain4_dev, "--order", "0,a,b,1",
                          "--use-shadows")
        assert json.loads(out1)["d_prime"] == json.loads(out2)["d_prime"]

    def test_bad_order_exits_2(self, capsys, chain4, chain4_dev):
        code, _ = run_cli(capsys, "adjust", "--lattice", chain4,
                          "--map", chain4_dev, "--order", "0,a")
        assert code == 2


class TestPoset:
    def test_witness_and_order_roundtrip(self, capsys, tmp_path):
        p = write(tmp_path, "v.json", {
            "elements": ["a", "b", "c"], "leq": [["a", "c"], ["b", "c"]]})
        code, out = run_cli(capsys, "poset", "witness", "--poset", p,
                            "--order", "a,b,c")
        assert code == 0
        rep = json.loads(out)
        assert rep["valid"] and rep["B"]["c"] == ["a", "b", "c"]
        schema_check("poset witness", out)
        w = write(tmp_path, "w.json", {"A": rep["A"], "B": rep["B"]})
        code, out = run_cli(capsys, "poset", "order", "--poset", p,
                            "--witness", w)
        assert code == 0
        schema_check("poset order", out)

    def test_order_invalid_witness_exits_2(self, capsys, tmp_path):
        p = write(tmp_path, "c2.json",
                  {"elements": ["0", "1"], "leq": [["0", "1"]]})
        w = write(tmp_path, "bad_w.json", {
            "A": {"0": [], "1": ["1"]}, "B": {"0": ["0"], "1": ["1"]}})
        code, _ = run_cli(capsys, "poset", "order", "--poset", p,
                          "--witness", w)
        assert code == 2

    def test_amalgam_check_and_witness(self, capsys, tmp_path):
        sq = {"elements": ["e", "p", "q", "pq"],
              "leq": [["e", "p"], ["e", "q"], ["p", "pq"], ["q", "pq"]]}
        spec = write(tmp_path, "am.json", {
            "carrier": sq,
            "index": {"elements": ["lo", "hi"], "leq": [["lo", "hi"]]},
            "family": {"lo": ["e", "p"],
                       "hi": ["e", "p", "q", "pq"]},
            "nu": {"e": "lo", "p": "lo", "q": "hi", "pq": "hi"}})
        code, out = run_cli(capsys, "poset", "amalgam", "--spec", spec)
        assert code == 0 and json.loads(out)["ok"]
        schema_check("poset amalgam", out)
        blocks = write(tmp_path, "blocks.json", {
            "lo": {"A": {"e": ["e", "p"], "p": ["p"]},
                   "B": {"e": ["e"], "p": ["e", "p"]}},
            "hi": {"A": {"e": ["e", "p", "q", "pq"], "p": ["p", "pq"],
                         "q": ["q", "pq"], "pq": ["pq"]},
                   "B": {"e": ["e"], "p": ["e", "p"], "q": ["e", "q"],
                         "pq": ["e", "p", "q", "pq"]}}})
        code, out = run_cli(capsys, "poset", "amalgam", "--spec", spec,
                            "--block-witnesses", blocks)
        assert code == 0 and json.loads(out)["witness_valid"]

    def test_amalgam_union_violation_exits_1(self, capsys, tmp_path):
        spec = write(tmp_path, "bad_am.json", {
            "carrier": {"elements": ["x", "y"], "leq": []},
            "index": {"elements": ["p"], "leq": []},
            "family": {"p": ["x"]}})
        code, out = run_cli(capsys, "poset", "amalgam", "--spec", spec)
        assert code == 1
        assert json.loads(out)["violation"]["clause"] == "union"


class TestSemilinear:
    def test_includes_true_false(self, capsys, tmp_path):
        outer = write(tmp_path, "outer.json",
                      {"dimension": 2, "cells": [["x0 > 0"]]})
        inner = write(tmp_path, "inner.json",
                      {"dimension": 2, "cells": [["x0 > 0", "x1 > 0"]]})
        code, out = run_cli(capsys, "semilinear", "includes",
                            "--outer", outer, "--inner", inner)
        assert code == 0 and json.loads(out)["includes"]
        schema_check("semilinear includes", out)
        code, out = run_cli(capsys, "semilinear", "includes",
                            "--outer", inner, "--inner", outer)
        rep = json.loads(out)
        assert code == 1 and not rep["includes"] and rep["witness"]

    def test_shadow(self, capsys, tmp_path):
        U = write(tmp_path, "u.json",
                  {"dimension": 2, "cells": [["x0 > 0", "x1 > 0"]]})
        code, out = run_cli(capsys, "semilinear", "shadow", "--set", U,
                            "--vars", "0", "--kind", "upper")
        assert code == 0
        rep = json.loads(out)
        assert rep["cells"] == [["x0 > 0"]]
        schema_check("semilinear shadow", out)

    def test_ceiling_exit_3(self, capsys, tmp_path):
        cells = [[f"x{i} = 0"] for i in range(6)]
        U = write(tmp_path, "big.json", {"dimension": 6, "cells": cells})
        T = write(tmp_path, "whole.json", {"dimension": 6, "cells": [[]]})
        code, _ = run_cli(capsys, "--cell-ceiling", "8",
                          "semilinear", "includes", "--outer", U,
                          "--inner", T)
        assert code == 3


class TestVlat:
    def test_leq(self, capsys):
        code, out = run_cli(capsys, "vlat", "leq", "--n", "2",
                            "--lhs", "|g0|", "--rhs", "|g0| \\/ |g1|")
        assert code == 0 and json.loads(out)["leq"]
        schema_check("vlat leq", out)
        code, out = run_cli(capsys, "vlat", "leq", "--n", "2",
                            "--lhs", "|g0| \\/ |g1|", "--rhs", "|g0|")
        assert code == 1 and json.loads(out)["witness"]

    def test_cevian(self, capsys):
        code, out = run_cli(capsys, "vlat", "cevian", "--n", "3",
                            "--g", "g0", "--h", "g1", "--k", "g2")
        assert code == 0 and json.loads(out)["cevian"]
        schema_check("vlat cevian", out)

    def test_noiso_probe_anchor(self, capsys):
        code, out = run_cli(capsys, "vlat", "noiso-probe",
                            "--k", "3", "--m", "1", "--n", "2")
        assert code == 0
        rep = json.loads(out)
        assert rep["reproduced"]
        assert rep["primary"]["anchor"] == ["1/2", "1"]
        schema_check("vlat noiso-probe", out)

    def test_noiso_probe_guard_exit_2(self, capsys):
        code, _ = run_cli(capsys, "vlat", "noiso-probe",
                          "--k", "1", "--m", "1", "--n", "1")
        assert code == 2

    def test_pscom_probe_seeded(self, capsys):
        code, out = run_cli(capsys, "--seed", "5", "vlat", "pscom-probe",
                            "--n", "3", "--alpha", "1", "--c", "1/2",
                            "--count", "6")
        assert code == 0
        rep = json.loads(out)
        assert rep["counterexample_count"] == 0 and rep["probes"] == 6
        schema_check("vlat pscom-probe", out)


class TestInfrastructure:
    def test_byte_identical_reports(self, capsys, ncn_lattice):
        _, out1 = run_cli(capsys, "lattice", "check", ncn_lattice)
        _, out2 = run_cli(capsys, "lattice", "check", ncn_lattice)
        assert out1 == out2

    def test_seeded_probe_deterministic(self, capsys):
        args = ("--seed", "9", "vlat", "pscom-probe", "--n", "2",
                "--alpha", "1", "--count", "4")
        _, out1 = run_cli(capsys, *args)
        _, out2 = run_cli(capsys, *args)
        assert out1 == out2

    def test_output_file(self, capsys, tmp_path, chain4):
        target = tmp_path / "report.json"
        code = main(["--output", str(target), "lattice", "check", chain4])
        assert code == 0 and json.loads(target.read_text())

    def test_schema_flag(self, capsys):
        code, out = run_cli(capsys, "--schema", "vlat", "noiso-probe",
                            "--k", "3", "--m", "1", "--n", "2")
        assert code == 0
        schema = json.loads(out)
        assert schema["type"] == "object"

    def test_text_format(self, capsys, chain4):
        code, out = run_cli(capsys, "--format", "text",
                            "lattice", "check", chain4)
        assert code == 0 and "completely_normal: true" in out

    def test_every_subcommand_has_schema(self):
        from latdev.cli import _HANDLERS
        assert set(SCHEMAS) == set(_HANDLERS)
