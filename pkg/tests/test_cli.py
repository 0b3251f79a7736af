import io
import json

import pytest

from mccac import codefile
from mccac.cli import run_cli
from mccac.constructions import catalog


def run(*argv):
    buf = io.StringIO()
    rc = run_cli(list(map(str, argv)), out=buf)
    lines = [ln.split("\t", 1) for ln in buf.getvalue().splitlines()]
    return rc, buf.getvalue(), lines


def kv(lines):
    out = {}
    for k, v in lines:
        out.setdefault(k, v)
    return out


class TestBound:
    def test_example5(self):
        rc, text, lines = run("bound", "--weight", 3, "--channels", 3, "--length", 13)
        assert rc == 0
        d = kv(lines)
        assert d["bound"] == "22" and d["case"] == "L = +-1, +-5 mod 12"
        assert "value_with_constant_minus6" not in d

    def test_even_residue_reports_both(self):
        rc, _, lines = run("bound", "-w", 3, "-M", 4, "-L", 22)
        d = kv(lines)
        assert rc == 0 and d["bound"] == "66" and d["value_with_constant_minus6"] == "64"

    def test_sixty_reports_derived(self):
        _, _, lines = run("bound", "-w", 4, "-M", 4, "-L", 60)
        d = kv(lines)
        assert d["bound"] == "101" and d["derived_formula"] == "104"

    def test_restricted(self):
        _, _, lines = run("bound", "-w", 3, "-M", 3, "-L", 5, "--restricted")
        assert kv(lines)["bound"] == "7" and kv(lines)["restricted"] == "true"

    def test_usage(self):
        assert run("bound", "-w", 5, "-M", 3, "-L", 5)[0] == 2
        assert run("bound", "-w", 3, "-M", 2, "-L", 5)[0] == 2
        assert run("frobnicate")[0] == 2


class TestConstructVerify:
    def test_family_t11(self, tmp_path):
        path = tmp_path / "c.json"
        rc, _, lines = run("construct", "--channels", 4, "--length", 22, "--weight", 3, "--out", path)
        assert rc == 0 and kv(lines)["codewords"] == "64"
        rc, _, lines = run("verify", path)
        d = kv(lines)
        assert rc == 0 and d["valid"] == "true" and d["codewords"] == "64"

    def test_example5(self, tmp_path):
        path = tmp_path / "c.json"
        rc, _, lines = run("construct", "-M", 3, "-L", 13, "-w", 3, "--out", path)
        d = kv(lines)
        assert rc == 0 and d["codewords"] == "22" and d["meets_bound"] == "true" and d["case"] == "a"
        assert run("verify", path, "--method", "both")[0] == 0

    def test_four_by_ten(self):
        rc, _, lines = run("construct", "-M", 4, "-L", 10, "-w", 3)
        d = kv(lines)
        assert rc == 0 and d["codewords"] == "28" and d["bound"] == "30"
        assert d["value_with_constant_minus6"] == "28"

    def test_unavailable(self):
        assert run("construct", "-M", 4, "-L", 13, "-w", 3)[0] == 2

    def test_budget(self):
        assert run("construct", "-M", 3, "-L", 101, "-w", 3, "--node-budget", 1)[0] == 3

    def test_duplicate_pattern(self, tmp_path):
        path = tmp_path / "d.json"
        p = [[0, 0], [1, 1], [2, 2]]
        path.write_text(json.dumps({"schema_version": 1, "M": 3, "L": 5, "w": 3, "patterns": [p, p]}))
        rc, text, lines = run("verify", path)
        assert rc == 1
        conflicts = [v for k, v in lines if k == "conflict"]
        assert conflicts and "difference=" in conflicts[0]

    def test_restricted_rejects_s4(self, tmp_path):
        path = tmp_path / "e.json"
        codefile.save(catalog("example1"), path)
        assert run("verify", path)[0] == 0
        rc, _, lines = run("verify", path, "--restricted")
        assert rc == 1 and [k for k, _ in lines].count("slot_violation") == 1

    def test_validation_error(self, tmp_path):
        path = tmp_path / "w.json"
        path.write_text(json.dumps({"schema_version": 1, "M": 3, "L": 5, "w": 3, "patterns": [[[0, 0], [0, 1], [0, 2], [1, 0]]]}))
        assert run("verify", path)[0] == 1

    def test_parse_error(self, tmp_path):
        path = tmp_path / "p.json"
        path.write_text('{"schema_version": 99}')
        assert run("verify", path)[0] == 2


class TestSearch:
    def test_incumbent(self, tmp_path):
        path = tmp_path / "s.json"
        rc, _, lines = run("search", "-M", 3, "-L", 6, "-w", 3, "--no-bounds", "--out", path)
        d = kv(lines)
        assert rc == 0 and d["status"] == "lower-bound-only"
        assert run("verify", path)[0] == 0

    def test_exact(self):
        rc, _, lines = run("search", "-M", 3, "-L", 5, "-w", 3, "--exact", "--no-bounds")
        d = kv(lines)
        assert rc == 0 and d["size"] == "8" and d["proof"] == "exhaustive" and d["statement"] == "A = 8, bound 8, gap 0"

    def test_exact_budget(self):
        assert run("search", "-M", 3, "-L", 6, "-w", 3, "--exact", "--node-budget", 3, "--no-bounds")[0] == 3

    def test_too_large(self):
        assert run("search", "-M", 6, "-L", 30, "-w", 3)[0] == 2


class TestSimulate:
    def test_pass(self, tmp_path):
        path = tmp_path / "e.json"
        codefile.save(catalog("example1"), path)
        rc, _, lines = run("simulate", path, "--active", 3, "--trials", 50, "--seed", 1)
        d = kv(lines)
        assert rc == 0 and d["verdict"] == "PASS" and d["fail"] == "0"

    def test_deterministic(self, tmp_path):
        path = tmp_path / "e.json"
        codefile.save(catalog("example6"), path)
        args = ("simulate", path, "--active", 3, "--trials", 40, "--seed", 9)
        assert run(*args)[1] == run(*args)[1] == run(*args, "--jobs", 2)[1]

    def test_not_claimed(self, tmp_path):
        path = tmp_path / "e.json"
        codefile.save(catalog("example1"), path)
        rc, _, lines = run("simulate", path, "--active", 4, "--trials", 5, "--seed", 1)
        assert rc == 0 and kv(lines)["verdict"] == "NOT_CLAIMED"


class TestCatalog:
    @pytest.mark.parametrize("name,count", [("example1", 8), ("example2", 3), ("example3", 13), ("example4", 20), ("example6", 28)])
    def test_fixtures(self, name, count, tmp_path):
        path = tmp_path / "f.json"
        rc, _, lines = run("catalog", name, "--out", path)
        d = kv(lines)
        assert rc == 0 and d["codewords"] == str(count) and d["valid"] == "true"
        assert len(codefile.load(path)) == count

    def test_unknown(self):
        assert run("catalog", "example5")[0] == 2
