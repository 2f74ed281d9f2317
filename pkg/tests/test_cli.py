import io
import json
import subprocess
import sys

import pytest
from conftest import make_chain, make_diamond2, make_square

from multicomm import SpaceMap, build_chi, compute_limit, validate_morphism
from multicomm.cli import main
from multicomm.documents import (
    SCHEMA,
    diagram_to_json,
    family_to_json,
    measure_to_json,
    morphism_to_json,
    parse_diagram,
    parse_family_components,
    parse_measure,
)
from multicomm.measures import Measure

HALF = {"0": "1/2", "1": "1/2"}
DIAMOND_BAD = {
    "components": {
        "a": {"00": "1/4", "01": "1/4", "10": "1/4", "11": "1/4"},
        "b": {"00": "1/2", "11": "1/2"},
        "c": HALF,
        "d": HALF,
    }
}


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        p = tmp_path / name
        p.write_text(json.dumps(doc))
        return str(p)

    return write


class TestDocuments:
    def test_diagram_round_trip(self):
        for D in (make_square(), make_diamond2(), make_chain()):
            again = parse_diagram(diagram_to_json(D))
            assert diagram_to_json(again) == diagram_to_json(D)
            assert compute_limit(again).elements == compute_limit(D).elements

    def test_measure_round_trip_on_tuples(self):
        D = make_square()
        L = compute_limit(D)
        mu = Measure.uniform(L.space)
        assert parse_measure(measure_to_json(mu), L.space) == mu

    def test_family_round_trip(self):
        D = make_chain()
        chi = build_chi(D)
        fam = chi.family_from_vector(chi.map(Measure.uniform(chi.limit.space).vector()))
        comps = parse_family_components(family_to_json(fam), D)
        assert all(comps[i] == fam[i] for i in D.indices)

    def test_maps_completed_by_composition(self, files):
        doc = diagram_to_json(make_chain())
        del doc["maps"]["a->c"]
        code, rep = run_json("validate", files("d.json", doc))
        assert code == 0 and rep["result"]["valid"]


class TestCommands:
    def test_validate(self, files):
        code, rep = run_json("validate", files("d.json", diagram_to_json(make_square())))
        assert code == 0 and rep["schema"] == SCHEMA
        assert rep["result"]["class"] == "SINGLE_QUOTIENT"

    def test_limit(self, files):
        code, rep = run_json("limit", files("d.json", diagram_to_json(make_diamond2())))
        assert code == 0 and rep["result"]["size"] == 4
        assert all(e[0] == e[1] for e in rep["result"]["embedding"])

    def test_chi_square(self, files):
        path = files("d.json", diagram_to_json(make_square()))
        code, rep = run_json("chi", path, "--samples", "5")
        checks = rep["result"]["checks"]
        assert code == 0
        assert checks["surjective"]["verdict"] == "SURJECTIVE"
        assert checks["open"]["verdict"] == "OPEN" and checks["open"]["face_count"] == 15
        assert checks["affine"]["verdict"] == "AFFINE"

    def test_chi_diamond_not_surjective_is_exit_zero(self, files):
        code, rep = run_json("chi", files("d.json", diagram_to_json(make_diamond2())), "--check", "surjective")
        assert code == 0
        assert rep["result"]["checks"]["surjective"]["verdict"] == "NOT_SURJECTIVE"

    def test_face_budget(self, files):
        code, rep = run_json("chi", files("d.json", diagram_to_json(make_square())), "--check", "open",
                             "--face-budget", "3", "--samples", "0")
        assert code == 2 and rep["error"]["type"] == "FaceBudgetExceeded"

    def test_glue(self, files):
        D = make_diamond2()
        code, rep = run_json("glue", files("d.json", diagram_to_json(D)), files("f.json", DIAMOND_BAD))
        assert code == 0 and rep["result"]["method"] == "INFEASIBLE"
        assert "farkas" in rep["result"]["certificate"]

    def test_glue_constructive_with_transcript(self, files):
        fam = {"components": {"a": HALF, "b": HALF, "c": {"*": "1"}}}
        code, rep = run_json("glue", files("d.json", diagram_to_json(make_square())), files("f.json", fam))
        assert rep["result"]["method"] == "CONSTRUCTIVE"
        assert all(row["ok"] for row in rep["result"]["transcript"])

    def test_inconsistent_family_is_domain_error(self, files):
        fam = {"components": {"a": {"2": "1"}, "b": {"x": "1"}, "c": {"*": "1"}}}
        code, rep = run_json("glue", files("d.json", diagram_to_json(make_chain())), files("f.json", fam))
        assert code == 2 and rep["error"]["kind"] == "domain"

    def test_lift_identity(self, files):
        D = make_square()
        m = validate_morphism(D, D, {i: SpaceMap.identity(D.spaces[i]) for i in D.indices})
        L = compute_limit(D)
        chi = build_chi(D, L)
        tau0 = Measure.uniform(L.space)
        fam = chi.family_from_vector(chi.map(tau0.vector()))
        d = files("d.json", diagram_to_json(D))
        code, rep = run_json("lift", d, d, files("m.json", morphism_to_json(m)),
                             files("t.json", measure_to_json(tau0)), files("f.json", family_to_json(fam)))
        assert code == 0 and rep["result"]["feasible"]
        assert rep["result"]["checks"] == {"marginals": True, "pushforward": True}

    def test_search_count_zero(self):
        code, rep = run_json("search", "--count", "0")
        assert code == 0 and rep["result"]["instances"] == []

    def test_text_output(self, files):
        code, text = run("--report", "text", "chi", files("d.json", diagram_to_json(make_square())), "--samples", "0")
        assert code == 0 and "surjective: SURJECTIVE" in text


class TestErrors:
    def test_bad_json(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        code, rep = run_json("validate", str(p))
        assert code == 3 and rep["error"]["kind"] == "parse"

    def test_missing_file(self, tmp_path):
        code, _ = run("validate", str(tmp_path / "nope.json"))
        assert code == 3

    def test_float_weight_rejected(self, files):
        fam = {"components": {"a": {"0": 0.5, "1": 0.5}, "b": HALF, "c": {"*": "1"}}}
        code, _ = run("glue", files("d.json", diagram_to_json(make_square())), files("f.json", fam))
        assert code == 3

    def test_cycle_is_domain_error(self, files):
        doc = {"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]], "spaces": {"a": ["0"], "b": ["0"]},
               "maps": {}}
        code, rep = run_json("validate", files("d.json", doc))
        assert code == 2 and rep["error"]["type"] == "CycleDetected"

    def test_no_command(self):
        assert run()[0] == 3


class TestVerify:
    def _save(self, tmp_path, argv):
        code, text = run(*argv)
        assert code == 0
        p = tmp_path / "report.json"
        p.write_text(text)
        return p

    @pytest.mark.parametrize("diagram", [make_square, make_diamond2, make_chain])
    def test_chi_reports_replay(self, tmp_path, files, diagram):
        p = self._save(tmp_path, ["chi", files("d.json", diagram_to_json(diagram())), "--samples", "0"])
        code, rep = run_json("--verify", str(p))
        assert code == 0 and rep["verified"] and rep["checks"]

    def test_glue_replay(self, tmp_path, files):
        p = self._save(tmp_path, ["glue", files("d.json", diagram_to_json(make_diamond2())), files("f.json", DIAMOND_BAD)])
        code, rep = run_json("--verify", str(p))
        assert code == 0 and rep["verified"]

    def test_search_replay(self, tmp_path):
        p = self._save(tmp_path, ["search", "--count", "5", "--max-elements", "3", "--max-points", "2"])
        assert run("--verify", str(p))[0] == 0

    def test_tampered_witness_fails(self, tmp_path, files):
        p = self._save(tmp_path, ["chi", files("d.json", diagram_to_json(make_square())), "--check", "surjective"])
        doc = json.loads(p.read_text())
        w = doc["result"]["checks"]["surjective"]["witnesses"][0]["weights"]
        # move all mass of the first witness onto a different limit element
        w[0][0] = doc["result"]["checks"]["surjective"]["witnesses"][-1]["weights"][0][0]
        p.write_text(json.dumps(doc))
        code, rep = run_json("--verify", str(p))
        assert code == 2 and not rep["verified"]

    def test_tampered_inputs_fail_digest(self, tmp_path, files):
        p = self._save(tmp_path, ["validate", files("d.json", diagram_to_json(make_square()))])
        doc = json.loads(p.read_text())
        doc["inputs"]["diagram"]["spaces"]["a"].append("2")
        doc["inputs"]["diagram"]["maps"]["a->c"]["2"] = "*"
        p.write_text(json.dumps(doc))
        code, rep = run_json("--verify", str(p))
        assert code == 2
        assert {c["name"]: c["ok"] for c in rep["checks"]}["inputs digest"] is False

    def test_not_a_report(self, files):
        assert run("--verify", files("x.json", {"hello": 1}))[0] == 3


def test_module_entry_point(tmp_path):
    p = tmp_path / "d.json"
    p.write_text(json.dumps(diagram_to_json(make_square())))
    proc = subprocess.run([sys.executable, "-m", "multicomm", "validate", str(p)], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["valid"]
