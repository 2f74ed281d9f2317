"""Report documents for the command line, and their replay verification.

A report embeds its input documents, so :func:`verify_report` can rebuild
every object and re-check each witness and certificate by substitution
without trusting anything the report claims.
"""

import hashlib
import math
import time

from .chi import (
    build_chi,
    check_chi_affine,
    check_chi_open,
    check_chi_surjective,
    chi_apply,
    preimage_system,
)
from .diagram import compute_limit, limit_embedding
from .documents import (
    SCHEMA,
    diagram_to_json,
    dumps,
    measure_to_json,
    parse_diagram,
    parse_family_components,
    parse_limit_measure,
    parse_measure,
    parse_morphism,
    vector_from_json,
    vector_to_json,
)
from .errors import ParseError
from .glue import Method, classify_diagram, glue_family, induced_limit_map, lift_diagram_morphism, lift_system
from .measures import make_family, pushforward
from .polytope.convert import hull
from .polytope.openness import DEFAULT_FACE_BUDGET, OpennessVerdict
from .polytope.sets import FeasibilityCertificate
from .search import run_search, summarize

CHECKS = ("surjective", "open", "affine")


def digest(inputs):
    return hashlib.sha256(dumps(inputs).encode()).hexdigest()


def _envelope(command, inputs, result, started=None):
    doc = {"schema": SCHEMA, "command": command, "inputs": inputs, "inputs_digest": digest(inputs), "result": result}
    if started is not None:
        doc["timing_seconds"] = round(time.perf_counter() - started, 3)
    return doc


def _advisory_float(x):
    """Floats only appear as advisory strings, never as data."""
    return "inf" if math.isinf(x) else f"{x:.6g}"


# builders

def validate_report(diagram_doc):
    started = time.perf_counter()
    diagram = parse_diagram(diagram_doc)
    result = {
        "valid": True,
        "elements": len(diagram.indices),
        "points": sum(len(diagram.spaces[i]) for i in diagram.indices),
        "class": classify_diagram(diagram.poset).value,
    }
    return _envelope("validate", {"diagram": diagram_doc}, result, started)


def limit_report(diagram_doc):
    started = time.perf_counter()
    diagram = parse_diagram(diagram_doc)
    limit = compute_limit(diagram)
    h = limit_embedding(limit)
    result = {
        "size": len(limit),
        "elements": [list(e) for e in limit.elements],
        "maximal_indices": list(diagram.poset.maximal),
        "embedding": [list(h(e)) for e in limit.elements],
    }
    return _envelope("limit", {"diagram": diagram_doc}, result, started)


def _surjective_json(verdict):
    return {
        "verdict": verdict.label,
        "vertices": [vector_to_json(v) for v in verdict.vertices],
        "witnesses": [measure_to_json(w) if w is not None else None for w in verdict.witnesses],
        "unreached": [{"vertex": vector_to_json(v), "certificate": c.to_json()} for v, c in verdict.unreached],
    }


def chi_report(diagram_doc, checks=CHECKS, face_budget=DEFAULT_FACE_BUDGET, samples=100, radius=1e-3):
    started = time.perf_counter()
    diagram = parse_diagram(diagram_doc)
    chi = build_chi(diagram)
    out = {}
    surj = None
    if "surjective" in checks or "open" in checks:
        surj = check_chi_surjective(chi)
    if "surjective" in checks:
        out["surjective"] = _surjective_json(surj)
    if "open" in checks:
        rep = check_chi_open(chi, surj, face_budget=face_budget, sample_count=samples, radius=radius)
        doc = rep.exact.to_json()
        doc["onto"] = rep.onto
        doc["codomain_vertices"] = [vector_to_json(v) for v in rep.exact.codomain_vertices]
        if rep.sampled is not None:
            doc["sampled"] = {
                "modulus": _advisory_float(rep.sampled.modulus),
                "radius": _advisory_float(rep.sampled.radius),
                "samples": rep.sampled.samples,
                "directions": rep.sampled.directions,
            }
        out["open"] = doc
    if "affine" in checks:
        out["affine"] = {
            "verdict": "AFFINE" if check_chi_affine(chi) else "NOT_AFFINE",
            "rows": [[i, p] for i, p in chi.rows],
            "matrix": [vector_to_json(r) for r in chi.matrix],
            "offset": vector_to_json(chi.map.offset),
        }
    inputs = {"diagram": diagram_doc, "checks": list(checks)}
    return _envelope("chi", inputs, {"limit_size": len(chi.limit), "checks": out}, started)


def _transcript(diagram, chi, measure, family):
    image = chi_apply(chi, measure)
    lines = []
    for i in diagram.indices:
        for p in diagram.spaces[i].points:
            lines.append(
                {
                    "index": i,
                    "point": p,
                    "expected": str(family[i](p)),
                    "actual": str(image[i](p)),
                    "ok": family[i](p) == image[i](p),
                }
            )
    return lines


def glue_report(diagram_doc, family_doc):
    started = time.perf_counter()
    diagram = parse_diagram(diagram_doc)
    family = make_family(diagram, parse_family_components(family_doc, diagram))
    res = glue_family(diagram, family)
    result = {
        "method": res.method.value,
        "class": res.diagram_class.value,
        "order": list(res.order),
        "measure": measure_to_json(res.measure) if res.measure is not None else None,
        "certificate": res.certificate.to_json() if res.certificate is not None else None,
    }
    if res.measure is not None:
        result["transcript"] = _transcript(diagram, build_chi(diagram), res.measure, family)
    inputs = {"diagram": diagram_doc, "family": family_doc}
    return _envelope("glue", inputs, result, started)


def lift_report(source_doc, target_doc, morphism_doc, tau0_doc, family_doc):
    started = time.perf_counter()
    source, target = parse_diagram(source_doc), parse_diagram(target_doc)
    morphism = parse_morphism(morphism_doc, source, target)
    tau0 = parse_limit_measure(tau0_doc, target)
    family = make_family(source, parse_family_components(family_doc, source))
    res = lift_diagram_morphism(morphism, tau0, family)
    result = {
        "feasible": res.feasible,
        "measure": measure_to_json(res.measure) if res.measure is not None else None,
        "certificate": res.certificate.to_json(),
    }
    if res.feasible:
        chi = build_chi(source)
        induced = induced_limit_map(morphism)
        result["checks"] = {
            "marginals": chi_apply(chi, res.measure) == family,
            "pushforward": pushforward(induced, res.measure) == tau0,
        }
    inputs = {
        "source": source_doc,
        "target": target_doc,
        "morphism": morphism_doc,
        "tau0": tau0_doc,
        "family": family_doc,
    }
    return _envelope("lift", inputs, result, started)


def search_report(max_elements, max_points, seed, count, face_budget=DEFAULT_FACE_BUDGET):
    results = run_search(max_elements, max_points, seed, count, face_budget) if count > 0 else []
    table, smallest = summarize(results)
    result = {
        "instances": [
            {
                "index": r.index,
                "class": r.diagram_class,
                "limit_size": r.limit_size,
                "total_points": r.total_points,
                "surjective": r.surjective,
                "openness": r.openness,
            }
            for r in results
        ],
        "summary": [
            {"class": k[0], "verdict": k[1], "count": n} for k, n in sorted(table.items())
        ],
        "minimal_not_surjective": None
        if smallest is None
        else {
            "index": smallest.index,
            "verdict": smallest.surjective,
            "scope": "instance-level",
            "diagram": diagram_to_json(smallest.diagram),
        },
    }
    inputs = {
        "max_elements": max_elements,
        "max_points": max_points,
        "seed": seed,
        "count": count,
        "face_budget": face_budget,
    }
    return _envelope("search", inputs, result)


# replay

def _check(checks, name, ok):
    checks.append({"name": name, "ok": bool(ok)})


def _verify_surjective(chi, doc, checks):
    vertices = [vector_from_json(v) for v in doc["vertices"]]
    codomain = chi.codomain
    _check(checks, "vertices lie in lim P(D)", all(codomain.contains(v) for v in vertices))
    unreached = {vector_from_json(u["vertex"]): u for u in doc["unreached"]}
    for v, w in zip(vertices, doc["witnesses"]):
        if w is None:
            entry = unreached.get(v)
            cert = FeasibilityCertificate.from_json(entry["certificate"]) if entry else None
            ok = cert is not None and not cert.feasible and cert.verify(preimage_system(chi, v))
            _check(checks, f"vertex {vector_to_json(v)} has a Farkas certificate", ok)
        else:
            tau = parse_measure(w, chi.limit.space)
            ok = tuple(chi.map(tau.vector())) == v
            _check(checks, f"witness maps to vertex {vector_to_json(v)}", ok)
    label = "SURJECTIVE" if not unreached else "NOT_SURJECTIVE"
    _check(checks, "surjectivity verdict matches certificates", doc["verdict"] == label)


def _verify_open(chi, doc, checks):
    domain = chi.domain_vertices()
    cod = [vector_from_json(v) for v in doc["codomain_vertices"]]
    verdict = OpennessVerdict.from_json(doc, domain.vertices, cod)
    _check(checks, f"openness certificates ({doc['verdict']}, {len(verdict.faces)} faces)", verdict.verify(chi.map, hull(domain)))
    if verdict.open:
        faces = {c.face for c in verdict.faces}
        _check(checks, "every face of the simplex is certified", len(faces) == 2 ** len(chi.limit) - 1)


def verify_report(report):
    """Re-verify a report; returns a list of ``{"name", "ok"}`` checks."""
    if not isinstance(report, dict) or report.get("schema") != SCHEMA:
        raise ParseError(f"not a {SCHEMA} document")
    try:
        command, inputs, result = report["command"], report["inputs"], report["result"]
    except KeyError as exc:
        raise ParseError(f"report lacks field {exc}") from None
    checks = []
    _check(checks, "inputs digest", report.get("inputs_digest") == digest(inputs))
    if command == "validate":
        diagram = parse_diagram(inputs["diagram"])
        _check(checks, "diagram validates", diagram is not None and result.get("valid"))
    elif command == "limit":
        diagram = parse_diagram(inputs["diagram"])
        limit = compute_limit(diagram)
        _check(checks, "limit elements", [list(e) for e in limit.elements] == result["elements"])
    elif command == "chi":
        diagram = parse_diagram(inputs["diagram"])
        chi = build_chi(diagram)
        found = result["checks"]
        if "surjective" in found:
            _verify_surjective(chi, found["surjective"], checks)
        if "open" in found:
            _verify_open(chi, found["open"], checks)
        if "affine" in found:
            doc = found["affine"]
            same = [vector_from_json(r) for r in doc["matrix"]] == [tuple(r) for r in chi.matrix]
            _check(checks, "matrix matches the marginalization map", same)
            _check(checks, "affine verdict", (doc["verdict"] == "AFFINE") == check_chi_affine(chi))
    elif command == "glue":
        diagram = parse_diagram(inputs["diagram"])
        family = make_family(diagram, parse_family_components(inputs["family"], diagram))
        chi = build_chi(diagram)
        if result["measure"] is not None:
            tau = parse_measure(result["measure"], chi.limit.space)
            _check(checks, "chi(tau) equals the family", chi_apply(chi, tau) == family)
            _check(checks, "method tag", result["method"] in (Method.CONSTRUCTIVE.value, Method.LP.value))
        else:
            cert = FeasibilityCertificate.from_json(result["certificate"])
            ok = not cert.feasible and cert.verify(preimage_system(chi, family.vector()))
            _check(checks, "Farkas certificate", ok)
            _check(checks, "method tag", result["method"] == Method.INFEASIBLE.value)
    elif command == "lift":
        source, target = parse_diagram(inputs["source"]), parse_diagram(inputs["target"])
        morphism = parse_morphism(inputs["morphism"], source, target)
        tau0 = parse_limit_measure(inputs["tau0"], target)
        family = make_family(source, parse_family_components(inputs["family"], source))
        chi = build_chi(source)
        induced = induced_limit_map(morphism)
        cert = FeasibilityCertificate.from_json(result["certificate"])
        system = lift_system(chi, induced, family, tau0)
        _check(checks, "certificate", cert.verify(system))
        if result["measure"] is not None:
            tau = parse_measure(result["measure"], chi.limit.space)
            _check(checks, "chi(tau) equals the family", chi_apply(chi, tau) == family)
            _check(checks, "pushforward of tau equals tau0", pushforward(induced, tau) == tau0)
    elif command == "search":
        again = search_report(
            inputs["max_elements"], inputs["max_points"], inputs["seed"], inputs["count"], inputs["face_budget"]
        )
        _check(checks, "search reproduces bit for bit", dumps(again["result"]) == dumps(result))
    else:
        raise ParseError(f"unknown report command {command!r}")
    return checks

