"""Report documents: structured results plus the condition map (1_X)..(6_X).

Every command emits one JSON-compatible document.  Numbers are rendered as
decimal strings ("17", "3/2") and infinity as "inf", so documents are
byte-identical for identical (input, seed, samples).  The condition map
records, for each of the six family conditions, one of VERIFIED / REFUTED /
IMPLIED / UNKNOWN / N/A together with a provenance note, and must respect the
proven implication graph

    strict valuation (2_X)  =>  weak valuation (3_X)  <=>  closure (4_X),
    (4_X) => radical (5_X),     (4_X) => constancy (1_X),
    (1_X) <=> critical-locus (6_X),   (6_X) => (5_X).

``validate_condition_map`` checks exactly these constraints and is run on
every emitted report; the acceptance suite re-runs it over all fixtures.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .errors import InternalConsistencyError
from .invariants import FamilyVerdict, MilnorReport
from .newton import CERTIFIED, Certificate, KIND_NEWTON, KIND_WEIGHTED, NondegeneracyResult
from .arcs import ArcTestReport, REFUTED as ARC_REFUTED
from .standard_basis import is_finite

VERIFIED = "VERIFIED"
REFUTED = "REFUTED"
IMPLIED = "IMPLIED"
UNKNOWN = "UNKNOWN"
NA = "N/A"

CONDITIONS = ("1_X", "2_X", "3_X", "4_X", "5_X", "6_X")

#: (A, B) meaning: condition A true forces condition B true.
IMPLICATIONS = (
    ("2_X", "3_X"),
    ("3_X", "4_X"),
    ("4_X", "3_X"),
    ("4_X", "5_X"),
    ("1_X", "6_X"),
    ("6_X", "1_X"),
    ("6_X", "5_X"),
    ("4_X", "1_X"),
)

MINOR_SIGN_NOTE = (
    "minor sign convention: rows in the given map order, ascending column "
    "subsets; generator signs may differ from other sources but the ideal is "
    "identical and every downstream use is sign-insensitive"
)


def value_str(v) -> str:
    """Render integers, rationals and infinity as decimal strings."""
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if not is_finite(v):
        return "inf"
    if isinstance(v, Fraction):
        return str(v)
    return str(int(v))


def _status(status: str, provenance: str) -> dict:
    return {"status": status, "provenance": provenance}


def empty_condition_map(reason: str = "not in scope for this command") -> dict:
    return {c: _status(NA, reason) for c in CONDITIONS}


def unknown_condition_map(reason: str) -> dict:
    return {c: _status(UNKNOWN, reason) for c in CONDITIONS}


def condition_map_from_family(verdict: FamilyVerdict) -> dict:
    cmap = unknown_condition_map("not decided by specialization")
    if verdict.constant:
        prov = f"specialization at {len(verdict.samples)} parameters agrees with mu at t=0"
        cmap["1_X"] = _status(VERIFIED, prov + " (generically certified)")
        cmap["6_X"] = _status(VERIFIED, "equivalent to constancy")
        cmap["5_X"] = _status(IMPLIED, "follows from the critical-locus condition")
    else:
        prov = (
            f"mu drops from {value_str(verdict.mu0)} to {value_str(verdict.mu_gen)} "
            "at a generic parameter"
        )
        cmap["1_X"] = _status(REFUTED, prov)
        cmap["6_X"] = _status(REFUTED, "equivalent to constancy")
    return cmap


def condition_map_from_certificate(cert: Certificate) -> dict:
    cmap = unknown_condition_map("no certificate applies")
    if cert.verdict != CERTIFIED:
        return cmap
    if cert.kind == KIND_NEWTON:
        cmap["4_X"] = _status(VERIFIED, "newton-inclusion certificate")
        cmap["3_X"] = _status(IMPLIED, "equivalent to the closure condition")
        cmap["1_X"] = _status(IMPLIED, "closure condition forces constancy")
        cmap["6_X"] = _status(IMPLIED, "equivalent to constancy")
        cmap["5_X"] = _status(IMPLIED, "closure lies inside the radical")
    elif cert.kind == KIND_WEIGHTED:
        cmap["1_X"] = _status(VERIFIED, "weighted-nonnegative certificate")
        cmap["6_X"] = _status(IMPLIED, "equivalent to constancy")
        cmap["5_X"] = _status(IMPLIED, "follows from the critical-locus condition")
    return cmap


def condition_map_from_arcs(report: ArcTestReport) -> dict:
    cmap = unknown_condition_map("no refutation found among the provided arcs")
    if report.verdict_strict == ARC_REFUTED:
        cmap["2_X"] = _status(REFUTED, "an arc achieves nu(dF/dt) <= nu(J_X)")
    if report.verdict_weak == ARC_REFUTED:
        cmap["3_X"] = _status(REFUTED, "an arc achieves nu(dF/dt) < nu(J_X)")
        cmap["4_X"] = _status(REFUTED, "equivalent to the weak valuation condition")
    return cmap


_TRUE = (VERIFIED, IMPLIED)
_FALSE = (REFUTED,)


def validate_condition_map(cmap: dict) -> list[str]:
    """Violations of the implication graph; empty list means consistent."""
    problems = []
    for c in CONDITIONS:
        if c not in cmap:
            problems.append(f"missing condition {c}")
        elif cmap[c]["status"] not in (VERIFIED, REFUTED, IMPLIED, UNKNOWN, NA):
            problems.append(f"bad status for {c}: {cmap[c]['status']}")
    for a, b in IMPLICATIONS:
        if a in cmap and b in cmap:
            if cmap[a]["status"] in _TRUE and cmap[b]["status"] in _FALSE:
                problems.append(f"{a} is asserted but {b} is refuted")
    return problems


def _checked(cmap: dict) -> dict:
    problems = validate_condition_map(cmap)
    if problems:
        raise InternalConsistencyError("inconsistent condition map: " + "; ".join(problems))
    return cmap


def base_document(command: str, source: str, *, seed=None, samples=None) -> dict:
    doc = {
        "command": command,
        "inputs": {"sha256": hashlib.sha256(source.encode()).hexdigest()},
        "notes": [],
        "timings": {},
    }
    if seed is not None:
        doc["seed"] = value_str(seed)
    if samples is not None:
        doc["samples"] = value_str(samples)
    return doc


def milnor_payload(rep: MilnorReport) -> dict:
    return {
        "mu_rel": value_str(rep.mu_rel),
        "mu_X": value_str(rep.mu_X),
        "mu_section": value_str(rep.mu_section),
    }


def family_payload(verdict: FamilyVerdict) -> dict:
    return {
        "mu0": value_str(verdict.mu0),
        "mu_generic": value_str(verdict.mu_gen),
        "verdict": verdict.label,
        "constant": verdict.constant,
        "samples": [
            {"t": value_str(s.t), "mu": value_str(s.mu)} for s in verdict.samples
        ],
        "warnings": list(verdict.warnings),
    }


def certificate_payload(cert: Certificate) -> dict:
    return {
        "kind": cert.kind,
        "verdict": cert.verdict,
        "note": cert.note,
        "checks": [
            {"label": c.label, "passed": c.passed, "detail": c.detail} for c in cert.checks
        ],
    }


def arc_payload(report: ArcTestReport) -> dict:
    return {
        "condition_2X": report.verdict_strict,
        "condition_3X": report.verdict_weak,
        "condition_4X": report.verdict_closure,
        "arcs": [
            {
                "coordinates": [str(c) for c in r.arc.coords],
                "nu_dFdt": value_str(r.nu_dFdt),
                "per_generator": [value_str(v) for v in r.per_generator],
                "nu_JX": value_str(r.nu_JX),
                "refutes_2X": r.refutes_strict,
                "refutes_3X": r.refutes_weak,
                "degenerate": r.degenerate,
            }
            for r in report.reports
        ],
        "rejected": [
            {"coordinates": [str(c) for c in arc.coords], "reason": reason}
            for arc, reason in report.rejected
        ],
    }


def nondegeneracy_payload(result: NondegeneracyResult) -> dict:
    out = {
        "applicable": result.applicable,
        "nondegenerate": result.nondegenerate,
        "ideal_colength": value_str(result.ideal_colength),
        "faces": [],
    }
    if result.polyhedron is not None:
        out["vertices"] = [list(v) for v in result.polyhedron.vertices]
        out["facets"] = [
            {"normal": list(f.normal), "offset": value_str(f.offset)}
            for f in result.polyhedron.facets
        ]
    for check in result.checks:
        out["faces"].append(
            {
                "witness": list(check.face.witness),
                "points": [list(p) for p in check.face.points],
                "min_value": value_str(check.face.value),
                "face_system": [str(p) for p in check.restricted],
                "unit_ideal": check.unit_ideal,
            }
        )
    return out


def attach_conditions(doc: dict, cmap: dict) -> dict:
    doc["conditions"] = _checked(cmap)
    return doc


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_text(doc: dict) -> str:
    lines = [f"command: {doc['command']}"]
    for key in ("seed", "samples"):
        if key in doc:
            lines.append(f"{key}: {doc[key]}")
    results = doc.get("results", {})
    lines.append("results:")
    lines.extend(_text_block(results, "  "))
    if "conditions" in doc:
        lines.append("conditions:")
        for c in CONDITIONS:
            entry = doc["conditions"][c]
            lines.append(f"  ({c}) {entry['status']}: {entry['provenance']}")
    for note in doc.get("notes", []):
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def _text_block(value, indent: str) -> list[str]:
    lines = []
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}{k}:")
                lines.extend(_text_block(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {v}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)):
                lines.append(f"{indent}-")
                lines.extend(_text_block(item, indent + "  "))
            else:
                lines.append(f"{indent}- {item}")
    else:
        lines.append(f"{indent}{value}")
    return lines
