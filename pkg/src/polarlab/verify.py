"""End-to-end verification report for one value of n.

Every check appends a record ``{"claim", "ok", "detail", "witness"}`` so a
failure names the claim that did not reproduce and a smallest witness.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter

from polarlab import constructions as cons
from polarlab import gf2core, projgeom
from polarlab.canon import canonical_form
from polarlab.constructions import ConstructionId
from polarlab.graphcore import SchemeError, SrgError, complement_params, srg_params, verify_scheme

SCHEMA = 1


def orthogonal_group_order(n: int) -> int:
    """``|O+(2n,2)| = 2 q^{n(n-1)} (q^n - 1) prod_{i<n} (q^{2i} - 1)`` at q = 2."""
    out = 2 * 2 ** (n * (n - 1)) * (2**n - 1)
    for i in range(1, n):
        out *= 2 ** (2 * i) - 1
    return out


def generator_count(n: int) -> int:
    """Generators of Q+(2n-1,2): ``prod_{i<n} (2^i + 1)``."""
    out = 1
    for i in range(n):
        out *= 2**i + 1
    return out


class _Checks:
    def __init__(self):
        self.records: list[dict] = []

    def add(self, claim: str, ok: bool, detail: str, witness=None) -> bool:
        self.records.append({"claim": claim, "ok": bool(ok), "detail": detail, "witness": witness})
        return ok

    def equal(self, claim: str, what: str, observed, expected) -> bool:
        ok = observed == expected
        return self.add(claim, ok, f"{what}: observed {observed}, expected {expected}", None if ok else observed)


def _count_checks(ck: _Checks) -> dict:
    q = projgeom.hyperbolic_form(3)
    gens = projgeom.generators(q)
    latin, greek = projgeom.split_families(gens)
    orbits = Counter(projgeom.conic_orbit(projgeom.SymMatrix3(p)) for p in gf2core.all_points(6))
    sec = projgeom.secant_variety()
    lines = projgeom.lines_pg3()
    counts = {
        "quadric_points": [len(projgeom.quadric_points(q)), 35],
        "generators": [len(gens), 30],
        "latin_planes": [len(latin), 15],
        "greek_planes": [len(greek), 15],
        "secant_variety_points": [len(sec), 35],
        "points_off_secant_variety": [63 - len(sec), 28],
        "orbit_sizes": [[orbits[o] for o in projgeom.ConicOrbit], [7, 7, 21, 28]],
        "antiflags_pg22": [len(cons.antiflags(3)), 28],
        "lines_pg32": [len(lines), 35],
        "lines_off_fixed_plane": [len(cons.klein_vertices("greek")), 28],
        "lines_missing_fixed_point": [len(cons.klein_vertices("latin")), 28],
        "nonsingular_conics": [len(projgeom.nonsingular_conics()), 28],
    }
    for name, (obs, exp) in counts.items():
        ck.equal("counts", name, obs, exp)
    return {k: {"observed": v[0], "expected": v[1]} for k, v in counts.items()}


def _digest(cert: bytes) -> str:
    return hashlib.sha256(cert).hexdigest()[:16]


def _build_records(ck: _Checks, n: int, ids, expected_params):
    records = []
    canon = {}
    graphs = {}
    for cid in ids:
        g = cons.build(cid, n)
        graphs[cid] = g
        rec = {
            "construction": cid.value,
            "ambient": cons.ambient(cid, n),
            "vertex_set": cons.VERTEX_SETS[cid],
            "vertex_count": g.order,
        }
        exp = expected_params[cid]
        try:
            p = srg_params(g)
            rec["srg"] = list(p.astuple())
            ck.equal("parameters", f"srg parameters of {cid.value}", list(p.astuple()), list(exp.astuple()))
        except SrgError as e:
            rec["srg"] = None
            rec["srg_failure"] = str(e)
            ck.add("parameters", False, f"{cid.value} is not strongly regular: {e}", list(e.witness))
        res = canonical_form(g)
        canon[cid] = res
        rec["certificate_sha256"] = _digest(res.certificate)
        rec["automorphism_order"] = res.group_order
        records.append(rec)
    classes: dict[bytes, int] = {}
    for rec, cid in zip(records, ids):
        rec["iso_class"] = classes.setdefault(canon[cid].certificate, len(classes))
    matrix = {
        a.value: {b.value: canon[a].certificate == canon[b].certificate for b in ids} for a in ids
    }
    return records, matrix, canon, graphs


def _scheme_block(ck: _Checks, n: int, expected_valencies=None) -> dict:
    s = cons.build_antiflag_scheme(n)
    out = {"order": s.order, "valencies": list(s.valencies())}
    try:
        p = verify_scheme(s)
        out["axioms"] = True
        out["intersection_numbers"] = p.tolist()
        ck.add("scheme", True, f"antiflag relations A0..A4 form an association scheme at n={n}")
    except SchemeError as e:
        out["axioms"] = False
        out["failure"] = str(e)
        ck.add("scheme", False, f"scheme axiom {e.axiom} fails at n={n}: {e}", list(e.witness))
    if expected_valencies is not None:
        ck.equal("scheme", f"valencies at n={n}", list(s.valencies()), expected_valencies)
    flags = cons.antiflags(n)
    lit = [0] * 5
    union = 0
    for f in flags[1:]:
        rels = cons.literal_relations(flags[0], f)
        for r in rels:
            lit[r] += 1
        union += bool(rels & {2, 3, 4})
    out["literal_valencies"] = lit[1:]
    out["literal_sum_degree_A2_A3_A4"] = sum(lit[2:])
    out["literal_union_degree_A2_A3_A4"] = union
    out["corrected_degree_A2_A3_A4"] = sum(s.valencies()[1:])
    ck.equal("scheme", f"degree of A2+A3+A4 at n={n}", out["corrected_degree_A2_A3_A4"], cons.no_plus_params(n).k)
    return out


def _params_block(ck: _Checks) -> dict:
    out = {}
    for n in (2, 3, 4):
        hp = cons.hole_params(n, 2)
        np_ = cons.no_plus_params(n)
        ck.equal("parameters", f"complement of hole parameters at n={n}", complement_params(hp), np_)
        out[str(n)] = {"no_plus": list(np_.astuple()), "hole": list(hp.astuple())}
    return out


def _hole_invariance(ck: _Checks, reference: bytes) -> dict:
    q = projgeom.hyperbolic_form(3)
    latin, greek = projgeom.split_families(projgeom.generators(q))
    fam = {g: "latin" for g in latin} | {g: "greek" for g in greek}
    bad = None
    checked = 0
    for gen in projgeom.generators(q):
        checked += 1
        g = cons.build_hole(3, complement_graph=True, generator=gen)
        if canonical_form(g).certificate != reference:
            bad = [gen.label(), fam[gen]]
            break
    ck.add("equivalence", bad is None, f"hole complement independent of the generator ({checked} checked)", bad)
    return {"generators_checked": checked, "ok": bad is None}


def _secant_plane(ck: _Checks) -> dict:
    closed = projgeom.o2_is_plane()
    ck.add("secant-plane", closed, "the seven O2 points form a plane")
    forms = projgeom.quadrics_meeting_secant_in_plane()
    o2 = [p for p in gf2core.all_points(6) if projgeom.conic_orbit(projgeom.SymMatrix3(p)) == projgeom.ConicOrbit.O2]
    k3 = projgeom.hyperbolic_form(3)
    coord_meet = [p for p in projgeom.secant_variety() if projgeom.eval_form(k3, p) == 0]
    return {
        "o2_points": [gf2core.fmt(p, 6) for p in o2],
        "o2_is_plane": closed,
        "hyperbolic_quadrics_meeting_secant_variety_in_o2": [str(f) for f in forms],
        "coordinate_klein_quadric_meets_secant_variety_in": len(coord_meet),
    }


def _klein_block(ck: _Checks) -> dict:
    table = projgeom.klein_dictionary()
    for name, rec in table.items():
        ck.add("klein-dictionary", rec["ok"], f"{name} ({rec['checked']} configurations)", rec["witness"])
    split = Counter(cons.klein_degree_split("greek"))
    ck.equal("klein-dictionary", "greek degree split (skew, meet on plane)", sorted(split), [(12, 3)])
    return {"rows": table, "greek_degree_split": {f"{a}+{b}": c for (a, b), c in sorted(split.items())}}


def verify_all(n: int = 3) -> dict:
    """Run every check available at ``n`` and return the report dictionary."""
    if n not in (3, 4):
        raise ValueError(f"verify-all supports n=3 or n=4, got {n}")
    ck = _Checks()
    report: dict = {"schema": SCHEMA, "n": n}
    report["parameter_formulas"] = _params_block(ck)
    if n == 3:
        ids = (*cons.EQUIVALENT_28, ConstructionId.HOLE)
    else:
        ids = (ConstructionId.NO_PLUS, ConstructionId.HOLE_COMPLEMENT, ConstructionId.ANTIFLAG, ConstructionId.HOLE)
    expected = {cid: cons.no_plus_params(n) for cid in ids}
    expected[ConstructionId.HOLE] = cons.hole_params(n, 2)
    records, matrix, canon, _ = _build_records(ck, n, ids, expected)
    report["constructions"] = records
    report["isomorphism_matrix"] = matrix
    nop = canon[ConstructionId.NO_PLUS].certificate
    hole_c = canon[ConstructionId.HOLE_COMPLEMENT].certificate
    anti = canon[ConstructionId.ANTIFLAG].certificate
    ck.add("equivalence", anti == nop, f"antiflag graph isomorphic to NO+({2 * n},2)")
    if n == 3:
        for cid in cons.EQUIVALENT_28:
            ck.add("equivalence", canon[cid].certificate == nop, f"{cid.value} isomorphic to no_plus",
                   None if canon[cid].certificate == nop else cid.value)
        report["counts"] = _count_checks(ck)
        report["klein_dictionary"] = _klein_block(ck)
        report["scheme"] = _scheme_block(ck, 3, [12, 6, 6, 3])
        report["hole_generator_invariance"] = _hole_invariance(ck, hole_c)
        report["secant_plane"] = _secant_plane(ck)
        aut = canon[ConstructionId.NO_PLUS].group_order
        ck.equal("automorphism-order", "order of Aut(NO+(6,2))", aut, 40320)
        ck.equal("automorphism-order", "order of O+(6,2) by formula", orthogonal_group_order(3), 40320)
        report["automorphism_order"] = {"no_plus": aut, "orthogonal_group_formula": orthogonal_group_order(3)}
    else:
        srg = {rec["construction"]: rec["srg"] for rec in records}
        ck.equal("hole-remark", "srg parameters of hole complement vs no_plus",
                 srg["hole_complement"], srg["no_plus"])
        ck.add("hole-remark", hole_c != nop, "hole complement is NOT isomorphic to NO+(8,2) at n=4",
               None if hole_c != nop else "certificates equal")
        report["scheme"] = _scheme_block(ck, 4)
        o = orthogonal_group_order(4)
        stab = o // generator_count(4)
        aut_np = canon[ConstructionId.NO_PLUS].group_order
        aut_hc = canon[ConstructionId.HOLE_COMPLEMENT].group_order
        ck.equal("automorphism-order", "order of Aut(NO+(8,2)) vs |O+(8,2)|", aut_np, o)
        ck.equal("hole-remark", "order of Aut(hole complement) vs generator stabilizer", aut_hc, stab)
        report["automorphism_order"] = {
            "no_plus": aut_np,
            "hole_complement": aut_hc,
            "orthogonal_group_formula": o,
            "generator_stabilizer": stab,
        }
    report["checks"] = ck.records
    report["ok"] = all(r["ok"] for r in ck.records)
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def table_lines(report: dict) -> list[str]:
    """Human-readable summary mirroring the table of constructions."""
    rows = [f"{'construction':<17} {'ambient':<12} {'v':>4}  {'srg':<18} {'class':>5}  vertex set"]
    for rec in report["constructions"]:
        srg = "srg(" + ",".join(map(str, rec["srg"])) + ")" if rec["srg"] else "FAILED"
        rows.append(
            f"{rec['construction']:<17} {rec['ambient']:<12} {rec['vertex_count']:>4}  {srg:<18} "
            f"{rec['iso_class']:>5}  {rec['vertex_set']}"
        )
    failed = [r for r in report["checks"] if not r["ok"]]
    rows.append(f"{len(report['checks']) - len(failed)}/{len(report['checks'])} checks passed")
    for r in failed:
        rows.append(f"FAILED [{r['claim']}] {r['detail']} witness={r['witness']}")
    return rows
