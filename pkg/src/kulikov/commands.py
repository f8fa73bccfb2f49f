"""The reproduction commands behind the ``kulikov`` executable.

Each ``cmd_*`` function returns a :class:`RunReport` whose ``results``
object is deterministic for identical inputs.
"""

from __future__ import annotations

from typing import Any, Sequence

from . import cover
from .eisenstein import ORIGIN, evaluate, fixed_locus, g2_classes, relation_suite, stabilizer, verify_relation
from .group_algebra import bloch_check, bloch_subgroup_list, parse_triples
from .presentation import (
    SIGMA_MAPS,
    abelianization,
    gamma_presentation,
    is_normal_kernel,
    sigma_subgroup,
)
from .report import (
    Check,
    RunReport,
    canonical_json,
    compare,
    digest,
    load_checks,
    resolve_data_file,
    stopwatch,
)

DEFAULT_CONFIG = "kulikov.json"
TABLE_FIXTURES = {"tangent": "table_tangent.json", "bicanonical": "table_bicanonical.json"}


def _char_key(v: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _config_inputs(path) -> tuple[dict[str, Any], Any]:
    p = resolve_data_file(path)
    raw = p.read_bytes()
    return {"config": p.name, "sha256": digest(raw)}, p


def _arg_inputs(args: dict[str, Any]) -> dict[str, Any]:
    return {"arguments": args, "sha256": digest(canonical_json(args))}


def _finish(
    command: str,
    inputs: dict[str, Any],
    results: dict[str, Any],
    checks: list[Check],
    args: dict[str, Any],
    fail_fast: bool,
    ms: int,
) -> RunReport:
    return RunReport(command, inputs, results, compare(results, checks, args, fail_fast), ms)


# -- invariants --------------------------------------------------------------------


def cmd_invariants(config=DEFAULT_CONFIG, fixtures=None, fail_fast: bool = False) -> RunReport:
    inputs, path = _config_inputs(config)
    with stopwatch() as t:
        raw = cover.load_config(path)
        spec = cover.load_spec(path)
        verdicts = cover.smoothness_report(spec)
        singular = [v.point for v in verdicts if not v.smooth]
        results: dict[str, Any] = {
            "name": spec.name,
            "blown_up": list(raw.get("blow_up", [])),
            "singular": singular,
            "smoothness": [
                {"point": v.point, "smooth": v.smooth, "reason": v.reason} for v in verdicts
            ],
            "invariants": None if singular else cover.invariants(spec).to_json(),
        }
    checks = []
    expected = raw.get("expected", {})
    for key, value in sorted(expected.get("invariants", {}).items()):
        checks.append(Check(f"invariant {key}", ("invariants", key), value))
    if "singular" in expected:
        checks.append(Check("singular points", ("singular",), expected["singular"]))
    if fixtures:
        checks += load_checks(fixtures)
    return _finish("invariants", inputs, results, checks, {}, fail_fast, t[0])


# -- eigensheaf tables ---------------------------------------------------------------


def cmd_tables(which: str, config=DEFAULT_CONFIG, fixtures=None, fail_fast: bool = False) -> RunReport:
    if which not in TABLE_FIXTURES:
        raise ValueError(f"unknown table {which!r}; choose tangent or bicanonical")
    inputs, path = _config_inputs(config)
    with stopwatch() as t:
        raw = cover.load_config(path)
        spec = cover.load_spec(path)
        if which == "tangent":
            rows = cover.tangent_table(spec)
        else:
            rows = cover.bicanonical_table(spec)
        table = {_char_key(r.character.vector.coords): r.to_json() for r in rows}
        results: dict[str, Any] = {"table": which, "rows": table, "order": list(table)}
        if which == "tangent":
            euler = sum(r.euler for r in rows)
            results["euler_total"] = euler
            h2 = raw.get("tangent_h2")
            if h2 is not None:
                # h^0(T_X) = 0, so h^1 = h^2 - chi(T_X)
                total = sum(h2[k] for k in table)
                results["h2_total"] = total
                results["h1_TX"] = total - euler
        else:
            results["analysis"] = cover.bicanonical_analysis(spec).to_json()
    if fixtures is None and path.name == DEFAULT_CONFIG:
        fixtures = TABLE_FIXTURES[which]
    checks = load_checks(fixtures) if fixtures else []
    return _finish(f"tables {which}", inputs, results, checks, {"table": which}, fail_fast, t[0])


# -- homology ----------------------------------------------------------------------------


def cmd_homology(target: str = "gamma", fixtures="homology.json", fail_fast: bool = False) -> RunReport:
    if target != "gamma" and target not in SIGMA_MAPS:
        raise ValueError(f"unknown target {target!r}")
    args = {"target": target}
    with stopwatch() as t:
        gp = gamma_presentation()
        if target == "gamma":
            pres, index, normal = gp, 1, True
        else:
            table, pres = sigma_subgroup(target)
            index = table.size
            normal = is_normal_kernel(gp, table, prefer=tuple(SIGMA_MAPS[target]))
        ab = abelianization(pres)
        results = {
            "target": target,
            "index": index,
            "normal": normal,
            "generators": len(pres.generators),
            "relators": len(pres.relators),
            "abelianization": ab.to_json(),
            "abelianization_text": str(ab),
        }
    checks = load_checks(fixtures) if fixtures else []
    return _finish(f"homology {target}", _arg_inputs(args), results, checks, args, fail_fast, t[0])


# -- Bloch check -------------------------------------------------------------------------


def cmd_bloch(
    mode: str = "full", triples: str = "", fixtures="bloch.json", fail_fast: bool = False
) -> RunReport:
    if mode == "full":
        chosen = list(bloch_subgroup_list(True))
    elif mode == "without-extra":
        chosen = list(bloch_subgroup_list(False))
    elif mode == "custom":
        chosen = parse_triples(triples)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    labels = [list(tr.label) for tr in chosen]
    args: dict[str, Any] = {"mode": mode}
    if mode == "custom":
        args["triples"] = labels
    with stopwatch() as t:
        verdict = bloch_check(chosen)
        results = verdict.to_json() | {
            "mode": mode,
            "triples": labels,
            "distinct_triples": len(set(tr.label for tr in chosen)),
        }
    checks = load_checks(fixtures) if fixtures else []
    return _finish(f"bloch {mode}", _arg_inputs(args), results, checks, args, fail_fast, t[0])


# -- free action ---------------------------------------------------------------------------


def cmd_free_action(fixtures="free_action.json", fail_fast: bool = False) -> RunReport:
    with stopwatch() as t:
        classes = g2_classes()
        census = {}
        exceptional = []
        for exps, m in classes:
            loc = fixed_locus(m)
            census[_char_key(exps)] = 0 if loc.empty else loc.count
            if any(exps) and not loc.empty:
                exceptional.append(list(exps))
        group = [m for _, m in classes]
        suite = [
            {"lhs": lhs, "rhs": rhs, "holds": verify_relation(lhs, rhs)} for lhs, rhs in relation_suite()
        ]
        results = {
            "fixed_points": census,
            "exceptional": exceptional,
            "origin_stabilizer_order": len(stabilizer(ORIGIN, group)),
            "relations": {
                "total": len(suite),
                "all_hold": all(r["holds"] for r in suite),
                "failures": [r for r in suite if not r["holds"]],
            },
        }
    checks = load_checks(fixtures) if fixtures else []
    return _finish("free-action", _arg_inputs({}), results, checks, {}, fail_fast, t[0])


# -- single relation -------------------------------------------------------------------------


def cmd_relation(lhs: str, rhs: str, mod_lattice: bool = False) -> RunReport:
    args = {"lhs": lhs, "rhs": rhs, "mod_lattice": mod_lattice}
    with stopwatch() as t:
        a, b = evaluate(lhs), evaluate(rhs)
        results = {
            "holds": verify_relation(lhs, rhs, mod_lattice),
            "lhs_map": {"rot": list(a.rot), "trans": [[x.a, x.b] for x in a.trans]},
            "rhs_map": {"rot": list(b.rot), "trans": [[x.a, x.b] for x in b.trans]},
        }
    return RunReport("relation", _arg_inputs(args), results, [], t[0])
