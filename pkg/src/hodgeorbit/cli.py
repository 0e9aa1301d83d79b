"""Command-line surface: verdict checks, filtration computations, and the
embedding/surjection pipelines on serialized documents.

Exit codes: 0 for a positive verdict (CERTIFIED or SUPPORTED, or a passing
computation), 1 for REFUTED or a failed certificate, 2 for usage and
validation errors.  Structured reports are canonical JSON, so identical
inputs and flags produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import docio
from .catalog import catalog_by_name, catalog_entries, gen_random_mhs
from .construct import (
    certify_embedding,
    embed_general,
    mixed_to_orbit,
    orbit_to_mixed,
    surject_from_pure,
)
from .datum import HodgeDatum, OrbitDatum, PairedDatum
from .monodromy import relative_monodromy, weight_monodromy
from .verify import Policy, check_mixed_orbit, check_pure_orbit, shear_equivalence_report

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2


def _policy(args) -> Policy:
    try:
        grid = tuple(int(v) for v in args.grid.split(",") if v.strip())
        shears = tuple(int(v) for v in args.shear.split(",") if v.strip())
    except ValueError:
        raise docio.ValidationError("grid and shear flags take comma-separated integers")
    if not grid or any(v <= 0 for v in grid) or any(v <= 0 for v in shears):
        raise docio.ValidationError("grid and shear values must be positive")
    return Policy(grid=grid, shears=shears)


def _read_input(args) -> str:
    if args.input is None or args.input == "-":
        return sys.stdin.read()
    with open(args.input, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_output(args, text: str):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(args, report: dict):
    if args.report == "structured":
        print(json.dumps(report, sort_keys=True, separators=(",", ":")))
    else:
        _emit_text(report)


def _emit_text(report: dict, indent: str = ""):
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict):
            print(f"{indent}{key}:")
            _emit_text(value, indent + "  ")
        elif isinstance(value, list):
            print(f"{indent}{key}:")
            for item in value:
                if isinstance(item, dict):
                    _emit_text(item, indent + "  ")
                else:
                    print(f"{indent}  {item}")
        else:
            print(f"{indent}{key}: {value}")


def _verdict_report(verdict) -> dict:
    return {
        "status": verdict.status,
        "evidence": [
            {"clause": c, "ok": ok, "detail": detail} for c, ok, detail in verdict.evidence
        ],
    }


def _exit_for(verdict) -> int:
    return EXIT_OK if verdict.passed else EXIT_REFUTED


def cmd_check_mhs(args) -> int:
    obj = docio.parse(_read_input(args))
    if isinstance(obj, PairedDatum):
        obj = obj.datum
    if not isinstance(obj, HodgeDatum):
        raise docio.ValidationError("check-mhs expects a mixed document")
    verdict = check_mixed_orbit(obj, _policy(args))
    report = _verdict_report(verdict)
    from .verify import mhs_failures

    report["failing_weights"] = mhs_failures(obj)
    _emit_report(args, report)
    return _exit_for(verdict)


def cmd_check_orbit(args) -> int:
    obj = docio.parse(_read_input(args))
    if not isinstance(obj, OrbitDatum):
        raise docio.ValidationError("check-orbit expects an orbit document")
    verdict = check_pure_orbit(obj, _policy(args))
    _emit_report(args, _verdict_report(verdict))
    return _exit_for(verdict)


def _filtration_report(filt) -> list:
    return [{"index": k, "dim": s.dim} for k, s in filt.steps]


def cmd_monodromy(args) -> int:
    obj = docio.parse(_read_input(args))
    ops = obj.operators if not isinstance(obj, PairedDatum) else obj.datum.operators
    if not ops or args.op_index >= len(ops):
        raise docio.ValidationError("operator index out of range")
    m = weight_monodromy(ops[args.op_index])
    _emit_report(args, {"center": m.center, "jumps": _filtration_report(m.filtration)})
    return EXIT_OK


def cmd_rel_monodromy(args) -> int:
    obj = docio.parse(_read_input(args))
    if isinstance(obj, PairedDatum):
        obj = obj.datum
    if not isinstance(obj, HodgeDatum):
        raise docio.ValidationError("rel-monodromy expects a mixed document")
    if not obj.operators or args.op_index >= len(obj.operators):
        raise docio.ValidationError("operator index out of range")
    m = relative_monodromy(obj.operators[args.op_index], obj.weight_filtration)
    if m is None:
        _emit_report(args, {"exists": False})
        return EXIT_REFUTED
    _emit_report(args, {"exists": True, "jumps": _filtration_report(m.filtration)})
    return EXIT_OK


def cmd_embed(args) -> int:
    obj = docio.parse(_read_input(args))
    if not isinstance(obj, HodgeDatum):
        raise docio.ValidationError("embed expects a mixed document")
    cert = embed_general(obj, _policy(args))
    _write_output(args, docio.serialize_certificate(cert))
    _emit_report(
        args,
        {
            "verified": cert.verified,
            "target_dim": cert.target.dim,
            "target_weight": cert.target.weight,
            "new_operators": 1,
            "orbit": _verdict_report(cert.orbit_verdict),
        },
    )
    return EXIT_OK if cert.verified else EXIT_REFUTED


def cmd_surject(args) -> int:
    obj = docio.parse(_read_input(args))
    if not isinstance(obj, HodgeDatum):
        raise docio.ValidationError("surject expects a mixed document")
    cert = surject_from_pure(obj, _policy(args))
    _write_output(args, docio.serialize_certificate(cert))
    _emit_report(
        args,
        {
            "verified": cert.verified,
            "source_dim": cert.source.dim,
            "source_weight": cert.source.weight,
            "orbit": _verdict_report(cert.source_verdict),
        },
    )
    return EXIT_OK if cert.verified else EXIT_REFUTED


def cmd_verify_certificate(args) -> int:
    raw = docio.parse_certificate(_read_input(args))
    policy = _policy(args)
    if raw["kind"] == "embedding":
        cert = certify_embedding(raw["source"], raw["target"], raw["map"], policy, raw["shear"])
        conditions = {
            "a": cert.condition_a,
            "b": cert.condition_b,
            "i": cert.condition_i,
            "ii": cert.condition_ii,
            "intertwines": cert.intertwines,
            "new_operator_kills_image": cert.new_operator_kills_image,
        }
        ok = cert.verified
        orbit = cert.orbit_verdict
    else:
        source, target, surj = raw["source"], raw["target"], raw["map"]
        if not isinstance(source, OrbitDatum) or not isinstance(target, HodgeDatum):
            raise docio.ValidationError("surjection certificate has wrong data kinds")
        cert = _reverify_surjection(source, target, surj, policy)
        conditions = {
            "a": cert.condition_a,
            "b": cert.condition_b,
            "i": cert.condition_i,
            "ii": cert.condition_ii,
            "intertwines": cert.intertwines,
            "new_operator_dies": cert.new_operator_dies,
        }
        ok = cert.verified
        orbit = cert.source_verdict
    _emit_report(args, {"verified": ok, "conditions": conditions, "orbit": _verdict_report(orbit)})
    return EXIT_OK if ok else EXIT_REFUTED


def _reverify_surjection(source, target, surj, policy):
    from .construct import SurjectionCertificate
    from .linalg import echelonize, image_of_subspace
    from .monodromy import shift, weight_monodromy as wm

    surjective = echelonize(surj).rows == target.dim
    inter = len(source.operators) == len(target.operators) + 1
    if inter:
        for ns, nt in zip(source.operators[1:], target.operators):
            if surj @ ns != nt @ surj:
                inter = False
    dies = (surj @ source.operators[0]).is_zero() if source.operators else False
    cond_a = True
    for p in sorted(set(target.hodge_filtration.jumps()) | set(source.hodge_filtration.jumps())):
        if image_of_subspace(surj, source.hodge_filtration.at(p)) != target.hodge_filtration.at(p):
            cond_a = False
    mf = shift(wm(source.operators[0]), source.weight)
    cond_b = True
    for k in sorted(set(target.weight_filtration.jumps()) | set(mf.jumps())):
        if image_of_subspace(surj, mf.at(k)) != target.weight_filtration.at(k):
            cond_b = False
    verdict = check_pure_orbit(source, policy)
    return SurjectionCertificate(
        source, target, surj, cond_a, cond_b, surjective,
        source.pairing.is_perfect(), inter, dies, verdict,
    )


def cmd_orbit_to_mixed(args) -> int:
    obj = docio.parse(_read_input(args))
    if not isinstance(obj, OrbitDatum):
        raise docio.ValidationError("orbit-to-mixed expects an orbit document")
    paired = orbit_to_mixed(obj, _policy(args))
    _write_output(args, docio.serialize(paired))
    _emit_report(args, {"weights": list(paired.datum.weights()), "weight": paired.weight})
    return EXIT_OK


def cmd_mixed_to_orbit(args) -> int:
    obj = docio.parse(_read_input(args))
    if not isinstance(obj, PairedDatum):
        raise docio.ValidationError("mixed-to-orbit expects a paired mixed document")
    orbit, verdict = mixed_to_orbit(obj, _policy(args))
    _write_output(args, docio.serialize(orbit))
    _emit_report(args, _verdict_report(verdict))
    return _exit_for(verdict)


def cmd_prop44(args) -> int:
    obj = docio.parse(_read_input(args))
    if not isinstance(obj, OrbitDatum):
        raise docio.ValidationError("prop44 expects an orbit document")
    rep = shear_equivalence_report(obj, _policy(args))
    report = {
        "agree": rep.agree,
        "left_positive": rep.left_positive,
        "right_positive": rep.right_positive,
        "left": [{"shear": a, **_verdict_report(v)} for a, v in rep.left],
        "right_mixed": _verdict_report(rep.right_mixed),
        "right_primitive": [{"weight": k, **_verdict_report(v)} for k, v in rep.right_primitive],
    }
    _emit_report(args, report)
    return EXIT_OK if rep.agree else EXIT_REFUTED


def cmd_catalog(args) -> int:
    if args.list:
        _emit_report(args, {"entries": [e.name for e in catalog_entries()]})
        return EXIT_OK
    if not args.name:
        raise docio.ValidationError("catalog needs --name or --list")
    if args.name == "random-mhs":
        obj = gen_random_mhs(args.seed, ((0, 1), (-1, 2)), n_ops=1)
    else:
        entry = catalog_by_name(args.name)
        if entry.kind == "raw":
            raise docio.ValidationError(f"entry {args.name!r} is raw parts, not a document")
        obj = entry.build()
    _write_output(args, docio.serialize(obj))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hodgeorbit",
        description="Exact verifiers and constructions for mixed Hodge data and nilpotent orbits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output=False, op_index=False):
        p.add_argument("--input", help="input document path (default: stdin)")
        if output:
            p.add_argument("--output", help="output document path")
        if op_index:
            p.add_argument("--op-index", type=int, default=0, dest="op_index")
        p.add_argument("--grid", default="4,8,16", help="sampling grid values")
        p.add_argument("--shear", default="8,16", help="shear candidates")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--report", choices=("text", "structured"), default="text")

    handlers = {}
    for name, fn, kwargs in (
        ("check-mhs", cmd_check_mhs, {}),
        ("check-orbit", cmd_check_orbit, {}),
        ("monodromy", cmd_monodromy, {"op_index": True}),
        ("rel-monodromy", cmd_rel_monodromy, {"op_index": True}),
        ("embed", cmd_embed, {"output": True}),
        ("surject", cmd_surject, {"output": True}),
        ("verify-certificate", cmd_verify_certificate, {}),
        ("orbit-to-mixed", cmd_orbit_to_mixed, {"output": True}),
        ("mixed-to-orbit", cmd_mixed_to_orbit, {"output": True}),
        ("prop44", cmd_prop44, {}),
    ):
        p = sub.add_parser(name)
        common(p, **kwargs)
        p.set_defaults(handler=fn)
    p = sub.add_parser("catalog")
    p.add_argument("--name")
    p.add_argument("--list", action="store_true")
    p.add_argument("--output")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", choices=("text", "structured"), default="text")
    p.set_defaults(handler=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.handler(args)
    except (docio.ParseError, docio.ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"refuted: {exc}", file=sys.stderr)
        return EXIT_REFUTED
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
