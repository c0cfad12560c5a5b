"""Command-line front end.

Exit status: 0 on success, 1 when the input violates a domain invariant (or
the oracle disagrees), 2 on usage errors, unreadable files and malformed JSON.
Ray indices are 1-based in everything printed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Sequence, TextIO

from .classify import (
    ClassificationMismatch,
    IrreducibleComponent,
    NotASubsystem,
    UnexpectedType,
    classification_report,
    classify,
    classify_subsystem,
    type_string,
)
from .configuration import ConfigurationError, SignAssignment, VectorConfiguration
from .fan import (
    CATALOG_NAMES,
    Fan,
    FanError,
    catalog_fan,
    fan_configuration,
    fan_roots,
    reflection_partition,
    symmetry_report,
)
from .rootsys import (
    RootSystem,
    ScaleError,
    compute_roots,
    compute_signed_roots,
    dual,
    oracle_roots,
)

CONFIG_VERBS = ("roots", "classify", "dual", "oracle")
FAN_VERBS = ("fan-validate", "fan-roots", "fan-partition", "fan-report")


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (path, exc.strerror or exc)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError("malformed JSON in %s at line %d column %d: %s"
                         % (path, exc.lineno, exc.colno, exc.msg)) from None


def _source(args) -> tuple:
    """Return ("catalog", name) or ("file", parsed JSON)."""
    if args.catalog and args.input:
        raise UsageError("give either an input file or --catalog, not both")
    name = args.catalog
    if name is None:
        if args.input is None:
            raise UsageError("no input: give a JSON file or a catalog name")
        if os.path.exists(args.input) or args.input not in CATALOG_NAMES:
            return "file", _load_json(args.input)
        name = args.input
    if name not in CATALOG_NAMES:
        raise UsageError("unknown catalog name %r (known: %s)" % (name, ", ".join(CATALOG_NAMES)))
    return "catalog", name


def _load_fan(args) -> Fan:
    kind, payload = _source(args)
    if kind == "catalog":
        return catalog_fan(payload)
    if not isinstance(payload, dict):
        raise UsageError("fan file must hold a JSON object")
    return Fan.from_json(payload)


def _load_configuration(args) -> VectorConfiguration:
    kind, payload = _source(args)
    if kind == "catalog":
        return fan_configuration(catalog_fan(payload))
    if not isinstance(payload, dict):
        raise UsageError("configuration file must hold a JSON object")
    if "rays" in payload:
        return fan_configuration(Fan.from_json(payload))
    return VectorConfiguration.from_json(payload)


def _signs(args, m: int) -> Optional[SignAssignment]:
    if args.signed is None:
        return None
    try:
        return SignAssignment.parse(args.signed, m)
    except ValueError as exc:
        raise UsageError("bad --signed value: %s" % exc) from None


# --- text rendering ---------------------------------------------------------

def _vec(v) -> str:
    return "(%s)" % ", ".join(str(x) for x in v)


def _indices(idx) -> str:
    return "{%s}" % ",".join(str(i + 1) for i in idx)


def _print_configuration(V: VectorConfiguration, out: TextIO) -> None:
    out.write("configuration: rank %d, %d vectors\n" % (V.rank, V.m))
    for i, v in enumerate(V.vectors):
        label = " [%s]" % V.labels[i] if V.labels else ""
        out.write("  v%d = %s%s\n" % (i + 1, _vec(v), label))


def _print_roots(R: RootSystem, comps: Sequence[IrreducibleComponent], out: TextIO) -> None:
    out.write("roots: %d, type %s\n" % (len(R), type_string(comps)))
    for k, comp in enumerate(comps, 1):
        out.write("component %d: %s on rays %s, %d roots\n"
                  % (k, comp.label, _indices(comp.support), len(comp.roots)))
        for r in comp.roots:
            out.write("  %-16s pairing %-22s kind %d\n" % (_vec(r.alpha), _vec(r.pairing), r.kind))


def _print_components(comps: Sequence[IrreducibleComponent], out: TextIO) -> None:
    out.write("type: %s\n" % type_string(comps))
    for k, comp in enumerate(comps, 1):
        out.write("component %d: %s (rank %d), %d roots\n" % (k, comp.label, comp.rank, len(comp.roots)))
        out.write("  simple roots: %s\n" % ", ".join(_vec(r.alpha) for r in comp.simple_roots))
        out.write("  cartan: %s\n" % comp.cartan.tolist())
        if comp.short_roots:
            out.write("  short simple roots: %s\n" % ", ".join(_vec(r.alpha) for r in comp.short_roots))
        if comp.conjugate_pairs:
            out.write("  conjugate pairs: %s\n"
                      % ", ".join("%s~%s" % (_vec(a.alpha), _vec(b.alpha)) for a, b in comp.conjugate_pairs))
        for note in comp.notes:
            out.write("  note: %s\n" % note)
    agree = all(c.label == c.criteria_label for c in comps)
    out.write("criteria agreement: %s\n" % ("yes" if agree else "NO"))


def _emit(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, indent=2))
    out.write("\n")


# --- verbs ------------------------------------------------------------------

def _config_roots(args, V: VectorConfiguration) -> RootSystem:
    omega = _signs(args, V.m)
    return compute_roots(V) if omega is None else compute_signed_roots(V, omega)


def cmd_roots(args, out: TextIO) -> int:
    V = _load_configuration(args)
    R = _config_roots(args, V)
    if args.json:
        _emit(R.to_json(), out)
        return 0
    _print_configuration(R.configuration, out)
    _print_roots(R, classify(R), out)
    return 0


def _subset(args):
    if args.subset is None:
        return None
    data = _load_json(args.subset)
    if isinstance(data, dict):
        data = data.get("roots")
    if not isinstance(data, list):
        raise UsageError("subset file must hold a list of roots or {\"roots\": [...]}")
    alphas = []
    for item in data:
        alpha = item.get("alpha") if isinstance(item, dict) else item
        if not isinstance(alpha, list) or not all(isinstance(x, int) for x in alpha):
            raise UsageError("subset entry %r is not an integer vector" % (item,))
        alphas.append(tuple(alpha))
    return alphas


def cmd_classify(args, out: TextIO) -> int:
    V = _load_configuration(args)
    R = _config_roots(args, V)
    comps = classify_subsystem(R, _subset(args))
    if args.json:
        _emit(classification_report(comps), out)
        return 0
    _print_components(comps, out)
    return 0


def cmd_dual(args, out: TextIO) -> int:
    V = _load_configuration(args)
    D = dual(_config_roots(args, V))
    if args.json:
        _emit(D.to_json(), out)
        return 0
    out.write("dual root system\n")
    _print_roots(D, classify(D), out)
    return 0


def cmd_oracle(args, out: TextIO) -> int:
    V = _load_configuration(args)
    R = compute_roots(V)
    try:
        O = oracle_roots(V)
    except ScaleError as exc:
        raise DomainError("oracle refused: %s" % exc) from None
    agree = R.alphas == O.alphas
    if args.json:
        _emit({"agree": agree, "roots": len(R), "oracle_roots": len(O)}, out)
    elif agree:
        out.write("oracle agrees: %d roots\n" % len(R))
    else:
        only_r = sorted(set(R.alphas) - set(O.alphas))
        only_o = sorted(set(O.alphas) - set(R.alphas))
        out.write("oracle mismatch: %d vs %d roots\n" % (len(R), len(O)))
        out.write("  only in compute_roots: %s\n" % ", ".join(map(_vec, only_r)))
        out.write("  only in oracle: %s\n" % ", ".join(map(_vec, only_o)))
    return 0 if agree else 1


def cmd_fan_validate(args, out: TextIO) -> int:
    F = _load_fan(args)
    if args.json:
        _emit({"valid": True, "complete": True, "non_singular": True, "fan": F.to_json()}, out)
        return 0
    out.write("valid: complete non-singular fan of rank %d, %d rays, %d maximal cones\n"
              % (F.rank, F.m, len(F.max_cones)))
    return 0


def cmd_fan_roots(args, out: TextIO) -> int:
    F = _load_fan(args)
    R = fan_roots(F, _signs(args, F.m))
    if args.json:
        _emit(R.to_json(), out)
        return 0
    _print_configuration(R.configuration, out)
    _print_roots(R, classify(R), out)
    return 0


def cmd_fan_partition(args, out: TextIO) -> int:
    F = _load_fan(args)
    part = reflection_partition(F, _signs(args, F.m))
    if args.json:
        _emit(part.to_json(), out)
        return 0
    out.write("classes: %s\n" % " ".join(_indices(c) for c in part.classes))
    factors = part.factor_labels
    out.write("factors: %s\n" % (" x ".join("%s on %s" % (t, _indices(c)) for c, t in factors) or "none"))
    return 0


def cmd_fan_report(args, out: TextIO) -> int:
    F = _load_fan(args)
    rep = symmetry_report(F, _signs(args, F.m))
    if args.json:
        _emit(rep.to_json(), out)
    else:
        out.write("fan: rank %d, %d rays, %d maximal cones\n" % (F.rank, F.m, len(F.max_cones)))
        if rep.omega is not None:
            out.write("signs: %s\n" % rep.omega)
        _print_roots(rep.roots, rep.components, out)
        out.write("partition: %s\n" % " ".join(_indices(c) for c in rep.partition.classes))
        out.write("minimal non-face invariance: %s\n" % ("holds" if rep.nonface_invariant else "FAILS"))
        if rep.consistent:
            out.write("structural identity: consistent\n")
        else:
            out.write("structural identity: VIOLATED\n")
            for v in rep.violations:
                out.write("  %s\n" % v)
    return 0 if rep.consistent else 1


COMMANDS = {
    "roots": cmd_roots,
    "classify": cmd_classify,
    "dual": cmd_dual,
    "oracle": cmd_oracle,
    "fan-validate": cmd_fan_validate,
    "fan-roots": cmd_fan_roots,
    "fan-partition": cmd_fan_partition,
    "fan-report": cmd_fan_report,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="torusroots",
        description="Root systems of integer vector configurations and toric fans.",
    )
    p.add_argument("verb", choices=list(COMMANDS))
    p.add_argument("input", nargs="?", help="JSON file, or a catalog name")
    p.add_argument("--catalog", metavar="NAME", help="built-in fan: %s" % ", ".join(CATALOG_NAMES))
    p.add_argument("--signed", metavar="SIGNS", help='sign assignment, e.g. "+,-,+,+" or "q=2"')
    p.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    p.add_argument("--subset", metavar="FILE", help="classify only these roots (classify verb)")
    return p


def main(argv: Optional[List[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.subset is not None and args.verb != "classify":
        err.write("torusroots: --subset only applies to the classify verb\n")
        return 2
    try:
        return COMMANDS[args.verb](args, out)
    except UsageError as exc:
        err.write("torusroots: %s\n" % exc)
        return 2
    except FanError as exc:
        err.write("invalid fan: %s: %s\n" % (type(exc).__name__, exc))
        return 1
    except ConfigurationError as exc:
        err.write("invalid configuration: %s: %s\n" % (type(exc).__name__, exc))
        return 1
    except NotASubsystem as exc:
        err.write("not a subsystem: %s\n" % exc)
        return 1
    except (UnexpectedType, ClassificationMismatch) as exc:
        err.write("invariant violation: %s: %s\n" % (type(exc).__name__, exc))
        return 1
    except DomainError as exc:
        err.write("torusroots: %s\n" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
