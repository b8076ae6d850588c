"""Command-line front end: ``nkconf <command> FILE ... [flags]``.

Every command prints a JSON report (keys sorted) to stdout and, with
``--json PATH``, also writes it to ``PATH``.  The exit status is 0 when the
analysis completed, whatever the mathematical verdict, 1 on bad input
(unreadable or malformed files, failed validation) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from .construction import NoProjectiveBase, SequenceError, check_sequence, parse_sequence, plan_min_free
from .corpus import fixture_names, fixture_text
from .incidence import Configuration, FormatError, dual, load_configuration, parse_configuration, serialize, validate
from .realizer import REALIZABLE, realize
from .realizer.drawing import cyclic_orders, render_svg
from .subconfig import PATTERN_NAMES, enumerate_embeddings, pattern, theorem_compatible
from .symmetry import (
    TopologicalData,
    automorphism_group,
    duality_from_pairs,
    is_self_duality,
    letter_pairs,
    parse_pairs,
    polarity_check,
)


class InputError(Exception):
    """Problem with the user's input; reported on stderr with exit status 1."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def write_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name + ".")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def read_config(path: str) -> Configuration:
    try:
        return load_configuration(path)
    except OSError as e:
        raise InputError(f"{path}: cannot read ({e.strerror or e})") from None
    except FormatError as e:
        raise InputError(f"{path}: {e}") from None


def validation_json(c: Configuration) -> dict:
    if c.k is None:
        # structures have no (n_k) claim; only the two-points-one-line axiom applies
        rep = validate(c, len(c.points), 0)
        violations = [v for v in rep.violations if v["kind"] == "digon"]
        return {"n": None, "k": None, "certified": not violations, "violations": violations}
    return validate(c, c.n, c.k).to_json()


# commands


def cmd_validate(c: Configuration, args) -> dict:
    return {"file": c.name, "validation": validation_json(c)}


def cmd_dual(c: Configuration, args) -> dict:
    d = dual(c)
    return {"file": c.name, "dual": serialize(d), "incidences": d.to_json()}


def _group_json(c: Configuration) -> dict:
    g = automorphism_group(c)
    out = g.to_json()
    out["preserving"] = [e.cycle_notation() for e in g.preserving]
    out["dualities"] = [e.cycle_notation() for e in g.dualities]
    return out


def cmd_autgroup(c: Configuration, args) -> dict:
    return {"file": c.name, "automorphisms": _group_json(c)}


def _topology(c: Configuration, args) -> tuple[TopologicalData | None, str]:
    if c.cyclic:
        t = TopologicalData.from_configuration(c)
        try:
            t.check(c)
        except ValueError as e:
            raise InputError(f"{c.name}: {e}") from None
        return t, "file"
    v = realize(c, max_vars=args.max_vars, budget=args.budget)
    if v.status == REALIZABLE and v.witness is not None:
        try:
            return cyclic_orders(c, v.witness), "witness"
        except ValueError:
            pass
    return None, f"no cyclic data (realizer: {v.status})"


def cmd_polarity(c: Configuration, args) -> dict:
    if args.duality:
        try:
            s = duality_from_pairs(c, parse_pairs(args.duality))
        except ValueError as e:
            raise InputError(str(e)) from None
        candidates = [s]
    else:
        try:
            s = duality_from_pairs(c, letter_pairs(c))
            candidates = [s] if is_self_duality(c, s) else []
        except ValueError:
            candidates = []
        if not candidates:
            candidates = list(automorphism_group(c).dualities)
    t, origin = _topology(c, args)
    rows = []
    for s in candidates:
        row = {"duality": s.cycle_notation(), "self_duality": is_self_duality(c, s)}
        if t is not None and row["self_duality"]:
            row.update(polarity_check(c, t, s))
        rows.append(row)
    return {"file": c.name, "cyclic_orders": origin, "dualities": rows}


def cmd_cseq(c: Configuration, args) -> dict:
    out = {"file": c.name}
    if args.sequence:
        try:
            seq = parse_sequence(c, args.sequence)
        except SequenceError as e:
            raise InputError(str(e)) from None
        problems = check_sequence(c, seq)
        out["check"] = {"sequence": str(seq), "valid": not problems, "problems": problems}
    try:
        plan = plan_min_free(c, budget=args.budget)
    except NoProjectiveBase as e:
        out["plan"] = {"error": str(e)}
    else:
        out["plan"] = plan.to_json()
    return out


def _pattern(args) -> Configuration:
    name = args.pattern
    if name is None:
        raise InputError("find-sub needs --pattern")
    if name in PATTERN_NAMES:
        return pattern(name)
    return read_config(name)


def cmd_find_sub(c: Configuration, args) -> dict:
    pat = _pattern(args)
    embs = enumerate_embeddings(pat, c, limit=args.limit)
    return {"file": c.name, "pattern": pat.name, "count": len(embs), "limited": args.limit is not None,
            "embeddings": [str(e) for e in embs]}


def cmd_filter(c: Configuration, args) -> dict:
    return {"file": c.name, "filters": theorem_compatible(c)}


def _sequence_arg(c: Configuration, args):
    if not args.sequence:
        return None
    try:
        seq = parse_sequence(c, args.sequence)
    except SequenceError as e:
        raise InputError(str(e)) from None
    problems = check_sequence(c, seq)
    if problems:
        raise InputError("invalid construction sequence: " + "; ".join(problems))
    return seq


def cmd_realize(c: Configuration, args) -> dict:
    try:
        v = realize(c, _sequence_arg(c, args), max_vars=args.max_vars, budget=args.budget)
    except NoProjectiveBase as e:
        raise InputError(f"{c.name}: {e}") from None
    out = {"file": c.name, "realization": v.to_json()}
    if args.svg:
        if v.status == REALIZABLE:
            try:
                write_atomic(args.svg, render_svg(c, v.witness))
                out["svg"] = str(args.svg)
            except ValueError as e:
                out["svg_skipped"] = str(e)
        else:
            out["svg_skipped"] = f"no witness ({v.status})"
    return out


def report_record(c: Configuration, args) -> dict:
    """One configuration's summary across all modules."""
    rec = {"file": c.name, "validation": validation_json(c)}
    g = automorphism_group(c)
    rec["automorphisms"] = g.to_json()
    try:
        s = duality_from_pairs(c, letter_pairs(c))
        rec["letter_pairing_self_dual"] = is_self_duality(c, s)
        if c.cyclic and rec["letter_pairing_self_dual"]:
            rec["letter_pairing_polarity"] = polarity_check(c, TopologicalData.from_configuration(c), s)
    except ValueError:
        rec["letter_pairing_self_dual"] = None
    rec["filters"] = {k: v for k, v in theorem_compatible(c).items() if not k.endswith("_violation")}
    try:
        v = realize(c, max_vars=args.max_vars, budget=args.budget)
        rec["realization"] = {"status": v.status, "variables": v.variables, "sequence": v.sequence,
                              "reason": v.reason}
    except NoProjectiveBase as e:
        rec["realization"] = {"status": None, "reason": str(e)}
    return rec


def _report_paths(paths: list[str]) -> list[str]:
    out = []
    for p in paths:
        if os.path.isdir(p):
            out.extend(str(f) for f in sorted(Path(p).iterdir()) if f.suffix == ".txt" and f.is_file())
        else:
            out.append(p)
    return out


COMMANDS = {
    "validate": cmd_validate,
    "dual": cmd_dual,
    "autgroup": cmd_autgroup,
    "polarity": cmd_polarity,
    "cseq": cmd_cseq,
    "find-sub": cmd_find_sub,
    "filter": cmd_filter,
    "realize": cmd_realize,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nkconf", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted(list(COMMANDS) + ["report", "fixtures"]))
    ap.add_argument("files", nargs="*", help="incidence tables, directories (report) or fixture names (fixtures)")
    ap.add_argument("--budget", type=int, default=200_000, metavar="STEPS",
                    help="search budget for construction-sequence planning")
    ap.add_argument("--max-vars", type=int, choices=(0, 1, 2), default=2,
                    help="most parameters the realizer may keep active at once")
    ap.add_argument("--svg", metavar="PATH", help="draw a rational witness (realize)")
    ap.add_argument("--json", metavar="PATH", help="also write the report to PATH")
    ap.add_argument("--pattern", metavar="NAME|FILE",
                    help=f"pattern for find-sub: one of {', '.join(PATTERN_NAMES)} or a file")
    ap.add_argument("--sequence", metavar="TEXT", help="construction sequence such as 'ABCD - degikp - ...'")
    ap.add_argument("--duality", metavar="PAIRS", help="duality for polarity, e.g. '(A,a)(B,b)...'")
    ap.add_argument("--limit", type=int, help="stop find-sub after this many embeddings")
    return ap


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Execute a command; returns the exit status and the report text."""
    args = build_parser().parse_args(argv)
    if args.command == "fixtures":
        names = args.files or fixture_names()
        try:
            return 0, "".join(fixture_text(n) if args.files else n + "\n" for n in names)
        except KeyError as e:
            raise InputError(str(e.args[0])) from None
    if not args.files:
        raise InputError(f"{args.command} needs at least one file")
    if args.command == "report":
        lines = [dumps(report_record(read_config(p), args)) for p in _report_paths(args.files)]
        return 0, "".join(line + "\n" for line in lines)
    status = 0
    lines = []
    for path in args.files:
        c = read_config(path)
        rec = COMMANDS[args.command](c, args)
        if args.command == "validate" and not rec["validation"]["certified"]:
            status = 1
        lines.append(dumps(rec))
    return status, "".join(line + "\n" for line in lines)


def main(argv: list[str] | None = None) -> int:
    try:
        status, text = run(argv)
    except InputError as e:
        print(f"nkconf: error: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    args = build_parser().parse_args(argv)
    if args.json:
        write_atomic(args.json, text)
    if status:
        for line in text.splitlines():
            rec = json.loads(line)
            for v in rec.get("validation", {}).get("violations", []):
                print(f"nkconf: {rec['file']}: {_describe(v)}", file=sys.stderr)
    return status


def _describe(v: dict) -> str:
    if v["kind"] == "digon":
        p, q = v["points"]
        l, m = v["lines"]
        return f"digon: points {p} and {q} both lie on lines {l} and {m}"
    where = v.get("line") or v.get("point") or ""
    return f"{v['kind']} {where}: expected {v['expected']}, found {v['found']}".replace("  ", " ")


if __name__ == "__main__":
    sys.exit(main())
