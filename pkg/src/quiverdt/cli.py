"""Command-line front end.

Reads a quiver from a JSON file (or standard input), runs one computation and
prints a result document. Exit codes:

    0 success
    1 input error (malformed JSON, bad arguments)
    2 non-generic stability without --force
    3 a verification reported failure
    4 internal assertion (e.g. a 1/n intermediate that did not clear)
    5 quiver file with inconsistent array dimensions
    6 quiver file with negative arrow counts
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import dt as dtmod
from .coeff import CoeffFraction, VPolynomial, format_fraction
from .errors import NonGenericStability, QuiverDTError
from .loop_ic import ic_poincare_loop
from .quiver import Quiver, generic_check
from .strata import nullcone_bound, verify_virtual_smallness

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NONGENERIC = 2
EXIT_VERIFY = 3
EXIT_INTERNAL = 4
EXIT_SHAPE = 5
EXIT_NEGATIVE = 6

FORCE_WARNING = (
    "stability is not generic; computed with --force, "
    "the wall-crossing and integrality statements need not hold"
)


class InputError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# input

def _position(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _locate(text: str, key: str, index: Optional[int] = None) -> str:
    """Best-effort ``line L, column C`` of ``key`` (or of its ``index``-th element)."""
    start = text.find(f'"{key}"')
    if start < 0:
        return "unknown position"
    offset = start
    if index is not None:
        i = text.find("[", start)
        depth, count = 0, -1
        while 0 <= i < len(text):
            ch = text[i]
            if ch == "[":
                depth += 1
                if depth == 2:
                    count += 1
                    if count == index:
                        offset = i
                        break
            elif ch == "]":
                depth -= 1
                if depth == 0:
                    break
            i += 1
    line, col = _position(text, offset)
    return f"line {line}, column {col}"


def parse_quiver_text(text: str) -> Tuple[Quiver, Tuple[int, ...]]:
    """Validate a quiver document; returns the quiver and theta (default zero)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise InputError("quiver file must be a JSON object")
    for key in ("vertices", "arrows"):
        if key not in doc:
            raise InputError(f'missing key "{key}"')
    vertices = doc["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise InputError(f'"vertices" must be an array of strings ({_locate(text, "vertices")})')
    if len(set(vertices)) != len(vertices):
        raise InputError(f'vertex labels must be distinct ({_locate(text, "vertices")})')
    n = len(vertices)
    arrows = doc["arrows"]
    if not isinstance(arrows, list):
        raise InputError(f'"arrows" must be an array of arrays ({_locate(text, "arrows")})')
    if len(arrows) != n:
        raise InputError(
            f'"arrows" has {len(arrows)} rows but there are {n} vertices ({_locate(text, "arrows")})',
            EXIT_SHAPE,
        )
    for i, row in enumerate(arrows):
        where = _locate(text, "arrows", i)
        if not isinstance(row, list) or not all(type(a) is int for a in row):
            raise InputError(f"arrows row {i} must be an array of integers ({where})")
        if len(row) != n:
            raise InputError(
                f"arrows row {i} has length {len(row)}, expected {n}: matrix is not square ({where})",
                EXIT_SHAPE,
            )
        for j, a in enumerate(row):
            if a < 0:
                raise InputError(f"arrows[{i}][{j}] = {a} is negative ({where})", EXIT_NEGATIVE)
    theta = doc.get("theta", [0] * n)
    if not isinstance(theta, list) or not all(type(t) is int for t in theta):
        raise InputError(f'"theta" must be an array of integers ({_locate(text, "theta")})')
    if len(theta) != n:
        raise InputError(
            f'"theta" has length {len(theta)}, expected {n} ({_locate(text, "theta")})', EXIT_SHAPE
        )
    return Quiver(tuple(vertices), tuple(tuple(r) for r in arrows)), tuple(theta)


def parse_input(path: Optional[str] = None) -> Tuple[Quiver, Tuple[int, ...]]:
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_quiver_text(text)


def parse_vector(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"not a comma-separated integer vector: {text!r}") from None


def parse_point(text: str) -> List[Tuple[Tuple[int, ...], int]]:
    """``"1,0^2+0,1"`` -> ``[((1,0), 2), ((0,1), 1)]``."""
    parts = []
    for chunk in text.split("+"):
        vec, _, mult = chunk.strip().partition("^")
        try:
            m = int(mult) if mult else 1
        except ValueError:
            raise InputError(f"bad multiplicity in {chunk!r}") from None
        parts.append((parse_vector(vec), m))
    return parts


# ---------------------------------------------------------------------------
# serialization

def serialize_value(x) -> dict:
    """JSON form of a coefficient; ``coeffs`` holds the numerator in decreasing exponent."""
    f = CoeffFraction.coerce(x)
    p = f.numerator
    coeffs = {str(k): str(c) for k, c in sorted(p.terms.items(), reverse=True)}
    out = {"coeffs": coeffs, "pretty": format_fraction(f), "latex": format_fraction(f, latex=True)}
    if f.denominator:
        out["denominator_factors"] = list(f.denominator)
    return out


def parse_value(obj: dict) -> CoeffFraction:
    """Inverse of :func:`serialize_value`."""
    num = VPolynomial({int(k): int(c) for k, c in obj["coeffs"].items()})
    return CoeffFraction(num, obj.get("denominator_factors", ()))


def _fraction_str(q: Fraction) -> str:
    return str(Fraction(q))


def _table(entries) -> list:
    return [{"d": list(d), "value": serialize_value(c)} for d, c in entries]


def _series(s) -> list:
    return _table(s.items())


# ---------------------------------------------------------------------------
# commands

def _forced(args, generic: bool, warnings: List[str]):
    if args.force and not generic:
        warnings.append(FORCE_WARNING)


def cmd_dt(args, warnings):
    Q, theta = parse_input(args.input)
    box = parse_vector(args.box)
    kw = dict(max_degree=args.max_degree, force=args.force)
    if args.slope is not None:
        table = dtmod.dt_slope(Q, theta, Fraction(args.slope), box, **kw)
    else:
        table = dtmod.dt_all(Q, theta, box, **kw)
    _forced(args, table.genericity.generic, warnings)
    result = {
        "box": list(box),
        "theta": list(theta),
        "genericity": table.genericity.kind,
        "table": _table(table.items()),
    }
    if args.slope is not None:
        result["slope"] = _fraction_str(Fraction(args.slope))
    return result, EXIT_OK


def cmd_loop_ic(args, warnings):
    return serialize_value(ic_poincare_loop(args.loops, args.dim)), EXIT_OK


def cmd_check_generic(args, warnings):
    Q, theta = parse_input(args.input)
    box = parse_vector(args.box)
    report = generic_check(Q, theta, box)
    result = {"generic": report.generic, "kind": report.kind, "box": list(box)}
    if report.witness is not None:
        d, e, w = report.witness
        result["witness"] = {"d": list(d), "e": list(e), "pairing": w}
    return result, (EXIT_OK if report.generic else EXIT_NONGENERIC)


def cmd_framed(args, warnings):
    Q, theta = parse_input(args.input)
    box, f = parse_vector(args.box), parse_vector(args.framing)
    mu = Fraction(args.slope) if args.slope is not None else None
    report = generic_check(Q, theta, box)
    if not report.generic and not args.force:
        raise NonGenericStability(f"stability {theta} is not generic", report.witness)
    _forced(args, report.generic, warnings)
    if args.verify:
        v = dtmod.dtpt_verify(Q, theta, mu, f, box, max_degree=args.max_degree, force=args.force)
        warnings.extend(v.notes)
        result = {
            "passed": v.passed,
            "checks": [
                {
                    "slope": _fraction_str(c.slope),
                    "form": c.form,
                    "equal": c.equal,
                    "mismatches": [list(d) for d in c.mismatches],
                }
                for c in v.checks
            ],
        }
        return result, (EXIT_OK if v.passed else EXIT_VERIFY)
    t = dtmod.SeriesTruncation(box, args.max_degree)
    slopes = [mu] if mu is not None else dtmod.slopes_in_box(theta, t)
    cache = dtmod.HNCache(Q, theta)
    out = []
    for m in slopes:
        s = dtmod.framed_ic_series(
            Q, theta, m, f, box, max_degree=args.max_degree, force=True, cache=cache
        )
        out.append({"slope": _fraction_str(m), "series": _series(s)})
    return {"framing": list(f), "box": list(box), "slopes": out}, EXIT_OK


def cmd_local_dt(args, warnings):
    Q, theta = parse_input(args.input)
    parts = parse_point(args.point)
    value = dtmod.local_dt(Q, theta, parts, force=args.force)
    return {"point": [{"d": list(d), "m": m} for d, m in parts], "value": serialize_value(value)}, EXIT_OK


def cmd_strata(args, warnings):
    Q, theta = parse_input(args.input)
    d, f = parse_vector(args.dim), parse_vector(args.framing)
    report = verify_virtual_smallness(Q, theta, d, f, force=args.force)
    warnings.append(report.note)
    checks = []
    for c in report.checks:
        entry = {
            "type": str(c.xi),
            "fiber_bound": _fraction_str(c.fiber_bound),
            "rhs": _fraction_str(c.rhs),
            "holds": c.holds,
            "equality": c.equality,
        }
        if c.fiber_bound_local is not None:
            entry["fiber_bound_local"] = _fraction_str(c.fiber_bound_local)
        checks.append(entry)
    result = {"passed": report.passed, "d": list(d), "framing": list(f), "types": checks}
    return result, (EXIT_OK if report.passed else EXIT_VERIFY)


def cmd_nullcone(args, warnings):
    Q, _ = parse_input(args.input)
    d = parse_vector(args.dim)
    return {"d": list(d), "bound": _fraction_str(nullcone_bound(Q, d))}, EXIT_OK


COMMANDS = {
    "dt": cmd_dt,
    "loop-ic": cmd_loop_ic,
    "check-generic": cmd_check_generic,
    "framed": cmd_framed,
    "local-dt": cmd_local_dt,
    "strata": cmd_strata,
    "nullcone-bound": cmd_nullcone,
}


# ---------------------------------------------------------------------------
# rendering

def _render_text(obj, latex: bool, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(obj, dict) and "coeffs" in obj:
        return [pad + obj["latex" if latex else "pretty"]]
    lines = []
    if isinstance(obj, dict):
        if "d" in obj and "value" in obj and len(obj) == 2:
            key = "(" + ",".join(map(str, obj["d"])) + ")"
            return [f"{pad}{key}: {_render_text(obj['value'], latex)[0]}"]
        for k, v in obj.items():
            sub = _render_text(v, latex, indent + 1)
            inline = not isinstance(v, (dict, list)) or (isinstance(v, dict) and "coeffs" in v)
            inline = inline or (isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v))
            if inline:
                lines.append(f"{pad}{k}: {sub[0].strip()}")
            else:
                lines.append(f"{pad}{k}:")
                lines.extend(sub)
        return lines
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            return [pad + "[" + ", ".join(map(str, obj)) + "]"]
        for x in obj:
            lines.extend(_render_text(x, latex, indent))
        return lines
    if isinstance(obj, bool):
        return [pad + ("true" if obj else "false")]
    return [pad + str(obj)]


def render_output(doc: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    lines = [f"{doc['command']}: {'ok' if doc['ok'] else 'FAILED'}"]
    for w in doc["warnings"]:
        lines.append(f"warning: {w}")
    if doc.get("error"):
        lines.append(f"error: {doc['error']}")
    if doc.get("result") is not None:
        lines.extend(_render_text(doc["result"], fmt == "latex"))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="quiver JSON file (default: standard input)")
    common.add_argument("--format", choices=("json", "pretty", "latex"), default="json")
    common.add_argument("--force", action="store_true", help="allow non-generic stabilities")
    common.add_argument("--max-degree", type=int, default=None, help="also truncate at |d| <= N")

    parser = argparse.ArgumentParser(prog="quiverdt", description="Exact DT invariants of quivers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dt", parents=[common], help="DT invariants in a box")
    p.add_argument("--box", required=True)
    p.add_argument("--slope", default=None, help="restrict to one slope, e.g. 1/2")

    p = sub.add_parser("loop-ic", parents=[common], help="IC Poincare polynomial of the m-loop quiver")
    p.add_argument("--loops", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)

    p = sub.add_parser("check-generic", parents=[common], help="genericity of theta in a box")
    p.add_argument("--box", required=True)

    p = sub.add_parser("framed", parents=[common], help="framed series, optionally checked against DT")
    p.add_argument("--framing", required=True)
    p.add_argument("--box", required=True)
    p.add_argument("--slope", default=None)
    p.add_argument("--verify", action="store_true")

    p = sub.add_parser("local-dt", parents=[common], help="DT function at a polystable point")
    p.add_argument("--point", required=True, help='e.g. "1,0^2+0,1"')

    p = sub.add_parser("strata", parents=[common], help="virtual smallness over decomposition types")
    p.add_argument("--dim", required=True)
    p.add_argument("--framing", required=True)

    p = sub.add_parser("nullcone-bound", parents=[common], help="nullcone dimension estimate")
    p.add_argument("--dim", required=True)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> Tuple[dict, int, str]:
    """Parse arguments and execute; returns ``(document, exit code, format)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_INPUT
        raise SystemExit(EXIT_INPUT if code else EXIT_OK)
    warnings: List[str] = []
    doc = {"ok": True, "command": args.command, "result": None, "warnings": warnings}
    if getattr(args, "slope", None) is not None:
        try:
            Fraction(args.slope)
        except (ValueError, ZeroDivisionError):
            doc.update(ok=False, error=f"bad slope {args.slope!r}")
            return doc, EXIT_INPUT, args.format
    try:
        result, code = COMMANDS[args.command](args, warnings)
    except InputError as exc:
        doc.update(ok=False, error=str(exc))
        return doc, exc.code, args.format
    except NonGenericStability as exc:
        doc.update(ok=False, error=str(exc))
        if exc.witness is not None:
            d, e, w = exc.witness
            doc["result"] = {"witness": {"d": list(d), "e": list(e), "pairing": w}}
        return doc, EXIT_NONGENERIC, args.format
    except AssertionError as exc:
        doc.update(ok=False, error=f"internal assertion: {exc}")
        return doc, EXIT_INTERNAL, args.format
    except (QuiverDTError, ValueError) as exc:
        doc.update(ok=False, error=str(exc))
        return doc, EXIT_INPUT, args.format
    doc["result"] = result
    doc["ok"] = code == EXIT_OK
    return doc, code, args.format


def main(argv: Optional[Sequence[str]] = None) -> int:
    doc, code, fmt = run(argv)
    if doc.get("error"):
        print(f"quiverdt: {doc['error']}", file=sys.stderr)
    sys.stdout.write(render_output(doc, fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
