"""Command-line interface.

Every command prints exactly one report on stdout. Exit codes: 0 ok,
1 domain error (a precondition of the underlying algorithm failed),
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .exactmat import (
    IntMatrix,
    MatrixParseError,
    Mod2RowVector,
    cofactor,
    determinant,
    format_text,
    matrix_to_json,
    multiply,
    parse_matrix,
)
from .extend import (
    MAX_ORBIT_P,
    coset_representative,
    is_extendable,
    orbit_of_standard,
    type_of,
)
from .planner import GUARANTEED, PARAMETRIC, realize
from .smith import elementary_factors, smith_decompose
from .spectra import char_poly, is_expanding
from .words import decompose_odd_columns, eval_word, factor_KJ

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_matrix_args(sp: argparse.ArgumentParser, required: bool = True) -> None:
    sp.add_argument("path", nargs="?", help="matrix file ('-' or omitted: stdin)")
    sp.add_argument("--matrix", dest="inline", help="inline matrix, text or JSON")
    sp.set_defaults(matrix_required=required)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="derealize", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    _add_matrix_args(sub.add_parser("check-expanding", help="exact expanding-matrix test"))
    _add_matrix_args(sub.add_parser("snf", help="Smith normal form with SL(p,Z) transforms"))
    _add_matrix_args(sub.add_parser("decompose", help="word in extendable generators"))
    sp = sub.add_parser("factor-kj", help="U = K J with cofactor(J, i, i) = 1")
    _add_matrix_args(sp)
    sp.add_argument("--index", type=int, default=1)
    _add_matrix_args(sub.add_parser("membership", help="extendability and modular type"))
    sp = sub.add_parser("types", help="modular types and coset representatives")
    _add_matrix_args(sp, required=False)
    sp.add_argument("--p", type=int, dest="p")
    sp = sub.add_parser("plan", help="realization plan for an expanding matrix")
    _add_matrix_args(sp)
    sp.add_argument("--mode", choices=(GUARANTEED, PARAMETRIC), default=GUARANTEED)
    sp.add_argument(
        "--m-parities",
        help="comma-separated bit-strings, one per cable axis (default all zero)",
    )
    for action in sub.choices.values():
        action.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    return parser


def _read_matrix(args) -> Optional[IntMatrix]:
    if args.inline is not None:
        if args.path is not None:
            raise UsageError("give either a path or --matrix, not both")
        return parse_matrix(args.inline)
    if args.path is None and not args.matrix_required:
        return None
    if args.path in (None, "-"):
        return parse_matrix(sys.stdin.read())
    try:
        with open(args.path, encoding="utf-8") as fh:
            return parse_matrix(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc.strerror}") from None


def _parse_parities(text: Optional[str], p: int):
    if text is None:
        return None
    parts = [s for s in text.replace(",", " ").split() if s]
    try:
        vecs = [Mod2RowVector.from_bits(s) for s in parts]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len(vecs) != p or any(v.p != p for v in vecs):
        raise ValueError(f"--m-parities needs {p} bit-strings of length {p}")
    return vecs


# -- commands ---------------------------------------------------------------------


def cmd_check_expanding(a: IntMatrix, args) -> dict:
    verdict = is_expanding(a)
    out = verdict.to_json()
    out["char_poly"] = list(char_poly(a).coeffs)
    return out


def cmd_snf(a: IntMatrix, args) -> dict:
    snf = smith_decompose(a)
    out = snf.to_json()
    out["factors"] = [{"axis": i, "delta": d} for i, d in elementary_factors(snf)]
    out["verified"] = snf.reconstruct() == a and determinant(snf.u) == 1 == determinant(snf.v)
    return out


def cmd_decompose(a: IntMatrix, args) -> dict:
    word = decompose_odd_columns(a)
    return {"word": word.to_json(), "length": len(word), "verified": eval_word(word) == a}


def cmd_factor_kj(a: IntMatrix, args) -> dict:
    k_word, j = factor_KJ(a, args.index)
    k = eval_word(k_word)
    return {
        "index": args.index,
        "k_word": k_word.to_json(),
        "j": matrix_to_json(j),
        "cofactor": cofactor(j, args.index, args.index),
        "verified": multiply(k, j) == a and cofactor(j, args.index, args.index) == 1,
    }


def cmd_membership(a: IntMatrix, args) -> dict:
    return {
        "extendable": is_extendable(a),
        "type": type_of(a).bits(),
        "column_sums": [sum(c) for c in zip(*a.rows)],
    }


def cmd_types(a: Optional[IntMatrix], args) -> dict:
    if a is None and args.p is None:
        raise UsageError("types needs --p or a matrix")
    p = args.p if args.p is not None else a.p
    if a is not None and a.p != p:
        raise UsageError(f"--p {p} does not match matrix dimension {a.p}")
    if not 1 <= p <= MAX_ORBIT_P:
        raise ValueError(f"p must lie in 1..{MAX_ORBIT_P}")
    types = sorted(orbit_of_standard(p), key=lambda t: t.bits(), reverse=True)
    out = {
        "p": p,
        "count": len(types),
        "types": [t.bits() for t in types],
    }
    if p <= 8:
        reps = [coset_representative(t) for t in types]
        out["representatives"] = [
            {"type": t.bits(), "matrix": matrix_to_json(w), "verified": type_of(w) == t}
            for t, w in zip(types, reps)
        ]
    if a is not None:
        out["type_of_input"] = type_of(a).bits()
    return out


def cmd_plan(a: IntMatrix, args) -> dict:
    parities = _parse_parities(args.m_parities, a.p)
    return realize(a, args.mode, parities).to_json()


COMMANDS = {
    "check-expanding": cmd_check_expanding,
    "snf": cmd_snf,
    "decompose": cmd_decompose,
    "factor-kj": cmd_factor_kj,
    "membership": cmd_membership,
    "types": cmd_types,
    "plan": cmd_plan,
}


# -- rendering ----------------------------------------------------------------------


def _is_matrix(x) -> bool:
    return isinstance(x, dict) and set(x) == {"p", "rows"}


def _render(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if _is_matrix(value):
        return [pad + line for line in format_text(IntMatrix.of(value["rows"])).splitlines()[1:]]
    if isinstance(value, dict):
        lines = []
        for key, v in value.items():
            if isinstance(v, (dict, list)) and v and not _is_scalar_list(v):
                lines.append(f"{pad}{key}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            sub = _render(item, indent + 1)
            lines.append(f"{pad}-")
            lines.extend(sub)
        return lines
    return [pad + _scalar(value)]


def _is_scalar_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(_scalar(x) for x in v) if v else "[]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _dumps(value, indent: int = 0) -> str:
    # like json.dumps(indent=2) but keeps lists of scalars (matrix rows) on one line
    if isinstance(value, dict):
        if not value:
            return "{}"
        pad = "  " * (indent + 1)
        items = [f"{pad}{json.dumps(k)}: {_dumps(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(value, list) and any(isinstance(x, (dict, list)) for x in value):
        pad = "  " * (indent + 1)
        items = [pad + _dumps(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(value)


def render(report: dict, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_render(report))
    return _dumps(report)


def _sniff_format(argv: list[str]) -> str:
    # used only when argument parsing itself fails
    for k, tok in enumerate(argv):
        if tok == "--format=text" or (tok == "--format" and argv[k + 1:k + 2] == ["text"]):
            return "text"
    return "json"


def main(argv: Optional[list[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    fmt = _sniff_format(argv)
    report = {"command": None, "input": None, "status": "ok", "result": None, "error": None}
    code = EXIT_OK
    try:
        args = parser.parse_args(argv)
        fmt = args.format
        report["command"] = args.command
        if args.command is None:
            raise UsageError("missing command")
        a = _read_matrix(args)
        report["input"] = {
            k: v for k, v in vars(args).items() if k not in ("path", "inline", "format", "matrix_required", "command")
        }
        report["input"]["matrix"] = matrix_to_json(a) if a is not None else None
        report["result"] = COMMANDS[args.command](a, args)
    except (UsageError, MatrixParseError) as exc:
        report["status"], report["error"], code = "error", str(exc), EXIT_USAGE
    except (ValueError, IndexError, ArithmeticError, RuntimeError) as exc:
        report["status"], report["error"], code = "error", str(exc), EXIT_DOMAIN
    print(render(report, fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
