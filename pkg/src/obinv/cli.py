"""Command-line front end: ``obinv <subcommand> [flags] [file|-]``."""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import jsonschema

from . import exact_linalg as la
from .page_model import (
    HIGH,
    LOW,
    CurveWord,
    DehnTwist,
    KnotOnPage,
    Letter,
    OpenBookSpec,
    PageModelError,
    PageSignature,
    validate_word,
)
from .rotation_count import dual_tangency_count, index_change_markers, rotation_word_count
from .surgery_invariants import (
    build_presentation,
    d3_invariant,
    euler_class,
    euler_is_torsion,
    expand_multiplicities,
    first_homology,
    full_report,
    surgery_signature,
)

TOKEN_PATTERN = r"^[aAbB][1-9][0-9]*$"

_WORD = {"type": "array", "minItems": 1, "items": {"type": "string", "pattern": TOKEN_PATTERN}}

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["page", "monodromy"],
    "properties": {
        "page": {
            "type": "object",
            "additionalProperties": False,
            "required": ["genus", "holes"],
            "properties": {
                "genus": {"type": "integer", "minimum": 0},
                "holes": {"type": "integer", "minimum": 0},
            },
        },
        "monodromy": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["word"],
                "properties": {
                    "word": _WORD,
                    "sign": {"enum": [1, -1]},
                    "power": {"type": "integer", "minimum": 1},
                },
            },
        },
        "knot": {
            "type": "object",
            "additionalProperties": False,
            "required": ["word"],
            "properties": {"word": _WORD, "level": {"enum": [HIGH, LOW]}},
        },
    },
}

SUBCOMMANDS = ("invariants", "contact", "presentation", "word-rot", "homology")


class DocumentSyntaxError(ValueError):
    def __init__(self, msg, line, column, pos):
        super().__init__(f"line {line} column {column} (char {pos}): {msg}")
        self.line, self.column, self.pos = line, column, pos


class SchemaError(ValueError):
    def __init__(self, path: str, msg: str):
        super().__init__(f"{path or '<document>'}: {msg}")
        self.path = path


@dataclass(frozen=True)
class InputDocument:
    open_book: OpenBookSpec
    knot: Optional[KnotOnPage] = None


def _path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


def parse_input(text: str) -> InputDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno, exc.pos) from None
    errors = sorted(
        jsonschema.Draft202012Validator(SCHEMA).iter_errors(raw), key=lambda e: list(e.absolute_path)
    )
    if errors:
        e = errors[0]
        raise SchemaError(_path(e.absolute_path), e.message)
    try:
        page = PageSignature(raw["page"]["genus"], raw["page"]["holes"])
    except PageModelError as exc:
        raise SchemaError("page", str(exc)) from None
    twists = []
    for i, tw in enumerate(raw["monodromy"]):
        twists.append(
            DehnTwist(_word(page, tw["word"], f"monodromy[{i}].word"), tw.get("sign", 1), tw.get("power", 1))
        )
    knot = None
    if "knot" in raw:
        knot = KnotOnPage(_word(page, raw["knot"]["word"], "knot.word"), raw["knot"].get("level", HIGH))
    return InputDocument(OpenBookSpec(page, tuple(twists)), knot)


def _word(page, tokens, path) -> CurveWord:
    try:
        return validate_word(page, CurveWord.parse(tokens))
    except PageModelError as exc:
        raise SchemaError(path, str(exc)) from None


def document_dict(doc: InputDocument) -> dict:
    ob = doc.open_book
    out = {
        "page": {"genus": ob.page.genus, "holes": ob.page.holes},
        "monodromy": [
            {"word": tw.curve.tokens(), "sign": tw.sign, "power": tw.power} for tw in ob.monodromy
        ],
    }
    if doc.knot is not None:
        out["knot"] = {"word": doc.knot.word.tokens(), "level": doc.knot.level}
    return out


def render_input(doc: InputDocument) -> str:
    return json.dumps(document_dict(doc), indent=2)


# -- reports ----------------------------------------------------------------

def number(x):
    """Exact rendering: ints stay ints, other rationals become "p/q"."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return x
    if isinstance(x, dict):
        return {k: number(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [number(v) for v in x]
    return x


def _euler_fields(ec, torsion, sigma, d3) -> dict:
    return {
        "h1": str(ec.h1),
        "h1_factors": list(ec.h1.factors),
        "euler_pd": list(ec.pd),
        "euler_zero": ec.is_zero,
        "euler_torsion": torsion,
        "signature": sigma,
        "d3": d3,
    }


def _contact_fields(p) -> dict:
    torsion = euler_is_torsion(p)
    return _euler_fields(euler_class(p), torsion, surgery_signature(p), d3_invariant(p) if torsion else None)


def _apply_level(doc: InputDocument, level: Optional[str]) -> InputDocument:
    if level is None or doc.knot is None:
        return doc
    return InputDocument(doc.open_book, KnotOnPage(doc.knot.word, level))


def run_subcommand(name: str, flags: argparse.Namespace, doc) -> dict:
    """Compute the report for ``name``; ``doc`` is a word for ``word-rot``."""
    if name == "word-rot":
        count, r = rotation_word_count(doc)
        out = {
            "word": doc.tokens(),
            "markers": " ".join(x if isinstance(x, str) else x.token for x in index_change_markers(doc)),
            "lambda_plus": count.lambda_plus,
            "rho_plus": count.rho_plus,
            "r": r,
        }
        if getattr(flags, "dual", False):
            d = dual_tangency_count(doc)
            out.update(lambda_minus=d.lambda_minus, rho_minus=d.rho_minus)
        return out

    doc = _apply_level(doc, getattr(flags, "level", None))
    ob = expand_multiplicities(doc.open_book) if flags.expanded else doc.open_book
    warn_list: list[str] = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if name == "invariants":
            if doc.knot is None:
                raise SchemaError("knot", "the invariants subcommand needs a knot")
            rep = full_report(ob, doc.knot, rational=flags.rational, both_levels=flags.both_levels)
            out = {
                "verdict": str(rep.verdict),
                "level": rep.level,
                "tb": rep.tb,
                "rot": rep.rot,
                "sl_plus": rep.sl_plus,
                "sl_minus": rep.sl_minus,
                "solution": list(rep.solution) if rep.solution is not None else None,
                "solution_unique": rep.solution_unique,
                "rot_indeterminacy": rep.rot_indeterminacy,
            }
            out.update(_euler_fields(rep.euler, rep.euler_torsion, rep.signature, rep.d3))
            if flags.both_levels:
                out["rot_by_level"] = dict(rep.rot_by_level)
            if rep.tb is not None and not rep.solution_unique:
                warn_list.append("Seifert class not unique; canonical solution used")
        elif name == "contact":
            out = _contact_fields(build_presentation(ob))
        elif name == "presentation":
            p = build_presentation(ob, doc.knot)
            out = {
                "size": p.size,
                "l": list(p.l_vector) if p.l_vector is not None else None,
                "Q": [list(r) for r in p.Q],
                "r": list(p.r_vector),
                "contact_coefficients": list(p.contact_coefficients),
                "topological_coefficients": [f"{a}/{b}" for a, b in p.topological_coefficients],
                "twist_rotations": [t.rotation for t in p.twists],
            }
            if p.knot_class is not None:
                out["knot_a"] = list(p.knot_class.a_coeffs)
                out["knot_b"] = list(p.knot_class.b_coeffs)
                out["knot_r"] = p.knot_rotation
        elif name == "homology":
            p = build_presentation(ob)
            h1 = first_homology(p)
            out = {"snf_diagonal": h1.snf.diagonal, "h1": str(h1), "h1_factors": list(h1.factors)}
        else:
            raise ValueError(f"unknown subcommand {name!r}")
    warn_list = list(dict.fromkeys([str(w.message) for w in caught] + warn_list))
    out["warnings"] = warn_list
    out["input"] = document_dict(InputDocument(ob, doc.knot))
    return out


def _text_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, list):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_text_value(x)}" for k, x in v.items())
    return str(v)


def render_text(report: dict) -> str:
    report = number(report)
    keys = [k for k in report if k != "input"]
    width = max((len(k) for k in keys), default=0)
    lines = []
    for k in keys:
        v = report[k]
        if isinstance(v, list) and v and all(isinstance(r, list) for r in v):
            lines.append(f"{k.ljust(width)} :")
            lines.extend(" " * (width + 3) + _text_value(r) for r in v)
        elif k == "warnings":
            for w in v:
                lines.append(f"{'warning'.ljust(width)} : {w}")
        else:
            lines.append(f"{k.ljust(width)} : {_text_value(v)}")
    return "\n".join(lines)


def render_json(report: dict) -> str:
    return json.dumps(number(report), indent=2)


# -- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    parser = argparse.ArgumentParser(prog="obinv", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "word-rot":
            sp.add_argument("word", nargs="+", help="letter tokens, e.g. a1 b2 A3 B4")
            sp.add_argument("--dual", action="store_true", help="also print the dual tangency tally")
            continue
        sp.add_argument("file", nargs="?", default="-", help="JSON input document, '-' for stdin")
        sp.add_argument("--expanded", action="store_true", help="replace twist powers by repeated twists")
        if name in ("invariants", "presentation"):
            sp.add_argument("--level", choices=(HIGH, LOW), default=None)
        if name == "invariants":
            sp.add_argument("--rational", action="store_true")
            sp.add_argument("--both-levels", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "word-rot":
            tokens = " ".join(args.word).split()
            doc = CurveWord(tuple(Letter.parse(t) for t in tokens))
        else:
            if args.file == "-":
                text = sys.stdin.read()
            else:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
            doc = parse_input(text)
        report = run_subcommand(args.command, args, doc)
    except (DocumentSyntaxError, SchemaError, PageModelError, la.LinalgError, OSError) as exc:
        print(f"obinv: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(render_json(report) if args.format == "json" else render_text(report))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
