"""Command-line interface: ``braidorder <command> ...``.

Exit codes: 0 success, 1 verification or property failure, 2 usage or
parse error, 3 undecided at the degree cap.

Defaults for the shared options can come from a JSON file named by the
``BRAIDORDER_CONFIG`` environment variable (or ``--config``); explicit
flags always win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict

from . import __version__
from .braid import CertificateError, make_gt_certificate
from .knorder import ActionLabel, format_kn, kn_compare, parse_kn, psi_extend
from .magnus import UndecidedAtCap, magnus_compare, magnus_expand
from .proptests import SUITES, RunConfig
from .surface import NAME as SURFACE_NAME
from .surface import SurfaceElem, build_reduction_system, pi1_compare, surface_expand
from .words import WordParseError, parse_word

CONFIG_ENV = "BRAIDORDER_CONFIG"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3


class UsageError(Exception):
    pass


def _schema(kind: str) -> str:
    return f"braidorder.{kind}/1"


def load_config(path: str | None) -> dict:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    unknown = set(data) - set(RunConfig.field_names())
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def make_config(args: argparse.Namespace) -> tuple[RunConfig, bool]:
    """The config plus whether an output format was chosen explicitly."""
    values = load_config(args.config)
    for name in RunConfig.field_names():
        v = getattr(args, name, None)
        if v is not None:
            values[name] = v
    try:
        return RunConfig(**values), "format" in values
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _x_name(v) -> str:
    return f"X_{v.index}"


# ---------------------------------------------------------------------------
# commands

def cmd_expand(args, cfg: RunConfig) -> tuple[int, dict, str]:
    if args.degree < 0:
        raise UsageError("degree must be >= 0")
    if args.surface:
        if args.degree < 2:
            raise UsageError("surface expansion needs degree >= 2")
        elem = SurfaceElem(parse_word(args.word, SURFACE_NAME), cfg.genus)
        f = surface_expand(elem, args.degree)
        payload = {"alphabet": "surface", "genus": cfg.genus}
    else:
        f = magnus_expand(parse_word(args.word, "x"), args.degree)
        payload = {"alphabet": "free"}
    payload["word"] = args.word
    payload["series"] = f.to_json(var_id=lambda v: v.index)
    return EXIT_OK, payload, f.format(var_name=_x_name)


def cmd_compare(args, cfg: RunConfig) -> tuple[int, dict, str]:
    kind = args.kind
    if kind == "free":
        a, b = parse_word(args.a, "x"), parse_word(args.b, "x")
        verdict = magnus_compare(a, b, d0=cfg.d0, cap=cfg.cap)
    elif kind == "surface":
        a = SurfaceElem(parse_word(args.a, SURFACE_NAME), cfg.genus)
        b = SurfaceElem(parse_word(args.b, SURFACE_NAME), cfg.genus)
        verdict = pi1_compare(a, b, cfg.d0, cfg.cap)
    else:
        n = args.strands
        if n is None:
            n = max(parse_kn(args.a, None, cfg.genus).n, parse_kn(args.b, None, cfg.genus).n)
        a, b = parse_kn(args.a, n, cfg.genus), parse_kn(args.b, n, cfg.genus)
        verdict = kn_compare(a, b, cfg.d0, cfg.cap)
    payload = {"kind": kind, "a": args.a, "b": args.b, "verdict": verdict.symbol}
    return EXIT_OK, payload, verdict.symbol


def _parse_label(text: str) -> ActionLabel:
    parts = [p.strip() for p in text.split(",")]
    try:
        nums = [int(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"bad label {text!r}; expected i,r or i,r,-1") from exc
    if len(nums) not in (2, 3):
        raise UsageError(f"bad label {text!r}; expected i,r or i,r,-1")
    return ActionLabel(*nums)


def cmd_act(args, cfg: RunConfig) -> tuple[int, dict, str]:
    k = parse_kn(args.element, args.strands, cfg.genus)
    for text in args.label:
        label = _parse_label(text)
        label.check(k.n, cfg.genus)
        k = psi_extend(label, k)
    out = format_kn(k)
    payload = {"n": k.n, "genus": cfg.genus, "labels": args.label,
               "input": args.element, "output": out}
    return EXIT_OK, payload, out


def cmd_rules(args, cfg: RunConfig) -> tuple[int, dict, str]:
    if args.degree < 2:
        raise UsageError("degree must be >= 2")
    rs = build_reduction_system(cfg.genus, args.degree)
    payload = rs.to_json()
    lines = []
    for rule in payload["rules"]:
        lead = " ".join(f"X_{x}" for x in rule["lead"])
        lines.append(f"{lead} -> ({len(rule['tail'])} terms)")
    return EXIT_OK, payload, "\n".join(lines)


def cmd_certify(args, cfg: RunConfig) -> tuple[int, dict, str]:
    try:
        cert = make_gt_certificate(args.n, args.i)
    except CertificateError as exc:
        return EXIT_FAIL, {"n": args.n, "i": args.i, "valid": False, "error": str(exc)}, str(exc)
    payload = cert.to_json()
    lines = [f"g = {payload['g_word']}  (n={cert.n}, i={cert.i})"]
    for s in payload["steps"]:
        lines.append(f"  [{s['status']}] {s['claim']}")
    lines.append("valid" if payload["valid"] else "INVALID")
    return (EXIT_OK if payload["valid"] else EXIT_FAIL), payload, "\n".join(lines)


def cmd_proptest(args, cfg: RunConfig) -> tuple[int, dict, str]:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    rep = SUITES[args.suite](cfg)
    payload = {"suite": args.suite, "config": asdict(cfg), "ok": rep.ok}
    payload.update(rep.to_json())
    text = f"{args.suite}: checked={rep.checked} violations={len(rep.violations)}"
    return (EXIT_OK if rep.ok else EXIT_FAIL), payload, text


# ---------------------------------------------------------------------------
# parser

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-g", "--genus", type=int, default=None, help="surface genus (default 2)")
    p.add_argument("-n", "--strands", type=int, default=None, help="number of strands")
    p.add_argument("--d0", type=int, default=None, help="initial truncation degree")
    p.add_argument("--cap", type=int, default=None, help="maximal truncation degree")
    p.add_argument("--format", choices=("text", "json"), default=None)
    p.add_argument("--config", default=None, help=f"JSON config file (default ${CONFIG_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="braidorder",
                                     description="Orders on free, surface and surface braid groups.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="Magnus expansion of a word")
    alpha = p.add_mutually_exclusive_group(required=True)
    alpha.add_argument("--free", action="store_true", help="word in x_1, x_2, ...")
    alpha.add_argument("--surface", action="store_true", help="word in w_1..w_2g")
    p.add_argument("word")
    p.add_argument("-d", "--degree", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("compare", help="compare two elements")
    p.add_argument("kind", choices=("free", "surface", "kn"))
    p.add_argument("a")
    p.add_argument("b")
    _common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("act", help="apply loop braids a_{i,r} to an element of K_n")
    p.add_argument("element")
    p.add_argument("-l", "--label", action="append", required=True,
                   help="i,r or i,r,-1 (repeatable; applied in order)")
    _common(p)
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("rules", help="dump the surface reduction system")
    p.add_argument("-d", "--degree", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_rules)

    p = sub.add_parser("certify", help="generalized torsion certificate")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-i", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default=None)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("proptest", help="run a property suite")
    p.add_argument("suite", help=", ".join(SUITES))
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    _common(p)
    p.set_defaults(func=cmd_proptest)
    return parser


def _emit(cfg_format: str, kind: str, payload: dict, text: str, out) -> None:
    if cfg_format == "json":
        doc = {"schema": _schema(kind)}
        doc.update(payload)
        if "schema" in payload:
            doc["schema"] = payload["schema"]
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg, explicit = make_config(args)
        if explicit:
            fmt = cfg.format
        else:
            fmt = "json" if args.command in ("certify", "proptest", "rules") else "text"
        code, payload, text = args.func(args, cfg)
    except UndecidedAtCap as exc:
        err.write(f"undecided: {exc}\n")
        return EXIT_UNDECIDED
    except WordParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    _emit(fmt, args.command, payload, text, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
