"""Command line interface: ``adoframes <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 for bad
input or usage.
"""

import argparse
from dataclasses import replace
import json
import os
import sys

import numpy as np

from . import __version__
from .ado import build_representation, representation_to_json
from .algebra import algebra_from_json, algebra_to_json, jacobi_check
from .catalog import CATALOG, catalog_lookup, resolve_name
from .config import default_config
from .errors import (AdoFramesError, ChartBoundaryError, CoordinatesTooLargeError,
                     InputError, LogDomainError)
from .exact import format_fraction, to_fraction
from .geometry import group_of
from .matfunc import format_matrix
from .report import reports_to_json, run_algebra, run_all
from .symcatalog import symbolic_frame

__all__ = ["main", "build_parser"]

_INPUT_ERRORS = (InputError, CoordinatesTooLargeError, LogDomainError, ChartBoundaryError)


class _Failure(Exception):
    """A check ran and failed; maps to exit status 1."""


def _vector(text):
    try:
        return np.array([float(to_fraction(p.strip())) for p in text.split(",")])
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad coordinate list {text!r}") from exc


def _params(items):
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"parameters look like name=value, got {item!r}")
        out[name.strip()] = to_fraction(value.strip())
    return out


def _descriptor(args):
    return catalog_lookup(args.algebra, _params(args.param))


def _config(args):
    cfg = default_config()
    if getattr(args, "seed", None) is not None:
        cfg = replace(cfg, seed=args.seed)
    return cfg


def cmd_list(args, out):
    for entry in CATALOG.values():
        params = ",".join(entry.params) or "-"
        rng = entry.range_text or "-"
        aliases = ", ".join(entry.aliases)
        line = f"{entry.key:<16s} dim={entry.dim}  params={params:<11s} range: {rng}"
        if aliases:
            line += f"  aliases: {aliases}"
        print(line, file=out)
    return 0


def _constants_lines(desc):
    C = desc.constants
    lines = []
    for m, k, l, v in C.nonzero():
        lines.append(f"C^{m + 1}_{k + 1}{l + 1} = {format_fraction(v)}")
    return lines or ["abelian"]


def cmd_show(args, out):
    desc = _descriptor(args)
    print(f"{desc.label()}  ({desc.section})", file=out)
    for line in _constants_lines(desc):
        print(f"  {line}", file=out)
    frame = symbolic_frame(desc.name, algebra=desc)
    coords = frame.coordinates
    for which, prefix in (("xi", "xi"), ("eta", "eta"), ("sigma", "sigma")):
        print(f"{which}:", file=out)
        for i, row in enumerate(frame.render(which), 1):
            parts = [f"{c}: {e}" for c, e in zip(coords, row) if e != "0"]
            print(f"  {prefix}{i} = " + "; ".join(parts), file=out)
    for note in frame.corrections:
        print(f"correction: {note}", file=out)
    return 0


def cmd_check(args, out):
    if os.path.isfile(args.algebra):
        with open(args.algebra, encoding="utf-8") as fh:
            desc = algebra_from_json(fh.read())
    else:
        desc = _descriptor(args)
    report = jacobi_check(desc.constants)
    name = desc.label() or args.algebra
    if not report:
        raise _Failure(f"{name}: {report.describe()}")
    print(f"{name}: {report.describe()}", file=out)
    return 0


def cmd_represent(args, out):
    desc = _descriptor(args)
    rep = build_representation(desc, _config(args))
    if args.json:
        doc = {"algebra": json.loads(algebra_to_json(desc)),
               "method": rep.method,
               "representation": json.loads(representation_to_json(rep))}
        print(json.dumps(doc, indent=2), file=out)
        return 0
    print(f"{desc.label()}: {rep.method}, matrices of size {rep.rep_dim}", file=out)
    print(rep.describe(), file=out)
    print("basis: " + ", ".join(rep.basis_labels), file=out)
    return 0


def cmd_exp(args, out):
    desc = _descriptor(args)
    g = group_of(build_representation(desc, _config(args)), _config(args))
    coords = _vector(args.coords)
    element = g.element(coords)
    print(format_matrix(element.matrix), file=out)
    return 0


def cmd_compose(args, out):
    desc = _descriptor(args)
    g = group_of(build_representation(desc, _config(args)), _config(args))
    phi, resid = g.compose(_vector(args.a), _vector(args.b))
    print("phi = " + ", ".join(f"{v:.12g}" for v in phi), file=out)
    print(f"residual = {resid:.3e}", file=out)
    return 0


def cmd_frames(args, out):
    desc = _descriptor(args)
    cfg = _config(args)
    g = group_of(build_representation(desc, cfg), cfg)
    x = _vector(args.point)
    if x.shape != (desc.dim,):
        raise InputError(f"point needs {desc.dim} coordinates")
    xi, eta, sigma, cmat = (a[0] for a in g.frames(x[None]))
    for name, arr in (("xi", xi), ("eta", eta), ("sigma", sigma), ("c", cmat)):
        print(f"{name} =", file=out)
        print(format_matrix(arr), file=out)
    return 0


def _emit(reports, out):
    for r in reports:
        for line in r.lines():
            print(line, file=out)
    bad = [r.algebra + (f"{r.params}" if r.params else "") for r in reports if not r.passed]
    if bad:
        raise _Failure("verification failed for " + ", ".join(bad))
    return 0


def cmd_verify(args, out):
    cfg = _config(args)
    if args.all:
        return _emit(run_all(cfg), out)
    if args.algebra is None:
        raise InputError("name an algebra or pass --all")
    entry, fixed, renamed = resolve_name(args.algebra)
    params = _params(args.param)
    if entry.params and not params and not fixed and renamed is None:
        # a family without values: run every sample parameter
        descs = [catalog_lookup(entry.key, dict(zip(entry.params, s)))
                 for s in entry.samples]
    else:
        descs = [_descriptor(args)]
    return _emit([run_algebra(d, cfg) for d in descs], out)


def cmd_report(args, out):
    cfg = _config(args)
    if args.all:
        reports = run_all(cfg, timings=args.timings)
    elif args.algebra:
        reports = [run_algebra(_descriptor(args), cfg, args.timings)]
    else:
        raise InputError("name an algebra or pass --all")
    text = reports_to_json(reports)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote {len(reports)} reports to {args.out}", file=out)
    else:
        print(text, file=out)
    bad = [r.algebra for r in reports if not r.passed]
    if bad:
        raise _Failure("verification failed for " + ", ".join(bad))
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--param", action="append", metavar="NAME=VALUE",
                        help="family parameter, e.g. h=1/2 (repeatable)")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for sample points (default from ADOFRAMES_SEED)")

    parser = argparse.ArgumentParser(prog="adoframes", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="catalog keys with parameter ranges")
    for name, helptext in (("show", "constants and tabulated frames"),
                           ("check", "exact Jacobi test (name or JSON file)"),
                           ("represent", "faithful representation matrices")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("algebra")
        if name == "represent":
            p.add_argument("--json", action="store_true")
    p = sub.add_parser("exp", parents=[common], help="group element exp(a.Omega)")
    p.add_argument("algebra")
    p.add_argument("--coords", required=True)
    p = sub.add_parser("compose", parents=[common], help="composition phi(a, b)")
    p.add_argument("algebra")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p = sub.add_parser("frames", parents=[common], help="xi, eta, sigma and c at a point")
    p.add_argument("algebra")
    p.add_argument("--point", required=True)
    p = sub.add_parser("verify", parents=[common], help="full identity battery")
    p.add_argument("algebra", nargs="?")
    p.add_argument("--all", action="store_true")
    p = sub.add_parser("report", parents=[common], help="JSON run reports")
    p.add_argument("algebra", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--out")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")
    return parser


_COMMANDS = {"list": cmd_list, "show": cmd_show, "check": cmd_check,
             "represent": cmd_represent, "exp": cmd_exp, "compose": cmd_compose,
             "frames": cmd_frames, "verify": cmd_verify, "report": cmd_report}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, out)
    except _Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _INPUT_ERRORS as exc:
        item = getattr(args, "algebra", None)
        prefix = f"{item}: " if item else ""
        print(f"error: {prefix}{exc}", file=sys.stderr)
        return 2
    except AdoFramesError as exc:
        print(f"error: {getattr(args, 'algebra', '')}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
