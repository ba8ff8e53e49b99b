"""Command-line driver: scalar sets, constructions, verification, polytopes.

Every command prints one JSON report on stdout and a short summary (with
timings) on stderr. Exit status: 0 pass, 1 verification failure, 2 resource
cap exceeded, 3 usage error.
"""

import argparse
import json
import sys
import time

from . import linalg as la
from .field import field_of_order
from .forms import build_phi, invariant_alternating_forms, invariant_quadratic_forms, preserves_phi
from .groups import DEFAULT_CAP, CapExceededError, is_involution, verify_string_c_group
from .polytope import POLYTOPE_CAP, build_polytope, export_incidence
from .strings import (Kind, build_sp4_rank4, build_string_generators, check_isometries,
                      choose_scalars_for_type, choose_scalars_symplectic, scalar_set_A,
                      scalar_set_A0, symmetric_string)

EXIT_OK, EXIT_FAIL, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 3

TYPE_ALIASES = {"+": "+", "plus": "+", "-": "-", "minus": "-", "sp": "sp", "sp4": "sp4",
                "sym": "sym"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# construction -------------------------------------------------------------------

def _field(q):
    try:
        return field_of_order(q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_scalars(text):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot parse scalars {text!r}") from None


def construct_string(q, d, typ, scalars=None):
    """The generator string selected by the command-line parameters."""
    if typ not in TYPE_ALIASES:
        raise UsageError(f"unknown type {typ!r}")
    typ = TYPE_ALIASES[typ]
    F = _field(q)
    if typ == "sym":
        if q != 2:
            raise UsageError("type sym is the GF(2) demonstration mode and needs q = 2")
        if d is None or d < 2:
            raise UsageError("type sym needs --d >= 2")
        return symmetric_string(d)
    if q == 2:
        raise UsageError("over GF(2) the symmetries of the standard basis generate the "
                         "symmetric group, not a classical group (q >= 4 needed); "
                         "use --type sym for that case")
    if typ == "sp4":
        if d not in (None, 4):
            raise UsageError("type sp4 always has d = 4")
        if scalars is not None:
            raise UsageError("type sp4 takes no scalars")
        return build_sp4_rank4(F)
    if d is None:
        raise UsageError(f"type {typ} needs --d")
    if typ in "+-" and (d < 2 or d % 2):
        raise UsageError(f"type {typ} needs even d >= 2, got {d}")
    if typ == "sp" and (d < 3 or d % 2 == 0):
        raise UsageError(f"type sp needs odd d >= 3, got {d}")
    try:
        if scalars is None:
            if typ == "sp":
                scalars = choose_scalars_symplectic(F, d)
            else:
                scalars = choose_scalars_for_type(F, d, typ)
        if len(scalars) != d - 1:
            raise UsageError(f"expected {d - 1} scalars, got {len(scalars)}")
        gs = build_string_generators(build_phi(F, scalars))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    expected = {"+": Kind.ORTH_PLUS, "-": Kind.ORTH_MINUS, "sp": Kind.SYMPLECTIC}[typ]
    if gs.kind is not expected:
        raise UsageError(f"scalars {list(scalars)} give kind {gs.kind.value}, not {typ}")
    return gs


def string_parameters(gs, typ):
    out = {"q": gs.field.q, "d": gs.space.d, "type": TYPE_ALIASES[typ],
           "scalars": list(gs.scalars) if gs.scalars is not None else None}
    out.update({k: int(v) for k, v in gs.meta.items()})
    return out


# generator files --------------------------------------------------------------

def generator_text(gs) -> str:
    lines = [f"# q: {gs.field.q}", f"# kind: {gs.kind.value}"]
    if gs.scalars is not None:
        lines.append("# scalars: " + ",".join(str(a) for a in gs.scalars))
    lines.extend(la.to_text(g) for g in gs.gens)
    return "\n".join(lines) + "\n"


def read_generator_file(path):
    """(directives, matrix texts) from a generator file."""
    directives = {}
    mats = []
    try:
        with open(path, encoding="ascii") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    for line in lines:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if sep and key.strip() in ("q", "kind", "scalars"):
                directives[key.strip()] = value.strip()
            continue
        mats.append(line)
    if not mats:
        raise UsageError(f"{path} contains no matrices")
    return directives, mats


def _file_isometry(F, gens, scalars):
    """Whether gens preserve the form Phi(scalars), or failing that some nonzero form."""
    if scalars is not None:
        s = build_phi(F, scalars)
        if s.d != gens[0].shape[0]:
            raise UsageError("scalar count does not match the matrix size")
        return all(preserves_phi(s, g) for g in gens)
    if invariant_quadratic_forms(F, gens):
        return True
    return bool(invariant_alternating_forms(F, gens))


# commands ---------------------------------------------------------------------

def _emit(report):
    sys.stdout.write(json.dumps(report, indent=2) + "\n")


def _note(msg):
    print(msg, file=sys.stderr)


def cmd_scalars(args):
    F = _field(args.q)
    A0 = scalar_set_A0(F)
    report = {"command": args.echo, "parameters": {"q": F.q}, "A0": A0, "A": scalar_set_A(F)}
    if F.q < 4:
        report["note"] = ("over GF(2) the string generators span a symmetric group, "
                          "not a classical group; see --type sym")
    report["outcome"] = "pass"
    _emit(report)
    _note(f"q={F.q}: |A0|={len(A0)}, |A|={len(report['A'])}")
    return EXIT_OK


def cmd_construct(args):
    gs = construct_string(args.q, args.d, args.type, _parse_scalars(args.scalars))
    report = {
        "command": args.echo,
        "parameters": string_parameters(gs, args.type),
        "kind": gs.kind.value,
        "phi": la.to_text(gs.space.phi),
        "generators": [la.to_text(g) for g in gs.gens],
        "outcome": "pass",
    }
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(generator_text(gs))
        report["out"] = args.out
    _emit(report)
    _note(f"constructed {len(gs.gens)} generators of kind {gs.kind.value}")
    return EXIT_OK


def _verify(F, gens, isometry, kind, params, args):
    """Report dict and exit code; non-involutions fail before the group checks."""
    bad = [i for i, g in enumerate(gens) if not is_involution(F, g)]
    if bad or any(la.rank(F, g) != g.shape[0] for g in gens):
        rep = {"kind": kind, "parameters": params, "isometry": isometry,
               "string_condition": False, "intersection_property": None,
               "intersection_mode": args.mode, "group_order": None, "schlafli": None,
               "note": f"generators {bad} are not involutions"}
        return rep, EXIT_FAIL
    rep = verify_string_c_group(F, gens, mode=args.mode, cap=args.cap, kind=kind,
                                parameters=params, isometry=isometry, threads=args.threads)
    return rep.as_dict(), EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify(args):
    if args.gens:
        directives, texts = read_generator_file(args.gens)
        q = args.q if args.q is not None else int(directives.get("q", 0) or 0)
        if not q:
            raise UsageError("give --q or a '# q:' line in the generator file")
        F = _field(q)
        try:
            gens = [la.from_text(F, t) for t in texts]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if len({g.shape for g in gens}) != 1 or gens[0].shape[0] != gens[0].shape[1]:
            raise UsageError("generators must be square matrices of one size")
        scalars = _parse_scalars(args.scalars or directives.get("scalars"))
        kind = directives.get("kind", "")
        params = {"q": q, "d": gens[0].shape[0], "type": kind, "scalars": scalars,
                  "gens": args.gens}
        isometry = _file_isometry(F, gens, scalars)
    else:
        if args.q is None or args.type is None:
            raise UsageError("verify needs --gens or both --q and --type")
        gs = construct_string(args.q, args.d, args.type, _parse_scalars(args.scalars))
        F, gens, kind = gs.field, list(gs.gens), gs.kind.value
        params = string_parameters(gs, args.type)
        isometry = check_isometries(gs)
    rep, code = _verify(F, gens, isometry, kind, params, args)
    report = {"command": args.echo, "parameters": params, "verification": rep,
              "outcome": "pass" if code == EXIT_OK else "fail"}
    _emit(report)
    _note(f"verify: {report['outcome']} (order {rep['group_order']}, "
          f"schlafli {rep['schlafli']})")
    return code


def cmd_polytope(args):
    if not args.out:
        raise UsageError("polytope needs --out")
    gs = construct_string(args.q, args.d, args.type, _parse_scalars(args.scalars))
    params = string_parameters(gs, args.type)
    rep, code = _verify(gs.field, list(gs.gens), check_isometries(gs), gs.kind.value, params, args)
    report = {"command": args.echo, "parameters": params, "verification": rep}
    if code == EXIT_OK:
        p = build_polytope(gs.field, gs.gens, cap=args.cap, verify=False)
        export_incidence(p, args.out)
        report["polytope"] = {"rank": p.rank, "order": p.order, "f_vector": list(p.f_vector),
                              "schlafli": list(p.schlafli), "flag_count": p.flag_count,
                              "out": args.out}
    report["outcome"] = "pass" if code == EXIT_OK else "fail"
    _emit(report)
    if code == EXIT_OK:
        _note(f"polytope: f-vector {report['polytope']['f_vector']} written to {args.out}")
    return code


def build_parser():
    p = _Parser(prog="stringc2", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, cap=DEFAULT_CAP, need_type=True):
        sp.add_argument("--q", type=int, required=need_type)
        sp.add_argument("--d", type=int)
        sp.add_argument("--type", required=need_type, help="+, -, sp, sp4 or sym (q = 2)")
        sp.add_argument("--scalars", help="comma-separated field elements")
        sp.add_argument("--mode", choices=("full", "recursive"), default="recursive")
        sp.add_argument("--cap", type=int, default=cap)
        sp.add_argument("--out")
        sp.add_argument("--threads", type=int, default=1)

    s = sub.add_parser("scalars", help="list the scalar sets A0 and A")
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(func=cmd_scalars)
    common(sub.add_parser("construct", help="print generator matrices"))
    sub.choices["construct"].set_defaults(func=cmd_construct)
    v = sub.add_parser("verify", help="check the string C-group conditions")
    common(v, need_type=False)
    v.add_argument("--gens", help="generator file, one matrix per line")
    v.set_defaults(func=cmd_verify)
    pp = sub.add_parser("polytope", help="build and export the polytope")
    common(pp, cap=POLYTOPE_CAP)
    pp.set_defaults(func=cmd_polytope)
    s4 = sub.add_parser("sp4", help="the rank-4 Sp(4, q) generators (construct --type sp4)")
    common(s4, need_type=False)
    s4.set_defaults(func=cmd_construct, type="sp4")
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing command")
        if getattr(args, "threads", 1) < 1:
            raise UsageError("--threads must be at least 1")
        if args.command == "sp4":
            args.type = "sp4"
        args.echo = " ".join(argv)
        code = args.func(args)
    except UsageError as exc:
        _emit({"command": " ".join(argv), "outcome": "usage_error", "error": str(exc)})
        _note(f"usage error: {exc}")
        return EXIT_USAGE
    except CapExceededError as exc:
        _emit({"command": " ".join(argv), "outcome": "cap_exceeded", "error": str(exc)})
        _note(f"cap exceeded: {exc}")
        return EXIT_CAP
    _note(f"elapsed {time.perf_counter() - t0:.2f} s")
    return code


if __name__ == "__main__":
    sys.exit(main())
