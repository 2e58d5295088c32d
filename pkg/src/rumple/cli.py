"""The ``rumple`` command line.

Exit codes: 0 affirmative, 1 negative but valid, 2 invalid input or usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from rumple import affine, core, extensions, permgroup, search, yangbaxter
from rumple.core import Magma
from rumple.errors import ParseError, RumpleError

OK, NO, BAD = 0, 1, 2


@dataclass
class Report:
    subject: str
    predicates: dict = field(default_factory=dict)
    groups: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"subject": self.subject, "predicates": self.predicates,
                "groups": self.groups, "notes": self.notes}

    def text(self) -> str:
        lines = [f"subject: {self.subject}"]
        lines += [f"  {k}: {str(v).lower()}" for k, v in self.predicates.items()]
        for name, g in self.groups.items():
            lines.append(f"  {name}: " + ", ".join(f"{k}={str(v).lower()}" for k, v in g.items()))
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


# -- I/O ----------------------------------------------------------------------

def _read(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(str(exc)) from exc


def _json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def load_magma(path) -> Magma:
    """A .mag file, a JSON table (bare list or {"table": ...}), or an affine
    datum JSON."""
    text = _read(path)
    if text.lstrip().startswith(("[", "{")):
        obj = _json(text)
        if isinstance(obj, dict) and "factors" in obj and "c" in obj:
            return affine.aff_to_magma(_load_datum_obj(obj))
        rows = obj.get("table") if isinstance(obj, dict) else obj
        if rows is None:
            raise ParseError("JSON object has no 'table'")
        try:
            return core.magma(rows)
        except (TypeError, ValueError) as exc:
            raise ParseError(str(exc)) from exc
    return core.loads_mag(text)


def _load_datum_obj(obj):
    try:
        return affine.AffineDatum.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, RumpleError):
            raise
        raise ParseError(f"bad affine datum: {exc}") from exc


def load_datum(path):
    return _load_datum_obj(_json(_read(path)))


def load_solution(path):
    obj = _json(_read(path))
    try:
        return yangbaxter.SetSolution.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad solution: {exc}") from exc


def emit(args, text):
    if getattr(args, "out", None):
        search._atomic_write(args.out, text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def emit_magma(args, X: Magma):
    if args.json:
        emit(args, json.dumps({"order": X.order, "table": X.table.tolist()}))
    else:
        emit(args, core.dumps_mag(X))


def _matrix(text, k, name):
    try:
        vals = [int(v) for v in text.replace(";", ",").split(",") if v.strip()]
    except ValueError as exc:
        raise ParseError(f"--{name}: {exc}") from exc
    if len(vals) != k * k:
        raise ParseError(f"--{name} needs {k * k} entries, got {len(vals)}")
    return np.array(vals, dtype=np.int64).reshape(k, k)


# -- commands -------------------------------------------------------------------

def build_report(X: Magma, subject: str) -> Report:
    R = Report(subject)
    P = R.predicates
    P["left_quasigroup"] = core.is_left_quasigroup(X)
    P["quasigroup"] = core.is_quasigroup(X)
    P["left_rump"] = core.satisfies_left_rump(X)
    P["right_rump"] = core.satisfies_right_rump(X)
    P["uniquely_2_divisible"] = core.is_uniquely_2_divisible(X)
    P["rack"] = core.is_rack(X)
    P["quandle"] = core.is_quandle(X)
    P["2_reductive"] = core.is_2_reductive(X)
    P["delta_bijective"] = core.is_delta_bijective(X)
    P["rumple"] = core.is_rumple(X)
    P["latin"] = P["rumple"] and P["quasigroup"]
    P["both_sided"] = P["latin"] and core.is_both_sided_rumple(X)
    if P["rumple"]:
        s = yangbaxter.rumple_to_solution(X)
        P["yb_round_trip"] = bool(yangbaxter.satisfies_yb(s) and yangbaxter.is_involutive(s)
                                  and yangbaxter.solution_to_rumple(s) == X)
        P["biquandle"] = yangbaxter.is_biquandle(s) is not None
    if P["left_quasigroup"]:
        for name, fn in (("lmlt", permgroup.lmlt), ("dis_plus", permgroup.dis_plus),
                         ("dis_minus", permgroup.dis_minus), ("dis", permgroup.dis)):
            try:
                R.groups[name] = permgroup.report(fn(X))
            except RumpleError as exc:
                R.notes.append(f"{name}: {exc}")
    if P["latin"]:
        P["affine"] = affine.is_affine(X)
        P["group_isotopic"] = affine.is_group_isotopic(X)
    return R


def cmd_verify(args):
    X = load_magma(args.path)
    R = build_report(X, args.path)
    emit(args, json.dumps(R.to_json()) if args.json else R.text())
    return OK if R.predicates["rumple"] else NO


def cmd_enumerate(args):
    if args.order is None:
        raise ParseError("--order is required")
    cfg = search.SearchConfig(args.order, args.latin, args.count_only, args.workers,
                              checkpoint=args.checkpoint)
    res = search.enumerate_rumples(cfg)
    if args.count_only:
        if args.json:
            emit(args, json.dumps({"order": res.order, "latin": res.latin_only, "count": res.count}))
        else:
            emit(args, str(res.count))
    else:
        emit(args, "".join(json.dumps(search.record_for(X)) + "\n" for X in res.magmas))
    return OK


def cmd_affine(args):
    if args.action == "enumerate":
        if args.group is None:
            raise ParseError("--group is required")
        G = affine.parse_group(args.group)
        data = affine.enumerate_affine_latin(G)
        if args.count_only:
            emit(args, json.dumps({"group": list(G.factors), "count": len(data)})
                 if args.json else str(len(data)))
        else:
            emit(args, "".join(json.dumps(D.to_json()) + "\n" for D in data))
        return OK
    if args.action == "check":
        D = load_datum(args.paths[0])
        G = D.group
        res = {"rump_condition": bool(affine.rump_condition(G, D.phi, D.psi)),
               "phi_automorphism": bool(affine.is_automorphism(G, D.phi)),
               "psi_automorphism": bool(affine.is_automorphism(G, D.psi))}
        X = affine.aff_to_magma(D)
        res["rumple"] = core.is_rumple(X)
        res["latin"] = res["rumple"] and core.is_quasigroup(X)
        emit(args, json.dumps(res) if args.json else
             "\n".join(f"{k}: {str(v).lower()}" for k, v in res.items()))
        return OK if res["latin"] else NO
    if args.action == "isomorphic":
        if len(args.paths) != 2:
            raise ParseError("isomorphic needs two datum files")
        D1, D2 = load_datum(args.paths[0]), load_datum(args.paths[1])
        w = affine.drapal_isomorphic(D1, D2)
        if args.json:
            emit(args, json.dumps({"isomorphic": w is not None} if w is None else
                                  {"isomorphic": True, "alpha": np.asarray(w[0]).tolist(),
                                   "u": np.asarray(w[1]).tolist()}))
        else:
            emit(args, "true" if w is not None else "false")
        return OK if w is not None else NO
    raise ParseError(f"unknown affine action {args.action}")


def cmd_affinize(args):
    X = load_magma(args.path)
    D = affine.affinize(X)
    if D is None:
        emit(args, json.dumps({"affine": False}) if args.json else "not affine")
        return NO
    emit(args, json.dumps(D.to_json()))
    return OK


def cmd_extend(args):
    if args.action == "klein":
        F = load_magma(args.path)
        E = extensions.klein_extension(F)
        if args.json:
            emit(args, json.dumps(E.to_json()))
        else:
            emit(args, core.dumps_mag(extensions.ext_to_magma(E)))
        return OK
    base = args.base or args.path
    if args.group is None or base is None or args.phi is None or args.psi is None:
        raise ParseError("--group, --phi, --psi and a base table are required")
    G = affine.parse_group(args.group)
    F = load_magma(base)
    phi = _matrix(args.phi, G.rank, "phi")
    psi = _matrix(args.psi, G.rank, "psi")
    if args.action == "solve":
        basis = extensions.solve_cocycles(G, F, phi, psi)
        if args.count_only:
            emit(args, str(len(basis)))
        else:
            emit(args, json.dumps({"dimension": len(basis),
                                   "basis": [b.tolist() for b in basis]}))
        return OK
    if args.action == "search-witness":
        res = extensions.search_witnesses(G, F, phi, psi, args.limit)
        emit(args, json.dumps(res))
        return OK if any(v is not None for v in res["found"].values()) else NO
    raise ParseError(f"unknown extend action {args.action}")


def cmd_dual(args):
    emit_magma(args, core.dual_rumple(load_magma(args.path)))
    return OK


def cmd_opposite(args):
    emit_magma(args, core.opposite(load_magma(args.path)))
    return OK


def cmd_yb(args):
    if args.action == "from":
        s = yangbaxter.rumple_to_solution(load_magma(args.path))
        emit(args, json.dumps(s.to_json()))
        return OK
    s = load_solution(args.path)
    if args.action == "to":
        if not yangbaxter.is_left_nondegenerate(s):
            raise ParseError("r1 rows must be permutations")
        emit_magma(args, yangbaxter.solution_to_rumple(s))
        return OK
    res = {"yang_baxter": bool(yangbaxter.satisfies_yb(s)),
           "involutive": bool(yangbaxter.is_involutive(s)),
           "nondegenerate": bool(yangbaxter.is_nondegenerate(s))}
    emit(args, json.dumps(res) if args.json else
         "\n".join(f"{k}: {str(v).lower()}" for k, v in res.items()))
    return OK if all(res.values()) else NO


def cmd_isotope(args):
    X = load_magma(args.path)
    n = X.order
    if not (0 <= args.e < n and 0 <= args.f < n):
        raise ParseError("--e and --f must be elements of the magma")
    emit_magma(args, core.principal_loop_isotope(X, args.e, args.f))
    return OK


# -- parser -------------------------------------------------------------------

def _common(p):
    p.add_argument("--out", help="write output atomically to PATH")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rumple", description="Rumples and Yang-Baxter solutions")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the predicate battery on a table")
    p.add_argument("path")
    _common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("enumerate", help="rumples of a given order up to isomorphism")
    p.add_argument("--order", type=int)
    p.add_argument("--latin", action="store_true")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint")
    _common(p)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("affine", help="affine latin rumples")
    p.add_argument("action", choices=["enumerate", "check", "isomorphic"])
    p.add_argument("paths", nargs="*")
    p.add_argument("--group")
    p.add_argument("--count-only", action="store_true")
    _common(p)
    p.set_defaults(fn=cmd_affine)

    p = sub.add_parser("affinize", help="affine representation of a latin rumple")
    p.add_argument("path")
    _common(p)
    p.set_defaults(fn=cmd_affinize)

    p = sub.add_parser("extend", help="central extensions")
    p.add_argument("action", choices=["klein", "solve", "search-witness"])
    p.add_argument("path", nargs="?")
    p.add_argument("--group")
    p.add_argument("--base")
    p.add_argument("--phi")
    p.add_argument("--psi")
    p.add_argument("--limit", type=int, default=4096)
    p.add_argument("--count-only", action="store_true")
    _common(p)
    p.set_defaults(fn=cmd_extend)

    for name, fn, text in (("dual", cmd_dual, "dual rumple"),
                           ("opposite", cmd_opposite, "opposite magma")):
        p = sub.add_parser(name, help=text)
        p.add_argument("path")
        _common(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("yb", help="set-theoretic Yang-Baxter solutions")
    p.add_argument("action", choices=["check", "from", "to"])
    p.add_argument("path")
    _common(p)
    p.set_defaults(fn=cmd_yb)

    p = sub.add_parser("isotope", help="principal loop isotope x o y = (x/e)(f\\y)")
    p.add_argument("path")
    p.add_argument("--e", type=int, default=0)
    p.add_argument("--f", type=int, default=0)
    _common(p)
    p.set_defaults(fn=cmd_isotope)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return BAD if exc.code else OK
    if args.command == "extend" and args.action == "klein" and not args.path:
        print("error: extend klein needs a base file", file=sys.stderr)
        return BAD
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return BAD
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD
    except (RumpleError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return NO if isinstance(exc, RumpleError) and not isinstance(exc, ValueError) else BAD


if __name__ == "__main__":
    sys.exit(main())
