"""karoubi command line: property suites and one-shot computations.

Exit status is 0 on success, 1 when a property fails or the mathematical
input is rejected, and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .completion import (
    CompletedObject,
    IdempotentCompletion,
    complete_functor,
    completed_morphism_from_json,
    completed_object_from_json,
)
from .equivalence import ExtPair, shin, tsadi
from .errors import KaroubiError
from .extensions import ExtensionObject, TildeExtension
from .linalg import rank_factorize_idempotent
from .matrix import Matrix
from .registry import Registry
from .rings import ring_from_tag
from .serialize import dumps
from .suites import SUITES, SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_json(text):
    # a path to a file or the JSON itself
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None


def _ring(tag):
    try:
        return ring_from_tag(tag)
    except KaroubiError as exc:
        raise UsageError(str(exc)) from None


def _emit(obj):
    print(dumps(obj))


# ------------------------------------------------------------------ commands


def cmd_run(args):
    seed = args.seed
    env = os.environ.get("KAROUBI_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise UsageError(f"KAROUBI_SEED must be an integer, got {env!r}") from None
    suites = tuple(s.strip() for s in args.suite.split(",") if s.strip())
    try:
        primes = tuple(int(p) for p in args.primes.split(",") if p.strip())
    except ValueError:
        raise UsageError(f"bad prime list {args.primes!r}") from None
    try:
        cfg = SuiteConfig(seed=seed, cases=args.cases, max_dim=args.max_dim, primes=primes,
                          with_q=args.with_q, suites=suites)
    except KeyError as exc:
        raise UsageError(f"{exc.args[0]}; known suites: all, {', '.join(SUITES)}") from None
    except KaroubiError as exc:
        raise UsageError(str(exc)) from None
    report = run_suite(cfg, jobs=args.jobs)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(report.to_json(), indent=1))
            fh.write("\n")
    groups = {}
    for e in report.entries:
        groups.setdefault((e["suite"], e["ring"]), []).append(e)
    for (suite, ring), entries in groups.items():
        bad = [e for e in entries if not e["pass"]]
        print(f"{'FAIL' if bad else 'PASS'} {suite} [{ring}] {len(entries) - len(bad)}/{len(entries)}")
        for e in bad:
            print(f"  failed: {e.get('law') or e.get('square')}: {dumps(e['counterexample'])[:500]}")
    t = report.totals()
    print(f"{t['passed']}/{t['entries']} properties passed in {report.wall_clock:.1f}s")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_split(args):
    ring = _ring(args.ring)
    e = Matrix.from_json(_load_json(args.matrix), ring)
    w = rank_factorize_idempotent(ring, e)
    _emit(w)
    return EXIT_OK


def _parse_completed(d, ring):
    if "f" in d:
        return completed_morphism_from_json(d, ring)
    return completed_object_from_json(d, ring)


def cmd_complete(args):
    ring = _ring(args.ring)
    reg = Registry(ring)
    if args.functor not in reg.functors:
        raise UsageError(f"unknown functor {args.functor!r}; known: {', '.join(sorted(reg.functors))}")
    C = IdempotentCompletion(reg.cat)
    x = _parse_completed(_load_json(args.value), ring)
    valid = C.is_valid_object(x) if isinstance(x, CompletedObject) else C.is_valid_morphism(x)
    if not valid:
        raise KaroubiError("not idempotent" if isinstance(x, CompletedObject) else "not a morphism of the completion")
    Ft = complete_functor(reg.functors[args.functor], C, C)
    _emit(Ft.obj(x) if isinstance(x, CompletedObject) else Ft.mor(x))
    return EXIT_OK


def _corner(d, dim, ring, e=None):
    # a completed object, a bare dimension (identity idempotent) or None
    if d is None:
        return CompletedObject(dim, Matrix.identity(ring, dim) if e is None else e)
    if isinstance(d, int):
        return CompletedObject(d, Matrix.identity(ring, d))
    return completed_object_from_json(d, ring)


def tilde_object_from_json(d, ring) -> ExtensionObject:
    """An object ``((A, e_A), (C, e_C), (e_A, alpha, e_C))`` of the tilde extension category.

    A bare matrix ``alpha`` stands for ``(id, alpha, id)``.
    """
    if isinstance(d, list) or "alpha" not in d:
        alpha = Matrix.from_json(d, ring)
        d = {"A": alpha.rows, "C": alpha.cols, "alpha": d}
    raw = d["alpha"]
    if isinstance(raw, dict) and "e_A" in raw:
        t = TildeExtension(*(Matrix.from_json(raw[k], ring) for k in ("e_A", "alpha", "e_C")))
        A = _corner(d.get("A"), t.e_A.rows, ring, t.e_A)
        C = _corner(d.get("C"), t.e_C.rows, ring, t.e_C)
    else:
        alpha = Matrix.from_json(raw, ring)
        A, C = _corner(d.get("A"), alpha.rows, ring), _corner(d.get("C"), alpha.cols, ring)
        t = TildeExtension(A.e, alpha, C.e)
    return ExtensionObject(A, C, t)


def cmd_roundtrip(args):
    ring = _ring(args.ring)
    reg = Registry(ring)
    P = ExtPair(reg.E, reg.T)
    x = tilde_object_from_json(_load_json(args.value), ring)
    if not P.ext_tilde.is_valid_object(x):
        raise KaroubiError("not an object of the tilde extension category")
    S, T = shin(P), tsadi(P)
    sx = S.obj(x)
    back = T.obj(sx)
    _emit({"shin": sx})
    _emit({"tsadi": back})
    if P.ext_tilde.obj_eq(back, x):
        print("roundtrip: exact")
        return EXIT_OK
    print("roundtrip: MISMATCH", file=sys.stderr)
    return EXIT_FAIL


# -------------------------------------------------------------------- parser


def build_parser():
    p = _Parser(prog="karoubi", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="run property suites")
    r.add_argument("--suite", default="all", help="suite name, comma list, or 'all'")
    r.add_argument("--seed", type=int, default=1)
    r.add_argument("--cases", type=int, default=200)
    r.add_argument("--max-dim", type=int, default=4)
    r.add_argument("--primes", default="2,5")
    r.add_argument("--with-q", action="store_true", help="also run over the rationals")
    r.add_argument("--out", help="write the JSON report here")
    r.add_argument("--jobs", type=int, default=1, help="worker processes")
    r.set_defaults(func=cmd_run)

    s = sub.add_parser("split", help="rank-factorize an idempotent matrix")
    s.add_argument("matrix", help="matrix JSON or a file holding it")
    s.add_argument("--ring", required=True)
    s.set_defaults(func=cmd_split)

    c = sub.add_parser("complete", help="apply a completed registry functor")
    c.add_argument("functor")
    c.add_argument("value", help="completed object or morphism JSON")
    c.add_argument("--ring", required=True)
    c.set_defaults(func=cmd_complete)

    t = sub.add_parser("roundtrip", help="apply Shin then Tsadi to a tilde extension")
    t.add_argument("value", help="tilde-extension object JSON")
    t.add_argument("--ring", required=True)
    t.set_defaults(func=cmd_roundtrip)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        return args.func(args)
    except UsageError as exc:
        print(f"karoubi: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KaroubiError, KeyError, TypeError, ValueError) as exc:
        print(f"karoubi: error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
