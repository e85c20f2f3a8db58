"""Command-line entry point.

Exit status: 0 on success or a passing check, 1 on a failing check, 2 on usage
or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from contextlib import contextmanager
from pathlib import Path

from .arrays import read_array, write_array
from .cosets import coset_partition, problem2_search
from .coverage import verify_ca, verify_oa
from .errors import MseqcaError, PostVerificationFailed
from .finite_field import build_tower
from .lp_bounds import build_and_emit_lp
from .modv import construct_family, existence_conditions, verify_modv
from .recipes import builtin_recipes, check_expect, build_from_recipe, lookup_recipe, parse_recipe
from .search import SearchConfig, find_ca
from .trace_arrays import fusion


class UsageError(Exception):
    pass


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            yield fh


def _read_input(path: str | None):
    if path is None or path == "-":
        return read_array(sys.stdin.read())
    return read_array(Path(path).read_text(encoding="ascii"))


def _load_recipe(spec: str):
    path = Path(spec)
    if path.is_file():
        return parse_recipe(path.read_text(encoding="ascii"))
    try:
        return lookup_recipe(spec)
    except KeyError:
        raise UsageError(f"no recipe file or builtin named {spec!r}") from None


def cmd_construct(args) -> int:
    if args.list:
        for name in builtin_recipes():
            print(name)
        return 0
    if not args.recipe:
        raise UsageError("construct needs --recipe (or --list)")
    recipe = _load_recipe(args.recipe)
    array = build_from_recipe(recipe)
    status = 0
    if not args.no_check:
        try:
            report = check_expect(recipe, array)
            if report is not None:
                print(report.summary(), file=sys.stderr)
        except PostVerificationFailed as exc:
            print(f"expect check failed: {exc}", file=sys.stderr)
            status = 1
    with _output(args.out) as fh:
        write_array(array, fh)
    return status


def cmd_verify(args) -> int:
    array = _read_input(args.input)
    if args.oa:
        report = verify_oa(array, args.strength)
    else:
        report = verify_ca(array, args.strength, args.lam)
    print(report.summary())
    for cols, tup, cnt in report.failures[: args.show]:
        print(f"  columns {list(cols)} tuple {list(tup)} count {cnt}")
    return 0 if report.verdict else 1


def cmd_search(args) -> int:
    tower = build_tower(args.p, args.e, args.t)
    if args.exps:
        res = find_ca(SearchConfig(tower, tuple(args.exps), args.budget_nodes, args.budget_secs))
        exps, nodes, exhausted = res.P, res.nodes_visited, res.exhausted
    else:
        if args.l is None:
            raise UsageError("search needs --l or --exps")
        p2 = problem2_search(tower, args.l, args.budget_nodes, args.budget_secs)
        res = p2.best
        exps, nodes, exhausted = p2.exps, sum(r.nodes_visited for r in p2.runs), p2.exhausted
    print(f"exps {' '.join(map(str, exps))}")
    print(f"best {' '.join(map(str, res.best))}")
    print(f"size {res.size}")
    print(f"nodes {nodes}")
    print(f"exhausted {'true' if exhausted else 'false'}")
    return 0


def cmd_cosets(args) -> int:
    for lead, members in coset_partition(args.p, args.w).items():
        print(f"{lead}: {' '.join(map(str, members))}")
    return 0


def cmd_modv(args) -> int:
    tower = build_tower(args.p, args.e, args.t)
    family = {"t3": "t3_full", "t4": "t4_ovoid", None: None}[args.family]
    if family is None:
        family = {3: "t3_full", 4: "t4_ovoid"}.get(args.t)
        if family is None:
            raise UsageError("--family is required unless t is 3 or 4")
    cond = existence_conditions(tower.q, args.t, args.v)
    print(f"conditions q={cond.q} t={cond.t} v={cond.v}: simple={cond.simple_ok} "
          f"sharp={cond.sharp_ok} corollary={cond.corollary_ok}")
    array = construct_family(tower, args.v, family)
    mode = {"full": "full", "dependent": "dependent_only"}[args.check]
    report = verify_modv(array, args.t, mode)
    print(report.summary())
    if args.out:
        with _output(args.out) as fh:
            write_array(array, fh)
    return 0 if report.verdict else 1


def cmd_lp(args) -> int:
    objective = args.objective.replace("-", "_")
    _, text = build_and_emit_lp(args.q, args.v, args.t, objective, args.r)
    with _output(args.out) as fh:
        fh.write(text)
    return 0


def cmd_fusion(args) -> int:
    array = _read_input(args.input)
    check = args.strength is not None
    for _ in range(args.times):
        array = fusion(array, args.strength or 1, check_input=check, check_output=check)
    with _output(args.out) as fh:
        write_array(array, fh)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mseqca", description="Covering arrays from maximal sequences.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build an array from a recipe")
    c.add_argument("--recipe", help="builtin name (see --list), parametric form, or recipe file")
    c.add_argument("--out", help="output file (default stdout)")
    c.add_argument("--no-check", action="store_true", help="skip the expect block")
    c.add_argument("--list", action="store_true", help="list builtin recipes")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check coverage of an array file")
    v.add_argument("--in", dest="input", help="array file (default stdin)")
    v.add_argument("--strength", type=int, required=True)
    v.add_argument("--lambda", dest="lam", type=int, default=1)
    v.add_argument("--oa", action="store_true", help="require exact index N / v^t")
    v.add_argument("--show", type=int, default=5, help="failures to print")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="backtracking search for a large column set")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--e", type=int, default=1)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--l", type=int)
    s.add_argument("--exps", type=int, nargs="+")
    s.add_argument("--budget-nodes", type=int)
    s.add_argument("--budget-secs", type=float)
    s.set_defaults(func=cmd_search)

    k = sub.add_parser("cosets", help="cyclotomic cosets of p modulo w")
    k.add_argument("--p", type=int, required=True)
    k.add_argument("--w", type=int, required=True)
    k.set_defaults(func=cmd_cosets)

    m = sub.add_parser("modv", help="build and check a mod-v family")
    m.add_argument("--p", type=int, required=True)
    m.add_argument("--e", type=int, default=1)
    m.add_argument("--t", type=int, required=True)
    m.add_argument("--v", type=int, required=True)
    m.add_argument("--family", choices=["t3", "t4"])
    m.add_argument("--check", choices=["full", "dependent"], default="full")
    m.add_argument("--out")
    m.set_defaults(func=cmd_modv)

    lp = sub.add_parser("lp", help="emit the tuple-count linear program")
    lp.add_argument("--q", type=int, required=True)
    lp.add_argument("--v", type=int, required=True)
    lp.add_argument("--t", type=int, required=True)
    lp.add_argument("--r", type=int, default=0)
    lp.add_argument("--objective", choices=["min-lo", "max-hi"], default="min-lo")
    lp.add_argument("--out")
    lp.set_defaults(func=cmd_lp)

    f = sub.add_parser("fusion", help="reduce the alphabet by one, dropping two rows")
    f.add_argument("--in", dest="input")
    f.add_argument("--times", type=int, default=1)
    f.add_argument("--strength", type=int, help="verify input and output at this strength")
    f.add_argument("--out")
    f.set_defaults(func=cmd_fusion)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        sys.stdout = open(os.devnull, "w")
        return 0
    except (UsageError, MseqcaError, OSError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
