"""Command-line interface: ``descalg <command> ...``.

Exit codes: 0 when a check passes (or a counterexample reproduces its
recorded witness), 1 when a check runs to completion and fails, 2 for usage
errors and exceeded budgets.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import group_algebra as ga
from . import identity_lab as lab
from . import ppartition as pp
from .perm_core import (
    STATISTIC_IDS,
    BudgetExceeded,
    GroupDescriptor,
    InvalidInput,
    parse_element,
    resolve_statistic,
    statistic,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_VARIABLES = ("t", "q", "t2", "q2", "x", "y")


@dataclass(frozen=True)
class CliConfig:
    json: bool = False
    max_order: int | None = None
    budget: int | None = None
    seed: int = 0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _emit(cfg: CliConfig, payload: dict, text: str) -> None:
    if cfg.json:
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        print(text)


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return str(v)
    return v


# ---------------------------------------------------------------------------
# argument helpers


def _group(text: str) -> GroupDescriptor:
    return GroupDescriptor.parse(text)


def _get_group(d: GroupDescriptor, cfg: CliConfig) -> ga.Group:
    return ga.Group(d, cfg.budget) if cfg.budget is not None else ga.get_group(d)


def _stat_value(text: str):
    """``3`` -> 3; ``1,3`` or ``[1,3]`` or ``{}`` -> a tuple."""
    s = text.strip().strip("[]{}()")
    if not s:
        return ()
    if "," in text or text.strip()[:1] in "[{(":
        return tuple(int(x) for x in s.split(","))
    return int(s)


def _family(text: str):
    """Group spec, or ``multiset:2,1``, ``signed:2,1``, ``colored-multiset:3:2,1``."""
    head, _, rest = text.partition(":")
    if head == "multiset":
        return lab.WordFamily("multiset", tuple(int(a) for a in rest.split(",")))
    if head == "signed":
        return lab.WordFamily("signedMultiset", tuple(int(a) for a in rest.split(",")))
    if head == "colored-multiset":
        r, _, alpha = rest.partition(":")
        return lab.WordFamily("coloredMultiset", tuple(int(a) for a in alpha.split(",")), int(r))
    return _group(text)


def _stats_spec(text: str) -> list[tuple[str, str]]:
    out = []
    for i, item in enumerate(t for t in text.split(",") if t):
        name, _, var = item.partition(":")
        out.append((name, var or DEFAULT_VARIABLES[i]))
    return out


def _infer_element(text: str, r: int | None = None):
    """Read an element, inferring its group from the text."""
    text = text.strip()
    if "^" in text:
        if r is None:
            raise InvalidInput("colored elements need --group colored:r,n or --r")
        n = len(text.split())
        return parse_element(text, GroupDescriptor.colored(r, n))
    if "," in text or "-" in text:
        n = len([t for t in text.replace(" ", ",").split(",") if t])
        return parse_element(text, GroupDescriptor.hyperoctahedral(n))
    return parse_element(text, GroupDescriptor.symmetric(len(text)))


def _algebra_expr(G: ga.Group, text: str) -> ga.AlgebraElement:
    """``2*1234 + 2341`` or ``1/2*-1,2``; terms are separated by ``+``."""
    coeffs: dict = {}
    for term in text.split("+"):
        term = term.strip()
        if not term:
            continue
        c, star, g = term.rpartition("*")
        coeff = Fraction(c) if star else Fraction(1)
        g = g if star else term
        el = G.parse(g)
        coeffs[el] = coeffs.get(el, 0) + coeff
    return ga.AlgebraElement.from_dict(G, coeffs)


def _element_for_flavor(flavor: str, text: str, r: int):
    if flavor in ("plain", "cyclic"):
        return parse_element(text, GroupDescriptor.symmetric(len(text.replace(",", ""))))
    if flavor == "colored":
        return parse_element(text, GroupDescriptor.colored(r, len(text.split())))
    n = len([t for t in text.replace(" ", ",").split(",") if t])
    return parse_element(text, GroupDescriptor.hyperoctahedral(n))


def _index_set(text: str) -> list[int]:
    s = text.strip().strip("[]{}")
    return [int(x) for x in s.split(",") if x.strip()]


def _read_poset(path: str) -> pp.FlavoredPoset:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return pp.parse_poset(text)


# ---------------------------------------------------------------------------
# commands


def cmd_stats(a, cfg: CliConfig) -> int:
    d = _group(a.group)
    g = parse_element(a.element, d)
    out = {}
    for s in STATISTIC_IDS:
        try:
            resolve_statistic(s, d)
        except InvalidInput:
            continue
        out[s] = _jsonable(statistic(g, s, d))
    text = "\n".join(f"{k}: {v}" for k, v in out.items())
    _emit(cfg, {"group": str(d), "element": a.element, "stats": out}, text)
    return EXIT_PASS


def cmd_distribution(a, cfg: CliConfig) -> int:
    fam = _family(a.family)
    stats = _stats_spec(a.stats)
    p = lab.distribution_polynomial(fam, stats, cfg.budget)
    _emit(cfg, {"family": a.family, "stats": stats, "polynomial": p.to_json(),
                "text": p.to_text()}, p.to_text())
    return EXIT_PASS


def cmd_fiber(a, cfg: CliConfig) -> int:
    G = _get_group(_group(a.group), cfg)
    x = ga.fiber_element(G, a.stat, _stat_value(a.value))
    _emit(cfg, {"group": a.group, "statistic": a.stat, "value": a.value,
                "size": len(x.support()), "element": x.to_json()}, x.to_text())
    return EXIT_PASS


def cmd_product(a, cfg: CliConfig) -> int:
    if a.group:
        d = _group(a.group)
    else:
        first = a.elemA.split("+")[0].rpartition("*")[2]
        d = _descriptor_of_text(first)
    G = _get_group(d, cfg)
    x = _algebra_expr(G, a.elemA) * _algebra_expr(G, a.elemB)
    _emit(cfg, {"group": str(d), "product": x.to_json()}, x.to_text())
    return EXIT_PASS


def _descriptor_of_text(text: str) -> GroupDescriptor:
    from .perm_core import descriptor_of
    return descriptor_of(_infer_element(text))


def cmd_closure(a, cfg: CliConfig) -> int:
    G = _get_group(_group(a.group), cfg)
    rep = ga.closure_check(G, a.stat)
    payload = {k: _jsonable(v) for k, v in rep.to_json().items()}
    text = f"{rep.group} {rep.statistic}: {'closed' if rep.closed else 'not closed'}, {rep.fibers} fibers"
    if rep.witness:
        text += f"\nwitness: {json.dumps(rep.witness, default=str)}"
    _emit(cfg, payload, text)
    return EXIT_PASS if rep.closed else EXIT_FAIL


def cmd_idempotents(a, cfg: CliConfig) -> int:
    G = _get_group(_group(a.group), cfg)
    fam = ga.idempotent_family(G, a.kind)
    payload: dict = {"group": a.group, "kind": a.kind,
                     "members": [f.to_json() for f in fam]}
    lines = [f"f_{i}: {f.to_text()}" for i, f in enumerate(fam)]
    code = EXIT_PASS
    if a.verify:
        stat = ga.IDEMPOTENT_KINDS[a.kind][4]
        rep = ga.verify_idempotent_family(fam, stat)
        payload["verify"] = rep.to_json()
        lines.append(f"verify: {'pass' if rep.ok else 'FAIL'} ({rep.members} members)")
        code = EXIT_PASS if rep.ok else EXIT_FAIL
    _emit(cfg, payload, "\n".join(lines))
    return code


def _identity_line(rep) -> str:
    status = "pass" if rep.passed else "FAIL"
    line = f"{rep.id}: {status} ({rep.cases} cases, {rep.elapsed_ms:.0f} ms)"
    if rep.witness:
        line += f"\n  witness: {json.dumps(rep.witness, default=str)}"
    return line


def cmd_identity(a, cfg: CliConfig) -> int:
    params = lab.IdentityParams(n=a.n, r=a.r,
                                alpha=tuple(_index_set(a.alpha)) if a.alpha else None,
                                J=cfg.max_order)
    names = lab.IDENTITY_IDS if a.name == "all" else (a.name,)
    reports = [lab.check_identity(name, params) for name in names]
    if cfg.json:
        payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        print("\n".join(_identity_line(r) for r in reports))
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def cmd_table(a, cfg: CliConfig) -> int:
    tab = lab.table(a.name)
    if a.csv:
        sys.stdout.write(tab.to_csv())
    else:
        _emit(cfg, tab.to_json(), tab.to_text())
    return EXIT_PASS


def cmd_counterexample(a, cfg: CliConfig) -> int:
    names = lab.COUNTEREXAMPLE_IDS if a.name == "all" else (a.name,)
    reports = [lab.run_counterexample(n) for n in names]
    if cfg.json:
        payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        for r in reports:
            print(f"{r.id}: {'reproduced' if r.reproduced else 'NOT reproduced'}")
            print(f"  {json.dumps(r.witness, default=str)}")
    return EXIT_PASS if all(r.reproduced for r in reports) else EXIT_FAIL


def cmd_ppartition(a, cfg: CliConfig) -> int:
    budget = cfg.budget if cfg.budget is not None else pp.PARTITION_BUDGET
    if a.action == "count":
        P = _read_poset(a.target)
        c = pp.count_ppartitions(P, a.j, budget)
        _emit(cfg, {"poset": P.to_json(), "j": a.j, "count": c}, str(c))
        return EXIT_PASS
    if a.action == "extensions":
        P = _read_poset(a.target)
        from .perm_core import format_element
        ext = [format_element(s) for s in pp.extensions(P)]
        _emit(cfg, {"poset": P.to_json(), "extensions": ext}, "\n".join(ext))
        return EXIT_PASS
    if a.action == "ftpp":
        if a.target.startswith("random:"):
            flavor = a.target.split(":", 1)[1]
            rng = random.Random(cfg.seed)
            results = []
            for _ in range(a.count):
                P = pp.random_poset(flavor, a.n, rng, r=a.r)
                rep = pp.verify_fundamental_theorem(P, a.j, budget)
                results.append({"poset": P.to_json(), **rep.to_json()})
            ok = all(x["pass"] for x in results)
            _emit(cfg, {"flavor": flavor, "seed": cfg.seed, "pass": ok, "posets": results},
                  f"{flavor}: {sum(x['pass'] for x in results)}/{len(results)} posets pass")
            return EXIT_PASS if ok else EXIT_FAIL
        P = _read_poset(a.target)
        rep = pp.verify_fundamental_theorem(P, a.j, budget)
        _emit(cfg, {"poset": P.to_json(), "j": a.j, **rep.to_json()},
              f"{'pass' if rep.ok else 'FAIL'}: {json.dumps(rep.details)}")
        return EXIT_PASS if rep.ok else EXIT_FAIL
    if a.action in ("lemma", "barred"):
        if a.element is None:
            raise UsageError(f"ppartition {a.action} needs FLAVOR ELEMENT")
        pi = _element_for_flavor(a.target, a.element, a.r)
        if a.action == "lemma":
            if a.I is None:
                raise UsageError("ppartition lemma needs --I")
            rep = pp.verify_extension_lemma(a.target, pi, _index_set(a.I))
        else:
            rep = pp.barred_identity_check(a.target, pi, a.j, a.k)
        _emit(cfg, {"flavor": a.target, "element": a.element, **rep.to_json()},
              f"{'pass' if rep.ok else 'FAIL'}: {json.dumps(rep.details)}")
        return EXIT_PASS if rep.ok else EXIT_FAIL
    raise UsageError(f"unknown ppartition action {a.action!r}")


# ---------------------------------------------------------------------------
# parser


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument("--max-order", type=int, default=d(None), metavar="J",
                   help="series truncation order for identity checks")
    p.add_argument("--budget", type=int, default=d(None), metavar="N",
                   help="enumeration budget (elements or candidate functions)")
    p.add_argument("--seed", type=int, default=d(0), metavar="S",
                   help="seed for random poset sampling")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="descalg", description="Descent algebras, P-partitions and identities.")
    _global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("stats", parents=[common], help="all statistics of one element")
    p.add_argument("group")
    p.add_argument("element")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("distribution", parents=[common], help="distribution polynomial")
    p.add_argument("family", help="group spec, multiset:A, signed:A or colored-multiset:r:A")
    p.add_argument("--stats", default="des,maj", help="comma list of stat[:variable]")
    p.set_defaults(func=cmd_distribution)

    p = sub.add_parser("fiber", parents=[common], help="formal sum of one statistic fiber")
    p.add_argument("group")
    p.add_argument("stat")
    p.add_argument("value")
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("product", parents=[common], help="product in the group algebra")
    p.add_argument("elemA")
    p.add_argument("elemB")
    p.add_argument("--group", default=None)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("closure", parents=[common], help="does a statistic induce an algebra")
    p.add_argument("group")
    p.add_argument("stat")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("idempotents", parents=[common], help="orthogonal idempotent family")
    p.add_argument("group")
    p.add_argument("kind", choices=sorted(ga.IDEMPOTENT_KINDS))
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_idempotents)

    p = sub.add_parser("identity", parents=[common], help="check a catalog identity")
    p.add_argument("name", choices=list(lab.IDENTITY_IDS) + ["all"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--alpha", default=None, help="composition such as 2,1")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("table", parents=[common], help="colored Eulerian table")
    p.add_argument("name", choices=sorted(lab.TABLES))
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("counterexample", parents=[common], help="reproduce a counterexample")
    p.add_argument("name", choices=list(lab.COUNTEREXAMPLE_IDS) + ["all"])
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("ppartition", parents=[common], help="P-partition tools")
    p.add_argument("action", choices=["count", "extensions", "ftpp", "lemma", "barred"])
    p.add_argument("target", help="poset file ('-' for stdin), random:FLAVOR, or FLAVOR")
    p.add_argument("element", nargs="?", default=None)
    p.add_argument("--j", type=int, default=2)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--I", default=None, help="index set such as 1,3")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--count", type=int, default=50)
    p.set_defaults(func=cmd_ppartition)
    return parser


def _error(cfg_json: bool, kind: str, message: str) -> int:
    if cfg_json:
        print(json.dumps({"error": kind, "message": message}))
    else:
        print(f"descalg: {kind}: {message}", file=sys.stderr)
    return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _error(want_json, "usage", str(exc))
    cfg = CliConfig(json=args.json, max_order=args.max_order, budget=args.budget, seed=args.seed)
    try:
        return args.func(args, cfg)
    except BudgetExceeded as exc:
        return _error(cfg.json, "budget", str(exc))
    except (InvalidInput, UsageError, ValueError, KeyError, OSError) as exc:
        return _error(cfg.json, "usage", str(exc))


if __name__ == "__main__":
    sys.exit(main())
