"""Command-line entry point: ``python -m removahedra <subcommand> ...``.

Exit codes: 0 success, 1 verification failure (witnesses in the report),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__, formats, permutrees, polyhedra, realizations, shards, suites, typecone
from .decoration import Decoration
from .formats import Report

SUBCOMMANDS = ("shards", "congruence", "permutree", "typecone", "polytope", "verify")
VERIFY_SUITES = tuple(suites.SUITES) + ("all",)


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class Command:
    subcommand: str
    n: int | None = None
    decoration: Decoration | None = None
    suite: str | None = None
    form: str = "both"
    seed: int = 0
    jobs: int = 1
    fmt: str = "json"
    out: Path | None = None
    ideal: Path | None = None
    oracle: bool = False
    max_n: int | None = None

    @property
    def size(self) -> int:
        if self.decoration is not None:
            if self.n is not None and self.n != self.decoration.n:
                raise UsageError(f"--n {self.n} disagrees with decoration length {self.decoration.n}")
            return self.decoration.n
        if self.n is None:
            raise UsageError(f"{self.subcommand} needs --n or --decoration")
        return self.n


def _decoration(text: str) -> Decoration:
    try:
        return Decoration.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_positive)
    common.add_argument("--decoration", type=_decoration, help="word over o/d/u/x")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=_positive, default=1)
    common.add_argument("--format", dest="fmt", choices=formats.FORMATS, default="json")
    common.add_argument("--out", type=Path)
    common.add_argument("--max-n", type=_positive, help="override the safety limit on n")

    parser = argparse.ArgumentParser(prog="removahedra", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("shards", parents=[common], help="shards and the forcing order")
    p = sub.add_parser("congruence", parents=[common], help="classes of a permutree or given congruence")
    p.add_argument("--ideal", type=Path, help="shard ideal JSON file")
    sub.add_parser("permutree", parents=[common], help="permutrees and rotations")
    p = sub.add_parser("typecone", parents=[common], help="rays, exchangeable pairs and facets")
    p.add_argument("--oracle", action="store_true", help="cross-check facets against the fan oracle")
    p = sub.add_parser("polytope", parents=[common], help="permutreehedron in V and H form")
    p.add_argument("--form", choices=("v", "h", "both"), default="both")
    p = sub.add_parser("verify", parents=[common], help="verification sweeps")
    p.add_argument("suite", choices=VERIFY_SUITES)
    return parser


def parse_command(argv) -> Command:
    args = build_parser().parse_args(argv)
    return Command(
        subcommand=args.subcommand,
        n=args.n,
        decoration=args.decoration,
        suite=getattr(args, "suite", None),
        form=getattr(args, "form", "both"),
        seed=args.seed,
        jobs=args.jobs,
        fmt=args.fmt,
        out=args.out,
        ideal=getattr(args, "ideal", None),
        oracle=getattr(args, "oracle", False),
        max_n=args.max_n,
    )


def _check_limit(c: Command, n: int, default: int):
    limit = c.max_n or default
    if n > limit:
        raise UsageError(f"n={n} exceeds the safety limit {limit} (raise it with --max-n)")


# -- handlers ------------------------------------------------------------------------


def _shards(c: Command) -> Report:
    n = c.size
    _check_limit(c, n, 6)
    items, relation = shards.shard_poset(n)
    out = {
        "count": len(items),
        "shards": [{**s.to_json(), "arc": s.arc(n)} for s in items],
        "forcing": [[a, b] for a, b in sorted(relation, key=lambda ab: (ab[0].sort_key(), ab[1].sort_key()))],
    }
    if n <= 4:
        ideals = list(shards.upper_ideals(n))
        out["upper_ideals"] = len(ideals)
        out["essential_ideals"] = sum(i.essential for i in ideals)
    return Report("shards", {"n": n}, out)


def _congruence(c: Command) -> Report:
    if c.ideal is not None:
        ideal = formats.load_ideal(c.ideal.read_text(encoding="utf-8"))
        inputs = {"ideal": str(c.ideal)}
    else:
        if c.decoration is None:
            raise UsageError("congruence needs --decoration or --ideal")
        d = _need_decoration(c)
        ideal = shards.permutree_ideal(d)
        inputs = {"decoration": str(d)}
    _check_limit(c, ideal.n, 6)
    cong = shards.congruence_classes(ideal)
    dec = shards.ideal_decoration(ideal)
    out = {
        "ideal": ideal,
        "essential": cong.essential,
        "classes": len(cong.classes),
        "class_list": [list(map(list, cls)) for cls in cong.classes],
        "quotient_rays": [sorted(I) for I in shards.quotient_rays(ideal)],
        "lower_generators": shards.lower_generators(ideal),
        "is_lattice": shards.is_lattice(shards.quotient_order(cong)),
    }
    if isinstance(dec, shards.NotPermutree):
        out["permutree"] = False
        out["non_permutree_generator"] = dec.witness
    else:
        out["permutree"] = True
        out["decoration"] = str(dec)
    return Report("congruence", inputs, out)


def _permutree(c: Command) -> Report:
    d = _need_decoration(c)
    _check_limit(c, d.n, 6)
    lat = permutrees.rotation_lattice(d)
    out = {
        "count": len(lat.trees),
        "trees": [
            {**t.to_json(), "vertex": list(permutrees.vertex_coordinates(t, d))} for t in lat.trees
        ],
        "rotations": len(lat.arcs),
        "is_lattice": lat.is_lattice,
    }
    bad = [t for t in lat.trees if not permutrees.validate(t, d)]
    ok = not bad
    witnesses = [{"kind": "invalid_tree", "tree": t, "problems": permutrees.validate(t, d).problems} for t in bad]
    return Report("permutree", {"decoration": str(d)}, out, ok, witnesses)


def _typecone(c: Command) -> Report:
    if c.decoration is None:
        n = c.size
        _check_limit(c, n, 7)
        rows = [typecone.counts_row(d) for d in Decoration.all(n)]
        return Report("counts", {"n": n}, {"rows": rows})
    d = c.decoration
    _check_limit(c, d.n, 7)
    rays = typecone.permutree_rays(d)
    pairs = typecone.exchangeable_pairs(d)
    facets = typecone.typecone_facets(d)
    out = {
        "rho": typecone.rho(d),
        "chi": typecone.chi(d),
        "phi": typecone.phi(d),
        "simplicial": typecone.is_simplicial(d),
        "rays": rays.labels(),
        "exchangeable_pairs": typecone.sorted_labels(pairs),
        "facets": typecone.sorted_labels(facets),
        "facet_dependences": [p.dependence(d.n) for p in sorted(facets, key=typecone.ExchangeablePair.strings)],
        "rows": [typecone.counts_row(d)],
    }
    ok, witnesses = True, []
    if (len(rays), len(pairs), len(facets)) != (out["rho"], out["chi"], out["phi"]):
        ok = False
        witnesses.append({"kind": "count_mismatch", "enumerated": [len(rays), len(pairs), len(facets)]})
    if c.oracle:
        oracle = typecone.facet_oracle(d)
        out["oracle_agrees"] = oracle == facets
        if oracle != facets:
            ok = False
            witnesses.append({
                "kind": "facet_mismatch",
                "oracle_only": typecone.sorted_labels(oracle - facets),
                "combinatorial_only": typecone.sorted_labels(facets - oracle),
            })
    return Report("typecone", {"decoration": str(d)}, out, ok, witnesses)


def _polytope(c: Command) -> Report:
    d = _need_decoration(c)
    _check_limit(c, d.n, 6)
    V, H = realizations.permutreehedron(d)
    out = {}
    if c.form in ("v", "both"):
        out["vertices"] = V
        out["vertex_count"] = len(V)
    if c.form in ("h", "both"):
        out["hpolytope"] = H
    ok, witnesses = True, []
    if c.form == "both":
        W = polyhedra.vertices(H)
        agree = W.point_set == V.point_set
        out["agreement"] = agree
        if not agree:
            ok = False
            witnesses.append({"kind": "vh_disagreement", "h_vertices": len(W), "formula_points": len(V)})
    return Report("polytope", {"decoration": str(d), "form": c.form}, out, ok, witnesses)


def _verify(c: Command) -> Report:
    n = c.size
    names = list(suites.SUITES) if c.suite == "all" else [c.suite]
    results = []
    for name in names:
        limit, run = suites.SUITES[name]
        if c.suite != "all":
            _check_limit(c, n, limit)
        m = min(n, c.max_n or limit)
        results.append(run(m, c.seed, c.jobs))
    ok = all(r.ok for r in results)
    witnesses = [{"suite": r.name, **w} for r in results for w in r.witnesses[: suites.MAX_WITNESSES]]
    out = {"suites": results}
    return Report("verify", {"suite": c.suite, "n": n, "seed": c.seed}, out, ok, witnesses)


def _need_decoration(c: Command) -> Decoration:
    if c.decoration is None:
        raise UsageError(f"{c.subcommand} needs --decoration")
    c.size  # rejects a conflicting --n
    return c.decoration


HANDLERS = {
    "shards": _shards,
    "congruence": _congruence,
    "permutree": _permutree,
    "typecone": _typecone,
    "polytope": _polytope,
    "verify": _verify,
}


def run(c: Command) -> Report:
    start = time.perf_counter()
    report = HANDLERS[c.subcommand](c)
    report.meta = {"runtime_s": round(time.perf_counter() - start, 3), "version": __version__}
    return report


def main(argv=None) -> int:
    try:
        c = parse_command(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = run(c)
        text = formats.export(report, c.fmt, c.out)
    except (UsageError, formats.UnsupportedExport, shards.NotUpwardClosed, json.JSONDecodeError, OSError) as exc:
        print(f"removahedra: error: {exc}", file=sys.stderr)
        return 2
    if c.out is None:
        sys.stdout.write(text)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
