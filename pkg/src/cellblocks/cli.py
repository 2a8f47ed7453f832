"""Command-line interface.

Every subcommand prints a single JSON document to stdout.  The verify
subcommand additionally persists a full report (JSON + CSV + figures) to
the configured output directory and exits nonzero if any check outside
the flagged controls fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

try:
    import tomllib
except ImportError:  # pragma: no cover - Python < 3.11
    import tomli as tomllib

from . import degrees as degrees_mod
from . import kl, lietype, verify
from .coxeter import CoxeterSystem
from .exactalg import format_poly
from .hecke import check_triangularity, decomposition_matrix


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _cmd_cells(args) -> int:
    part = kl.two_sided_cells(CoxeterSystem(args.type))
    _emit(part.as_dict())
    return 0


def _cmd_decomp(args) -> int:
    D = decomposition_matrix(args.type, args.q, args.ell, seed=args.seed)
    doc = D.as_dict()
    doc["triangularity"] = {mode: check_triangularity(D, mode)
                            for mode in ("a", "cell")}
    _emit(doc)
    return 0


def _parse_eval_point(text: str):
    """An integer, or 'sqrt2^k' for odd powers of sqrt(2)."""
    if text.startswith("sqrt2^"):
        return degrees_mod.odd_power_of_sqrt2(int(text[len("sqrt2^"):]))
    return Fraction(int(text))


def _cmd_degrees(args) -> int:
    S = (degrees_mod.extended_registry(args.label) if args.extended
         else degrees_mod.registry(args.label))
    q = _parse_eval_point(args.q)
    results = []
    all_ok = True
    for part in args.dims.split(","):
        n = int(part)
        hits = degrees_mod.membership(n, q, S)
        results.append({"dim": n,
                        "members": [format_poly(f) for f in hits]})
        all_ok = all_ok and bool(hits)
    _emit({"label": S.label, "q": args.q, "ok": all_ok, "results": results})
    return 0 if all_ok else 1


def _cmd_support(args) -> int:
    G = lietype.build_group(args.family, args.n, args.q)
    tab = lietype.character_table(G)
    rows = []
    for row in range(tab.k):
        sup = lietype.unipotent_support(G, row)
        rows.append({"degree": tab.degrees[row],
                     "support": list(sup.partition),
                     "dim_bu": sup.dim_bu})
    _emit({"group": f"{args.family}{args.n}(F{args.q})", "characters": rows})
    return 0


def _cmd_pseries(args) -> int:
    G = lietype.build_group(args.family, args.n, args.q)
    out = lietype.principal_series_mod(G, args.ell, seed=args.seed)
    _emit({"group": f"{args.family}{args.n}(F{args.q})", "ell": args.ell,
           "factors": [{"dim": d["dim"], "multiplicity": d["multiplicity"],
                        "b_fixed": d["b_fixed"],
                        "in_principal_series": d["in_principal_series"]}
                       for d in out]})
    return 0


def _cmd_group(args) -> int:
    G = lietype.build_group(args.family, args.n, args.q)
    doc = {"group": f"{args.family}{args.n}(F{args.q})", "order": G.order,
           "borel_index": G.order // len(G.B)}
    if args.what == "classes":
        doc["classes"] = [{"size": sz, "representative": rep}
                          for sz, rep in zip(G.class_sizes, G.class_reps)]
    else:
        tab = lietype.character_table(G)
        doc["degrees"] = tab.degrees
        doc["values"] = [[repr(v) for v in row] for row in tab.rows]
    _emit(doc)
    return 0


def _cmd_verify(args) -> int:
    with open(args.config, "rb") as fh:
        cfg = tomllib.load(fh)
    kwargs = {}
    if "types" in cfg:
        kwargs["types"] = tuple(cfg["types"])
    if "q" in cfg:
        kwargs["qs"] = tuple(cfg["q"])
    if "ell" in cfg:
        kwargs["ells"] = tuple(cfg["ell"])
    if "groups" in cfg:
        kwargs["groups"] = tuple(tuple(g) for g in cfg["groups"])
    seed = int(cfg.get("seed", 0))
    rep = verify.run_verification(seed=seed, **kwargs)
    doc = rep.as_dict()
    out_dir = cfg.get("output")
    if out_dir:
        from . import report as report_mod
        doc["manifest"] = report_mod.write_report(
            rep, out_dir, figures=bool(cfg.get("figures", True)))
    _emit(doc)
    return 0 if rep.ok else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="cellblocks",
        description="exact verification toolkit for cell structures, "
                    "decomposition matrices and dimension registries")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cells", help="two-sided cells of a Weyl type")
    p.add_argument("type")
    p.set_defaults(fn=_cmd_cells)

    p = sub.add_parser("decomp", help="decomposition matrix of a "
                                      "specialized Hecke algebra")
    p.add_argument("type")
    p.add_argument("q", type=int)
    p.add_argument("ell", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_decomp)

    p = sub.add_parser("degrees", help="dimension-registry membership")
    dsub = p.add_subparsers(dest="degrees_command", required=True)
    pc = dsub.add_parser("check")
    pc.add_argument("label")
    pc.add_argument("q", help="integer, or sqrt2^k for the twisted registry")
    pc.add_argument("dims", help="comma-separated dimensions")
    pc.add_argument("--extended", action="store_true",
                    help="use the extended registry")
    pc.set_defaults(fn=_cmd_degrees)

    p = sub.add_parser("support", help="unipotent supports of the ordinary "
                                       "characters (GL only)")
    p.add_argument("family")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(fn=_cmd_support)

    p = sub.add_parser("pseries", help="composition factors of k[G/B] with "
                                       "B-fixed dimensions")
    p.add_argument("family")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.add_argument("ell", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_pseries)

    p = sub.add_parser("group", help="conjugacy classes or character table")
    p.add_argument("family")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.add_argument("what", choices=("classes", "chars"))
    p.set_defaults(fn=_cmd_group)

    p = sub.add_parser("verify", help="run a scenario grid from a TOML config")
    p.add_argument("--config", required=True)
    p.set_defaults(fn=_cmd_verify)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
