"""Command-line interface: `modlink <subcommand>`.

Subcommands cover the full pipeline: `classgroup` (field arithmetic),
`word` (geodesic words per narrow class), `link` (template diagram / DT
code), `volume` (solve a DT code), `survey` / `fit` (the volume-vs-length
scan and its least-squares line), and `family` (the bounded and unbounded
word families).
"""

from __future__ import annotations

import argparse
import sys

from . import survey as sv
from .arith import field_summary, norm_plus_unit
from .realize import triangulation_from_dt, volume_from_dt
from .template import dt_code
from .words import automorph, class_word


def _solver_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--restarts", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)


def _overrides(args) -> dict:
    return dict(tol=args.tol, max_iter=args.max_iter,
                restarts=args.restarts, seed=args.seed)


def _fmt(v) -> str:
    return sv._fmt(v)


def cmd_classgroup(args) -> int:
    fs = field_summary(args.m)
    cols = ["m", "D", "h", "h_plus", "unit_norm", "regulator",
            "total_length_paper", "total_length_geom"]
    vals = [args.m, fs.disc.D, fs.h, fs.h_plus, fs.unit.norm,
            fs.unit.regulator, fs.total_length_paper, fs.total_length_geom]
    print(",".join(cols))
    print(",".join(_fmt(v) for v in vals))
    return 0


def cmd_word(args) -> int:
    fs = field_summary(args.m)
    unit_plus = norm_plus_unit(fs.disc.D)
    for q in fs.reps:
        g = automorph(q, unit_plus)
        w = class_word(q, unit_plus)
        print(f"({q.a},{q.b},{q.c}) trace={g.a + g.d} word={w}")
    return 0


def cmd_link(args) -> int:
    diagram = sv.modular_link_diagram(args.m)
    code = str(dt_code(diagram, convention=args.dt_convention))
    if args.format == "dt":
        print(code)
    else:
        words = sv.class_words(args.m)
        print("m,n_components,total_symbols,n_crossings,dt_code")
        print(",".join([str(args.m), str(len(diagram.components)),
                        str(sum(len(w) for w in words)),
                        str(diagram.n_crossings), f'"{code}"']))
    return 0


def _triangulation_table(tri) -> str:
    """Plain-text gluing table: one row per face, columns
    `tet face -> tet' face' perm` (perm maps this tet's vertex labels
    to the partner's; faces are labelled by their opposite vertex)."""
    lines = ["tet face -> tet' face' perm"]
    for t in range(tri.n):
        for f in range(4):
            t2, f2, perm = tri.glue[(t, f)]
            lines.append(f"{t:4d} {f} -> {t2:4d} {f2} {''.join(map(str, perm))}")
    return "\n".join(lines)


def cmd_volume(args) -> int:
    if args.export_triangulation:
        tri = triangulation_from_dt(args.dt, convention=args.dt_convention)
        with open(args.export_triangulation, "w") as fh:
            fh.write(_triangulation_table(tri) + "\n")
    res = volume_from_dt(args.dt, convention=args.dt_convention,
                         **_overrides(args))
    vol = "" if res.volume is None else _fmt(res.volume)
    print(f"status={res.status} volume={vol} "
          f"residual={_fmt(res.residual)} iterations={res.iterations}")
    return 0 if res.status != "Failed" else 1


def cmd_survey(args) -> int:
    rows = sv.survey(args.max_m, out_path=args.out,
                     overrides=_overrides(args), threads=args.threads)
    acc = sv.accepted(rows)
    print(f"wrote {args.out}: {len(rows)} rows, {len(acc)} accepted")
    return 0


def cmd_fit(args) -> int:
    with open(args.csv) as fh:
        rows = sv.parse_csv(fh)
    acc = sv.accepted(rows)
    excluded = len(rows) - len(acc)
    f = sv.fit(rows)
    print(f"slope={_fmt(f.slope)} intercept={_fmt(f.intercept)} "
          f"r_squared={_fmt(f.r_squared)} n_points={f.n_points}")
    print(f"excluded={excluded}/{len(rows)} "
          f"({100.0 * excluded / len(rows):.1f}%)")
    return 0


def cmd_family(args) -> int:
    rows = sv.family(args.pattern, args.max_n, m=args.m,
                     overrides=_overrides(args))
    print("word,n,m,n_crossings,volume,status")
    for r in rows:
        vol = "" if r.volume is None else _fmt(r.volume)
        print(f"{r.word},{r.n},{'' if r.m is None else r.m},"
              f"{r.n_crossings},{vol},{r.status}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="modlink")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classgroup", help="field summary as one CSV row")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_classgroup)

    p = sub.add_parser("word", help="geodesic word per narrow class")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("link", help="modular link diagram of Q(sqrt(m))")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=("dt", "csv"), default="dt")
    p.add_argument("--dt-convention", choices=("standard", "paper"),
                   default="standard")
    p.set_defaults(func=cmd_link)

    p = sub.add_parser("volume", help="solve a DT code")
    p.add_argument("--dt", required=True)
    p.add_argument("--dt-convention", choices=("standard", "paper"),
                   default="standard")
    p.add_argument("--export-triangulation", metavar="FILE",
                   help="write the raw gluing table before solving")
    _solver_args(p)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("survey", help="volume survey over squarefree m")
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=None)
    _solver_args(p)
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("fit", help="least-squares volume vs 2hR line")
    p.add_argument("csv")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("family", help="volumes of a word family")
    p.add_argument("--pattern", choices=("x_xy_n", "xn_ym"), required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--m", type=int, default=1,
                   help="second exponent for the xn_ym pattern")
    _solver_args(p)
    p.set_defaults(func=cmd_family)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
