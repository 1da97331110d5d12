"""Command-line interface.

Subcommands: gcp, roi, pvgcp-board, compare, scatter, histogram, breakeven,
summary, validate, synth. Outputs are CSV (default) or JSON, written to
--out or stdout, and are byte-identical across runs on identical inputs.

Exit codes: 0 success, 1 validation failure, 2 schema/data error,
3 missing-salary error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import finance, gcp, reporting, synth
from .errors import GcproiError, MissingSalary
from .ingest import (
    SeasonDataset,
    parse_games,
    parse_salaries,
    validate_dataset,
    write_games_csv,
    write_salaries_csv,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_SCHEMA = 2
EXIT_MISSING_SALARY = 3


def _fmt(value: float, places: int, full_precision: bool) -> str:
    if full_precision:
        return repr(value)
    return f"{value:.{places}f}"


def _emit(header: list[str], rows: list[list], args) -> None:
    """Write rows as CSV or JSON to --out or stdout. All cells are already
    strings except in JSON mode, where typed values pass through."""
    if args.format == "json":
        payload = [dict(zip(header, row)) for row in rows]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        text = buf.getvalue()
    _write_text(text, args.out)


def _write_text(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


def _load(args) -> SeasonDataset:
    return parse_games(args.games)


def _sgv_for(args, ds: SeasonDataset, salaries) -> finance.SingleGameValue:
    override = getattr(args, "sgv_override", None)
    if override is not None:
        return finance.SingleGameValue.override(override)
    games = getattr(args, "season_games", None) or len(ds.games)
    return finance.sgv(salaries.total, games)


def cmd_gcp(args) -> int:
    ds = _load(args)
    game = ds.get_game(args.game_id)
    report = gcp.game_report(game)
    sides = [report.team(args.team)] if args.team else list(report.teams)

    if args.format == "json":
        payload = {
            "game_id": report.game_id,
            "teams": [
                {
                    "team": side.team_id,
                    "weight": side.weight,
                    "active_field_count": len(side.active_fields),
                    "active_fields": sorted(f.name for f in side.active_fields),
                    "players": {p: v for p, v in side.gcp.items()},
                }
                for side in sides
            ],
        }
        _write_text(json.dumps(payload, indent=2) + "\n", args.out)
        return EXIT_OK

    header = ["game_id", "team", "player_id", "player_name", "weight",
              "active_fields", "gcp"]
    rows = []
    for side in sides:
        for player_id, share in side.gcp.items():
            rows.append([report.game_id, side.team_id, player_id,
                         ds.player_name(player_id), repr(side.weight),
                         str(len(side.active_fields)),
                         _fmt(share, 4, args.full_precision)])
    _emit(header, rows, args)
    return EXIT_OK


def cmd_histogram(args) -> int:
    ds = _load(args)
    bins = reporting.gcp_histogram(ds, bin_width=args.bin_width)
    header = ["bin_lo", "bin_hi", "count"]
    rows = [[f"{b.lo:.10g}", f"{b.hi:.10g}", b.count] for b in bins]
    _emit(header, rows, args)
    return EXIT_OK


def cmd_roi(args) -> int:
    ds = _load(args)
    salaries = parse_salaries(args.salaries)
    reports = gcp.season_reports(ds)
    value = _sgv_for(args, ds, salaries)
    rows = reporting.roi_table(ds, reports, salaries, value,
                               min_games=args.min_games, abs_tol=args.tol)
    header = ["player_id", "player_name", "salary_usd", "gp", "pvgcp",
              "roi_pct", "status"]
    out = []
    for r in rows:
        roi_pct = "" if r.roi is None else _fmt(r.roi * 100.0, 3, args.full_precision)
        out.append([r.player_id, r.player_name, r.salary, r.gp,
                    _fmt(r.pvgcp, 3, args.full_precision), roi_pct, r.status])
    _emit(header, out, args)
    return EXIT_OK


def cmd_pvgcp_board(args) -> int:
    ds = _load(args)
    salaries = parse_salaries(args.salaries)
    reports = gcp.season_reports(ds)
    rows = reporting.leaderboard_pvgcp(ds, reports, salaries, top_k=args.top)
    header = ["rank", "player_id", "player_name", "salary_musd", "gp",
              "pvgcp", "gcp_per_game"]
    out = []
    for r in rows:
        musd = "" if r.salary is None else _fmt(r.salary / 1e6, 3, args.full_precision)
        out.append([r.rank, r.player_id, r.player_name, musd, r.gp,
                    _fmt(r.pvgcp, 3, args.full_precision),
                    _fmt(r.gcp_per_game, 3, args.full_precision)])
    _emit(header, out, args)
    return EXIT_OK


def cmd_compare(args) -> int:
    ds = _load(args)
    reports = gcp.season_reports(ds)
    cmp = reporting.comparison(ds, reports, args.player_a, args.player_b)
    header = ["period", "game_id_a", "gcp_a", "cumulative_a",
              "game_id_b", "gcp_b", "cumulative_b"]
    rows = []
    for i in range(max(len(cmp.games_a), len(cmp.games_b))):
        row: list = [i + 1]
        if i < len(cmp.games_a):
            row += [cmp.games_a[i], _fmt(cmp.gcp_a[i], 4, args.full_precision),
                    _fmt(cmp.cumulative_a[i], 3, args.full_precision)]
        else:
            row += ["", "", ""]
        if i < len(cmp.games_b):
            row += [cmp.games_b[i], _fmt(cmp.gcp_b[i], 4, args.full_precision),
                    _fmt(cmp.cumulative_b[i], 3, args.full_precision)]
        else:
            row += ["", "", ""]
        rows.append(row)
    _emit(header, rows, args)
    return EXIT_OK


def cmd_scatter(args) -> int:
    ds = _load(args)
    salaries = parse_salaries(args.salaries)
    reports = gcp.season_reports(ds)
    value = _sgv_for(args, ds, salaries)
    points = reporting.roi_salary_scatter(ds, reports, salaries, value,
                                          min_games=args.min_games)
    header = ["player_id", "salary_usd", "roi_pct"]
    rows = [[p.player_id, p.salary, _fmt(p.roi * 100.0, 3, args.full_precision)]
            for p in points]
    _emit(header, rows, args)
    return EXIT_OK


def cmd_breakeven(args) -> int:
    if args.sgv is not None:
        value = finance.SingleGameValue.override(args.sgv)
    elif args.games and args.salaries:
        ds = _load(args)
        salaries = parse_salaries(args.salaries)
        value = _sgv_for(args, ds, salaries)
    else:
        raise GcproiError("breakeven needs either --sgv or both --games and --salaries")
    required = finance.breakeven_gcp(args.salary, args.n_games, value)
    per_game = args.salary / args.n_games
    header = ["salary_usd", "n_games", "sgv_usd", "per_game_cashflow_usd", "required_gcp"]
    rows = [[args.salary, args.n_games,
             _fmt(value.dollars, 2, args.full_precision),
             _fmt(per_game, 2, args.full_precision),
             _fmt(required, 4, args.full_precision)]]
    _emit(header, rows, args)
    return EXIT_OK


def cmd_summary(args) -> int:
    ds = _load(args)
    salaries = parse_salaries(args.salaries)
    reports = gcp.season_reports(ds)
    s = reporting.salary_summary(ds, reports, salaries, min_games=args.min_games)
    header = ["qualifying_players", "mean_salary_usd", "median_salary_usd",
              "p75_salary_usd", "mean_salary_musd", "median_salary_musd",
              "p75_salary_musd"]
    if s.qualifying == 0:
        rows = [[0, "", "", "", "", "", ""]]
    else:
        rows = [[s.qualifying,
                 _fmt(s.mean, 2, args.full_precision),
                 _fmt(s.median, 2, args.full_precision),
                 _fmt(s.p75, 2, args.full_precision),
                 _fmt(s.mean / 1e6, 3, args.full_precision),
                 _fmt(s.median / 1e6, 3, args.full_precision),
                 _fmt(s.p75 / 1e6, 3, args.full_precision)]]
    _emit(header, rows, args)
    return EXIT_OK


def cmd_validate(args) -> int:
    ds = _load(args)
    if args.salaries:
        parse_salaries(args.salaries)
    report = validate_dataset(ds, strict_season=args.strict_season)
    lines = [f"{v.kind}: {v.message}" for v in report.violations]
    lines.append(f"{len(report.violations)} violation(s)")
    _write_text("\n".join(lines) + "\n", args.out)
    return EXIT_OK if report.ok else EXIT_VALIDATION


def cmd_synth(args) -> int:
    cfg = synth.SynthConfig(seed=args.seed, teams=args.teams,
                            games_per_team=args.games_per_team,
                            roster_min=args.roster_min, roster_max=args.roster_max,
                            miss_prob=args.miss_prob, realistic=args.realistic)
    ds, salaries, _ = synth.synth_season(cfg)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_games_csv(ds, out_dir / "games.csv")
    write_salaries_csv(salaries, out_dir / "salaries.csv")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcproi",
        description="Game contribution percentage and contractual ROI toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    io_flags = argparse.ArgumentParser(add_help=False)
    io_flags.add_argument("--out", help="output path (default stdout)")
    io_flags.add_argument("--format", choices=["csv", "json"], default="csv")
    io_flags.add_argument("--full-precision", action="store_true",
                          help="emit full float precision instead of display rounding")

    games_flag = argparse.ArgumentParser(add_help=False)
    games_flag.add_argument("--games", required=True, help="games CSV path")

    salary_flag = argparse.ArgumentParser(add_help=False)
    salary_flag.add_argument("--salaries", required=True, help="salaries CSV path")

    roi_flags = argparse.ArgumentParser(add_help=False)
    roi_flags.add_argument("--min-games", type=int, default=reporting.DEFAULT_MIN_GAMES)
    roi_flags.add_argument("--season-games", type=int, default=None,
                           help="force the game count used for the SGV conversion")
    roi_flags.add_argument("--sgv-override", type=float, default=None,
                           help="use this SGV (dollars) instead of deriving it")

    p = sub.add_parser("gcp", parents=[io_flags, games_flag],
                       help="per-player contribution shares for one game")
    p.add_argument("--game-id", required=True)
    p.add_argument("--team", default=None)
    p.set_defaults(func=cmd_gcp)

    p = sub.add_parser("histogram", parents=[io_flags, games_flag],
                       help="binned distribution of all non-zero shares")
    p.add_argument("--bin-width", type=float, default=0.01)
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser("roi", parents=[io_flags, games_flag, salary_flag, roi_flags],
                       help="per-player contractual return table")
    p.add_argument("--tol", type=float, default=finance.DEFAULT_NPV_TOL)
    p.set_defaults(func=cmd_roi)

    p = sub.add_parser("pvgcp-board", parents=[io_flags, games_flag, salary_flag],
                       help="cumulative-contribution leaderboard")
    p.add_argument("--top", type=int, default=50)
    p.set_defaults(func=cmd_pvgcp_board)

    p = sub.add_parser("compare", parents=[io_flags, games_flag],
                       help="game-by-game series for two players")
    p.add_argument("--player-a", required=True)
    p.add_argument("--player-b", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("scatter", parents=[io_flags, games_flag, salary_flag, roi_flags],
                       help="return-vs-salary points for qualifying players")
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("breakeven", parents=[io_flags],
                       help="per-game cash flow and share needed to recover a salary")
    p.add_argument("--salary", type=float, required=True)
    p.add_argument("--n-games", type=int, required=True)
    p.add_argument("--sgv", type=float, default=None)
    p.add_argument("--games", default=None)
    p.add_argument("--salaries", default=None)
    p.add_argument("--season-games", type=int, default=None)
    p.set_defaults(func=cmd_breakeven)

    p = sub.add_parser("summary", parents=[io_flags, games_flag, salary_flag],
                       help="salary statistics of the qualifying pool")
    p.add_argument("--min-games", type=int, default=reporting.DEFAULT_MIN_GAMES)
    p.set_defaults(func=cmd_summary)

    p = sub.add_parser("validate", parents=[io_flags, games_flag],
                       help="report dataset consistency violations")
    p.add_argument("--salaries", default=None)
    p.add_argument("--strict-season", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("synth", help="write a synthetic games/salaries pair")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--teams", type=int, default=4)
    p.add_argument("--games", dest="games_per_team", type=int, default=6,
                   help="games per team")
    p.add_argument("--roster-min", type=int, default=8)
    p.add_argument("--roster-max", type=int, default=10)
    p.add_argument("--miss-prob", type=float, default=0.1)
    p.add_argument("--realistic", action="store_true")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MissingSalary as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING_SALARY
    except (GcproiError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
