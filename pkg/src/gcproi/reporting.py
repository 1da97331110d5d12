"""Leaderboards, comparisons, scatter and histogram data.

Everything here is assembled from per-game reports plus the salary table
and is deterministic: ties are broken by metric, then player name, then
player id, and row order never depends on dict iteration quirks.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

from .errors import MissingSalary, UnknownPlayer
from .finance import SingleGameValue, cash_flows, irr, player_schedule, pvgcp
from .gcp import GameGcpReport, nonzero_gcp_distribution
from .ingest import SalaryTable, SeasonDataset

STATUS_OK = "ok"
STATUS_TOTAL_DEFAULT = "total_default"
STATUS_BELOW_MIN_GAMES = "below_min_games"

DEFAULT_MIN_GAMES = 25


@dataclass(frozen=True)
class LeaderboardRow:
    rank: int
    player_id: str
    player_name: str
    salary: int | None
    gp: int
    pvgcp: float
    gcp_per_game: float
    roi: float | None = None


@dataclass(frozen=True)
class RoiRow:
    """One player's full ROI accounting line."""

    player_id: str
    player_name: str
    salary: int
    gp: int
    pvgcp: float
    roi: float | None
    status: str


@dataclass(frozen=True)
class RoiBoards:
    top: tuple[LeaderboardRow, ...]
    bottom: tuple[LeaderboardRow, ...]
    qualifying: int
    total_defaults: int
    below_min_games: int


@dataclass(frozen=True)
class ComparisonSeries:
    """Two players' per-game GCPs over their own schedules, with running
    sums. Missed games appear as explicit zeros; each final running sum
    equals the player's PVGCP."""

    player_a: str
    player_b: str
    games_a: tuple[str, ...]
    gcp_a: tuple[float, ...]
    cumulative_a: tuple[float, ...]
    games_b: tuple[str, ...]
    gcp_b: tuple[float, ...]
    cumulative_b: tuple[float, ...]


@dataclass(frozen=True)
class ScatterPoint:
    player_id: str
    salary: int
    roi: float


@dataclass(frozen=True)
class HistogramBin:
    lo: float
    hi: float
    count: int


@dataclass(frozen=True)
class SalarySummary:
    qualifying: int
    mean: float | None
    median: float | None
    p75: float | None


def _player_metrics(ds: SeasonDataset, reports: dict[str, GameGcpReport]):
    """pvgcp result per dataset player, sorted by player id."""
    return {p: pvgcp(ds, reports, p) for p in sorted(ds.player_ids)}


def _check_salaries(ds: SeasonDataset, salaries: SalaryTable) -> None:
    missing = sorted(ds.player_ids - set(salaries.entries))
    if missing:
        raise MissingSalary(missing)


def leaderboard_pvgcp(ds: SeasonDataset, reports: dict[str, GameGcpReport],
                      salaries: SalaryTable, top_k: int = 50) -> list[LeaderboardRow]:
    """Board of cumulative GCP, highest first. Salary is display-only here
    and may be absent for some players."""
    metrics = _player_metrics(ds, reports)
    order = sorted(metrics.values(),
                   key=lambda m: (-m.value, ds.player_name(m.player_id), m.player_id))
    rows = []
    for rank, m in enumerate(order[:top_k], start=1):
        rows.append(LeaderboardRow(
            rank=rank,
            player_id=m.player_id,
            player_name=ds.player_name(m.player_id),
            salary=salaries.entries.get(m.player_id),
            gp=m.games_played,
            pvgcp=m.value,
            gcp_per_game=m.value / m.games_played if m.games_played else 0.0,
        ))
    return rows


def roi_table(ds: SeasonDataset, reports: dict[str, GameGcpReport],
              salaries: SalaryTable, value: SingleGameValue,
              min_games: int = DEFAULT_MIN_GAMES,
              abs_tol: float = 1e-6) -> list[RoiRow]:
    """ROI accounting for every salaried player.

    Salaried players absent from the games data produced nothing and are
    reported as total defaults, never as a numeric rate. Players appearing
    in the games data without a salary entry make the calculation
    impossible and raise MissingSalary listing all of them.
    """
    _check_salaries(ds, salaries)
    dataset_players = ds.player_ids
    rows = []
    for player_id in sorted(salaries.entries):
        salary = salaries.entries[player_id]
        name = salaries.name(player_id)
        if player_id not in dataset_players:
            rows.append(RoiRow(player_id, name, salary, 0, 0.0, None,
                               STATUS_TOTAL_DEFAULT))
            continue
        m = pvgcp(ds, reports, player_id)
        series = cash_flows(ds, reports, player_id, value, salary)
        rate = irr(series, abs_tol=abs_tol).rate
        status = STATUS_OK if m.games_played >= min_games else STATUS_BELOW_MIN_GAMES
        rows.append(RoiRow(player_id, ds.player_name(player_id), salary,
                           m.games_played, m.value, rate, status))

    status_rank = {STATUS_OK: 0, STATUS_BELOW_MIN_GAMES: 1, STATUS_TOTAL_DEFAULT: 2}
    rows.sort(key=lambda r: (status_rank[r.status],
                             -(r.roi if r.roi is not None else 0.0),
                             r.player_name, r.player_id))
    return rows


def leaderboard_roi(ds: SeasonDataset, reports: dict[str, GameGcpReport],
                    salaries: SalaryTable, value: SingleGameValue,
                    top_k: int = 50, bottom_k: int = 50,
                    min_games: int = DEFAULT_MIN_GAMES,
                    abs_tol: float = 1e-6) -> RoiBoards:
    """Top and bottom ROI boards over players with at least min_games
    appearances. Total defaults are excluded and only counted."""
    rows = roi_table(ds, reports, salaries, value, min_games=min_games, abs_tol=abs_tol)
    qualifying = [r for r in rows if r.status == STATUS_OK]
    metrics = {r.player_id: r for r in qualifying}

    def board(ids: list[str], reverse: bool) -> tuple[LeaderboardRow, ...]:
        ordered = sorted(ids, key=lambda p: ((-metrics[p].roi) if reverse else metrics[p].roi,
                                             metrics[p].player_name, p))
        return tuple(
            LeaderboardRow(rank=i, player_id=p, player_name=metrics[p].player_name,
                           salary=metrics[p].salary, gp=metrics[p].gp,
                           pvgcp=metrics[p].pvgcp,
                           gcp_per_game=metrics[p].pvgcp / metrics[p].gp,
                           roi=metrics[p].roi)
            for i, p in enumerate(ordered, start=1))

    ids = [r.player_id for r in qualifying]
    return RoiBoards(
        top=board(ids, reverse=True)[:top_k],
        bottom=board(ids, reverse=False)[:bottom_k],
        qualifying=len(qualifying),
        total_defaults=sum(1 for r in rows if r.status == STATUS_TOTAL_DEFAULT),
        below_min_games=sum(1 for r in rows if r.status == STATUS_BELOW_MIN_GAMES),
    )


def comparison(ds: SeasonDataset, reports: dict[str, GameGcpReport],
               player_a: str, player_b: str) -> ComparisonSeries:
    """Game-by-game GCP series for two players, with running sums."""
    for p in (player_a, player_b):
        if p not in ds.player_ids:
            raise UnknownPlayer(f"player {p!r} never appears in the dataset")

    def one(player_id: str):
        slots = player_schedule(ds, player_id)
        games = tuple(g.game_id for g, _ in slots)
        shares = tuple(reports[g.game_id].team(t).gcp.get(player_id, 0.0)
                       for g, t in slots)
        # Compensated prefix sums so the last entry matches pvgcp exactly.
        cumulative = tuple(math.fsum(shares[:i + 1]) for i in range(len(shares)))
        return games, shares, cumulative

    games_a, gcp_a, cum_a = one(player_a)
    games_b, gcp_b, cum_b = one(player_b)
    return ComparisonSeries(player_a=player_a, player_b=player_b,
                            games_a=games_a, gcp_a=gcp_a, cumulative_a=cum_a,
                            games_b=games_b, gcp_b=gcp_b, cumulative_b=cum_b)


def roi_salary_scatter(ds: SeasonDataset, reports: dict[str, GameGcpReport],
                       salaries: SalaryTable, value: SingleGameValue,
                       min_games: int = DEFAULT_MIN_GAMES,
                       abs_tol: float = 1e-6) -> list[ScatterPoint]:
    """One (salary, roi) point per qualifying player, salary ascending."""
    rows = roi_table(ds, reports, salaries, value, min_games=min_games, abs_tol=abs_tol)
    points = [ScatterPoint(player_id=r.player_id, salary=r.salary, roi=r.roi)
              for r in rows if r.status == STATUS_OK]
    points.sort(key=lambda p: (p.salary, p.player_id))
    return points


def histogram_bins(values: list[float], bin_width: float = 0.01) -> list[HistogramBin]:
    """Fixed-width half-open bins [k*w, (k+1)*w) covering the data range.

    Interior empty bins are emitted with a zero count so the output shape is
    plot-ready.
    """
    if bin_width <= 0.0:
        raise ValueError(f"bin_width must be positive, got {bin_width}")
    if not values:
        return []
    counts: dict[int, int] = {}
    for v in values:
        k = math.floor(v / bin_width)
        counts[k] = counts.get(k, 0) + 1
    lo_k, hi_k = min(counts), max(counts)
    return [HistogramBin(lo=k * bin_width, hi=(k + 1) * bin_width,
                         count=counts.get(k, 0))
            for k in range(lo_k, hi_k + 1)]


def gcp_histogram(ds: SeasonDataset, reports: dict[str, GameGcpReport] | None = None,
                  bin_width: float = 0.01) -> list[HistogramBin]:
    return histogram_bins(nonzero_gcp_distribution(ds, reports), bin_width)


def salary_summary(ds: SeasonDataset, reports: dict[str, GameGcpReport],
                   salaries: SalaryTable,
                   min_games: int = DEFAULT_MIN_GAMES) -> SalarySummary:
    """Mean, median and 75th percentile salary of the qualifying pool."""
    _check_salaries(ds, salaries)
    metrics = _player_metrics(ds, reports)
    pool = sorted(salaries.entries[p] for p, m in metrics.items()
                  if m.games_played >= min_games)
    if not pool:
        return SalarySummary(qualifying=0, mean=None, median=None, p75=None)
    mean = math.fsum(pool) / len(pool)
    median = float(statistics.median(pool))
    if len(pool) >= 2:
        p75 = float(statistics.quantiles(pool, n=4, method="inclusive")[2])
    else:
        p75 = float(pool[0])
    return SalarySummary(qualifying=len(pool), mean=mean, median=median, p75=p75)
