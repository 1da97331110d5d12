"""Dollar conversion, cash-flow assembly, and the rate-of-return solver.

The single game value (SGV) prices one team-game slot: total league player
compensation divided by twice the number of games. Multiplying a player's
per-game contribution shares by the SGV yields his realized cash flows;
missed games contribute exact zeros (they are defaults). With the salary as
the time-zero investment, the contractual return is the unique per-game
rate at which the discounted flows repay the salary.

Uniqueness holds because every flow is non-negative and the investment is
positive: net present value is then strictly decreasing in the rate on
(-1, inf), rising to +inf near -1 and falling to -investment. The solver
exploits this with guaranteed bracketing followed by a bisection loop with
interpolation acceleration; it is deterministic and reentrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    AllZeroFlows,
    ConvergenceError,
    DomainError,
    EmptySchedule,
    NonPositiveInput,
    NonPositiveInvestment,
    OverlappingStints,
    UnknownPlayer,
)
from .gcp import GameGcpReport
from .ingest import GameRecord, SeasonDataset

#: Stop refining the rate bracket once it is this narrow.
RATE_INTERVAL_TOL = 1e-12
#: Default absolute tolerance, in dollars, on the net present value at the root.
DEFAULT_NPV_TOL = 1e-6
#: Give up expanding the upper bracket beyond this rate.
MAX_RATE = 1e15


@dataclass(frozen=True)
class SingleGameValue:
    """Dollar value of one team-game slot.

    Built from data via sgv(); source_total and game_slots are None when the
    dollar figure was supplied directly as an override.
    """

    dollars: float
    source_total: int | None = None
    game_slots: int | None = None

    @classmethod
    def override(cls, dollars: float) -> "SingleGameValue":
        if dollars <= 0.0:
            raise NonPositiveInput(f"SGV override must be positive, got {dollars}")
        return cls(dollars=float(dollars))


def sgv(total_salary: int, games: int) -> SingleGameValue:
    """Convert the league-wide salary total into pricing for one team-game.

    Full precision is kept; round only for display.
    """
    if total_salary <= 0:
        raise NonPositiveInput(f"total salary must be positive, got {total_salary}")
    if games <= 0:
        raise NonPositiveInput(f"game count must be positive, got {games}")
    slots = 2 * games
    return SingleGameValue(dollars=total_salary / slots,
                           source_total=int(total_salary), game_slots=slots)


@dataclass(frozen=True)
class CashFlowSeries:
    """Time-zero investment plus the ordered per-game cash flows.

    schedule[i] is the game id behind flows[i]; a zero flow is a default
    (missed game). teams[i] is the team whose schedule produced slot i.
    """

    player_id: str
    cf0: float
    flows: tuple[float, ...]
    schedule: tuple[str, ...]
    teams: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return len(self.flows)


@dataclass(frozen=True)
class PvGcp:
    """Plain running sum of a player's GCPs over his schedule (present value
    at a 0% rate); missed games add 0."""

    player_id: str
    value: float
    games_played: int


@dataclass(frozen=True)
class RoiResult:
    """Solved per-game rate plus solver diagnostics."""

    rate: float
    residual: float
    iterations: int
    bracket: tuple[float, float]


def player_schedule(ds: SeasonDataset, player_id: str) -> tuple[tuple[GameRecord, str], ...]:
    """The player's ordered game slots as (game, team) pairs.

    A one-team player is on the hook for his team's entire schedule. A
    traded player's schedule is the chronological concatenation of his
    per-team stints, each stint spanning the team's games from his first to
    his last appearance with that team; stints may not overlap in time.
    """
    appearances: dict[str, list[int]] = {}
    for idx, g in enumerate(ds.games):
        for ln in g.lines:
            if ln.player_id == player_id and ln.active:
                appearances.setdefault(ln.team_id, []).append(idx)
    if not appearances:
        raise UnknownPlayer(f"player {player_id!r} never appears in the dataset")

    if len(appearances) == 1:
        team = next(iter(appearances))
        games = ds.games_for_team(team)
        if not games:
            raise EmptySchedule(f"team {team!r} has no games")
        return tuple((g, team) for g in games)

    stints = []
    for team, idxs in appearances.items():
        first, last = ds.games[min(idxs)], ds.games[max(idxs)]
        window = tuple(g for g in ds.games_for_team(team)
                       if (first.date, first.game_id) <= (g.date, g.game_id)
                       <= (last.date, last.game_id))
        stints.append((team, window))
    stints.sort(key=lambda s: (s[1][0].date, s[1][0].game_id))
    for (_, a), (team_b, b) in zip(stints, stints[1:]):
        if (b[0].date, b[0].game_id) <= (a[-1].date, a[-1].game_id):
            raise OverlappingStints(
                f"player {player_id!r} has overlapping stints around team {team_b!r}")
    return tuple((g, team) for team, window in stints for g in window)


def cash_flows(ds: SeasonDataset, reports: dict[str, GameGcpReport], player_id: str,
               value: SingleGameValue, salary: float) -> CashFlowSeries:
    """Realized cash-flow series for one player: SGV times GCP per scheduled
    game, zero where the player did not appear."""
    if salary <= 0:
        raise NonPositiveInvestment(f"salary must be positive, got {salary}")
    slots = player_schedule(ds, player_id)
    flows = []
    for game, team in slots:
        share = reports[game.game_id].team(team).gcp.get(player_id, 0.0)
        flows.append(value.dollars * share)
    return CashFlowSeries(player_id=player_id, cf0=float(salary),
                          flows=tuple(flows),
                          schedule=tuple(g.game_id for g, _ in slots),
                          teams=tuple(t for _, t in slots))


def pvgcp(ds: SeasonDataset, reports: dict[str, GameGcpReport], player_id: str) -> PvGcp:
    """Sum the player's GCPs over his schedule."""
    slots = player_schedule(ds, player_id)
    shares = [reports[game.game_id].team(team).gcp.get(player_id, 0.0)
              for game, team in slots]
    return PvGcp(player_id=player_id, value=math.fsum(shares),
                 games_played=sum(1 for s in shares if s > 0.0))


def npv(rate: float, series: CashFlowSeries) -> float:
    """Net present value of the series at the given per-game rate.

    Returns +inf when discounting near rate -1 overflows; the sign is still
    meaningful because every flow is non-negative.
    """
    if rate <= -1.0:
        raise DomainError(f"rate must exceed -1, got {rate}")
    inv = 1.0 / (1.0 + rate)
    disc = 1.0
    terms = []
    for cf in series.flows:
        disc *= inv
        if cf != 0.0:  # avoid 0 * inf when the discount overflows
            terms.append(cf * disc)
    total = math.fsum(terms)
    if math.isinf(total):
        return total
    return total - series.cf0


def irr(series: CashFlowSeries, abs_tol: float = DEFAULT_NPV_TOL) -> RoiResult:
    """Solve for the unique rate with zero net present value.

    Brackets the root first (expanding down toward -1 or doubling upward as
    needed), then alternates interpolation and bisection until the bracket
    is narrower than RATE_INTERVAL_TOL and the residual is within abs_tol
    dollars. When the value function is so steep that no representable rate
    meets abs_tol (roots collapsing toward -1), refinement stops at float
    resolution and the result carries the honest residual.
    """
    if series.cf0 <= 0.0:
        raise NonPositiveInvestment(f"cf0 must be positive, got {series.cf0}")
    if not any(cf > 0.0 for cf in series.flows):
        raise AllZeroFlows(f"player {series.player_id!r} produced no positive cash flow")
    if abs_tol <= 0.0:
        raise NonPositiveInput(f"abs_tol must be positive, got {abs_tol}")

    evals = 0

    def f(rate: float) -> float:
        nonlocal evals
        evals += 1
        return npv(rate, series)

    # Initial bracket: expand lo toward -1 while the value is still negative
    # (tiny flows against a large investment), then double hi until the
    # value goes non-positive. Monotonicity guarantees both loops terminate.
    lo, hi = -0.99, 1.0
    flo = f(lo)
    while flo < 0.0:
        gap = (1.0 + lo) * 0.5
        if gap <= 0.0:
            raise ConvergenceError("root is indistinguishable from rate -1")
        lo = -1.0 + gap
        flo = f(lo)
    fhi = f(hi)
    while fhi > 0.0:
        lo, flo = hi, fhi
        hi *= 2.0
        if hi > MAX_RATE:
            raise ConvergenceError(f"root exceeds the supported rate range ({MAX_RATE})")
        fhi = f(hi)

    # Invariant from here on: flo >= 0 >= fhi, so the root stays inside
    # [lo, hi]. The returned rate is always the endpoint with the smaller
    # residual. Two exits: the width and residual tolerances are both met,
    # or the bracket has no representable interior point left, in which
    # case doubles cannot do better and the true residual is reported.
    for step in range(1, 401):
        better = abs(flo) if abs(flo) <= abs(fhi) else abs(fhi)
        if hi - lo <= RATE_INTERVAL_TOL and better <= abs_tol:
            break
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            break  # float resolution reached
        x = mid
        if step % 2 == 1 and flo != fhi:
            # Secant (false position) point; lands inside the bracket since
            # flo and fhi straddle zero, but guard against rounding anyway.
            sec = lo + flo * (hi - lo) / (flo - fhi)
            if lo < sec < hi:
                x = sec
        fx = f(x)
        if fx >= 0.0:
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
    else:
        raise ConvergenceError("rate refinement did not converge in 400 steps")

    if abs(flo) <= abs(fhi):
        rate, residual = lo, flo
    else:
        rate, residual = hi, fhi
    # Widen by one ulp per side so the reported bracket strictly contains
    # the returned rate.
    return RoiResult(rate=rate, residual=residual, iterations=evals,
                     bracket=(math.nextafter(lo, -math.inf),
                              math.nextafter(hi, math.inf)))


def breakeven_gcp(salary: float, n_games: int, value: SingleGameValue) -> float:
    """Constant per-game GCP at which the salary is exactly recovered at a
    0% rate over n_games: salary / (n_games * SGV)."""
    if salary <= 0:
        raise NonPositiveInput(f"salary must be positive, got {salary}")
    if n_games <= 0:
        raise NonPositiveInput(f"n_games must be positive, got {n_games}")
    if value.dollars <= 0:
        raise NonPositiveInput(f"SGV must be positive, got {value.dollars}")
    return salary / (n_games * value.dollars)
