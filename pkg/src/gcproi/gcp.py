"""Game contribution percentage.

A player's GCP for one game is the equal-weighted average of his share of
each stat field his team registered:

    gcp = (1 / |active fields|) * sum over active fields of (player value / team total)

where a field is active when the team total is positive. Shares of fields
the team never recorded are simply not part of the average, so the weight
is dynamic per team per game. By construction the GCPs of a team's active
players sum to exactly 1 for every game.

All functions here are pure; per-game reports may be computed in parallel.
Sums use compensated accumulation (math.fsum) so the sum-to-unity identity
holds to 1e-12 even for large rosters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DivisionDomain, EmptyActiveSet, UnknownPlayer, UnknownTeam
from .fields import FIELD_ORDER, FieldId
from .ingest import GameRecord, SeasonDataset


@dataclass(frozen=True)
class TeamGameTotals:
    """Per-field totals for one team in one game."""

    game_id: str
    team_id: str
    totals: dict[FieldId, float]


@dataclass(frozen=True)
class TeamGcp:
    """One team's side of a game report. Inactive players carry no entry."""

    team_id: str
    weight: float
    active_fields: frozenset[FieldId]
    gcp: dict[str, float]


@dataclass(frozen=True)
class GameGcpReport:
    game_id: str
    teams: tuple[TeamGcp, TeamGcp]

    def team(self, team_id: str) -> TeamGcp:
        for t in self.teams:
            if t.team_id == team_id:
                return t
        raise UnknownTeam(f"team {team_id!r} not in game {self.game_id!r}")

    def gcp_for(self, player_id: str) -> float | None:
        for t in self.teams:
            if player_id in t.gcp:
                return t.gcp[player_id]
        return None


def team_totals(game: GameRecord, team_id: str) -> TeamGameTotals:
    """Sum every field over the team's lines for this game."""
    if team_id not in game.teams:
        raise UnknownTeam(f"team {team_id!r} not in game {game.game_id!r}")
    roster = game.roster(team_id)
    totals = {f: math.fsum(ln.values.get(f, 0.0) for ln in roster) for f in FIELD_ORDER}
    return TeamGameTotals(game_id=game.game_id, team_id=team_id, totals=totals)


def active_fields(totals: TeamGameTotals) -> frozenset[FieldId]:
    """Fields with a positive team total."""
    active = frozenset(f for f, v in totals.totals.items() if v > 0.0)
    if not active:
        raise EmptyActiveSet(totals.game_id, totals.team_id)
    return active


def omega(active: frozenset[FieldId]) -> float:
    """The categorical weight, 1 over the number of active fields."""
    if not active:
        raise EmptyActiveSet()
    return 1.0 / len(active)


def _share_sum(line_values: dict[FieldId, float], totals: dict[FieldId, float],
               active: frozenset[FieldId]) -> float:
    return math.fsum(line_values.get(f, 0.0) / totals[f] for f in FIELD_ORDER if f in active)


def player_gcp(game: GameRecord, team_id: str, player_id: str) -> float:
    """GCP of one active player; see the module docstring for the formula."""
    totals = team_totals(game, team_id)
    active = active_fields(totals)
    w = omega(active)
    for ln in game.roster(team_id):
        if ln.player_id == player_id:
            if not ln.active:
                raise UnknownPlayer(
                    f"player {player_id!r} is inactive in game {game.game_id!r}")
            return w * _share_sum(ln.values, totals.totals, active)
    raise UnknownPlayer(f"player {player_id!r} not on team {team_id!r} "
                        f"in game {game.game_id!r}")


def game_report(game: GameRecord) -> GameGcpReport:
    """GCPs for the active players of both teams of one game.

    Player order inside each team map follows roster order, so output is
    deterministic for a given dataset.
    """
    sides = []
    for team_id in game.teams:
        totals = team_totals(game, team_id)
        active = active_fields(totals)
        w = omega(active)
        gcp = {
            ln.player_id: w * _share_sum(ln.values, totals.totals, active)
            for ln in game.roster(team_id) if ln.active
        }
        sides.append(TeamGcp(team_id=team_id, weight=w,
                             active_fields=active, gcp=gcp))
    return GameGcpReport(game_id=game.game_id, teams=(sides[0], sides[1]))


def gcp_upper_bound(game: GameRecord, team_id: str, player_id: str) -> float:
    """Largest GCP the player could have recorded given his minutes and
    possessions: 1 - weight * (missing minutes share + missing possessions
    share). Requires positive team totals for both."""
    totals = team_totals(game, team_id)
    active = active_fields(totals)
    w = omega(active)
    min_t = totals.totals[FieldId.MIN]
    poss_t = totals.totals[FieldId.POSS]
    if min_t <= 0.0 or poss_t <= 0.0:
        raise DivisionDomain(
            f"team {team_id!r} has zero MIN or POSS total in game {game.game_id!r}")
    for ln in game.roster(team_id):
        if ln.player_id == player_id:
            min_p = ln.values.get(FieldId.MIN, 0.0)
            poss_p = ln.values.get(FieldId.POSS, 0.0)
            return 1.0 - w * ((min_t - min_p) / min_t + (poss_t - poss_p) / poss_t)
    raise UnknownPlayer(f"player {player_id!r} not on team {team_id!r} "
                        f"in game {game.game_id!r}")


def season_reports(ds: SeasonDataset) -> dict[str, GameGcpReport]:
    """Game reports for every game, keyed by game id, in dataset order."""
    return {g.game_id: game_report(g) for g in ds.games}


def nonzero_gcp_distribution(ds: SeasonDataset,
                             reports: dict[str, GameGcpReport] | None = None) -> list[float]:
    """All strictly positive GCP values across the dataset.

    One value per active player-game; order follows dataset, team, then
    roster order.
    """
    if reports is None:
        reports = season_reports(ds)
    out: list[float] = []
    for g in ds.games:
        rep = reports[g.game_id]
        for side in rep.teams:
            out.extend(v for v in side.gcp.values() if v > 0.0)
    return out
