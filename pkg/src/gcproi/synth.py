"""Synthetic seasons and independent oracles for the property suites.

Generation is fully deterministic for a given config: the same seed always
produces the same dataset, salary table, and bookkeeping, byte for byte
when serialized. Statistical realism is not a goal; the point is planted
facts (who missed which game, which fields a team never records) that tests
can assert against independently of the code under test.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from datetime import date as Date
from datetime import timedelta

from .errors import InvalidConfig, NoSignChange
from .fields import FIELD_ORDER, FRACTIONAL_FIELDS, FieldId
from .finance import CashFlowSeries, npv
from .ingest import GameRecord, PlayerGameLine, SalaryTable, SeasonDataset

#: Oracle grid: scan (-0.999, 10] in steps of 1e-3 for the sign change.
ORACLE_GRID_LO = -0.999
ORACLE_GRID_HI = 10.0
ORACLE_GRID_STEP = 1e-3
ORACLE_BISECT_STEPS = 200


@dataclass(frozen=True)
class SynthConfig:
    """Knobs for synthetic-season generation. Identical config and seed
    reproduce the identical dataset."""

    seed: int = 0
    teams: int = 4
    games_per_team: int = 6
    roster_min: int = 8
    roster_max: int = 10
    count_max: int = 20
    minutes_max: float = 40.0
    miss_prob: float = 0.1
    salary_min: int = 500_000
    salary_max: int = 50_000_000
    start_date: Date = Date(2024, 1, 1)
    #: Fields a team never records, e.g. {"T00": (FieldId.CHGD,)}.
    zero_fields: dict[str, tuple[FieldId, ...]] = field(default_factory=dict)
    #: Per-player miss probability overrides, e.g. {"T00P00": 1.0}.
    miss_prob_overrides: dict[str, float] = field(default_factory=dict)
    realistic: bool = False

    def validate(self) -> None:
        if self.teams < 2 or self.teams % 2 != 0:
            raise InvalidConfig(f"teams must be even and >= 2, got {self.teams}")
        if self.games_per_team < 1:
            raise InvalidConfig(f"games_per_team must be >= 1, got {self.games_per_team}")
        if not (1 <= self.roster_min <= self.roster_max):
            raise InvalidConfig(
                f"need 1 <= roster_min <= roster_max, got {self.roster_min}..{self.roster_max}")
        if self.count_max < 1:
            raise InvalidConfig(f"count_max must be >= 1, got {self.count_max}")
        if self.minutes_max <= 1.0:
            raise InvalidConfig(f"minutes_max must exceed 1, got {self.minutes_max}")
        for prob in (self.miss_prob, *self.miss_prob_overrides.values()):
            if not (0.0 <= prob <= 1.0):
                raise InvalidConfig(f"miss probability out of [0, 1]: {prob}")
        if not (1 <= self.salary_min <= self.salary_max):
            raise InvalidConfig(
                f"need 1 <= salary_min <= salary_max, got {self.salary_min}..{self.salary_max}")


@dataclass(frozen=True)
class SynthBookkeeping:
    """Planted facts recorded while generating, for oracle assertions."""

    rosters: dict[str, tuple[str, ...]]
    schedule: dict[str, tuple[str, ...]]  # team -> ordered game ids
    missed: dict[str, tuple[str, ...]]  # player -> game ids missed
    appearances: dict[str, int]  # player -> active game count
    zero_fields: dict[str, tuple[FieldId, ...]]  # team -> planted silent fields
    forced_active: tuple[tuple[str, str], ...]  # (game, player) kept active


def _round_robin(teams: list[str], rounds: int) -> list[list[tuple[str, str]]]:
    """Circle-method pairings: every team plays exactly once per round."""
    n = len(teams)
    fixed, rest = teams[0], teams[1:]
    out = []
    for r in range(rounds):
        shift = r % (n - 1)
        ring = rest[shift:] + rest[:shift]
        lineup = [fixed] + ring
        out.append([(lineup[i], lineup[n - 1 - i]) for i in range(n // 2)])
    return out


def synth_season(cfg: SynthConfig) -> tuple[SeasonDataset, SalaryTable, SynthBookkeeping]:
    """Generate a dataset, matching salary table, and bookkeeping.

    Every rostered player gets a salary even if he never appears, so forced
    full-miss players surface downstream as total defaults. Team-game totals
    of non-planted fields are always positive, which makes the planted
    zero-field sets exactly the inactive sets.
    """
    cfg.validate()
    rng = random.Random(cfg.seed)

    teams = [f"T{i:02d}" for i in range(cfg.teams)]
    rosters = {
        t: tuple(f"{t}P{j:02d}" for j in range(rng.randint(cfg.roster_min, cfg.roster_max)))
        for t in teams
    }
    count_fields = [f for f in FIELD_ORDER if f not in FRACTIONAL_FIELDS]

    rounds = _round_robin(teams, cfg.games_per_team)
    games: list[GameRecord] = []
    schedule: dict[str, list[str]] = {t: [] for t in teams}
    missed: dict[str, list[str]] = {p: [] for r in rosters.values() for p in r}
    appearances: dict[str, int] = {p: 0 for r in rosters.values() for p in r}
    forced_active: list[tuple[str, str]] = []
    game_no = 0

    for round_idx, pairings in enumerate(rounds):
        day = cfg.start_date + timedelta(days=round_idx)
        for home, away in pairings:
            game_no += 1
            game_id = f"G{game_no:05d}"
            schedule[home].append(game_id)
            schedule[away].append(game_id)
            lines: list[PlayerGameLine] = []
            for team in (home, away):
                silenced = set(cfg.zero_fields.get(team, ()))
                actives = []
                for player in rosters[team]:
                    prob = cfg.miss_prob_overrides.get(player, cfg.miss_prob)
                    if rng.random() < prob:
                        missed[player].append(game_id)
                    else:
                        actives.append(player)
                if not actives:
                    # A team cannot field zero players; keep the first
                    # non-forced-miss player, or the first rostered one.
                    keep = next((p for p in rosters[team]
                                 if cfg.miss_prob_overrides.get(p, cfg.miss_prob) < 1.0),
                                rosters[team][0])
                    missed[keep].remove(game_id)
                    actives.append(keep)
                    forced_active.append((game_id, keep))
                team_lines = []
                for player in actives:
                    appearances[player] += 1
                    values = {}
                    for f in count_fields:
                        values[f] = 0.0 if f in silenced else float(rng.randint(0, cfg.count_max))
                    for f in FRACTIONAL_FIELDS:
                        values[f] = 0.0 if f in silenced else rng.uniform(1.0, cfg.minutes_max)
                    team_lines.append(values)
                # Guarantee every non-silenced count field has a positive
                # team total so the active set is exactly the planted one.
                for f in count_fields:
                    if f not in silenced and not any(v[f] > 0.0 for v in team_lines):
                        team_lines[0][f] = 1.0
                if cfg.realistic and FieldId.MIN not in silenced:
                    total_min = math.fsum(v[FieldId.MIN] for v in team_lines)
                    for v in team_lines:
                        v[FieldId.MIN] = v[FieldId.MIN] * 240.0 / total_min
                lines.extend(
                    PlayerGameLine(player_id=p, team_id=team, game_id=game_id, values=v)
                    for p, v in zip(actives, team_lines))
            games.append(GameRecord(game_id=game_id, date=day, team1=home,
                                    team2=away, lines=tuple(lines)))

    players = sorted(p for r in rosters.values() for p in r)
    names = {p: f"Player {p}" for p in players}
    salaries = SalaryTable(
        entries={p: rng.randint(cfg.salary_min, cfg.salary_max) for p in players},
        names=names)
    ds = SeasonDataset.from_games(games, names)
    book = SynthBookkeeping(
        rosters=rosters,
        schedule={t: tuple(v) for t, v in schedule.items()},
        missed={p: tuple(v) for p, v in missed.items()},
        appearances=appearances,
        zero_fields={t: tuple(v) for t, v in cfg.zero_fields.items()},
        forced_active=tuple(forced_active),
    )
    return ds, salaries, book


def irr_oracle(series: CashFlowSeries) -> float:
    """Slow, simple reference root-finder for the rate solver.

    Walks a dense grid upward from just above -1 until the net present
    value turns non-positive, then bisects that one grid cell 200 times.
    Deliberately shares no logic with the production solver.
    """
    if series.cf0 <= 0.0 or not any(cf > 0.0 for cf in series.flows):
        raise NoSignChange("series violates the solver preconditions")
    lo = ORACLE_GRID_LO
    f_lo = npv(lo, series)
    if f_lo < 0.0:
        raise NoSignChange(f"no sign change: value already negative at {lo}")
    steps = int(round((ORACLE_GRID_HI - ORACLE_GRID_LO) / ORACLE_GRID_STEP))
    hi = None
    for k in range(1, steps + 1):
        x = ORACLE_GRID_LO + k * ORACLE_GRID_STEP
        fx = npv(x, series)
        if fx <= 0.0:
            hi = x
            break
        lo = x
    if hi is None:
        raise NoSignChange(f"no sign change up to rate {ORACLE_GRID_HI}")
    for _ in range(ORACLE_BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        if npv(mid, series) >= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
