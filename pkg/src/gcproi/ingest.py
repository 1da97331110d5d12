"""Per-game dataset and salary table: file formats, parsing, validation.

Input formats (all UTF-8 CSV, errors reported with 1-based line numbers):

* games CSV: header ``game_id,date,team,opponent,player_id,player_name``
  followed by the 37 canonical field names in canonical order; one row per
  player-game; dates ISO-8601.
* raw-stats CSV: same six leading columns followed by the source stat names
  in RAW_STATS order; rows are run through the adjustment formulas while
  parsing.
* salaries CSV: header ``player_id,player_name,salary_usd``; salary as
  integer dollars with no separators.

Rows whose 37 stat values are all zero describe an inactive player and are
dropped. Parsing is single-pass; the resulting SeasonDataset is treated as
immutable afterward and is safe to share across threads read-only.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from datetime import date as Date
from pathlib import Path
from typing import Iterable

from .errors import (
    DuplicateLine,
    NegativeDerivedField,
    NonPositiveSalary,
    SchemaError,
)
from .fields import FIELD_ORDER, RAW_STATS, FieldId, RawStatLine, derive_fields, underive_fields

ID_COLUMNS = ("game_id", "date", "team", "opponent", "player_id", "player_name")
GAMES_HEADER: tuple[str, ...] = ID_COLUMNS + tuple(f.name for f in FIELD_ORDER)
RAW_GAMES_HEADER: tuple[str, ...] = ID_COLUMNS + RAW_STATS
SALARIES_HEADER: tuple[str, ...] = ("player_id", "player_name", "salary_usd")


@dataclass(frozen=True, eq=True)
class PlayerGameLine:
    """One player's 37-field stat vector for one game."""

    player_id: str
    team_id: str
    game_id: str
    values: dict[FieldId, float]

    @property
    def active(self) -> bool:
        """A player is active iff at least one field value is positive."""
        return any(v > 0.0 for v in self.values.values())


@dataclass(frozen=True, eq=True)
class GameRecord:
    """One game: two team ids and the player lines of both rosters."""

    game_id: str
    date: Date
    team1: str
    team2: str
    lines: tuple[PlayerGameLine, ...]

    @property
    def teams(self) -> tuple[str, str]:
        return (self.team1, self.team2)

    def roster(self, team_id: str) -> tuple[PlayerGameLine, ...]:
        return tuple(ln for ln in self.lines if ln.team_id == team_id)


@dataclass(frozen=True, eq=True)
class SeasonDataset:
    """Games ordered by (date, game_id), plus the player-name lookup."""

    games: tuple[GameRecord, ...]
    player_names: dict[str, str]

    @classmethod
    def from_games(cls, games: Iterable[GameRecord],
                   player_names: dict[str, str] | None = None) -> "SeasonDataset":
        ordered = tuple(sorted(games, key=lambda g: (g.date, g.game_id)))
        return cls(games=ordered, player_names=dict(player_names or {}))

    @property
    def team_ids(self) -> set[str]:
        return {t for g in self.games for t in g.teams}

    @property
    def player_ids(self) -> set[str]:
        return {ln.player_id for g in self.games for ln in g.lines}

    def get_game(self, game_id: str) -> GameRecord:
        for g in self.games:
            if g.game_id == game_id:
                return g
        raise KeyError(game_id)

    def games_for_team(self, team_id: str) -> tuple[GameRecord, ...]:
        return tuple(g for g in self.games if team_id in g.teams)

    def player_name(self, player_id: str) -> str:
        return self.player_names.get(player_id, player_id)


@dataclass(frozen=True)
class SalaryTable:
    """Annual salary in integer dollars per player."""

    entries: dict[str, int]
    names: dict[str, str] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def name(self, player_id: str) -> str:
        return self.names.get(player_id, player_id)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    game_id: str | None = None
    team_id: str | None = None
    player_id: str | None = None


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _parse_stat(text: str, line_no: int, column: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise SchemaError(f"not a number: {text!r}", line_no, column) from None
    if not (0.0 <= v < float("inf")):
        raise SchemaError(f"stat must be finite and non-negative, got {text!r}", line_no, column)
    return v


def _read_rows(path: str | Path, expected_header: tuple[str, ...]):
    # utf-8-sig tolerates the BOM spreadsheet exports tend to prepend
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError("empty file, expected a header row", 1) from None
        if tuple(header) != expected_header:
            raise SchemaError(
                f"bad header; expected {','.join(expected_header)!r}", 1)
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(expected_header):
                raise SchemaError(
                    f"expected {len(expected_header)} columns, got {len(row)}", line_no)
            yield line_no, row


def parse_games(path: str | Path, fmt: str = "derived",
                clamp_negative: bool = False) -> SeasonDataset:
    """Parse a games CSV into a SeasonDataset.

    fmt "derived" reads the canonical 37-column schema; fmt "raw" reads the
    source-stat schema and applies the adjustment formulas per row
    (clamp_negative flooring negative adjustments at zero when set).
    """
    if fmt not in ("derived", "raw"):
        raise ValueError(f"unknown games format {fmt!r}")
    header = GAMES_HEADER if fmt == "derived" else RAW_GAMES_HEADER

    # game_id -> parse state
    pending: dict[str, dict] = {}
    player_names: dict[str, str] = {}

    for line_no, row in _read_rows(path, header):
        game_id, date_text, team, opponent, player_id, player_name = row[:6]
        if not game_id or not team or not opponent or not player_id:
            raise SchemaError("game_id, team, opponent and player_id must be non-empty", line_no)
        if team == opponent:
            raise SchemaError(f"team and opponent are both {team!r}", line_no, "opponent")
        try:
            game_date = Date.fromisoformat(date_text)
        except ValueError:
            raise SchemaError(f"bad ISO date: {date_text!r}", line_no, "date") from None

        if fmt == "derived":
            values = {
                fid: _parse_stat(row[6 + i], line_no, fid.name)
                for i, fid in enumerate(FIELD_ORDER)
            }
        else:
            raw_values = {
                name: _parse_stat(row[6 + i], line_no, name)
                for i, name in enumerate(RAW_STATS)
            }
            try:
                values = derive_fields(RawStatLine(player_id, raw_values), clamp_negative)
            except NegativeDerivedField as exc:
                raise NegativeDerivedField(exc.field, exc.value, line_no) from None

        known = player_names.get(player_id)
        if known is not None and known != player_name:
            raise SchemaError(
                f"player {player_id!r} has conflicting names {known!r} and {player_name!r}",
                line_no, "player_name")
        player_names[player_id] = player_name

        state = pending.get(game_id)
        if state is None:
            state = {
                "date": game_date,
                "teams": (team, opponent),
                "first_line": line_no,
                "players": set(),
                "lines": {team: [], opponent: []},
            }
            pending[game_id] = state
        else:
            if game_date != state["date"]:
                raise SchemaError(
                    f"game {game_id!r} has conflicting dates {state['date']} and {game_date}",
                    line_no, "date")
            if {team, opponent} != set(state["teams"]):
                raise SchemaError(
                    f"game {game_id!r} has conflicting team pairs", line_no, "team")
        if player_id in state["players"]:
            raise DuplicateLine(player_id, game_id, line_no)
        state["players"].add(player_id)

        line = PlayerGameLine(player_id=player_id, team_id=team,
                              game_id=game_id, values=values)
        if line.active:
            state["lines"][team].append(line)

    games = []
    for game_id, state in pending.items():
        t1, t2 = state["teams"]
        for t in (t1, t2):
            if not state["lines"][t]:
                raise SchemaError(
                    f"game {game_id!r} has no active player for team {t!r}",
                    state["first_line"])
        lines = tuple(sorted(state["lines"][t1], key=lambda ln: ln.player_id)
                      + sorted(state["lines"][t2], key=lambda ln: ln.player_id))
        games.append(GameRecord(game_id=game_id, date=state["date"],
                                team1=t1, team2=t2, lines=lines))

    used = {ln.player_id for g in games for ln in g.lines}
    return SeasonDataset.from_games(
        games, {p: n for p, n in player_names.items() if p in used})


def parse_salaries(path: str | Path) -> SalaryTable:
    """Parse the salaries CSV. Salaries are exact integer dollars."""
    entries: dict[str, int] = {}
    names: dict[str, str] = {}
    lines_seen: dict[str, int] = {}
    for line_no, row in _read_rows(path, SALARIES_HEADER):
        player_id, player_name, salary_text = row
        if not player_id:
            raise SchemaError("player_id must be non-empty", line_no, "player_id")
        if player_id in entries:
            raise SchemaError(
                f"duplicate salary entry for player {player_id!r} "
                f"(first at line {lines_seen[player_id]})", line_no, "player_id")
        try:
            salary = int(salary_text)
        except ValueError:
            raise SchemaError(
                f"salary must be integer dollars, got {salary_text!r}",
                line_no, "salary_usd") from None
        if salary <= 0:
            raise NonPositiveSalary(player_id, salary, line_no)
        entries[player_id] = salary
        names[player_id] = player_name
        lines_seen[player_id] = line_no
    return SalaryTable(entries=entries, names=names)


def _fmt_stat(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def write_games_csv(ds: SeasonDataset, path: str | Path | io.TextIOBase) -> None:
    """Write a SeasonDataset in the canonical games schema.

    The emitted form is byte-stable: parsing it back and re-writing yields
    identical bytes.
    """
    def emit(fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(GAMES_HEADER)
        for g in ds.games:
            for team, opp in ((g.team1, g.team2), (g.team2, g.team1)):
                for ln in g.roster(team):
                    w.writerow([g.game_id, g.date.isoformat(), team, opp,
                                ln.player_id, ds.player_name(ln.player_id)]
                               + [_fmt_stat(ln.values[f]) for f in FIELD_ORDER])

    if isinstance(path, io.TextIOBase):
        emit(path)
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            emit(fh)


def write_raw_games_csv(ds: SeasonDataset, path: str | Path) -> None:
    """Write a SeasonDataset in the source-stat schema (inverse adjustments)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RAW_GAMES_HEADER)
        for g in ds.games:
            for team, opp in ((g.team1, g.team2), (g.team2, g.team1)):
                for ln in g.roster(team):
                    raw = underive_fields(ln.player_id, ln.values)
                    w.writerow([g.game_id, g.date.isoformat(), team, opp,
                                ln.player_id, ds.player_name(ln.player_id)]
                               + [_fmt_stat(raw.get(name)) for name in RAW_STATS])


def write_salaries_csv(table: SalaryTable, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SALARIES_HEADER)
        for player_id in sorted(table.entries):
            w.writerow([player_id, table.name(player_id), str(table.entries[player_id])])


def validate_dataset(ds: SeasonDataset, strict_season: bool = False) -> ValidationReport:
    """Report-only consistency checks; the dataset is never modified.

    With strict_season set, teams appearing in more than 82 games are also
    flagged.
    """
    out: list[Violation] = []

    seen_games: set[str] = set()
    prev_key = None
    for g in ds.games:
        key = (g.date, g.game_id)
        if prev_key is not None and key < prev_key:
            out.append(Violation("UnsortedGames",
                                 f"game {g.game_id!r} out of (date, game_id) order",
                                 game_id=g.game_id))
        prev_key = key
        if g.game_id in seen_games:
            out.append(Violation("DuplicateGame", f"game id {g.game_id!r} repeated",
                                 game_id=g.game_id))
        seen_games.add(g.game_id)

        if g.team1 == g.team2:
            out.append(Violation("TeamMismatch",
                                 f"game {g.game_id!r} lists the same team twice",
                                 game_id=g.game_id, team_id=g.team1))

        players_seen: set[str] = set()
        active_by_team = {g.team1: 0, g.team2: 0}
        for ln in g.lines:
            if ln.team_id not in g.teams:
                out.append(Violation("TeamMismatch",
                                     f"line team {ln.team_id!r} not in game {g.game_id!r}",
                                     game_id=g.game_id, team_id=ln.team_id,
                                     player_id=ln.player_id))
                continue
            if ln.player_id in players_seen:
                out.append(Violation("DuplicatePlayer",
                                     f"player {ln.player_id!r} repeated in game {g.game_id!r}",
                                     game_id=g.game_id, player_id=ln.player_id))
            players_seen.add(ln.player_id)

            missing = [f for f in FIELD_ORDER if f not in ln.values]
            if missing or len(ln.values) != len(FIELD_ORDER):
                out.append(Violation("MissingField",
                                     f"player {ln.player_id!r} in game {g.game_id!r} has "
                                     f"{len(ln.values)} of {len(FIELD_ORDER)} fields",
                                     game_id=g.game_id, player_id=ln.player_id))
            for f, v in ln.values.items():
                if v != v or v in (float("inf"), float("-inf")):
                    out.append(Violation("NonFiniteValue",
                                         f"{f.name} is {v} for player {ln.player_id!r} "
                                         f"in game {g.game_id!r}",
                                         game_id=g.game_id, player_id=ln.player_id))
                elif v < 0.0:
                    out.append(Violation("NegativeValue",
                                         f"{f.name} is {v} for player {ln.player_id!r} "
                                         f"in game {g.game_id!r}",
                                         game_id=g.game_id, player_id=ln.player_id))
            if ln.active:
                active_by_team[ln.team_id] += 1

        for team, count in active_by_team.items():
            if count == 0:
                out.append(Violation("EmptyTeamGame",
                                     f"team {team!r} has no active player in game {g.game_id!r}",
                                     game_id=g.game_id, team_id=team))

    if strict_season:
        counts: dict[str, int] = {}
        for g in ds.games:
            for t in g.teams:
                counts[t] = counts.get(t, 0) + 1
        for team in sorted(counts):
            if counts[team] > 82:
                out.append(Violation("TeamOver82",
                                     f"team {team!r} appears in {counts[team]} games",
                                     team_id=team))

    return ValidationReport(violations=tuple(out))
