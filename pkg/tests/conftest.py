from datetime import date, timedelta
from pathlib import Path

import pytest

from gcproi import FieldId, GameRecord, PlayerGameLine, SeasonDataset, parse_games, season_reports

DATA_DIR = Path(__file__).parent / "data"

# Published GCP values for the worked example game, team BOS then team PHI.
BOSPHI_GAME_ID = "2023040401"
BOS_EXPECTED = {
    "jayson-tatum": 0.2064,
    "grant-williams": 0.0634,
    "al-horford": 0.1320,
    "marcus-smart": 0.1402,
    "derrick-white": 0.1425,
    "malcolm-brogdon": 0.1243,
    "sam-hauser": 0.0037,
    "luke-kornet": 0.0912,
    "mike-muscala": 0.0380,
    "blake-griffin": 0.0582,
}
PHI_EXPECTED = {
    "tobias-harris": 0.1186,
    "pj-tucker": 0.0657,
    "joel-embiid": 0.2530,
    "tyrese-maxey": 0.1153,
    "james-harden": 0.2179,
    "deanthony-melton": 0.0524,
    "georges-niang": 0.0372,
    "jalen-mcdaniels": 0.0503,
    "danuel-house-jr": 0.0026,
    "paul-reed": 0.0871,
}
GOLDEN_TOL = 5e-5  # the published table prints four decimals


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def bosphi() -> SeasonDataset:
    return parse_games(DATA_DIR / "bosphi_games.csv")


@pytest.fixture(scope="session")
def bosphi_reports(bosphi):
    return season_reports(bosphi)


def make_line(player_id: str, team_id: str, game_id: str, **stats) -> PlayerGameLine:
    """A 37-field line that is zero except for the named fields."""
    values = {f: 0.0 for f in FieldId}
    for name, v in stats.items():
        values[FieldId[name]] = float(v)
    return PlayerGameLine(player_id=player_id, team_id=team_id,
                          game_id=game_id, values=values)


def make_game(game_id: str, day: date, team1: str, team2: str, lines) -> GameRecord:
    return GameRecord(game_id=game_id, date=day, team1=team1, team2=team2,
                      lines=tuple(lines))


def build_two_team_season(n_games: int, players_a, players_b,
                          misses: dict[str, set] | None = None) -> SeasonDataset:
    """n_games between teams A and B on consecutive days.

    misses maps player id -> set of 0-based game indices sat out. Active
    players get a simple line that varies with the game index.
    """
    misses = misses or {}
    games = []
    for i in range(n_games):
        gid = f"g{i + 1:03d}"
        lines = []
        for team, players in (("A", players_a), ("B", players_b)):
            for j, p in enumerate(players):
                if i in misses.get(p, set()):
                    continue
                lines.append(make_line(p, team, gid,
                                       MIN=10.0 + j, POSS=20 + j + (i % 3),
                                       TCH=5 + ((i + j) % 7), FG2O=j % 4,
                                       PF=(i + j) % 3))
        games.append(make_game(gid, date(2024, 1, 1) + timedelta(days=i),
                               "A", "B", lines))
    return SeasonDataset.from_games(games)
