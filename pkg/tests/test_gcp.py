import math
import random
from datetime import date

import pytest

from gcproi import (
    FieldId,
    SeasonDataset,
    active_fields,
    game_report,
    gcp_upper_bound,
    nonzero_gcp_distribution,
    omega,
    player_gcp,
    season_reports,
    team_totals,
)
from gcproi.errors import DivisionDomain, EmptyActiveSet, UnknownPlayer, UnknownTeam

from conftest import BOS_EXPECTED, GOLDEN_TOL, PHI_EXPECTED, make_game, make_line


def test_bos_team_totals_match_the_published_columns(bosphi):
    game = bosphi.games[0]
    totals = team_totals(game, "BOS")
    assert totals.totals[FieldId.MIN] == pytest.approx(240.0, abs=1e-9)
    assert totals.totals[FieldId.CHGD] == 0.0
    assert totals.totals[FieldId.DLBR] == 0.0
    assert totals.totals[FieldId.POSS] == 450.0


def test_single_player_team_totals_equal_his_line():
    ln_a = make_line("solo", "A", "g1", MIN=30, POSS=50, TCH=12)
    ln_b = make_line("other", "B", "g1", MIN=30, POSS=50)
    game = make_game("g1", date(2024, 1, 1), "A", "B", [ln_a, ln_b])
    totals = team_totals(game, "A")
    assert totals.totals == ln_a.values


def test_random_roster_totals_match_column_sum_oracle():
    rng = random.Random(12)
    lines = [
        make_line(f"p{i}", "A", "g1",
                  **{f.name: rng.randint(0, 25) for f in FieldId})
        for i in range(12)
    ]
    game = make_game("g1", date(2024, 1, 1), "A", "B",
                     lines + [make_line("q", "B", "g1", MIN=1)])
    totals = team_totals(game, "A")
    for f in FieldId:
        column = [ln.values[f] for ln in lines]
        assert totals.totals[f] == math.fsum(column)


def test_unknown_team_rejected(bosphi):
    with pytest.raises(UnknownTeam):
        team_totals(bosphi.games[0], "LAL")


def test_bos_sits_out_two_fields_phi_one(bosphi):
    game = bosphi.games[0]
    bos_active = active_fields(team_totals(game, "BOS"))
    assert len(bos_active) == 35
    assert set(FieldId) - bos_active == {FieldId.CHGD, FieldId.DLBR}
    phi_active = active_fields(team_totals(game, "PHI"))
    assert len(phi_active) == 36
    assert set(FieldId) - phi_active == {FieldId.OBOX}


def test_all_zero_totals_raise_with_game_context():
    game = make_game("g9", date(2024, 1, 1), "A", "B",
                     [make_line("p1", "A", "g9"), make_line("p2", "B", "g9", MIN=1)])
    with pytest.raises(EmptyActiveSet) as exc:
        active_fields(team_totals(game, "A"))
    assert "g9" in str(exc.value)
    assert exc.value.game_id == "g9"


def test_active_count_drops_by_the_number_of_zeroed_fields():
    rng = random.Random(5)
    for k in (0, 1, 5, 20, 36):
        zeroed = set(rng.sample(list(FieldId), k))
        stats = {f.name: 3 for f in FieldId if f not in zeroed}
        game = make_game("g1", date(2024, 1, 1), "A", "B",
                         [make_line("p1", "A", "g1", **stats),
                          make_line("p2", "B", "g1", MIN=1)])
        assert len(active_fields(team_totals(game, "A"))) == 37 - k


@pytest.mark.parametrize("n, expected", [(35, 1 / 35), (36, 1 / 36), (37, 1 / 37)])
def test_weight_is_reciprocal_of_active_count(n, expected):
    fields = frozenset(list(FieldId)[:n])
    assert omega(fields) == expected


def test_weight_of_empty_set_is_an_error():
    with pytest.raises(EmptyActiveSet):
        omega(frozenset())


def test_golden_game_weights_are_exact(bosphi_reports):
    report = bosphi_reports["2023040401"]
    assert report.team("BOS").weight == 1 / 35
    assert report.team("PHI").weight == 1 / 36


def test_tatum_and_embiid_match_published_gcp(bosphi):
    game = bosphi.games[0]
    assert player_gcp(game, "BOS", "jayson-tatum") == pytest.approx(0.2064, abs=GOLDEN_TOL)
    assert player_gcp(game, "PHI", "joel-embiid") == pytest.approx(0.2530, abs=GOLDEN_TOL)


def test_all_twenty_golden_gcps(bosphi_reports):
    report = bosphi_reports["2023040401"]
    for team, expected in (("BOS", BOS_EXPECTED), ("PHI", PHI_EXPECTED)):
        side = report.team(team)
        assert set(side.gcp) == set(expected)
        for player, value in expected.items():
            assert side.gcp[player] == pytest.approx(value, abs=GOLDEN_TOL), player
        assert math.fsum(side.gcp.values()) == pytest.approx(1.0, abs=1e-12)


def test_sole_active_player_owns_the_whole_game():
    game = make_game("g1", date(2024, 1, 1), "A", "B",
                     [make_line("solo", "A", "g1", MIN=48, POSS=90, TCH=50),
                      make_line("p2", "B", "g1", MIN=1)])
    assert player_gcp(game, "A", "solo") == 1.0


def test_two_single_player_teams_both_get_exactly_one():
    game = make_game("g1", date(2024, 1, 1), "A", "B",
                     [make_line("a", "A", "g1", MIN=48, POSS=90),
                      make_line("b", "B", "g1", MIN=48, POSS=88, TCH=3)])
    report = game_report(game)
    assert report.team("A").gcp == {"a": 1.0}
    assert report.team("B").gcp == {"b": 1.0}


def test_inactive_players_carry_no_entry():
    game = make_game("g1", date(2024, 1, 1), "A", "B",
                     [make_line("a1", "A", "g1", MIN=10),
                      make_line("a2", "A", "g1"),  # all-zero line
                      make_line("b", "B", "g1", MIN=1)])
    report = game_report(game)
    assert "a2" not in report.team("A").gcp
    with pytest.raises(UnknownPlayer):
        player_gcp(game, "A", "a2")
    with pytest.raises(UnknownPlayer):
        player_gcp(game, "A", "nobody")


def test_upper_bound_is_one_for_a_full_share_player():
    game = make_game("g1", date(2024, 1, 1), "A", "B",
                     [make_line("solo", "A", "g1", MIN=48, POSS=90, TCH=50),
                      make_line("b", "B", "g1", MIN=1, POSS=1)])
    assert gcp_upper_bound(game, "A", "solo") == pytest.approx(1.0, abs=1e-15)


def test_tatum_bound_from_the_published_column_sums(bosphi):
    # Closed form from the table totals: MIN 37.8 of 240, POSS 72 of 450,
    # weight 1/35.
    game = bosphi.games[0]
    expected = 1.0 - (1 / 35) * ((240.0 - 37.8) / 240.0 + (450.0 - 72.0) / 450.0)
    bound = gcp_upper_bound(game, "BOS", "jayson-tatum")
    assert bound == pytest.approx(expected, abs=1e-12)
    assert bound >= 0.2064


def test_every_golden_player_sits_under_his_bound(bosphi, bosphi_reports):
    game = bosphi.games[0]
    report = bosphi_reports[game.game_id]
    for side in report.teams:
        for player, share in side.gcp.items():
            assert share <= gcp_upper_bound(game, side.team_id, player) + 1e-12


def test_bound_requires_positive_min_and_poss():
    game = make_game("g1", date(2024, 1, 1), "A", "B",
                     [make_line("a", "A", "g1", TCH=5),  # no MIN, no POSS
                      make_line("b", "B", "g1", MIN=1)])
    with pytest.raises(DivisionDomain):
        gcp_upper_bound(game, "A", "a")


def test_golden_distribution_has_twenty_values(bosphi):
    values = nonzero_gcp_distribution(bosphi)
    assert len(values) == 20
    assert all(v > 0.0 for v in values)


def test_empty_dataset_distribution_is_empty():
    ds = SeasonDataset.from_games([])
    assert nonzero_gcp_distribution(ds) == []


def test_distribution_count_equals_active_player_games():
    from gcproi.synth import SynthConfig, synth_season
    ds, _, book = synth_season(SynthConfig(seed=3, teams=4, games_per_team=8))
    values = nonzero_gcp_distribution(ds)
    assert len(values) == sum(book.appearances.values())


def test_report_is_independent_of_roster_order(bosphi):
    game = bosphi.games[0]
    shuffled = make_game(game.game_id, game.date, game.team1, game.team2,
                         tuple(reversed(game.lines)))
    a = game_report(game)
    b = game_report(shuffled)
    for team in game.teams:
        assert a.team(team).gcp == b.team(team).gcp
        assert a.team(team).weight == b.team(team).weight


def test_scaling_one_field_leaves_gcp_unchanged(bosphi):
    game = bosphi.games[0]
    base = game_report(game)
    for scale in (0.25, 3.0, 1000.0):
        lines = []
        for ln in game.lines:
            values = dict(ln.values)
            values[FieldId.TCH] = values[FieldId.TCH] * scale
            lines.append(make_line(ln.player_id, ln.team_id, ln.game_id,
                                   **{f.name: v for f, v in values.items()}))
        scaled = game_report(make_game(game.game_id, game.date, game.team1,
                                       game.team2, lines))
        for team in game.teams:
            for player, share in base.team(team).gcp.items():
                assert scaled.team(team).gcp[player] == pytest.approx(share, abs=1e-12)


def test_dropping_a_zero_total_field_changes_nothing(bosphi):
    # CHGD has a zero BOS total; removing it from every line is a no-op.
    game = bosphi.games[0]
    base = game_report(game).team("BOS")
    lines = []
    for ln in game.lines:
        stats = {f.name: v for f, v in ln.values.items()}
        if ln.team_id == "BOS":
            stats["CHGD"] = 0.0
        lines.append(make_line(ln.player_id, ln.team_id, ln.game_id, **stats))
    again = game_report(make_game(game.game_id, game.date, game.team1,
                                  game.team2, lines)).team("BOS")
    assert again.gcp == base.gcp
    assert again.weight == base.weight


def test_season_reports_cover_every_game(bosphi):
    reports = season_reports(bosphi)
    assert set(reports) == {g.game_id for g in bosphi.games}
