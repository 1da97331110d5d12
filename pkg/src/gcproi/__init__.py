"""Box-score contribution shares, cash-flow conversion, and contractual ROI.

Pipeline: parse per-game stat lines and salaries, compute each player's
game contribution percentage (GCP), price one team-game slot (SGV), turn
GCPs into realized cash flows with missed games as defaults, and solve the
per-game internal rate of return against the salary investment.
"""

from .errors import (
    AllZeroFlows,
    ConvergenceError,
    DivisionDomain,
    DomainError,
    DuplicateLine,
    EmptyActiveSet,
    EmptySchedule,
    GcproiError,
    InvalidConfig,
    MissingSalary,
    NegativeDerivedField,
    NonPositiveInput,
    NonPositiveInvestment,
    NonPositiveSalary,
    NoSignChange,
    OverlappingStints,
    SchemaError,
    UnknownPlayer,
    UnknownTeam,
)
from .fields import FIELD_ORDER, RAW_STATS, FieldId, RawStatLine, derive_fields, underive_fields
from .finance import (
    CashFlowSeries,
    PvGcp,
    RoiResult,
    SingleGameValue,
    breakeven_gcp,
    cash_flows,
    irr,
    npv,
    player_schedule,
    pvgcp,
    sgv,
)
from .gcp import (
    GameGcpReport,
    TeamGameTotals,
    TeamGcp,
    active_fields,
    game_report,
    gcp_upper_bound,
    nonzero_gcp_distribution,
    omega,
    player_gcp,
    season_reports,
    team_totals,
)
from .ingest import (
    GameRecord,
    PlayerGameLine,
    SalaryTable,
    SeasonDataset,
    ValidationReport,
    Violation,
    parse_games,
    parse_salaries,
    validate_dataset,
    write_games_csv,
    write_raw_games_csv,
    write_salaries_csv,
)
from .reporting import (
    ComparisonSeries,
    HistogramBin,
    LeaderboardRow,
    RoiBoards,
    RoiRow,
    SalarySummary,
    ScatterPoint,
    comparison,
    gcp_histogram,
    histogram_bins,
    leaderboard_pvgcp,
    leaderboard_roi,
    roi_salary_scatter,
    roi_table,
    salary_summary,
)
from .synth import SynthBookkeeping, SynthConfig, irr_oracle, synth_season

__version__ = "0.1.0"
