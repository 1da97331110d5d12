"""The 37 per-game stat fields and the source-stat adjustment formulas.

Every contribution calculation in this package runs over the same canonical
field set. Most fields are copied straight from a published source stat;
nine are adjusted by subtraction so that no activity is counted twice
(makes vs. attempts, contests vs. blocks, passes vs. assists, chances vs.
contested rebounds).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import NegativeDerivedField


class FieldId(enum.Enum):
    """Canonical stat fields, in canonical order."""

    MIN = "Minutes Played"
    FG2O = "2 Point Field Goals Made"
    FG2X = "2 Point Field Goals Missed"
    FG3O = "3 Point Field Goals Made"
    FG3X = "3 Point Field Goals Missed"
    FTO = "Free Throws Made"
    FTX = "Free Throws Missed"
    PF = "Personal Fouls"
    STL = "Steals"
    BLK = "Blocks"
    TOV = "Turnovers"
    BLKA = "Blocks Against"
    PFD = "Personal Fouls Drawn"
    POSS = "Possessions Played"
    SAST = "Screen Assists"
    DEFL = "Deflections"
    CHGD = "Charges Drawn"
    AC2P = "Adj. Contested 2PT Shots Defensive"
    C3PT = "Contested 3PT Shots Defensive"
    OBOX = "Offensive Box Outs"
    DBOX = "Defensive Box Outs"
    OLBR = "Offensive Loose Balls Recovered"
    DLBR = "Defensive Loose Balls Recovered"
    DFGO = "Defended Field Goals Made"
    DFGX = "Defended Field Goals Missed"
    DRV = "Drives"
    ODIS = "Distance Miles Offense"
    DDIS = "Distance Miles Defense"
    TCH = "Touches"
    APM = "Adj. Passes Made"
    PASR = "Passes Received"
    AST2 = "Secondary Assists"
    PAST = "Potential Assists"
    OCRB = "Contested Offensive Rebounds"
    AORC = "Adj. Offensive Rebound Chances"
    DCRB = "Contested Defensive Rebounds"
    ADRC = "Adj. Defensive Rebound Chances"


#: Canonical field ordering (definition order of the enum).
FIELD_ORDER: tuple[FieldId, ...] = tuple(FieldId)

assert len(FIELD_ORDER) == 37

#: Fractional fields; everything else is an event count.
FRACTIONAL_FIELDS = frozenset({FieldId.MIN, FieldId.ODIS, FieldId.DDIS})

#: Source stat columns, as published, for the optional pre-adjustment input.
RAW_STATS: tuple[str, ...] = (
    "MIN", "FGM", "FGA", "FG3M", "FG3A", "FTM", "FTA", "PF", "STL", "BLK",
    "TOV", "BLKA", "PFD", "Poss", "SAST", "Deflections", "Charges Drawn",
    "Contested 2PT Shots", "Contested 3PT Shots", "OFF BOX OUTS",
    "DEF BOX OUTS", "Off Loose Balls Recovered", "Def Loose Balls Recovered",
    "DFGM", "DFGA", "Drives", "Dist. Miles Off", "Dist. Miles Def",
    "Touches", "Passes Made", "Passes Received", "Secondary Assist",
    "Potential Assists", "Contested OREB", "OREB Chances", "Contested DREB",
    "DREB Chances",
)

# Fields copied from a single source stat, possibly under another name.
_COPIED: dict[FieldId, str] = {
    FieldId.MIN: "MIN",
    FieldId.FG3O: "FG3M",
    FieldId.FTO: "FTM",
    FieldId.PF: "PF",
    FieldId.STL: "STL",
    FieldId.BLK: "BLK",
    FieldId.TOV: "TOV",
    FieldId.BLKA: "BLKA",
    FieldId.PFD: "PFD",
    FieldId.POSS: "Poss",
    FieldId.SAST: "SAST",
    FieldId.DEFL: "Deflections",
    FieldId.CHGD: "Charges Drawn",
    FieldId.C3PT: "Contested 3PT Shots",
    FieldId.OBOX: "OFF BOX OUTS",
    FieldId.DBOX: "DEF BOX OUTS",
    FieldId.OLBR: "Off Loose Balls Recovered",
    FieldId.DLBR: "Def Loose Balls Recovered",
    FieldId.DFGO: "DFGM",
    FieldId.DRV: "Drives",
    FieldId.ODIS: "Dist. Miles Off",
    FieldId.DDIS: "Dist. Miles Def",
    FieldId.TCH: "Touches",
    FieldId.PASR: "Passes Received",
    FieldId.AST2: "Secondary Assist",
    FieldId.PAST: "Potential Assists",
    FieldId.OCRB: "Contested OREB",
    FieldId.DCRB: "Contested DREB",
}


@dataclass(frozen=True)
class RawStatLine:
    """One player's source stats for one game, keyed by the names in
    RAW_STATS. Missing keys are treated as zero."""

    player_id: str
    values: dict[str, float] = field(default_factory=dict)

    def get(self, name: str) -> float:
        return self.values.get(name, 0.0)


def derive_fields(raw: RawStatLine, clamp_negative: bool = False) -> dict[FieldId, float]:
    """Apply the adjustment formulas, producing all 37 canonical fields.

    A subtraction that goes negative signals inconsistent source data and
    raises NegativeDerivedField unless clamp_negative is set, in which case
    the value is floored at zero.
    """
    unknown = set(raw.values) - set(RAW_STATS)
    if unknown:
        raise ValueError(f"unknown source stat(s): {sorted(unknown)}")
    for name, v in raw.values.items():
        if not (0.0 <= v < float("inf")):
            raise ValueError(f"source stat {name!r} must be a finite non-negative number, got {v}")

    g = raw.get
    out: dict[FieldId, float] = {}
    for fid, src in _COPIED.items():
        out[fid] = g(src)

    def adj(fid: FieldId, value: float) -> None:
        if value < 0.0:
            if not clamp_negative:
                raise NegativeDerivedField(fid, value)
            value = 0.0
        out[fid] = value

    adj(FieldId.FG2O, g("FGM") - g("FG3M"))
    adj(FieldId.FG2X, (g("FGA") - g("FG3A")) - out[FieldId.FG2O])
    adj(FieldId.FG3X, g("FG3A") - g("FG3M"))
    adj(FieldId.FTX, g("FTA") - g("FTM"))
    adj(FieldId.AC2P, g("Contested 2PT Shots") - g("BLK"))
    adj(FieldId.DFGX, g("DFGA") - g("DFGM"))
    adj(FieldId.APM, g("Passes Made") - g("Secondary Assist") - g("Potential Assists"))
    adj(FieldId.AORC, g("OREB Chances") - g("Contested OREB"))
    adj(FieldId.ADRC, g("DREB Chances") - g("Contested DREB"))

    return {fid: out[fid] for fid in FIELD_ORDER}


def underive_fields(player_id: str, values: dict[FieldId, float]) -> RawStatLine:
    """Reconstruct the source stats from canonical field values.

    Exact inverse of derive_fields for consistent data:
    derive_fields(underive_fields(...)) reproduces the input.
    """
    v = values
    raw = {src: v[fid] for fid, src in _COPIED.items()}
    raw["FGM"] = v[FieldId.FG2O] + v[FieldId.FG3O]
    raw["FGA"] = v[FieldId.FG2O] + v[FieldId.FG2X] + v[FieldId.FG3O] + v[FieldId.FG3X]
    raw["FG3A"] = v[FieldId.FG3O] + v[FieldId.FG3X]
    raw["FTA"] = v[FieldId.FTO] + v[FieldId.FTX]
    raw["Contested 2PT Shots"] = v[FieldId.AC2P] + v[FieldId.BLK]
    raw["DFGA"] = v[FieldId.DFGO] + v[FieldId.DFGX]
    raw["Passes Made"] = v[FieldId.APM] + v[FieldId.AST2] + v[FieldId.PAST]
    raw["OREB Chances"] = v[FieldId.AORC] + v[FieldId.OCRB]
    raw["DREB Chances"] = v[FieldId.ADRC] + v[FieldId.DCRB]
    return RawStatLine(player_id=player_id, values=raw)
