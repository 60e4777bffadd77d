"""Read US Wind Turbine Database style CSV files into turbine specs."""
from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, TextIO

from .cost_model import TurbineSpec
from .errors import MalformedCsv

__all__ = [
    "DEFAULT_COLUMNS",
    "DEFAULT_REFERENCE_YEAR",
    "RawTurbineRow",
    "IngestSummary",
    "parse_uswtdb",
    "read_uswtdb",
    "write_normalized_csv",
]

DEFAULT_REFERENCE_YEAR = 2016
DEFAULT_COLUMNS = {
    "model_name": "t_model",
    "manufacturer": "t_manu",
    "hub_height_m": "t_hh",
    "rotor_diameter_m": "t_rd",
    "capacity_kw": "t_cap",
    "install_year": "p_year",
}
NUMERIC_FIELDS = ("hub_height_m", "rotor_diameter_m", "capacity_kw", "install_year")
MISSING_TOKENS = {"", "na", "n/a", "nan", "null", "none"}

SKIP_FIELD_COUNT = "field_count"
SKIP_MISSING = "missing_field"
SKIP_NON_NUMERIC = "non_numeric"
SKIP_NON_POSITIVE = "non_positive"


@dataclass(frozen=True)
class RawTurbineRow:
    model_name: str
    manufacturer: str
    hub_height_m: Optional[float]
    rotor_diameter_m: Optional[float]
    capacity_kw: Optional[float]
    install_year: Optional[float]


@dataclass
class IngestSummary:
    rows_read: int = 0
    skip_reasons: Dict[str, int] = field(default_factory=dict)
    usable_rows: int = 0
    specs: List[TurbineSpec] = field(default_factory=list)
    future_install: int = 0  # distinct types installed after the reference year
    reference_year: int = DEFAULT_REFERENCE_YEAR

    @property
    def rows_skipped(self) -> int:
        return sum(self.skip_reasons.values())

    @property
    def distinct_types(self) -> int:
        return len(self.specs)

    def to_dict(self) -> dict:
        return {
            "rows_read": self.rows_read,
            "rows_skipped": self.rows_skipped,
            "skip_reasons": dict(sorted(self.skip_reasons.items())),
            "usable_rows": self.usable_rows,
            "distinct_types": self.distinct_types,
            "future_install": self.future_install,
            "reference_year": self.reference_year,
        }


class _RowSkip(Exception):
    def __init__(self, reason):
        self.reason = reason


def _number(text: Optional[str]) -> float:
    if text is None or text.strip().lower() in MISSING_TOKENS:
        raise _RowSkip(SKIP_MISSING)
    try:
        value = float(text.strip())
    except ValueError:
        raise _RowSkip(SKIP_NON_NUMERIC) from None
    if not math.isfinite(value):
        raise _RowSkip(SKIP_NON_NUMERIC)
    if value <= 0:
        # USWTDB encodes missing numeric values as -9999
        raise _RowSkip(SKIP_NON_POSITIVE)
    return value


def _resolve_columns(header: List[str], column_mapping: Optional[Mapping[str, str]]) -> Dict[str, str]:
    columns = dict(DEFAULT_COLUMNS)
    if column_mapping:
        unknown = set(column_mapping) - set(DEFAULT_COLUMNS)
        if unknown:
            raise ValueError(f"unknown column mapping keys: {sorted(unknown)}")
        columns.update(column_mapping)
    dupes = sorted(name for name, n in Counter(header).items() if n > 1)
    if dupes:
        raise MalformedCsv(f"duplicate header columns: {dupes}")
    missing = [src for src in columns.values() if src not in header]
    if missing:
        raise MalformedCsv(f"header lacks required columns: {missing}")
    return columns


def parse_uswtdb(
    csv_stream: TextIO,
    column_mapping: Optional[Mapping[str, str]] = None,
    reference_year: int = DEFAULT_REFERENCE_YEAR,
) -> IngestSummary:
    """Parse, normalize and deduplicate turbine rows.

    Capacity is converted from kW to W and market age is
    ``reference_year - install_year``. Turbine types are keyed by
    (manufacturer, model, hub height, rotor diameter, capacity) and keep the
    earliest installation year, in order of first appearance. Rows with
    missing or non-positive numeric fields are skipped and tallied by reason.
    """
    reader = csv.reader(csv_stream, strict=True)
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedCsv("empty input: no header row") from None
    except csv.Error as exc:
        raise MalformedCsv(f"line 1: {exc}") from None
    header = [h.strip() for h in header]
    columns = _resolve_columns(header, column_mapping)
    index = {key: header.index(src) for key, src in columns.items()}

    summary = IngestSummary(reference_year=reference_year)
    skips: Counter = Counter()
    groups: Dict[tuple, list] = {}
    try:
        for row in reader:
            if not row:
                continue
            summary.rows_read += 1
            try:
                if len(row) != len(header):
                    raise _RowSkip(SKIP_FIELD_COUNT)
                values = {key: _number(row[index[key]]) for key in NUMERIC_FIELDS}
            except _RowSkip as skip:
                skips[skip.reason] += 1
                continue
            raw = RawTurbineRow(
                model_name=row[index["model_name"]].strip(),
                manufacturer=row[index["manufacturer"]].strip(),
                **values,
            )
            summary.usable_rows += 1
            key = (raw.manufacturer, raw.model_name, raw.hub_height_m, raw.rotor_diameter_m, raw.capacity_kw)
            if key in groups:
                groups[key][1] = min(groups[key][1], raw.install_year)
            else:
                groups[key] = [raw, raw.install_year]
    except csv.Error as exc:
        raise MalformedCsv(f"line {reader.line_num}: {exc}") from None

    for raw, year in groups.values():
        label = " ".join(part for part in (raw.manufacturer, raw.model_name) if part) or None
        spec = TurbineSpec(
            hub_height=raw.hub_height_m,
            rotor_diameter=raw.rotor_diameter_m,
            rated_power=raw.capacity_kw * 1000.0,
            market_age=reference_year - year,
            label=label,
        )
        if spec.market_age < 0:
            summary.future_install += 1
        summary.specs.append(spec)
    summary.skip_reasons = dict(skips)
    return summary


def read_uswtdb(path, column_mapping=None, reference_year=DEFAULT_REFERENCE_YEAR) -> IngestSummary:
    with open(path, newline="", encoding="utf-8-sig") as fh:
        return parse_uswtdb(fh, column_mapping, reference_year)


def write_normalized_csv(specs, stream: Optional[TextIO] = None) -> str:
    """Write specs as (label, hh_m, rotor_d_m, power_w, age_yr); returns the text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["label", "hh_m", "rotor_d_m", "power_w", "age_yr"])
    for s in specs:
        writer.writerow([s.label or "", repr(s.hub_height), repr(s.rotor_diameter), repr(s.rated_power), repr(s.market_age)])
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text
