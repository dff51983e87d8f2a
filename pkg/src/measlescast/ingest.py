"""Surveillance CSV parsing, validation, and national aggregation.

File format (documented in docs/data-format.md): UTF-8 text, header row
``region,year,cases,deaths``, one record per line, comma-separated, no
quoting (region names must not contain commas).
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .errors import (
    DataError,
    DuplicateError,
    EmptyError,
    GapError,
    HeaderError,
    RowError,
)
from .series import TimeSeries

EXPECTED_HEADER = ("region", "year", "cases", "deaths")
YEAR_MIN = 1900
YEAR_MAX = 2100
EXPECTED_REGION_COUNT = 17


@dataclass(frozen=True)
class SurveillanceRecord:
    """One region-year row of confirmed cases and deaths."""

    region: str
    year: int
    cases: int
    deaths: int

    def __post_init__(self):
        if not self.region.strip():
            raise ValueError("region must be nonempty")
        if not YEAR_MIN <= self.year <= YEAR_MAX:
            raise ValueError(f"year {self.year} outside sanity range")
        if self.cases < 0 or self.deaths < 0:
            raise ValueError("counts must be non-negative")
        if self.deaths > self.cases:
            raise ValueError(f"deaths ({self.deaths}) exceed cases ({self.cases})")


@dataclass(frozen=True)
class Dataset:
    """Collection of records with a provenance note."""

    records: tuple
    source_note: str = ""

    def __post_init__(self):
        records = tuple(self.records)
        object.__setattr__(self, "records", records)
        seen = set()
        for rec in records:
            key = (rec.region, rec.year)
            if key in seen:
                raise DuplicateError(rec.region, rec.year)
            seen.add(key)


def _parse_count(token: str, name: str, line_no: int) -> int:
    text = token.strip()
    try:
        value = int(text)
    except ValueError:
        raise RowError(line_no, f"{name} {text!r} is not an integer") from None
    if value < 0:
        raise RowError(line_no, f"{name} must be non-negative, got {value}")
    return value


def parse_csv(data, source_note: str = "") -> Dataset:
    """Parse surveillance CSV bytes/text into a Dataset.

    Accepts bytes, str, or a readable object. Whitespace around fields is
    trimmed and blank lines are skipped.

    Raises:
        HeaderError: Missing or wrong header row.
        RowError: Bad field in a data row (with its line number).
        DuplicateError: Repeated (region, year) key.
        DataError: Input is not valid UTF-8.
    """
    if hasattr(data, "read"):
        data = data.read()
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DataError(f"input is not valid UTF-8: {exc}") from None
    else:
        text = data
    text = text.lstrip("﻿")

    lines = text.splitlines()
    header_line = None
    body_start = 0
    for idx, line in enumerate(lines):
        if line.strip():
            header_line = line
            body_start = idx + 1
            break
    if header_line is None:
        raise HeaderError("input is empty; expected header 'region,year,cases,deaths'")

    header = tuple(tok.strip() for tok in header_line.split(","))
    if header != EXPECTED_HEADER:
        raise HeaderError(
            f"expected header 'region,year,cases,deaths', got {header_line.strip()!r}"
        )

    records = []
    seen = set()
    for offset, line in enumerate(lines[body_start:], start=body_start + 1):
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) != 4:
            raise RowError(offset, f"expected 4 comma-separated fields, got {len(fields)}")
        region = fields[0].strip()
        if not region:
            raise RowError(offset, "region is empty")
        year_text = fields[1].strip()
        try:
            year = int(year_text)
        except ValueError:
            raise RowError(offset, f"year {year_text!r} is not an integer") from None
        if not YEAR_MIN <= year <= YEAR_MAX:
            raise RowError(offset, f"year {year} outside {YEAR_MIN}-{YEAR_MAX}")
        cases = _parse_count(fields[2], "cases", offset)
        deaths = _parse_count(fields[3], "deaths", offset)
        if deaths > cases:
            raise RowError(offset, f"deaths ({deaths}) exceed cases ({cases})")
        key = (region, year)
        if key in seen:
            raise DuplicateError(region, year)
        seen.add(key)
        records.append(
            SurveillanceRecord(region=region, year=year, cases=cases, deaths=deaths)
        )

    return Dataset(records=tuple(records), source_note=source_note)


def serialize_csv(ds: Dataset) -> str:
    """Canonical CSV text for a dataset; inverse of :func:`parse_csv`."""
    out = io.StringIO()
    out.write("region,year,cases,deaths\n")
    for rec in ds.records:
        out.write(f"{rec.region},{rec.year},{rec.cases},{rec.deaths}\n")
    return out.getvalue()


def aggregate_annual(ds: Dataset) -> TimeSeries:
    """Sum cases over regions per year into the national annual series.

    Raises:
        EmptyError: No records.
        GapError: Year coverage is not contiguous (no imputation is done).
    """
    if not ds.records:
        raise EmptyError("dataset has no records")
    totals: dict[int, int] = {}
    for rec in ds.records:
        totals[rec.year] = totals.get(rec.year, 0) + rec.cases
    years = sorted(totals)
    missing = [y for y in range(years[0], years[-1] + 1) if y not in totals]
    if missing:
        raise GapError(missing)
    values = np.array([float(totals[y]) for y in years])
    return TimeSeries(values=values, start_label=years[0])


def validate_regions(ds: Dataset) -> list[str]:
    """Non-fatal completeness check against the expected 17-region roster.

    Returns one warning string per year whose distinct-region count differs
    from 17; an empty dataset yields no warnings.
    """
    regions_by_year: dict[int, set] = {}
    for rec in ds.records:
        regions_by_year.setdefault(rec.year, set()).add(rec.region)
    warnings = []
    for year in sorted(regions_by_year):
        count = len(regions_by_year[year])
        if count != EXPECTED_REGION_COUNT:
            warnings.append(
                f"year {year}: expected {EXPECTED_REGION_COUNT} regions, found {count}"
            )
    return warnings
