"""Tagged-field bibliographic exports, address normalisation and the gazetteer.

The export format is the plain-text convention used by Web of Science:
a two-letter tag in columns 1-2, a space, then the value; continuation lines
start with whitespace; ``ER`` closes a record and ``EF`` closes the file.
"""
from __future__ import annotations

import csv
import io
import logging
import re
from dataclasses import dataclass, field
from typing import NamedTuple

log = logging.getLogger(__name__)

# file-level header tags, not part of any record
_HEADER_TAGS = {"FN", "VR"}
_TAG_RE = re.compile(r"^([A-Z][A-Z0-9]) ?(.*)$")

_US_STATES = {
    "AL", "AK", "AZ", "AR", "CA", "CO", "CT", "DE", "FL", "GA", "HI", "ID", "IL",
    "IN", "IA", "KS", "KY", "LA", "ME", "MD", "MA", "MI", "MN", "MS", "MO", "MT",
    "NE", "NV", "NH", "NJ", "NM", "NY", "NC", "ND", "OH", "OK", "OR", "PA", "RI",
    "SC", "SD", "TN", "TX", "UT", "VT", "VA", "WA", "WV", "WI", "WY", "DC", "PR",
}
_US_STATE_ZIP = re.compile(r"^([A-Z]{2})(?:\s+(\d{5}(?:-\d{4})?))?(?:\s+USA)?$")
_AUTHOR_BLOCK = re.compile(r"^\[[^\]]*\]\s*")
_REPRINT = re.compile(r"^.*?\((?:reprint|corresponding) author\),\s*", re.IGNORECASE)


class ParseError(ValueError):
    """Broken record framing in a tagged-field export."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class CityKey(NamedTuple):
    city: str
    country: str

    def __str__(self):
        return f"{self.city}, {self.country}"


@dataclass(frozen=True)
class AddressEntry:
    raw: str
    city_key: CityKey | None  # None = unresolved


@dataclass(frozen=True)
class PublicationRecord:
    id: str
    year: int
    addresses: tuple[AddressEntry, ...] = ()
    categories: tuple[str, ...] = ()
    journal: str = ""

    def cities(self):
        """Distinct resolved city keys of the record."""
        return {a.city_key for a in self.addresses if a.city_key is not None}


@dataclass
class ParseStats:
    blocks: int = 0          # ER tags seen
    emitted: int = 0
    missing_year: int = 0
    bad_year: int = 0        # non-integer or implausible PY
    unresolved_addresses: int = 0

    @property
    def dropped(self):
        return self.missing_year + self.bad_year

    def merge(self, other):
        for name in ("blocks", "emitted", "missing_year", "bad_year", "unresolved_addresses"):
            setattr(self, name, getattr(self, name) + getattr(other, name))


def _clean(value):
    return " ".join(value.split())


def extract_city(raw_address):
    """Return the ``CityKey`` of an institutional address, or None.

    >>> extract_city("Univ Massachusetts, Sch Med, Worcester, MA 01605 USA")
    CityKey(city='WORCESTER', country='USA')
    >>> extract_city("EPFL, CH-1015 Lausanne, Switzerland")
    CityKey(city='LAUSANNE', country='SWITZERLAND')
    """
    text = _AUTHOR_BLOCK.sub("", raw_address.strip()).rstrip(" .")
    segs = [_clean(s).upper() for s in text.split(",")]
    segs = [s for s in segs if s]
    if len(segs) < 2:
        return None

    last = segs[-1]
    city_idx = len(segs) - 2
    if last == "USA":
        country = "USA"
        m = _US_STATE_ZIP.match(segs[-2])
        if m and m.group(1) in _US_STATES and len(segs) >= 3:
            city_idx = len(segs) - 3
    else:
        m = _US_STATE_ZIP.match(last)
        if m and m.group(1) in _US_STATES and (m.group(2) or last.endswith("USA")):
            country = "USA"
        else:
            country = last.rstrip(".")

    seg = segs[city_idx]
    tokens = seg.split()
    # "ON M5S 1A8" / "NSW 2006": region code then postcode, city is one segment up
    if (len(tokens) >= 2 and city_idx >= 1 and tokens[0].isalpha() and len(tokens[0]) <= 3
            and all(any(c.isdigit() for c in t) for t in tokens[1:])):
        seg = segs[city_idx - 1]
        tokens = seg.split()
    city = " ".join(t for t in tokens if not any(c.isdigit() for c in t)).strip(" -")
    if not city or not country:
        return None
    return CityKey(city, country)


def _split_addresses(tag, values):
    out = []
    if tag == "C1":
        out.extend(values)
    else:  # RP: may hold several "Name (reprint author), address" entries
        for v in values:
            for part in v.split(";"):
                part = _REPRINT.sub("", part.strip())
                if part:
                    out.append(part)
    return out


def _build_record(fields, stats):
    years = fields.get("PY")
    if not years:
        stats.missing_year += 1
        return None
    try:
        year = int(years[0].strip())
    except ValueError:
        stats.bad_year += 1
        log.warning("non-integer PY %r", years[0])
        return None
    if year <= 1800:
        stats.bad_year += 1
        log.warning("implausible PY %r", year)
        return None

    raw = []
    for tag in ("C1", "RP"):
        if tag in fields:
            raw.extend(_split_addresses(tag, fields[tag]))
    seen = set()
    addresses = []
    for line in raw:
        line = _clean(line)
        if not line or line in seen:
            continue
        seen.add(line)
        key = extract_city(line)
        if key is None:
            stats.unresolved_addresses += 1
        addresses.append(AddressEntry(line, key))

    cats = []
    for tag in ("WC", "SC"):
        if tag in fields:
            joined = " ".join(fields[tag])
            cats = [_clean(c) for c in joined.split(";") if c.strip()]
            break
    cats = list(dict.fromkeys(cats))

    return PublicationRecord(
        id=_clean(" ".join(fields.get("UT", []))),
        year=year,
        addresses=tuple(addresses),
        categories=tuple(cats),
        journal=_clean(" ".join(fields.get("SO", []))),
    )


def parse_records(data, stats=None):
    """Parse a tagged-field export into a list of :class:`PublicationRecord`.

    ``data`` is bytes, str or a binary/text file object. Records without a
    usable ``PY`` are dropped and tallied in ``stats`` (a :class:`ParseStats`)
    when one is given.
    """
    if hasattr(data, "read"):
        data = data.read()
    if isinstance(data, str):
        data = data.encode("utf-8")
    if stats is None:
        stats = ParseStats()

    records = []
    fields = None
    tag = None
    offset = 0
    for raw_line in data.splitlines(keepends=True):
        line_offset = offset
        offset += len(raw_line)
        line = raw_line.decode("utf-8", errors="replace").rstrip("\r\n")
        if line_offset == 0:
            line = line.lstrip("﻿")
        if not line.strip():
            continue
        if line[0] in " \t":
            if fields is not None and tag is not None:
                fields[tag].append(line.strip())
            continue
        m = _TAG_RE.match(line)
        if not m:
            continue
        tag, value = m.group(1), m.group(2)
        if tag == "EF":
            if fields is not None:
                raise ParseError("EF reached inside an unterminated record", line_offset)
            return records
        if tag == "ER":
            stats.blocks += 1
            rec = _build_record(fields or {}, stats)
            if rec is not None:
                records.append(rec)
                stats.emitted += 1
            fields = None
            tag = None
            continue
        if fields is None:
            if tag in _HEADER_TAGS:
                tag = None
                continue
            fields = {}
        fields.setdefault(tag, []).append(value.strip())

    if fields is not None:
        raise ParseError("end of input inside an unterminated record", offset)
    return records


class Gazetteer(dict):
    """``CityKey -> (lat, lon)`` with the load diagnostics attached."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.rejected: list[tuple[int, str]] = []
        self.duplicates: list[tuple[int, CityKey]] = []


def load_gazetteer(data):
    """Read a ``city,country,lat,lon`` CSV.

    Rows with out-of-range or unparseable coordinates are rejected (kept in
    ``.rejected`` with their line number); on duplicate keys the last row wins.
    """
    if hasattr(data, "read"):
        data = data.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    gaz = Gazetteer()
    reader = csv.reader(io.StringIO(data.lstrip("﻿")))
    header = next(reader, None)
    if header is None:
        return gaz
    if [h.strip().lower() for h in header] != ["city", "country", "lat", "lon"]:
        raise ValueError(f"gazetteer header must be city,country,lat,lon, got {header}")
    for row in reader:
        lineno = reader.line_num
        if not row or not any(c.strip() for c in row):
            continue
        if len(row) != 4:
            gaz.rejected.append((lineno, "expected 4 columns"))
            continue
        city, country = _clean(row[0]).upper(), _clean(row[1]).upper()
        try:
            lat, lon = float(row[2]), float(row[3])
        except ValueError:
            gaz.rejected.append((lineno, "non-numeric coordinate"))
            continue
        if not city or not country:
            gaz.rejected.append((lineno, "empty city or country"))
        elif not -90.0 <= lat <= 90.0 or not -180.0 <= lon <= 180.0:
            gaz.rejected.append((lineno, f"coordinate out of range ({lat}, {lon})"))
        else:
            key = CityKey(city, country)
            if key in gaz:
                log.warning("gazetteer line %d: duplicate %s, last row wins", lineno, key)
                gaz.duplicates.append((lineno, key))
            gaz[key] = (lat, lon)
    for lineno, why in gaz.rejected:
        log.warning("gazetteer line %d rejected: %s", lineno, why)
    return gaz
