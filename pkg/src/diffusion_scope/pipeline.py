"""End-to-end yearly indicator pipeline."""
from __future__ import annotations

import glob
import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, field, fields, replace
from pathlib import Path

from . import diversity, overlays
from .basemap import BasemapError, load_basemap, validate_basemap
from .metrics import compute_metrics, degree_histogram
from .network import build_network, slice_by_year, write_pajek
from .nullmodels import null_baseline
from .records import ParseError, ParseStats, load_gazetteer, parse_records
from .scaling import fit_power_law

log = logging.getLogger(__name__)

EXIT_OK, EXIT_INPUT, EXIT_BASEMAP = 0, 2, 3


@dataclass(frozen=True)
class IndicatorRow:
    year: int
    n: int | None = None
    m: int | None = None
    density: float | None = None
    z: float | None = None
    cc: float | None = None
    d_mean: float | None = None
    largest_component_fraction: float | None = None
    cc_rg_analytic: float | None = None
    d_rg_analytic: float | None = None
    cc_rg_sim: float | None = None
    d_rg_sim: float | None = None
    w_analytic: float | None = None
    w_sim: float | None = None
    gamma: float | None = None
    r2: float | None = None
    D_geo: float | None = None
    C_geo: float | None = None
    coherence_geo: float | None = None
    D_cog: float | None = None


INDICATOR_COLUMNS = tuple(f.name for f in fields(IndicatorRow))


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def format_indicators(rows):
    lines = [",".join(INDICATOR_COLUMNS)]
    lines += [",".join(_cell(v) for v in astuple(r)) for r in rows]
    return ("\n".join(lines) + "\n").encode("utf-8")


@dataclass
class RunConfig:
    inputs: list[str]
    gazetteer: str
    basemap: str
    out: str
    years: tuple[int, int] | None = None
    min_city_papers: int = 2
    k_min: int = 2
    er_runs: int = 100
    seed: int | None = None
    geo_formats: tuple[str, ...] = ("geojson",)
    pajek: bool = False
    threads: int | None = None

    def __post_init__(self):
        if self.er_runs > 0 and self.seed is None:
            raise ValueError("seed is required when er_runs > 0")
        if self.years is not None and self.years[0] > self.years[1]:
            raise ValueError(f"empty year range {self.years[0]}:{self.years[1]}")
        for fmt in self.geo_formats:
            if fmt not in overlays.GEO_FORMATS:
                raise ValueError(f"unknown geo format {fmt!r}")


@dataclass
class YearResult:
    row: IndicatorRow
    files: dict[str, bytes] = field(default_factory=dict)
    stats: dict[str, int] = field(default_factory=dict)


def year_indicators(records, year, gazetteer, basemap, config):
    """Indicator row and overlay payloads for one year."""
    net = build_network(records, year, gazetteer, config.min_city_papers)
    met = compute_metrics(net)
    base = null_baseline(met, runs=config.er_runs,
                         seed=None if config.seed is None else (config.seed, year))
    fit = fit_power_law(degree_histogram(net), config.k_min) if net.n else None
    geo = diversity.geo_diversity(net)

    cog_mass = diversity.category_mass(
        [_with_categories(r, basemap) for r in records], basemap.labels)
    D_cog = diversity.rao_stirling(cog_mass, basemap.distances()) if cog_mass else None

    row = IndicatorRow(
        year=year,
        n=met.n, m=met.m, density=met.density, z=met.z, cc=met.cc, d_mean=met.d_mean,
        largest_component_fraction=met.largest_component_fraction,
        cc_rg_analytic=base.cc_rg_analytic, d_rg_analytic=base.d_rg_analytic,
        cc_rg_sim=base.cc_rg_sim, d_rg_sim=base.d_rg_sim,
        w_analytic=base.w_analytic, w_sim=base.w_sim,
        gamma=fit.gamma if fit else None, r2=fit.r2 if fit else None,
        D_geo=geo.D, C_geo=geo.C, coherence_geo=geo.coherence, D_cog=D_cog,
    )
    if met.n == 0:
        # nothing survived exclusion: leave every metric cell empty
        row = IndicatorRow(year=year, n=0, m=0, D_cog=D_cog)

    files = {}
    for fmt in config.geo_formats:
        files[f"geo/{year}.{fmt}"] = overlays.emit_geo(net, fmt)
    sci = overlays.sci_overlay(records, basemap, year)
    files[f"sci/{year}.csv"] = overlays.emit_sci(records, basemap, year)
    if sci.unmatched:
        files[f"sci/{year}.unmatched.csv"] = overlays.unmatched_report(sci)
    if config.pajek:
        files[f"net/{year}.net"] = write_pajek(net).encode("utf-8")
        files[f"sci/{year}.net"], files[f"sci/{year}.vec"] = overlays.sci_pajek(sci, basemap)

    cities = set()
    for r in records:
        cities |= r.cities()
    stats = {
        "records": len(records),
        "cities_before_exclusion": len(cities),
        "cities_excluded": net.excluded_cities,
        "nodes": net.n,
        "edges": net.m,
        "ungeocoded_nodes": net.ungeocoded,
        "unmatched_categories": sum(c for _, c in sci.unmatched),
    }
    return YearResult(row, files, stats)


def _with_categories(record, basemap):
    cats = basemap.categories_of(record)
    if cats is record.categories:
        return record
    return replace(record, categories=tuple(cats))


def _worker_count(config, jobs):
    cap = config.threads
    env = os.environ.get("DIFFUSION_SCOPE_THREADS")
    if env:
        try:
            cap = int(env) if cap is None else min(cap, int(env))
        except ValueError:
            log.warning("ignoring non-integer DIFFUSION_SCOPE_THREADS=%r", env)
    if cap is None:
        cap = os.cpu_count() or 1
    return max(1, min(cap, jobs))


def _expand(patterns):
    paths = []
    for pat in patterns:
        hits = sorted(glob.glob(pat))
        if not hits and os.path.isfile(pat):
            hits = [pat]
        paths.extend(hits)
    return list(dict.fromkeys(paths))


class InputError(RuntimeError):
    pass


def run(config):
    """Execute the pipeline; returns the process exit status."""
    try:
        return _run(config)
    except InputError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except BasemapError as exc:
        log.error("basemap inconsistent: %s", exc)
        return EXIT_BASEMAP


def _run(config):
    paths = _expand(config.inputs)
    if not paths:
        raise InputError(f"no input files match {config.inputs}")
    if not os.path.isfile(config.gazetteer):
        raise InputError(f"gazetteer not found: {config.gazetteer}")
    if not os.path.isdir(config.basemap):
        raise InputError(f"basemap directory not found: {config.basemap}")
    basemap = load_basemap(config.basemap)

    try:
        with open(config.gazetteer, "rb") as fh:
            gazetteer = load_gazetteer(fh)
    except ValueError as exc:
        raise InputError(f"{config.gazetteer}: {exc}") from exc

    pstats = ParseStats()
    records = []
    for path in paths:
        try:
            with open(path, "rb") as fh:
                records.extend(parse_records(fh, pstats))
        except ParseError as exc:
            raise InputError(f"{path}: {exc}") from exc
        except OSError as exc:
            raise InputError(f"{path}: {exc.strerror}") from exc

    by_year = slice_by_year(records)
    if config.years is not None:
        lo, hi = config.years
    elif by_year:
        lo, hi = min(by_year), max(by_year)
    else:
        lo, hi = 0, -1
    years = list(range(lo, hi + 1))

    def job(year):
        return year_indicators(by_year.get(year, []), year, gazetteer, basemap, config)

    workers = _worker_count(config, len(years))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(job, years))
    else:
        results = [job(y) for y in years]

    out = Path(config.out)
    artifacts = {"indicators.csv": format_indicators([r.row for r in results])}
    manifest = {"indicators": "indicators.csv", "report": "report.txt", "years": []}
    for year, res in zip(years, results):
        artifacts.update(res.files)
        manifest["years"].append({"year": year, "files": sorted(res.files)})
    artifacts["report.txt"] = _report(paths, pstats, records, years, results, gazetteer, basemap)
    artifacts["manifest.json"] = (json.dumps(manifest, indent=1, sort_keys=True) + "\n").encode()

    for rel, payload in sorted(artifacts.items()):
        target = out / rel
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(payload)
    return EXIT_OK


def _report(paths, pstats, records, years, results, gazetteer, basemap):
    in_range = [r for r in records if years and years[0] <= r.year <= years[-1]]
    with_city = sum(1 for r in in_range if r.cities())
    categorized = sum(1 for r in in_range if basemap.categories_of(r))
    lines = [
        f"input_files\t{len(paths)}",
        f"record_blocks\t{pstats.blocks}",
        f"dropped_missing_year\t{pstats.missing_year}",
        f"dropped_bad_year\t{pstats.bad_year}",
        f"parsed\t{pstats.emitted}",
        f"outside_year_range\t{len(records) - len(in_range)}",
        f"in_year_range\t{len(in_range)}",
        f"with_resolved_city\t{with_city}",
        f"without_resolved_city\t{len(in_range) - with_city}",
        f"categorized\t{categorized}",
        f"uncategorized\t{len(in_range) - categorized}",
        f"unresolved_addresses\t{pstats.unresolved_addresses}",
        f"gazetteer_rejected_rows\t{len(gazetteer.rejected)}",
        f"gazetteer_duplicate_rows\t{len(gazetteer.duplicates)}",
        "",
        "year\t" + "\t".join(results[0].stats) if results else "year",
    ]
    for year, res in zip(years, results):
        lines.append("\t".join([str(year)] + [str(v) for v in res.stats.values()]))
    return ("\n".join(lines) + "\n").encode("utf-8")


def check_basemap(directory):
    """Issues found in a basemap bundle (for the CLI)."""
    if not os.path.isdir(directory):
        raise InputError(f"basemap directory not found: {directory}")
    return validate_basemap(directory)
