"""Geographic (GeoJSON/KML) and science-map overlays.

Every emitter returns bytes and is deterministic: identical inputs give
identical output, which is what the golden-file tests rely on.
"""
from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from dataclasses import dataclass
from xml.sax.saxutils import escape

GEO_FORMATS = ("geojson", "kml")
RED, ORANGE = "red", "orange"
_KML_COLORS = {RED: "ff0000ff", ORANGE: "ff00a5ff"}  # aabbggrr


def node_radius(papers):
    return math.log2(papers + 1)


def _geo_parts(net):
    deg = net.degrees()
    order = sorted((i for i, node in enumerate(net.nodes) if node.geocoded),
                   key=lambda i: (net.nodes[i].key.country, net.nodes[i].key.city))
    points = []
    for i in order:
        node = net.nodes[i]
        points.append({
            "city": node.key.city,
            "country": node.key.country,
            "papers": node.papers,
            "color": RED if deg[i] > 0 else ORANGE,
            "radius": node_radius(node.papers),
            "lat": node.lat,
            "lon": node.lon,
        })

    def sort_key(i):
        k = net.nodes[i].key
        return (k.country, k.city)

    lines = []
    for i, j, w in net.edges:
        a, b = net.nodes[i], net.nodes[j]
        if not (a.geocoded and b.geocoded):
            continue
        if sort_key(j) < sort_key(i):
            a, b = b, a
        lines.append((a, b, w))
    lines.sort(key=lambda t: ((t[0].key.country, t[0].key.city), (t[1].key.country, t[1].key.city)))
    return points, lines


def to_geojson(net):
    points, lines = _geo_parts(net)
    features = []
    for p in points:
        features.append({
            "type": "Feature",
            "geometry": {"type": "Point", "coordinates": [p["lon"], p["lat"]]},
            "properties": {k: p[k] for k in ("city", "country", "papers", "color", "radius")},
        })
    for a, b, w in lines:
        features.append({
            "type": "Feature",
            "geometry": {"type": "LineString", "coordinates": [[a.lon, a.lat], [b.lon, b.lat]]},
            "properties": {"source": str(a.key), "target": str(b.key), "weight": w},
        })
    doc = {
        "type": "FeatureCollection",
        "properties": {"year": net.year, "ungeocoded": net.ungeocoded},
        "features": features,
    }
    return (json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")


def to_kml(net):
    points, lines = _geo_parts(net)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<kml xmlns="http://www.opengis.net/kml/2.2">',
        "<Document>",
        f"<name>{net.year}</name>",
        f"<description>ungeocoded cities: {net.ungeocoded}</description>",
    ]
    for name, color in _KML_COLORS.items():
        out.append(f'<Style id="{name}"><IconStyle><color>{color}</color></IconStyle></Style>')
    out.append('<Style id="link"><LineStyle><color>ff0000ff</color><width>1</width></LineStyle></Style>')
    for p in points:
        label = escape(f"{p['city']}, {p['country']}")
        out.append(
            f"<Placemark><name>{label}</name>"
            f"<description>papers: {p['papers']}</description>"
            f"<styleUrl>#{p['color']}</styleUrl>"
            f"<Point><coordinates>{p['lon']!r},{p['lat']!r}</coordinates></Point></Placemark>"
        )
    for a, b, w in lines:
        label = escape(f"{a.key} - {b.key}")
        out.append(
            f"<Placemark><name>{label}</name><description>weight: {w}</description>"
            f"<styleUrl>#link</styleUrl><LineString><coordinates>"
            f"{a.lon!r},{a.lat!r} {b.lon!r},{b.lat!r}</coordinates></LineString></Placemark>"
        )
    out += ["</Document>", "</kml>"]
    return ("\n".join(out) + "\n").encode("utf-8")


def emit_geo(net, fmt="geojson"):
    """Serialise ``net`` as a map overlay in ``fmt`` (``geojson`` or ``kml``)."""
    if fmt == "geojson":
        return to_geojson(net)
    if fmt == "kml":
        return to_kml(net)
    raise ValueError(f"unknown geo format {fmt!r}; choose from {', '.join(GEO_FORMATS)}")


@dataclass(frozen=True)
class SciOverlay:
    year: int
    entries: tuple[tuple[str, float, float, int], ...]  # (category, x, y, count)
    unmatched: tuple[tuple[str, int], ...]
    basemap: str = ""


def sci_overlay(records, basemap, year):
    """Whole-counted category totals of ``year``'s records on ``basemap``."""
    counts = Counter()
    for rec in records:
        if rec.year == year:
            counts.update(basemap.categories_of(rec))
    known = set(basemap.labels)
    entries = tuple(
        (label, *basemap.layout[label], counts[label])
        for label in basemap.labels if counts[label] > 0
    )
    unmatched = tuple(sorted((c, n) for c, n in counts.items() if c not in known))
    return SciOverlay(year, entries, unmatched, basemap.name)


def _csv_bytes(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().encode("utf-8")


def emit_sci(records, basemap, year):
    """``category,x,y,count`` CSV for the year's science overlay."""
    ov = sci_overlay(records, basemap, year)
    return _csv_bytes(["category", "x", "y", "count"],
                      [(c, repr(x), repr(y), n) for c, x, y, n in ov.entries])


def unmatched_report(overlay):
    return _csv_bytes(["category", "count"], overlay.unmatched)


def sci_pajek(overlay, basemap):
    """Pajek ``.net`` (basemap vertices at layout positions) and ``.vec`` (counts)."""
    counts = {c: n for c, _, _, n in overlay.entries}
    xs = [basemap.layout[label][0] for label in basemap.labels]
    ys = [basemap.layout[label][1] for label in basemap.labels]

    def scale(v, lo, hi):
        return 0.5 if hi == lo else (v - lo) / (hi - lo)

    net = [f"*Vertices {len(basemap.labels)}"]
    for i, label in enumerate(basemap.labels, start=1):
        x, y = basemap.layout[label]
        name = label.replace('"', "'")
        net.append(f'{i} "{name}" {scale(x, min(xs), max(xs)):.6f} {scale(y, min(ys), max(ys)):.6f}')
    vec = [f"*Vertices {len(basemap.labels)}"]
    vec += [str(counts.get(label, 0)) for label in basemap.labels]
    return ("\n".join(net) + "\n").encode("utf-8"), ("\n".join(vec) + "\n").encode("utf-8")
