"""Regenerate the synthetic test corpus under tests/data/fixture/.

Deterministic: running it twice produces identical files. The golden output
tree is produced separately by ``scripts/make_golden.sh``.
"""
import random
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "fixture"

# (address tail, city, country, lat, lon, in gazetteer)
CITIES = [
    ("Boston, MA 02115 USA", "BOSTON", "USA", 42.3601, -71.0589, True),
    ("Worcester, MA 01605 USA", "WORCESTER", "USA", 42.2626, -71.8023, True),
    ("Stanford, CA 94305 USA", "STANFORD", "USA", 37.4275, -122.1697, True),
    ("CH-1015 Lausanne, Switzerland", "LAUSANNE", "SWITZERLAND", 46.5197, 6.6323, True),
    ("D-69120 Heidelberg, Germany", "HEIDELBERG", "GERMANY", 49.3988, 8.6724, True),
    ("London WC1E 6BT, England", "LONDON", "ENGLAND", 51.5074, -0.1278, True),
    ("Cambridge CB2 1TN, England", "CAMBRIDGE", "ENGLAND", 52.2053, 0.1218, True),
    ("Tokyo 1138654, Japan", "TOKYO", "JAPAN", 35.6762, 139.6503, True),
    ("Beijing 100871, Peoples R China", "BEIJING", "PEOPLES R CHINA", 39.9042, 116.4074, True),
    ("Toronto, ON M5S 1A8, Canada", "TORONTO", "CANADA", 43.6532, -79.3832, True),
    ("Sydney, NSW 2006, Australia", "SYDNEY", "AUSTRALIA", -33.8688, 151.2093, True),
    ("Rehovot, Israel", "REHOVOT", "ISRAEL", 31.8928, 34.8113, False),
    ("S-75185 Uppsala, Sweden", "UPPSALA", "SWEDEN", 59.8586, 17.6389, True),
]
ISOLATE = len(CITIES) - 1
INSTITUTIONS = ["Univ Hosp", "Inst Technol", "Med Sch", "Res Ctr"]
CATEGORIES = ["Biochemistry", "Cell Biology", "Genetics", "Oncology", "Materials Science", "Physics"]
JOURNALS = [
    ("NUCLEIC ACIDS RES", ["Biochemistry", "Genetics"]),
    ("CELL", ["Biochemistry", "Cell Biology"]),
    ("CANCER RES", ["Oncology"]),
    ("NANO LETT", ["Materials Science", "Physics"]),
    ("RNA", ["Biochemistry"]),
    ("J IRREPRODUCIBLE RES", []),
]
YEARS = [2007, 2008, 2009]
# later years draw from more cities and favour hubs
YEAR_CITIES = {2007: 7, 2008: 10, 2009: 12}


def address(rng, idx):
    return f"{rng.choice(INSTITUTIONS)}, Dept {rng.randint(1, 9)}, {CITIES[idx][0]}"


def record(rng, uid, year, n_cities):
    pool = list(range(n_cities))
    weights = [1.0 / (1 + i) ** 1.5 for i in pool]
    k = rng.choices([1, 2, 3], weights=[6, 3, 1])[0]
    chosen = []
    while len(chosen) < k:
        c = rng.choices(pool, weights=weights)[0]
        if c not in chosen:
            chosen.append(c)
    addrs = [address(rng, c) for c in chosen]
    if rng.random() < 0.15:
        addrs.append(addrs[0])  # same line twice: must collapse
    if rng.random() < 0.1:
        addrs.append(address(rng, chosen[0]))  # second institution, same city
    journal, cats = rng.choice(JOURNALS)
    lines = ["PT J", f"AU Author{uid}, A", f"SO {journal}"]
    lines.append("C1 " + addrs[0])
    lines += ["   " + a for a in addrs[1:]]
    if cats and rng.random() < 0.85:
        lines.append("WC " + "; ".join(cats))
    lines += [f"PY {year}", f"UT WOS:{uid:015d}", "ER", ""]
    return lines


def main():
    rng = random.Random(20101)
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "basemap").mkdir(exist_ok=True)
    uid = 1
    for year in YEARS:
        lines = ["FN Thomson Reuters Web of Science", "VR 1.0"]
        for _ in range(64):
            lines += record(rng, uid, year, YEAR_CITIES[year])
            uid += 1
        # edge cases
        lines += ["PT J", "AU Nobody, N", "SO CELL", "C1 Weizmann Inst Sci", "WC Cell Biology",
                  f"PY {year}", f"UT WOS:{uid:015d}", "ER", ""]
        uid += 1
        lines += ["PT J", "AU Noyear, N", "SO CELL", "C1 " + address(rng, 0),
                  f"UT WOS:{uid:015d}", "ER", ""]
        uid += 1
        lines += ["PT J", "AU Single, S", "SO RNA", f"C1 Observ, Ulaanbaatar {year}, Mongolia",
                  "WC Astrobiology", f"PY {year}", f"UT WOS:{uid:015d}", "ER", ""]
        uid += 1
        for _ in range(2):  # geocoded city that never coauthors: an isolate
            lines += ["PT J", "AU Solo, S", "SO RNA", "C1 " + address(rng, ISOLATE),
                      "WC Biochemistry", f"PY {year}", f"UT WOS:{uid:015d}", "ER", ""]
            uid += 1
        lines.append("EF")
        (OUT / f"corpus_{year}.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")

    gaz = ["city,country,lat,lon"]
    gaz += [f"{c},{k},{lat},{lon}" for _, c, k, lat, lon, ok in CITIES if ok]
    (OUT / "gazetteer.csv").write_text("\n".join(gaz) + "\n", encoding="utf-8")

    # toy basemap: similarity falls off with distance along a 1-D "layout"
    pos = [0.0, 0.6, 1.0, 1.7, 4.0, 4.8]
    cos = [[round(1.0 / (1.0 + abs(a - b)), 6) for b in pos] for a in pos]
    bm = OUT / "basemap"
    (bm / "categories.txt").write_text("\n".join(CATEGORIES) + "\n", encoding="utf-8")
    rows = [",".join(CATEGORIES)] + [",".join(repr(v) for v in row) for row in cos]
    (bm / "cosine.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    layout = ["label,x,y"] + [f"{c},{p},{(i % 2) * 0.5}" for i, (c, p) in enumerate(zip(CATEGORIES, pos))]
    (bm / "layout.csv").write_text("\n".join(layout) + "\n", encoding="utf-8")
    jc = ["journal,categories"] + [f"{j},{';'.join(c)}" for j, c in JOURNALS]
    (bm / "journal_categories.csv").write_text("\n".join(jc) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
