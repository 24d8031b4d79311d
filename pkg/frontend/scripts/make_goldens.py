#!/usr/bin/env python3
"""Regenerate test/goldens/queries.json from the decomplab CLI.

Each golden row is a filter plus the exact id list `decomplab catalog query`
returns for it on the shipped seed catalog: every per-dimension singleton
(12), every all-dimensions singleton combination (64), and 20 seeded random
multi-set filters.  The explorer's filter tests replay these rows, so filter
parity is checked against the tool itself rather than a re-implementation.
"""

import json
import random
import subprocess
import sys
from pathlib import Path

DIMS = ("repetition", "composition", "data")
LEVELS = (0, 1, 2, 3)


def cli_query(filters):
    cmd = ["decomplab", "catalog", "query"]
    for dim in DIMS:
        levels = filters[dim]
        if levels:
            cmd += [f"--{dim}", ",".join(str(x) for x in levels)]
    if filters["tags"]:
        cmd += ["--tags", ",".join(filters["tags"])]
    out = subprocess.run(cmd, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    data_dir = Path(__file__).resolve().parent.parent / "public" / "data"
    catalog = json.loads((data_dir / "catalog.json").read_text(encoding="utf-8"))
    tag_universe = sorted({t for rec in catalog["records"] for t in rec["tags"]})

    rows = []

    def add(name, repetition=(), composition=(), data=(), tags=()):
        filters = {
            "repetition": sorted(repetition),
            "composition": sorted(composition),
            "data": sorted(data),
            "tags": list(tags),
        }
        rows.append({"name": name, **filters, "ids": cli_query(filters)})

    for dim in DIMS:
        for level in LEVELS:
            add(f"singleton-{dim}-{level}", **{dim: [level]})

    for r in LEVELS:
        for c in LEVELS:
            for d in LEVELS:
                add(f"combo-r{r}-c{c}-d{d}", [r], [c], [d])

    rng = random.Random(20240817)
    for i in range(20):
        filters = {}
        for dim in DIMS:
            if rng.random() < 0.5:
                filters[dim] = []
            else:
                filters[dim] = rng.sample(LEVELS, rng.randint(1, 4))
        tags = rng.sample(tag_universe, rng.choice([0, 0, 1, 1, 2]))
        add(f"random-{i}", filters["repetition"], filters["composition"],
            filters["data"], tags)

    out_path = Path(__file__).resolve().parent.parent / "test" / "goldens" / "queries.json"
    out_path.write_text(json.dumps(rows, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {out_path} ({len(rows)} queries)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
