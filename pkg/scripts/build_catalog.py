#!/usr/bin/env python3
"""Rebuild the committed seed catalog in place.

The catalog shipped with the package is generated from the seed sources;
run this after changing anything under decomplab/seeds.py and commit the
result.  The build is deterministic, so an unchanged corpus rewrites the
file byte-for-byte.
"""

from pathlib import Path

from decomplab.catalog import build_seed_catalog, save, seed_catalog_path, \
    validate_catalog


def main():
    cat = build_seed_catalog()
    problems = validate_catalog(cat)
    if problems:
        raise SystemExit("refusing to write an invalid catalog:\n  "
                         + "\n  ".join(problems))
    path = seed_catalog_path()
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    save(cat, path)
    print(f"wrote {path} ({len(cat.records)} records)")


if __name__ == "__main__":
    main()
