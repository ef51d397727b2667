"""Regenerate the shipped catalog under src/derangement_cliques/data/catalog.

The exceptional fixtures come from ``search_exceptional`` with the seeds and
budgets below; their ``search`` tag records the restart that produced them.
"""

import argparse
from pathlib import Path

from derangement_cliques.catalog import build_catalog
from derangement_cliques.search import search_exceptional

FIXTURE_SEARCHES = [(3, 2000, 1), (5, 2000, 1)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    default = Path(__file__).resolve().parents[1] / "src" / "derangement_cliques" / "data" / "catalog"
    ap.add_argument("--out", type=Path, default=default)
    args = ap.parse_args()
    records = []
    for p, budget, seed in FIXTURE_SEARCHES:
        found = search_exceptional(p, budget, seed=seed)
        print(f"p={p}: {len(found)} fixture(s)")
        records.extend(found)
    for path in build_catalog(args.out, records):
        print(path.name)


if __name__ == "__main__":
    main()
