#!/usr/bin/env python3
"""
Download a pinned list of SuiteSparse matrices into a corpus directory.

Only square matrices with symmetric structure inside the size window are
kept; every exclusion is logged.

Run from the repository root:
  python scripts/fetch_suitesparse.py --list small_exact --out corpus/small --min-n 100 --max-n 500
  python scripts/fetch_suitesparse.py --list large_desk --out corpus/large --min-n 10000 --max-n 100000
"""

import argparse
import logging
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from benchmark.corpus import fetch_corpus, pinned_list, read_pinned_list

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s | %(levelname)s | %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
)
logger = logging.getLogger(__name__)


def main():
    parser = argparse.ArgumentParser(description="Fetch pinned SuiteSparse matrices.")
    parser.add_argument("--list", default="small_exact", help="bundled list name or path to a group/name list")
    parser.add_argument("--out", type=Path, required=True, help="corpus directory")
    parser.add_argument("--min-n", type=int, default=None)
    parser.add_argument("--max-n", type=int, default=None)
    parser.add_argument("--base-url", default=None, help="mirror root (default SUITESPARSE_BASE_URL)")
    args = parser.parse_args()

    list_path = Path(args.list)
    entries = read_pinned_list(list_path if list_path.is_file() else pinned_list(args.list))
    outcomes = fetch_corpus(entries, args.out, min_n=args.min_n, max_n=args.max_n, base_url=args.base_url)

    print("=" * 60)
    print(f"Kept {sum(o.kept for o in outcomes)} of {len(outcomes)} matrices in {args.out}")
    for o in outcomes:
        if not o.kept:
            print(f"  excluded {o.group}/{o.name}: {o.reason}")
    print("=" * 60)


if __name__ == "__main__":
    main()
