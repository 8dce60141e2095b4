#!/usr/bin/env python3
"""Regenerate the two feasible-parameter tables and write them as CSV and
aligned text next to this script (out/ by default)."""

import argparse
import time
from pathlib import Path

from sgdd.scanner import rows_to_csv, rows_to_text, scan_table1, scan_table2


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out", help="output directory")
    ap.add_argument("--vmax1", type=int, default=1000)
    ap.add_argument("--vmax2", type=int, default=500)
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    t0 = time.monotonic()
    rows1 = scan_table1(args.vmax1)
    t1 = time.monotonic()
    rows2 = scan_table2(args.vmax2)
    t2 = time.monotonic()

    (out / "table1.csv").write_text(rows_to_csv(rows1, 1))
    (out / "table1.txt").write_text(rows_to_text(rows1, 1))
    (out / "table2.csv").write_text(rows_to_csv(rows2, 2))
    (out / "table2.txt").write_text(rows_to_text(rows2, 2))

    print(f"symmetric-design table: {len(rows1)} rows (v <= {args.vmax1}) in {t1 - t0:.3f}s")
    print(f"proper/proper table:    {len(rows2)} rows (v <= {args.vmax2}) in {t2 - t1:.3f}s")
    print(f"written to {out}/")


if __name__ == "__main__":
    main()
