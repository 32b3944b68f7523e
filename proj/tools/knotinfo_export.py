#!/usr/bin/env python3
"""Convert a KnotInfo CSV export into the zslice knot file format.

Usage: knotinfo_export.py knotinfo_data_complete.csv [--names 9_48,12a_554] > knots.txt
"""
import argparse
import ast
import csv
import sys


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csv", help="KnotInfo CSV (pipe or comma delimited)")
    ap.add_argument("--names", help="comma-separated knot names to keep")
    ap.add_argument("--max-crossings", type=int, default=None)
    args = ap.parse_args()

    csv.field_size_limit(sys.maxsize)
    with open(args.csv, newline="") as f:
        sample = f.readline()
        f.seek(0)
        delim = "|" if sample.count("|") > sample.count(",") else ","
        rows = csv.DictReader(f, delimiter=delim)
        wanted = set(args.names.split(",")) if args.names else None
        out = sys.stdout
        out.write("# exported from KnotInfo: " + args.csv + "\n")
        count = 0
        for row in rows:
            name = row.get("name", "").strip()
            if not name or (wanted is not None and name not in wanted):
                continue
            if args.max_crossings is not None:
                try:
                    if int(row.get("crossing_number", "0")) > args.max_crossings:
                        continue
                except ValueError:
                    continue
            text = row.get("seifert_matrix", "").strip()
            if not text:
                continue
            matrix = ast.literal_eval(text)
            out.write(f"knot {name}\nseifert {len(matrix)}\n")
            for r in matrix:
                out.write(" ".join(str(int(x)) for x in r) + "\n")
            count += 1
        if wanted is not None and count < len(wanted):
            print(f"warning: {len(wanted) - count} requested knots not found", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
