#!/usr/bin/env python3
"""Convert ECB euro reference rates (eurofxref-hist.csv) into H.10-style
daily CSV files: `DATE,VALUE` with `ND` on weekdays that have no fixing.

US/EUR is USD per EUR. Other pairs are USD cross rates (USD per GBP,
INR per USD) derived from the EUR fixings of the same day.

usage: ecb_to_h10.py eurofxref-hist.csv OUTDIR
"""
import csv
import datetime as dt
import sys
from pathlib import Path

SERIES = {
    # file, header, start, end, converter(row) -> float
    "us_eur.csv": ("DEXUSEU", "2000-01-03", "2009-03-09", lambda r: r["USD"]),
    "us_uk.csv": ("DEXUSUK", "2000-01-03", "2009-03-09", lambda r: r["USD"] / r["GBP"]),
    # The ECB publishes an INR fixing only from 2009-01-02.
    "us_inr.csv": ("DEXINUS", "2009-01-02", "2018-03-09", lambda r: r["INR"] / r["USD"]),
}


def load(path):
    rows = {}
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            vals = {}
            for k in ("USD", "GBP", "INR"):
                v = rec.get(k, "N/A")
                vals[k] = float(v) if v not in ("N/A", "", None) else None
            rows[rec["Date"]] = vals
    return rows


def main():
    src, out = sys.argv[1], Path(sys.argv[2])
    rows = load(src)
    for name, (header, start, end, conv) in SERIES.items():
        day = dt.date.fromisoformat(start)
        last = dt.date.fromisoformat(end)
        lines = [f"DATE,{header}"]
        while day <= last:
            if day.weekday() < 5:
                key = day.isoformat()
                rec = rows.get(key)
                value = "ND"
                if rec is not None:
                    try:
                        value = f"{conv(rec):.4f}"
                    except TypeError:  # currency not fixed that day
                        pass
                lines.append(f"{key},{value}")
            day += dt.timedelta(days=1)
        (out / name).write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
