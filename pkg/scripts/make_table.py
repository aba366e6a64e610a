"""Write the n(d) bound comparison as CSV and Markdown, plus a verdict summary."""

import argparse
import collections
from pathlib import Path

from sidon_designs import bounds


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dmax", type=int, default=150)
    ap.add_argument("--sic-data")
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()

    data = bounds.load_sic_data(args.sic_data)
    rows = bounds.table(args.dmax, data)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"bounds_d{args.dmax}.csv").write_text(bounds.to_csv(rows, data))
    (out / f"bounds_d{args.dmax}.md").write_text(bounds.to_markdown(rows, data))

    verdicts = collections.Counter(r.verdict for r in rows)
    print(f"rows: {len(rows)}  verdicts: {dict(verdicts)}")
    better = [f"{r.d}:{r.witness.label}" for r in rows if r.verdict == "sidon"]
    print("strict improvements:", " ".join(better))


if __name__ == "__main__":
    main()
