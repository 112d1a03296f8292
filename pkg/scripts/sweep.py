"""Sweep families over several field sizes and write the flat rows to CSV.

    python scripts/sweep.py --families thm_main,cor_c --q 8,16 --out sweep.csv
"""
import argparse
import csv
import sys
import time
from dataclasses import dataclass, field

from mdsconv.cli import CSV_FIELDS
from mdsconv.distance import Budget
from mdsconv.families import FAMILIES, EVEN_FAMILIES, enumerate_family


@dataclass
class SweepConfig:
    families: tuple = FAMILIES
    even_q: tuple = (8, 16)
    odd_q: tuple = (9,)
    exact: bool = True
    budget: int | None = None
    q_override: tuple = field(default=())

    def q_values(self, family: str) -> tuple:
        if self.q_override:
            return self.q_override
        return self.even_q if family in EVEN_FAMILIES else self.odd_q


def run(cfg: SweepConfig, out):
    w = csv.DictWriter(out, fieldnames=CSV_FIELDS + ("seconds",), lineterminator="\n")
    w.writeheader()
    budget = Budget.from_env(cfg.budget)
    for fam in cfg.families:
        for q in cfg.q_values(fam):
            t0 = time.perf_counter()
            recs = enumerate_family(fam, [q], budget, cfg.exact)
            per = (time.perf_counter() - t0) / max(1, len(recs))
            for r in recs:
                w.writerow(dict(r.row(), seconds=f"{per:.2f}"))
            out.flush()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--families", default=",".join(FAMILIES))
    ap.add_argument("--q", default="", help="comma-separated q values for every family")
    ap.add_argument("--no-search", action="store_true")
    ap.add_argument("--budget", type=int)
    ap.add_argument("--out", help="CSV path (default stdout)")
    args = ap.parse_args()
    cfg = SweepConfig(
        families=tuple(f for f in args.families.split(",") if f),
        exact=not args.no_search,
        budget=args.budget,
        q_override=tuple(int(x) for x in args.q.split(",") if x),
    )
    if args.out:
        with open(args.out, "w", newline="") as fh:
            run(cfg, fh)
    else:
        run(cfg, sys.stdout)


if __name__ == "__main__":
    main()
