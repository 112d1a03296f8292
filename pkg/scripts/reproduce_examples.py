"""Rebuild the worked examples and print one line per code with its certificate.

    python scripts/reproduce_examples.py [--out DIR] [--no-search]
"""
import argparse
import time
from pathlib import Path

from mdsconv.cli import export_matrices
from mdsconv.families import FamilyRequest, build_or_error

EXAMPLES = [
    FamilyRequest("thm_main", 16, 2),
    *(FamilyRequest("thm_main", 8, i) for i in (1, 2, 3)),
    *(FamilyRequest("cor_c", 8, i) for i in (1, 2, 3)),
    *(FamilyRequest("thm_mainI", 9, i) for i in (2, 3, 4)),
    *(FamilyRequest("thm_mainII", 9, i) for i in (3, 4)),
    FamilyRequest("thm_mainIII", 9, r=1, m=2),
    FamilyRequest("thm_main1", 8, 2),
    *(FamilyRequest("thm_main1", 16, i) for i in (2, 3, 4, 5, 6)),
]


def describe(rec) -> str:
    if rec.status != "ok":
        return f"error: {rec.error}"
    c, row = rec.code, rec.row()
    if rec.claimed == "quantum":
        params = f"[({c.n}, {c.k}, {c.m}; {c.gamma}, {c.d_f.value})]_{c.q}"
    else:
        params = f"({c.n}, {c.k}, {c.gamma}; {c.memory}, {c.d_f.value})_{c.field.q}"
    return f"{rec.claimed:7s} {params:28s} {c.d_f.kind:14s} mds={row['mds']}"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, help="export matrices and records here")
    ap.add_argument("--no-search", action="store_true", help="skip exact trellis searches")
    args = ap.parse_args()
    for req in EXAMPLES:
        t0 = time.perf_counter()
        rec = build_or_error(req, exact=not args.no_search)
        idx = ",".join(f"{k}={v}" for k, v in req.index().items())
        print(f"{req.family:12s} q={req.q:<3d} {idx:9s} {describe(rec)}  [{time.perf_counter() - t0:.1f}s]",
              flush=True)
        if args.out and rec.status == "ok":
            export_matrices(rec, args.out / f"{req.family}_q{req.q}_{idx.replace(',', '_').replace('=', '')}")


if __name__ == "__main__":
    main()
