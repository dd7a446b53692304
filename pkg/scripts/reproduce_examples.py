"""Classify every code of the reference corpus and print one row per code."""
import argparse
import json
import time

from crcodes.corpus import CORPUS
from crcodes.exact import fmt
from crcodes.leonard import classify


def row(e, ordering):
    g, c, _ = e.build()
    start = time.perf_counter()
    r = classify(g, c, ordering=ordering)
    return {
        "code": e.name,
        "n": g.n,
        "size": c.size,
        "rho": r.rho,
        "spectrum": [fmt(x) for x in r.etas],
        "sstar": list(r.sstar),
        "qpoly": r.is_qpoly,
        "leonard": r.is_leonard,
        "harmonic_t": r.harmonic_t,
        "strength": r.strength,
        "seconds": round(time.perf_counter() - start, 3),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ordering", choices=("natural", "search"), default="natural")
    ap.add_argument("--json", action="store_true", help="emit one JSON object per line")
    ap.add_argument("--max-vertices", type=int, default=1 << 15)
    args = ap.parse_args()
    head = f"{'code':<38} {'rho':>3} {'S*':<16} {'qpoly':<6} {'leon':<6} {'harm':>4} {'str':>4} {'sec':>7}"
    if not args.json:
        print(head)
        print("-" * len(head))
    for e in CORPUS:
        if e.build()[0].n > args.max_vertices:
            continue
        d = row(e, args.ordering)
        if args.json:
            print(json.dumps(d))
            continue
        print(f"{d['code']:<38} {d['rho']:>3} {str(tuple(d['sstar'])):<16} {str(d['qpoly']):<6} "
              f"{str(d['leonard']):<6} {str(d['harmonic_t']):>4} {str(d['strength']):>4} {d['seconds']:>7.3f}")


if __name__ == "__main__":
    main()
