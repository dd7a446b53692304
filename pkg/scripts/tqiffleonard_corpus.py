"""Check Q-polynomial <=> Leonard on the corpus and on randomly found completely regular codes."""
import argparse

import numpy as np

from crcodes.codes import Code, QuotientMatrix, code_spectrum, is_completely_regular
from crcodes.corpus import CORPUS
from crcodes.graphs import cycle, doubled_odd, folded_cube, halved_cube, hamming, johnson
from crcodes.leonard import leonard_test, qpoly_test
from crcodes.spectral import spectrum

SEARCH_GRAPHS = {
    "H(3,2)": lambda: hamming(3, 2),
    "H(4,2)": lambda: hamming(4, 2),
    "H(2,3)": lambda: hamming(2, 3),
    "J(5,2)": lambda: johnson(5, 2),
    "J(6,2)": lambda: johnson(6, 2),
    "Desargues": lambda: doubled_odd(3),
    "halved 5-cube": lambda: halved_cube(5),
    "folded 5-cube": lambda: folded_cube(5),
    "heptagon": lambda: cycle(7),
}


def verdict(g, c):
    u = is_completely_regular(g, c)
    if not isinstance(u, QuotientMatrix) or u.rho == 0:
        return None
    cs = code_spectrum(u, spectrum(g.intersection_array()))
    qv = qpoly_test(u, cs)
    lvs = [leonard_test(u, cs, cs.etas[j]) for j in range(1, u.rho + 1)]
    leonard_orders = sorted({o for v in lvs for o in v.orderings})
    agree = qv.flag == any(v.flag for v in lvs) and sorted(qv.orderings) == leonard_orders
    return qv.flag, agree


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=4000, help="random subsets tried per graph")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    failures = 0
    print(f"{'source':<40} {'CR codes':>8} {'Q-poly':>7} {'agree':>6}")
    tally = [0, 0, 0]
    for e in CORPUS:
        g, c, _ = e.build()
        v = verdict(g, c)
        if v is None:
            continue
        tally[0] += 1
        tally[1] += v[0]
        tally[2] += v[1]
    failures += tally[0] - tally[2]
    print(f"{'reference corpus':<40} {tally[0]:>8} {tally[1]:>7} {tally[2]:>6}")

    for name, build in SEARCH_GRAPHS.items():
        g = build()
        seen = set()
        tally = [0, 0, 0]
        for _ in range(args.samples):
            size = int(rng.integers(1, max(2, g.n // 2)))
            vs = frozenset(rng.choice(g.n, size=size, replace=False).tolist())
            if vs in seen:
                continue
            seen.add(vs)
            v = verdict(g, Code.from_vertices(g, sorted(vs)))
            if v is None:
                continue
            tally[0] += 1
            tally[1] += v[0]
            tally[2] += v[1]
        failures += tally[0] - tally[2]
        print(f"{'random subsets of ' + name:<40} {tally[0]:>8} {tally[1]:>7} {tally[2]:>6}")
    print(f"disagreements: {failures}")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
