"""Torsion order and tau of the cabled candidate class as p varies.

    python3 scripts/p_sweep.py --pmax 30
"""

from __future__ import annotations

import argparse
import time

from bfcable import paper_objects as po
from bfcable.coeff_algebra import homology
from bfcable.invariants import tau_witness, torsion_order
from bfcable.pairing import box_morphism, box_tensor


def row(p: int, eps2: int):
    t = time.perf_counter()
    C = po.cfk_cable_J(p)
    H = homology(C)
    A = po.cfa_cable(p)
    F = box_morphism(A, po.candidate_map_sum(0, eps2), box_tensor(A, po.cfd_unknot()),
                     box_tensor(A, po.cfd_J()))
    r = tau_witness(C, F.images["alpha|v"], H)
    return len(C.generators), torsion_order(H), r, time.perf_counter() - t


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pmax", type=int, default=25)
    ap.add_argument("--step", type=int, default=1)
    args = ap.parse_args()
    print("p\teps2\tgens\tord\ttau\twitness\tseconds")
    for p in range(2, args.pmax + 1, args.step):
        for eps2 in (0, 1):
            n, order, r, dt = row(p, eps2)
            ok = bool(r.below_nonzero and r.at_zero)
            print(f"{p}\t{eps2}\t{n}\t{order}\t{r.value}\t{ok}\t{dt:.3f}")


if __name__ == "__main__":
    main()
