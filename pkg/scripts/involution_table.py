"""Correction terms of the A0 summand of J under each involution, both readings."""

from __future__ import annotations

from bfcable import paper_objects as po
from bfcable.invariants import IotaComplex, correction_terms, solve_disk_map_constraints


def main():
    C = po.a0_J_summand()
    print("involution\td_lower\td_upper\td_upper(literal)\tV0")
    for name in po.INVOLUTIONS:
        IC = IotaComplex(C, po.a0_J_involution(name))
        lo, hi = correction_terms(IC)
        _, hi_lit = correction_terms(IC, reading="literal")
        print(f"{name}\t{lo}\t{hi}\t{hi_lit}\t{-lo // 2}")
    print()
    for name, pairs in solve_disk_map_constraints().items():
        print(name, [sorted(p) for p in pairs])


if __name__ == "__main__":
    main()
