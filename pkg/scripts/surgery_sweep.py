"""Hat pairings of the n-framed solid torus with the unknot and J complements."""

from __future__ import annotations

import argparse

from bfcable import paper_objects as po
from bfcable.coeff_algebra import class_of, homology
from bfcable.pairing import box_morphism, box_tensor


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=12)
    args = ap.parse_args()
    print("n\tdim_U\tdim_J\teps2\tnonzero alpha_k|v")
    U, J = po.cfd_unknot(), po.cfd_J()
    for n in range(1, args.nmax + 1):
        M = po.cfa_framed_solid_torus_hat(n)
        bU, bJ = box_tensor(M, U), box_tensor(M, J)
        HJ = homology(bJ.complex)
        dU = homology(bU.complex).dimension()
        for eps2 in (0, 1):
            F = box_morphism(M, po.candidate_map_sum(0, eps2), bU, bJ)
            hot = [k for k in range(1, n + 1) if not class_of(HJ, F.images[f"alpha{k}|v"]).is_zero()]
            print(f"{n}\t{dU}\t{HJ.dimension()}\t{eps2}\t{hot}")


if __name__ == "__main__":
    main()
