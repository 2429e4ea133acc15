"""Torsion order, tau distance, d-invariants and involutive correction terms."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import _gf2
from .coeff_algebra import (INFINITE, ChainMap, ComplexError, Entry, FreeComplex, Generator,
                            HomologyDecomposition, add_chains, are_chain_homotopic, chain_of,
                            class_of, homology, identity_map)


def torsion_order(H: HomologyDecomposition) -> int:
    return max((int(s.order) for s in H.torsion), default=0)


@dataclass(frozen=True)
class TauResult:
    value: float
    # U^(value-1) * class is nonzero and U^value * class is zero
    below_nonzero: bool | None
    at_zero: bool


def tau_witness(C: FreeComplex, diff_class: Mapping, H: HomologyDecomposition | None = None) -> TauResult:
    H = H or homology(C)
    cls = class_of(H, diff_class)
    n = cls.annihilation_order()
    if n == INFINITE:
        return TauResult(INFINITE, None, False)
    below = None if n == 0 else not cls.times_u(n - 1).is_zero()
    return TauResult(n, below, cls.times_u(n).is_zero())


def tau_distance(C: FreeComplex, diff_class: Mapping, H: HomologyDecomposition | None = None) -> float:
    """Least n with U^n [diff_class] = 0; raises NotACycle for non-cycles."""
    return tau_witness(C, diff_class, H).value


def d_invariant(C: FreeComplex) -> int:
    H = homology(C)
    free = [s for s in H.summands if s.order == INFINITE]
    if len(free) != 1:
        raise ComplexError(f"expected a single tower, found {len(free)}")
    return free[0].grading


# ---------------------------------------------------------------------------
# iota-complexes


@dataclass(frozen=True)
class IotaComplex:
    complex: FreeComplex
    involution: ChainMap

    def problems(self) -> list[str]:
        out = []
        iota = self.involution
        if not iota.is_chain_map():
            out.append("involution is not a chain map")
            return out
        if iota.degree() not in (0, None):
            out.append("involution does not preserve the grading")
        sq = iota.compose(iota)
        if not are_chain_homotopic(sq, identity_map(self.complex)):
            out.append("involution does not square to the identity up to homotopy")
        return out

    @property
    def ok(self) -> bool:
        return not self.problems()


def trivial_iota_complex(grading: int = 0) -> IotaComplex:
    C = FreeComplex("FU", (Generator("pt", grading),), ())
    return IotaComplex(C, identity_map(C))


# The C-copy of the cone sits one grading above C and the Q-copy at the
# gradings of C.  With this shift the one-generator complex with iota = id
# has both correction terms equal to its d-invariant.
CONE_SHIFT = 1


@dataclass(frozen=True)
class QCone:
    complex: FreeComplex
    c_ids: dict[str, str]
    q_ids: dict[str, str]
    shift: int = CONE_SHIFT

    @property
    def q_image_ids(self) -> frozenset:
        return frozenset(self.q_ids.values())


def iota_cone(IC: IotaComplex) -> QCone:
    """Cone(C --Q(1+iota)--> Q.C)."""
    C = IC.complex
    c_ids = {g: g for g in C.ids}
    q_ids = {g: f"Q{g}" for g in C.ids}
    gens = [Generator(c_ids[g], C.grading(g) + CONE_SHIFT) for g in C.ids]
    gens += [Generator(q_ids[g], C.grading(g)) for g in C.ids]
    diff = []
    for e in C.differential:
        diff.append(Entry(c_ids[e.src], c_ids[e.tgt], e.u_exp))
        diff.append(Entry(q_ids[e.src], q_ids[e.tgt], e.u_exp))
    for g in C.ids:
        conn = add_chains(chain_of(g), IC.involution.images.get(g, {}))
        for t, p in conn.items():
            for k in p.exponents:
                diff.append(Entry(c_ids[g], q_ids[t], k))
    return QCone(FreeComplex("FU", tuple(gens), tuple(diff)), c_ids, q_ids)


class _GradedPieces:
    """The F2-vector spaces (cone)_r spanned by U^k g with gr(g) - 2k = r."""

    def __init__(self, C: FreeComplex):
        self.C = C
        self.ids = C.ids
        self._cache: dict[int, dict] = {}

    def basis(self, r: int) -> dict[tuple[str, int], int]:
        if r not in self._cache:
            out = {}
            for g in self.ids:
                diff = self.C.grading(g) - r
                if diff >= 0 and diff % 2 == 0:
                    out[(g, diff // 2)] = len(out)
            self._cache[r] = out
        return self._cache[r]

    def d(self, r: int, vec: int) -> int:
        src = self.basis(r)
        tgt = self.basis(r - 1)
        out = 0
        for (g, k), i in src.items():
            if vec >> i & 1:
                for e in self.C.entries_from(g):
                    out ^= 1 << tgt[(e.tgt, k + e.u_exp)]
        return out

    def times_u(self, r: int, vec: int, n: int) -> int:
        src = self.basis(r)
        tgt = self.basis(r - 2 * n)
        out = 0
        for (g, k), i in src.items():
            if vec >> i & 1:
                out ^= 1 << tgt[(g, k + n)]
        return out

    def cycles(self, r: int) -> list[int]:
        cols = [self.d(r, 1 << i) for i in range(len(self.basis(r)))]
        return _gf2.kernel(cols)

    def boundaries(self, r: int) -> list[int]:
        return [self.d(r + 1, 1 << i) for i in range(len(self.basis(r + 1)))]

    def restrict(self, r: int, vec: int, keep: frozenset) -> int:
        out = 0
        for (g, _), i in self.basis(r).items():
            if vec >> i & 1 and g in keep:
                out |= 1 << i
        return out

    def q_shift(self, r: int, vec: int, cone: QCone) -> int:
        """Apply Q: C-copy in grading r+1 -> Q-copy in grading r."""
        src = self.basis(r + 1)
        tgt = self.basis(r)
        out = 0
        for (g, k), i in src.items():
            if vec >> i & 1 and g in cone.c_ids.values():
                out ^= 1 << tgt[(cone.q_ids[g], k)]
        return out


def _span(vectors) -> _gf2.EchelonBasis:
    b = _gf2.EchelonBasis()
    for v in vectors:
        b.add(v)
    return b


def correction_terms(IC: IotaComplex, reading: str = "eventual") -> tuple[int, int]:
    """(d_lower, d_upper) of an iota-complex whose localized homology has rank one.

    ``reading`` selects how the upper term's condition "U^n x in im(Q)" is
    quantified: "eventual" asks that some U^m x lies in im(Q), "literal"
    that x itself does.
    """
    if reading not in ("eventual", "literal"):
        raise ValueError("reading must be 'eventual' or 'literal'")
    d_invariant(IC.complex)  # rank-one check
    cone = iota_cone(IC)
    P = _GradedPieces(cone.complex)
    N = sum(e.u_exp for e in cone.complex.differential) + len(cone.complex) + 1
    q_targets = frozenset(cone.q_ids.values())
    c_targets = frozenset(cone.c_ids.values())

    def im_q(r):
        # classes of Q * (C-part of a cycle in grading r+1), together with boundaries
        vecs = [P.q_shift(r, P.restrict(r + 1, z, c_targets), cone) for z in P.cycles(r + 1)]
        return _span(vecs + P.boundaries(r))

    grs = [cone.complex.grading(g) for g in cone.complex.ids]
    top, bottom = max(grs) + 1, min(grs) - 2 * len(grs) - 4
    lower = upper = None
    for r in range(top, bottom - 1, -1):
        Z = P.cycles(r)
        if not Z:
            continue
        low = r - 2 * N
        Q_low = im_q(low)
        B_low = _span(P.boundaries(low))
        if lower is None and any(not Q_low.contains(P.times_u(r, z, N)) for z in Z):
            lower = r - 1
        if upper is None:
            if reading == "eventual":
                # S = {z in Z_r : U^N z in im Q}
                images = [P.times_u(r, z, N) for z in Z]
                S = _in_subspace_combos(Z, images, Q_low)
            else:
                Q_r = im_q(r)
                S = _in_subspace_combos(Z, Z, Q_r)
            if any(not B_low.contains(P.times_u(r, s, N)) for s in S):
                upper = r
        if lower is not None and upper is not None:
            return lower, upper
    raise ComplexError("correction terms not found; is the localized homology rank one?")


def _in_subspace_combos(vectors: list[int], images: list[int], W: _gf2.EchelonBasis) -> list[int]:
    """Basis of combinations of ``vectors`` whose matching combination of ``images`` lies in W."""
    residues = [W.reduce(v)[0] for v in images]
    out = []
    for mask in _gf2.kernel(residues):
        v = 0
        for i, z in enumerate(vectors):
            if mask >> i & 1:
                v ^= z
        out.append(v)
    # vectors whose image already lies in W are kernel elements of size one
    return out


def v0_bar(IC: IotaComplex) -> Fraction:
    """-1/2 of the lower correction term."""
    return Fraction(-correction_terms(IC)[0], 2)


def v0_upper(IC: IotaComplex) -> Fraction:
    return Fraction(-correction_terms(IC)[1], 2)


# ---------------------------------------------------------------------------
# the disk-map constraint solver


def _candidate(e1: int, e2: int) -> tuple[str, dict]:
    terms = ["x"] + (["e1"] if e1 else []) + (["e2"] if e2 else [])
    return "+".join(terms), chain_of(*terms)


def solve_disk_map_constraints() -> dict[str, list[frozenset]]:
    """Pairs {F_D(1), F_D'(1)} of the form x + eps1 e1 + eps2 e2 allowed by each admissible involution.

    An involution is admissible if it or its composite with iota has
    V0 = 1; a pair is allowed if its members are distinct in homology and
    exchanged by the involution.
    """
    from .paper_objects import INVOLUTIONS, a0_J_involution, a0_J_summand

    C = a0_J_summand()
    H = homology(C)
    maps = {name: a0_J_involution(name) for name in INVOLUTIONS}
    v0 = {name: v0_bar(IotaComplex(C, m)) for name, m in maps.items()}
    hot = [name for name in INVOLUTIONS if v0[name] == 1]
    admissible = set(hot)
    for name in hot:
        composite = maps["iota"].compose(maps[name])
        for other, m in maps.items():
            if are_chain_homotopic(composite, m):
                admissible.add(other)
    cands = [_candidate(a, b) for a in (0, 1) for b in (0, 1)]
    out = {}
    for name in INVOLUTIONS:
        if name not in admissible:
            continue
        m = maps[name]
        pairs = []
        for i, (la, ca) in enumerate(cands):
            for lb, cb in cands[i + 1:]:
                if class_of(H, add_chains(ca, cb)).is_zero():
                    continue
                if class_of(H, add_chains(m(ca), cb)).is_zero():
                    pairs.append(frozenset({la, lb}))
        out[name] = pairs
    return out
