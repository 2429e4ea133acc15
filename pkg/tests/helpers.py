"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from hypothesis import strategies as st

from bfcable.coeff_algebra import INFINITE, Entry, FreeComplex, Generator


def _bits(x: int):
    k = 0
    while x:
        if x & 1:
            yield k
        x >>= 1
        k += 1


@st.composite
def scrambled_complexes(draw, ring="FU", max_summands=5, max_moves=12):
    """A complex with known homology, hidden by random grading-preserving basis changes.

    Returns (complex, expected profile).  Summands are towers or pairs
    x -> U^k y; the basis changes are s -> s + U^m r applied as a conjugation
    of the differential matrix.
    """
    n = draw(st.integers(1, max_summands))
    grading, D, profile = [], {}, []
    for _ in range(n):
        g = draw(st.integers(-6, 6))
        if draw(st.booleans()):
            grading.append(g)
            profile.append((g, INFINITE))
        else:
            k = 0 if ring == "F2" else draw(st.integers(0, 3))
            y = len(grading)
            grading.extend([g, g + 1 - 2 * k])
            D[(y, y + 1)] = 1 << k
            if k:
                profile.append((g, k))
    size = len(grading)
    for _ in range(draw(st.integers(0, max_moves))):
        s, r = draw(st.integers(0, size - 1)), draw(st.integers(0, size - 1))
        diff = grading[r] - grading[s]
        if s == r or diff < 0 or diff % 2 or (ring == "F2" and diff):
            continue
        m = diff // 2
        for t in range(size):  # column op
            D[(t, s)] = D.get((t, s), 0) ^ (D.get((t, r), 0) << m)
        for c in range(size):  # row op
            D[(r, c)] = D.get((r, c), 0) ^ (D.get((s, c), 0) << m)
    names = draw(st.permutations([f"g{i}" for i in range(size)]))
    gens = tuple(Generator(names[i], grading[i]) for i in range(size))
    entries = [Entry(names[s], names[t], k) for (t, s), poly in D.items() for k in _bits(poly)]
    return FreeComplex(ring, gens, tuple(entries)), sorted(profile)
