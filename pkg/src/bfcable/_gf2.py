"""Linear algebra over GF(2) with vectors packed into Python ints."""

from __future__ import annotations


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a subspace of GF(2)^n.

    Each stored row remembers which inserted vectors it is a combination of,
    so callers can recover explicit linear relations.
    """

    def __init__(self):
        self._rows: dict[int, tuple[int, int]] = {}  # pivot bit -> (row, combo)
        self._count = 0

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec: int) -> tuple[int, int]:
        """Return (residue, combo) with residue = vec + sum of rows in combo."""
        combo = 0
        while vec:
            top = vec.bit_length() - 1
            hit = self._rows.get(top)
            if hit is None:
                break
            vec ^= hit[0]
            combo ^= hit[1]
        if not vec:
            return 0, combo
        # continue below the leading bit, which has no pivot
        lead = vec.bit_length() - 1
        rest = vec ^ (1 << lead)
        while rest:
            top = rest.bit_length() - 1
            hit = self._rows.get(top)
            if hit is not None:
                rest ^= hit[0]
                vec ^= hit[0]
                combo ^= hit[1]
            else:
                rest ^= 1 << top
        return vec, combo

    def contains(self, vec: int) -> bool:
        return self.reduce(vec)[0] == 0

    def add(self, vec: int) -> int | None:
        """Insert ``vec``; return a dependency mask over earlier inserts if it was redundant.

        The mask has bit i set for the i-th inserted vector (the new one included).
        """
        idx = self._count
        self._count += 1
        residue, combo = self.reduce(vec)
        combo ^= 1 << idx
        if residue == 0:
            return combo
        self._rows[residue.bit_length() - 1] = (residue, combo)
        return None


def rank(vectors) -> int:
    basis = EchelonBasis()
    for v in vectors:
        basis.add(v)
    return len(basis)


def kernel(columns: list[int]) -> list[int]:
    """Basis of {c : sum_i c_i * columns[i] = 0}, as masks over column indices."""
    basis = EchelonBasis()
    out = []
    for col in columns:
        dep = basis.add(col)
        if dep is not None:
            out.append(dep)
    return out


def solve(columns: list[int], target: int) -> int | None:
    """Find a mask c with sum_i c_i * columns[i] = target, or None."""
    basis = EchelonBasis()
    for col in columns:
        basis.add(col)
    residue, combo = basis.reduce(target)
    if residue:
        return None
    return combo
