"""The torus algebra A(T^2).

Eight basis elements over F2: two idempotents and six Reeb elements.
Elements are named by their serialized strings ``i0, i1, r1, r2, r3, r12,
r23, r123``.  Convention: ``r1, r3, r123`` run from i0 to i1, ``r2`` from i1
to i0, ``r12`` is in i0 A i0 and ``r23`` in i1 A i1; the left idempotent of a
type-D generator must match the left end of the chords leaving it.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

IDEMPOTENTS = ("i0", "i1")
REEB = ("r1", "r2", "r3", "r12", "r23", "r123")
BASIS = IDEMPOTENTS + REEB

# element -> (left idempotent, right idempotent)
ENDS = {
    "i0": ("i0", "i0"),
    "i1": ("i1", "i1"),
    "r1": ("i0", "i1"),
    "r2": ("i1", "i0"),
    "r3": ("i0", "i1"),
    "r12": ("i0", "i0"),
    "r23": ("i1", "i1"),
    "r123": ("i0", "i1"),
}

_REEB_PRODUCTS = {
    ("r1", "r2"): "r12",
    ("r2", "r3"): "r23",
    ("r1", "r23"): "r123",
    ("r12", "r3"): "r123",
}

PRETTY = {"i0": "ι0", "i1": "ι1", "r1": "ρ1", "r2": "ρ2", "r3": "ρ3",
          "r12": "ρ12", "r23": "ρ23", "r123": "ρ123"}


def check_basis(name: str) -> str:
    if name not in ENDS:
        raise ValueError(f"unknown torus algebra element {name!r}")
    return name


def left(a: str) -> str:
    return ENDS[a][0]


def right(a: str) -> str:
    return ENDS[a][1]


def is_idempotent(a: str) -> bool:
    return a in IDEMPOTENTS


def mul_basis(a: str, b: str) -> str | None:
    """Product of two basis elements, or None when it vanishes."""
    if right(a) != left(b):
        return None
    if is_idempotent(a):
        return b
    if is_idempotent(b):
        return a
    return _REEB_PRODUCTS.get((a, b))


class Element(frozenset):
    """A formal F2-sum of basis elements."""

    @classmethod
    def of(cls, *names: str) -> "Element":
        out = set()
        for n in names:
            out ^= {check_basis(n)}
        return cls(out)

    def __add__(self, other):
        return Element(self ^ other)

    def __mul__(self, other):
        out = set()
        for a, b in product(self, other):
            c = mul_basis(a, b)
            if c is not None:
                out ^= {c}
        return Element(out)

    def __repr__(self):
        return " + ".join(PRETTY[n] for n in sorted(self, key=BASIS.index)) or "0"


def multiply(a, b) -> Element:
    """Bilinear product; accepts basis names or Elements."""
    a = Element.of(a) if isinstance(a, str) else a
    b = Element.of(b) if isinstance(b, str) else b
    return a * b


def composable(seq: Sequence[str], left_idem: str, right_idem: str) -> bool:
    """Whether a sequence of Reeb elements chains from ``left_idem`` to ``right_idem``."""
    cur = left_idem
    for a in seq:
        if left(a) != cur:
            return False
        cur = right(a)
    return cur == right_idem


def elements_between(l: str, r: str, units: bool = True) -> list[str]:
    """Basis elements of l A r."""
    return [a for a in BASIS if ENDS[a] == (l, r) and (units or not is_idempotent(a))]


def reeb_sequences(start: str, max_len: int, alphabet: Iterable[str] = REEB):
    """All composable Reeb sequences of length 1..max_len starting at ``start``."""
    alphabet = list(alphabet)
    frontier = [((), start)]
    for _ in range(max_len):
        nxt = []
        for seq, cur in frontier:
            for a in alphabet:
                if left(a) == cur:
                    s = seq + (a,)
                    nxt.append((s, right(a)))
                    yield s
        frontier = nxt
