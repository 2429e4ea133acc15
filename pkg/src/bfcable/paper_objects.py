"""Concrete complexes, bordered structures, morphisms and involutions.

Naming: type-D generators of the knot complement are ``x``, ``a1, b1, ...``
for the two y-boxes, ``f1, g1, ...`` for the two z-boxes, and ``y{s}_{k}`` /
``z{s}_{k}`` for the idempotent-1 generators.  Box tensor generators are
``"<A-gen>|<D-gen>"``, e.g. ``alpha|a1`` or ``beta3|y2_1``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .bordered_structures import (Arrow, DMorphism, Operation, TypeAModule, TypeDStructure,
                                  morphism)
from .coeff_algebra import (ChainMap, ComplexError, Entry, FreeComplex, Generator, a0_minus,
                            chain_of, infer_gradings, set_v_zero, with_gradings)

DEFAULT_JMAX = 64

# letters of the four boxes: (a, b, c, e, y) shape; box number -> (letters, index)
Y_LETTERS = ("a", "b", "c", "e", "y")
Z_LETTERS = ("f", "g", "h", "j", "z")
BOXES = {1: (Y_LETTERS, 1), 2: (Y_LETTERS, 2), 3: (Z_LETTERS, 1), 4: (Z_LETTERS, 2)}


def jmax() -> int:
    return int(os.environ.get("BFH_JMAX", DEFAULT_JMAX))


# ---------------------------------------------------------------------------
# knot complexes

# (gr_U, gr_V) from the bigrading table of J
_J_GRADINGS = {"a": (0, 0), "b": (1, -1), "c": (-1, 1), "e": (0, 0),
               "f": (-1, -1), "g": (0, -2), "h": (-2, 0), "j": (-1, -1)}


@lru_cache(maxsize=None)
def cfk_J() -> FreeComplex:
    gens = [Generator("x", 0, 0)]
    diff = []
    for k in (1, 2):
        for letter in "abcefghj":
            gu, gv = _J_GRADINGS[letter]
            gens.append(Generator(f"{letter}{k}", gu, gv))
        for top, left, down, corner in (("a", "b", "c", "e"), ("f", "g", "h", "j")):
            diff += [Entry(f"{top}{k}", f"{left}{k}", 1, 0), Entry(f"{top}{k}", f"{down}{k}", 0, 1),
                     Entry(f"{left}{k}", f"{corner}{k}", 0, 1), Entry(f"{down}{k}", f"{corner}{k}", 1, 0)]
    return FreeComplex("FUV", tuple(gens), tuple(diff))


def _box_d(letters, k):
    a, b, c, e = (f"{l}{k}" for l in letters[:4])
    y = letters[4]
    ys = {s: f"{y}{s}_{k}" for s in range(1, 5)}
    gens = [(a, "i0"), (b, "i0"), (c, "i0"), (e, "i0")] + [(ys[s], "i1") for s in range(1, 5)]
    arrows = [
        (b, "r1", ys[2]), (ys[1], "r2", b), (a, "r3", ys[1]), (a, "r1", ys[4]),
        (e, "r123", ys[2]), (ys[3], "r2", e), (c, "r3", ys[3]), (c, "r123", ys[4]),
    ]
    return gens, arrows


@lru_cache(maxsize=None)
def cfd_J() -> TypeDStructure:
    """The type-D structure of the complement of J: one singleton plus four unit boxes."""
    gens = [("x", "i0")]
    arrows = [("x", "r12", "x")]
    for letters, k in BOXES.values():
        g, a = _box_d(letters, k)
        gens += g
        arrows += a
    return TypeDStructure(tuple(gens), tuple(arrows))


@lru_cache(maxsize=None)
def cfd_unknot() -> TypeDStructure:
    return TypeDStructure((("v", "i0"),), (("v", "r12", "v"),))


# ---------------------------------------------------------------------------
# type-A modules


def _lam(j: int) -> tuple[str, ...]:
    return ("r3",) + ("r23",) * j + ("r2",)


@lru_cache(maxsize=None)
def cfa_longitude(j_max: int | None = None) -> TypeAModule:
    j_max = jmax() if j_max is None else j_max
    ops = tuple(Operation("alpha", _lam(j), (("alpha", j + 1),)) for j in range(j_max))
    return TypeAModule("minus", (("alpha", "i0"),), ops, truncation=j_max)


@lru_cache(maxsize=None)
def cfa_cable(p: int, j_max: int | None = None, beta_ops: bool = True) -> TypeAModule:
    """The (p,1)-cable pattern module, with the alpha-input operations.

    With ``beta_ops`` the module also carries m1 on the betas and
    m3(beta, r2, r1); these are the beta-input operations visible in the
    box tensor with a unit box and are needed for d^2 = 0 there.  The
    remaining beta-input operations are absent, so A-infinity relations are
    only checked starting at alpha.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    j_max = jmax() if j_max is None else j_max
    top = 2 * p - 2
    gens = (("alpha", "i0"),) + tuple((f"beta{m}", "i1") for m in range(1, top + 1))
    ops = []
    for i in range(p - 1):
        ops.append(Operation("alpha", ("r12",) * i + ("r1",), ((f"beta{2 * p - i - 2}", 0),)))
    for j in range(j_max):
        for i in range(p - 1):
            ops.append(Operation("alpha", _lam(j) + ("r12",) * i + ("r1",),
                                 ((f"beta{i + 1}", p * j + i + 1),)))
        ops.append(Operation("alpha", _lam(j), (("alpha", p * (j + 1)),)))
    if beta_ops:
        for i in range(1, p):
            ops.append(Operation(f"beta{i}", (), ((f"beta{2 * p - 1 - i}", p - i),)))
        for i in range(1, p - 1):
            ops.append(Operation(f"beta{i}", ("r2", "r1"), ((f"beta{i + 1}", 1),)))
        for m in range(p + 1, top + 1):
            ops.append(Operation(f"beta{m}", ("r2", "r1"), ((f"beta{m - 1}", 0),)))
    return TypeAModule("minus", gens, tuple(ops), complete=frozenset({"alpha"}), truncation=j_max)


@lru_cache(maxsize=None)
def cfa_framed_solid_torus_hat(n: int, completed: bool = True) -> TypeAModule:
    """Hat module of the n-framed solid torus.

    The three displayed families alone violate the A-infinity relation on
    (r3, r2, r3) once n >= 2; ``completed`` adds the operations with r23
    inputs that restore it.  They never fire against the built-in type-D
    structures, which have no r23 arrows.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    gens = tuple((f"alpha{i}", "i0") for i in range(1, n + 1)) + (("beta", "i1"),)
    ops = [Operation("alpha1", ("r1",), (("beta", 0),)),
           Operation(f"alpha{n}", ("r3",), (("beta", 0),))]
    for i in range(1, n):
        ops.append(Operation(f"alpha{i}", ("r3", "r2"), ((f"alpha{i + 1}", 0),)))
    if completed:
        for i in range(1, n + 1):
            for j in range(1, n - i + 1):
                if i + j + 1 <= n:
                    ops.append(Operation(f"alpha{i}", _lam(j), ((f"alpha{i + j + 1}", 0),)))
                if i + j == n:
                    ops.append(Operation(f"alpha{i}", ("r3",) + ("r23",) * j, (("beta", 0),)))
    return TypeAModule("hat", gens, tuple(ops))


# ---------------------------------------------------------------------------
# the cabled knot complex


def cable_census(p: int) -> dict[str, int]:
    """Generator counts of the cable presentation, by row type."""
    return {"tower": 1, "alpha-box": 4 * 4, "beta-box": 4 * 4 * (2 * p - 2)}


def _cable_box_rows(p: int, letters, k: int, literal: bool):
    A, B, C, E = (f"alpha|{l}{k}" for l in letters[:4])
    Y = {s: f"{letters[4]}{s}_{k}" for s in range(1, 5)}

    def beta(m, s):
        return f"beta{m}|{Y[s]}"

    top = 2 * p - 2
    rows = [Entry(A, B, p), Entry(C, E, p)]
    if p >= 2:
        rows += [Entry(A, beta(1, 2), 1), Entry(A, beta(top, 4), 0), Entry(B, beta(top, 2), 0)]
    if not literal:
        for s in range(1, 5):
            for i in range(1, p):
                rows.append(Entry(beta(i, s), beta(2 * p - 1 - i, s), p - i))
        for i in range(1, p - 1):
            rows.append(Entry(beta(i, 1), beta(i + 1, 2), 1))
        for m in range(p + 1, top + 1):
            rows.append(Entry(beta(m, 1), beta(m - 1, 2), 0))
        return rows
    # the printed diagram, row by row
    for i in range(1, p - 1):
        rows.append(Entry(beta(i, 3), beta(2 * p - i - 1, 3), p - i))
        rows.append(Entry(beta(i, 1), beta(2 * p - i - 1, 1), p - i))
        rows.append(Entry(beta(i, 1), beta(i + 1, 2), 1))
        rows.append(Entry(beta(i + 1, 2), beta(2 * p - i - 1, 2), p - i - 1))
        rows.append(Entry(beta(2 * p - i - 1, 1), beta(2 * p - i - 1, 2), 0))
    for j in range(2, p - 1):
        rows.append(Entry(beta(j, 4), beta(2 * p - j - 1, 4), p - j))
    if p >= 2:
        rows += [Entry(beta(p - 1, 1), beta(p, 1), 1), Entry(beta(p - 1, 3), beta(p, 3), 1),
                 Entry(beta(1, 4), beta(top, 4), p - 1), Entry(beta(1, 2), beta(top, 2), p - 1)]
    return rows


@lru_cache(maxsize=None)
def cfk_cable_J(p: int, literal: bool = False) -> FreeComplex:
    """CFK^-(J_(p,1)) over F2[U] from the cable presentation.

    The default applies three index repairs to the printed diagram (see the
    README); ``literal=True`` encodes the rows exactly as printed.
    Maslov gradings are reconstructed from homogeneity, anchored so that
    alpha|x and alpha|a_k sit in grading 0 and alpha|f_k in grading -1.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if p == 1:
        C = set_v_zero(cfk_J())
        return C.relabel({g: f"alpha|{g}" for g in C.ids})
    ids = ["alpha|x"]
    for letters, k in BOXES.values():
        ids += [f"alpha|{l}{k}" for l in letters[:4]]
        ids += [f"beta{m}|{letters[4]}{s}_{k}" for s in range(1, 5) for m in range(1, 2 * p - 1)]
    if len(ids) != sum(cable_census(p).values()):
        raise AssertionError("cable census mismatch")
    diff = []
    for letters, k in BOXES.values():
        diff += _cable_box_rows(p, letters, k, literal)
    C = FreeComplex("FU", tuple(Generator(g) for g in ids), tuple(diff))
    anchors = {"alpha|x": 0}
    for letters, k in BOXES.values():
        anchors[f"alpha|{letters[0]}{k}"] = _J_GRADINGS[letters[0]][0]
    return with_gradings(C, infer_gradings(C, anchors))


# ---------------------------------------------------------------------------
# morphisms


def _box_names(box: int):
    letters, k = BOXES[box]
    return f"{letters[3]}{k}", {s: f"{letters[4]}{s}_{k}" for s in range(1, 5)}


@lru_cache(maxsize=None)
def basis_morphisms() -> dict[str, DMorphism]:
    """phi, psi, g1..g4, h1..h4 from the unknot complement into that of J."""
    U, J = cfd_unknot(), cfd_J()
    out = {"phi": morphism(U, J, [("v", "1", "x")]),
           "psi": morphism(U, J, [("v", "r12", "x")])}
    for box in BOXES:
        corner, ys = _box_names(box)
        out[f"g{box}"] = morphism(U, J, [("v", "1", corner), ("v", "r3", ys[2]), ("v", "r1", ys[3])])
        out[f"h{box}"] = morphism(U, J, [("v", "r1", ys[4])])
    return out


def candidate_map_sum(eps1: int, eps2: int) -> DMorphism:
    """g1 + g2 + eps1 psi + eps2 (h1 + ... + h4)."""
    if eps1 not in (0, 1) or eps2 not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    B = basis_morphisms()
    f = B["g1"] + B["g2"]
    if eps1:
        f = f + B["psi"]
    if eps2:
        for i in range(1, 5):
            f = f + B[f"h{i}"]
    return f


# ---------------------------------------------------------------------------
# the A0 summand and its involutions

A0_SUMMAND_IDS = ("x", "a1", "a2", "Ub1", "Ub2", "Vc1", "Vc2", "e1", "e2")
INVOLUTIONS = ("id", "iota", "sigma", "iota_sigma")


@lru_cache(maxsize=None)
def a0_J_summand() -> FreeComplex:
    """The summand of A0^-(J) spanned by x, a_i, Ub_i, Vc_i, e_i."""
    return a0_minus(cfk_J()).restrict(A0_SUMMAND_IDS)


def _swap(g: str) -> str:
    if g == "x":
        return g
    return g[:-1] + {"1": "2", "2": "1"}[g[-1]]


def a0_J_involution(name: str) -> ChainMap:
    """Chain-level lifts of the four involutions on the homology of the A0 summand.

    iota swaps the indices; sigma swaps them and sends x to x + e1 + e2;
    iota_sigma keeps the indices and sends x to x + e1 + e2.
    """
    if name not in INVOLUTIONS:
        raise ValueError(f"unknown involution {name!r}; expected one of {INVOLUTIONS}")
    C = a0_J_summand()
    swap = name in ("iota", "sigma")
    shift_x = name in ("sigma", "iota_sigma")
    images = {}
    for g in C.ids:
        images[g] = chain_of(_swap(g) if swap else g)
    if shift_x:
        images["x"] = chain_of("x", "e1", "e2")
    return ChainMap(C, C, images)


# ---------------------------------------------------------------------------
# name registry


@dataclass
class Catalog:
    """Name -> constructor registry; ``overrides`` replaces built-ins by name."""

    overrides: dict[str, object] = field(default_factory=dict)

    BUILDERS: dict[str, Callable] = field(default_factory=lambda: {
        "cfk-J": lambda: cfk_J(),
        "cfd-J": lambda: cfd_J(),
        "cfd-U": lambda: cfd_unknot(),
        "cfa-longitude": lambda: cfa_longitude(),
        "cfa-cable": lambda p: cfa_cable(p),
        "cfa-framed": lambda n: cfa_framed_solid_torus_hat(n),
        "cfk-cable-J": lambda p: cfk_cable_J(p),
    })

    def names(self) -> list[str]:
        return sorted(self.BUILDERS)

    def get(self, name: str):
        if name in self.overrides:
            return self.overrides[name]
        base, _, arg = name.partition(":")
        if base not in self.BUILDERS:
            raise KeyError(f"unknown object {name!r}; known: {', '.join(self.names())}")
        builder = self.BUILDERS[base]
        if arg:
            try:
                return builder(int(arg))
            except TypeError:
                raise KeyError(f"{base} takes no parameter") from None
        try:
            return builder()
        except TypeError:
            raise KeyError(f"{base} needs a parameter, e.g. {base}:3") from None


DEFAULT_CATALOG = Catalog()
