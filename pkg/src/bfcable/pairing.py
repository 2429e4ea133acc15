"""Box tensor products and the maps induced by D-morphisms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from . import torus_algebra as alg
from .bordered_structures import DMorphism, TypeAModule, TypeDStructure, is_cycle
from .coeff_algebra import (ChainMap, Entry, FreeComplex, Generator, UPoly, add_term,
                            infer_gradings, with_gradings)


class TruncationError(RuntimeError):
    """A computation reached the truncated part of an infinite operation family."""


class NotACycleError(ValueError):
    pass


@dataclass(frozen=True)
class BoxComplex:
    complex: FreeComplex
    labels: dict[str, tuple[str, str]]
    module: TypeAModule
    structure: TypeDStructure

    @property
    def ids(self) -> list[str]:
        return self.complex.ids


def _gid(a: str, d: str) -> str:
    return f"{a}|{d}"


def _check_truncation(M: TypeAModule, seq: tuple[str, ...]):
    if M.truncation and seq.count("r23") >= M.truncation / 2:
        raise TruncationError(
            f"query {seq} reaches j >= J_max/2 = {M.truncation / 2}; raise BFH_JMAX")


def _walk(M: TypeAModule, N: TypeDStructure, node: dict, d_gen: str,
          seq: tuple[str, ...]) -> Iterator[tuple[tuple[str, ...], str, dict]]:
    """DFS over delta^1 paths from ``d_gen`` that stay inside the key trie.

    Yields (sequence, endpoint, trie node) for every prefix including the
    empty one.  Depth is bounded by the longest key, so delta^1 cycles such
    as the r12 loop cannot make this diverge.
    """
    stack = [(seq, d_gen, node)]
    while stack:
        s, g, nd = stack.pop()
        yield s, g, nd
        for arrow in N.arrows_from(g):
            child = nd.get(arrow.rho)
            if child is not None:
                stack.append((s + (arrow.rho,), arrow.tgt, child))


def _outputs(M: TypeAModule, x: str, seq, node) -> tuple:
    if None not in node:
        return ()
    _check_truncation(M, seq)
    return M.m(x, seq)


def box_tensor(M: TypeAModule, N: TypeDStructure, anchors: Mapping[str, int] | None = None) -> BoxComplex:
    """M ⊠ N; over F2[U] with inferred Maslov gradings for minus flavor, ungraded F2 for hat."""
    labels = {}
    for x, ix in M.generators:
        for y, iy in N.generators:
            if ix == iy:
                labels[_gid(x, y)] = (x, y)
    diff = []
    for gid, (x, y) in labels.items():
        for seq, end, node in _walk(M, N, M.trie[x], y, ()):
            for out, u in _outputs(M, x, seq, node):
                diff.append(Entry(gid, _gid(out, end), u))
    gens = tuple(Generator(g) for g in labels)
    if M.flavor == "hat":
        C = FreeComplex("F2", gens, tuple(diff), graded=False)
    else:
        C = FreeComplex("FU", gens, tuple(diff), graded=False)
        C = with_gradings(C, infer_gradings(C, anchors))
    return BoxComplex(C, labels, M, N)


def box_morphism(M: TypeAModule, f: DMorphism, source: BoxComplex | None = None,
                 target: BoxComplex | None = None) -> ChainMap:
    """The chain map I_M ⊠ f.

    (x⊗y) is sent to the sum over delta^1 paths in the source structure,
    then one entry of f, then delta^1 paths in the target structure, of
    m(x, collected algebra elements) ⊗ endpoint.  A unit entry of f
    contributes only with empty paths on both sides, giving x⊗z by strict
    unitality.
    """
    if not is_cycle(f):
        raise NotACycleError("box_morphism needs a cycle in the morphism complex")
    source = source or box_tensor(M, f.source)
    target = target or box_tensor(M, f.target)
    by_src: dict[str, list] = {}
    for e in f.entries:
        by_src.setdefault(e.src, []).append(e)
    images: dict[str, dict] = {}
    for gid, (x, y) in source.labels.items():
        img: dict = {}
        root = M.trie[x]
        for seq, mid, node in _walk(M, f.source, root, y, ()):
            for e in by_src.get(mid, ()):
                if alg.is_idempotent(e.alg):
                    if not seq:
                        add_term(img, _gid(x, e.tgt), UPoly(1))
                    continue
                child = node.get(e.alg)
                if child is None:
                    continue
                for seq2, end, node2 in _walk(M, f.target, child, e.tgt, seq + (e.alg,)):
                    for out, u in _outputs(M, x, seq2, node2):
                        add_term(img, _gid(out, end), UPoly.monomial(u))
        images[gid] = img
    F = ChainMap(source.complex, target.complex, images)
    if not F.is_chain_map():
        raise AssertionError("induced map is not a chain map")
    return F
