"""Type-D structures, type-A modules, D-morphisms and morphism complexes."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import torus_algebra as alg
from .coeff_algebra import Chain, Entry, FreeComplex, Generator, ValidationReport, add_term, ONE


@dataclass(frozen=True, order=True)
class Arrow:
    src: str
    rho: str
    tgt: str


def _coerce(cls, item):
    return item if isinstance(item, cls) else cls(*item)


def _xor_dedupe(items):
    parity: dict = {}
    for it in items:
        parity[it] = not parity.get(it, False)
    return tuple(it for it, keep in parity.items() if keep)


@dataclass(frozen=True)
class TypeDStructure:
    generators: tuple[tuple[str, str], ...]  # (id, idempotent)
    delta: tuple[Arrow, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(tuple(g) for g in self.generators))
        object.__setattr__(self, "delta", _xor_dedupe(_coerce(Arrow, a) for a in self.delta))
        ids = [g for g, _ in self.generators]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate generator ids")
        for g, idem in self.generators:
            if idem not in alg.IDEMPOTENTS:
                raise ValueError(f"bad idempotent {idem!r} on {g}")
        known = set(ids)
        for a in self.delta:
            alg.check_basis(a.rho)
            if alg.is_idempotent(a.rho):
                raise ValueError(f"unreduced arrow {a}; type-D structures must be reduced")
            if a.src not in known or a.tgt not in known:
                raise ValueError(f"arrow {a} mentions an unknown generator")

    @cached_property
    def idem(self) -> dict[str, str]:
        return dict(self.generators)

    @cached_property
    def _out(self) -> dict[str, list[Arrow]]:
        out = defaultdict(list)
        for a in self.delta:
            out[a.src].append(a)
        return out

    @cached_property
    def _in(self) -> dict[str, list[Arrow]]:
        inn = defaultdict(list)
        for a in self.delta:
            inn[a.tgt].append(a)
        return inn

    @property
    def ids(self) -> list[str]:
        return [g for g, _ in self.generators]

    def arrows_from(self, g: str) -> list[Arrow]:
        return self._out.get(g, [])

    def arrows_into(self, g: str) -> list[Arrow]:
        return self._in.get(g, [])

    def to_dict(self) -> dict:
        return {"format": 1,
                "generators": [{"id": g, "idem": i} for g, i in self.generators],
                "delta": [{"from": a.src, "rho": a.rho, "to": a.tgt} for a in self.delta]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "TypeDStructure":
        return cls(tuple((g["id"], g["idem"]) for g in data["generators"]),
                   tuple(Arrow(a["from"], a["rho"], a["to"]) for a in data["delta"]))


def validate_type_d(N: TypeDStructure) -> ValidationReport:
    report = ValidationReport()
    for a in N.delta:
        if alg.left(a.rho) != N.idem[a.src] or alg.right(a.rho) != N.idem[a.tgt]:
            report.add(f"ill-typed arrow {a.src} -{a.rho}-> {a.tgt}")
    for x in N.ids:
        totals: dict[str, set] = defaultdict(set)
        for a in N.arrows_from(x):
            for b in N.arrows_from(a.tgt):
                p = alg.mul_basis(a.rho, b.rho)
                if p is not None:
                    totals[b.tgt] ^= {p}
        for z, elems in sorted(totals.items()):
            if elems:
                report.add(f"structure equation fails at ({x}, {z}): {sorted(elems)}")
    return report


# ---------------------------------------------------------------------------
# type-A modules


@dataclass(frozen=True)
class Operation:
    gen: str
    rhos: tuple[str, ...]
    outputs: tuple[tuple[str, int], ...]  # (output generator, U exponent)


@dataclass(frozen=True)
class TypeAModule:
    """A right A-infinity module over A(T^2) given by a finite operation table.

    ``complete`` lists the generators whose operations are all in the table;
    A-infinity relations passing through any other generator are not checked.
    """

    flavor: str
    generators: tuple[tuple[str, str], ...]
    ops: tuple[Operation, ...]
    complete: frozenset | None = None
    truncation: int | None = None  # J_max for truncated infinite families

    def __post_init__(self):
        if self.flavor not in ("minus", "hat"):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        object.__setattr__(self, "generators", tuple(tuple(g) for g in self.generators))
        merged: dict[tuple, dict] = {}
        for op in self.ops:
            key = (op.gen, tuple(op.rhos))
            slot = merged.setdefault(key, {})
            for out in op.outputs:
                out = (out[0], int(out[1]))
                slot[out] = not slot.get(out, False)
        ops = tuple(
            Operation(g, rhos, tuple(o for o, keep in outs.items() if keep))
            for (g, rhos), outs in merged.items()
        )
        object.__setattr__(self, "ops", tuple(op for op in ops if op.outputs))
        if self.complete is None:
            object.__setattr__(self, "complete", frozenset(self.ids))
        else:
            object.__setattr__(self, "complete", frozenset(self.complete))

    @cached_property
    def idem(self) -> dict[str, str]:
        return dict(self.generators)

    @property
    def ids(self) -> list[str]:
        return [g for g, _ in self.generators]

    @cached_property
    def table(self) -> dict[tuple[str, tuple[str, ...]], tuple[tuple[str, int], ...]]:
        return {(op.gen, op.rhos): op.outputs for op in self.ops}

    @cached_property
    def trie(self) -> dict[str, dict]:
        """Per generator, a prefix tree of operation keys.

        Nodes are dicts from Reeb element to child node; the key ``None`` marks
        the end of a table key.
        """
        roots: dict[str, dict] = {g: {} for g in self.ids}
        for op in self.ops:
            node = roots[op.gen]
            for r in op.rhos:
                node = node.setdefault(r, {})
            node[None] = True
        return roots

    def m(self, gen: str, rhos: Sequence[str]) -> tuple[tuple[str, int], ...]:
        return self.table.get((gen, tuple(rhos)), ())

    @property
    def max_key_length(self) -> int:
        return max((len(op.rhos) for op in self.ops), default=0)

    def to_dict(self) -> dict:
        return {"format": 1, "flavor": self.flavor,
                "generators": [{"id": g, "idem": i} for g, i in self.generators],
                "ops": [{"gen": op.gen, "rhos": list(op.rhos),
                         "out": [{"gen": o, "u_exp": u} for o, u in op.outputs]} for op in self.ops],
                "complete": sorted(self.complete),
                "truncation": self.truncation}

    @classmethod
    def from_dict(cls, data: Mapping) -> "TypeAModule":
        ops = tuple(Operation(o["gen"], tuple(o["rhos"]),
                              tuple((x["gen"], x.get("u_exp", 0)) for x in o["out"]))
                    for o in data["ops"])
        return cls(data["flavor"], tuple((g["id"], g["idem"]) for g in data["generators"]), ops,
                   data.get("complete"), data.get("truncation"))


def _table_alphabet(M: TypeAModule) -> list[str]:
    used = {r for op in M.ops for r in op.rhos}
    for a in alg.REEB:
        for b in alg.REEB:
            if alg.mul_basis(a, b) in used:
                used |= {a, b}
    return [r for r in alg.REEB if r in used]


def validate_type_a(M: TypeAModule, up_to_len: int | None = None,
                    exhaustive: bool = False) -> ValidationReport:
    """Typing checks plus the A-infinity relations on sequences of bounded length.

    The default length bound is one more than the longest table key, beyond
    which every relation is vacuous.  Relations that would need an operation
    on a generator outside ``M.complete``, or one with J_max or more r23
    entries in a truncated family, are skipped.  By default only the
    sequences on which some term of the relation can be nonzero are
    visited; ``exhaustive`` walks every composable sequence instead.
    """
    report = ValidationReport()
    for op in M.ops:
        if any(alg.is_idempotent(r) for r in op.rhos):
            report.add(f"idempotent in operation input {op}")
            continue
        for out, u in op.outputs:
            if out not in M.idem:
                report.add(f"unknown output generator in {op}")
            elif not alg.composable(op.rhos, M.idem[op.gen], M.idem[out]):
                report.add(f"non-composable operation {op.gen}{op.rhos} -> {out}")
            if M.flavor == "hat" and u:
                report.add(f"U-power in hat module: {op}")
            if u < 0:
                report.add(f"negative U-power: {op}")
    if not report.ok:
        return report
    if up_to_len is None:
        up_to_len = M.max_key_length + 1
    for x in sorted(M.complete):
        if exhaustive:
            seqs = alg.reeb_sequences(M.idem[x], up_to_len, _table_alphabet(M))
        else:
            seqs = sorted(_relevant_sequences(M, x, up_to_len))
        for seq in seqs:
            if M.truncation is not None and _r23_weight(seq) >= M.truncation:
                continue
            total, skipped = _ainf_relation(M, x, seq)
            if skipped:
                continue
            bad = sorted(k for k, v in total.items() if v)
            if bad:
                report.add(f"A-infinity relation fails for m({x}, {', '.join(seq)}): {bad}")
    return report


def _r23_weight(seq) -> int:
    # most r23 factors a relation term on seq can carry
    return sum(r == "r23" for r in seq) + sum(a == "r2" and b == "r3" for a, b in zip(seq, seq[1:]))


_FACTORS = {c: [(a, b) for a in alg.REEB for b in alg.REEB if alg.mul_basis(a, b) == c]
            for c in alg.REEB}


def _relevant_sequences(M: TypeAModule, x: str, max_len: int) -> set:
    """Nonempty sequences whose A-infinity relation at x has a possibly nonzero term."""
    keys: dict[str, list] = defaultdict(list)
    for op in M.ops:
        keys[op.gen].append(op)
    out = set()
    for op in keys[x]:
        # composition terms m(m(x, key1), key2)
        for y, _ in op.outputs:
            for op2 in keys.get(y, ()):
                seq = op.rhos + op2.rhos
                if 0 < len(seq) <= max_len:
                    out.add(seq)
        # product terms: split one entry of the key into two factors
        if len(op.rhos) + 1 <= max_len:
            for j, c in enumerate(op.rhos):
                for a, b in _FACTORS[c]:
                    out.add(op.rhos[:j] + (a, b) + op.rhos[j + 1:])
    return out


def _ainf_relation(M: TypeAModule, x: str, seq: tuple[str, ...]):
    total: dict[tuple[str, int], bool] = defaultdict(bool)
    k = len(seq)
    for i in range(k + 1):
        for y, u in M.m(x, seq[:i]):
            if y not in M.complete:
                return total, True
            for z, w in M.m(y, seq[i:]):
                total[(z, u + w)] ^= True
    for j in range(k - 1):
        p = alg.mul_basis(seq[j], seq[j + 1])
        if p is None:
            continue
        for z, w in M.m(x, seq[:j] + (p,) + seq[j + 2:]):
            total[(z, w)] ^= True
    return total, False


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True, order=True)
class MorEntry:
    src: str
    alg: str
    tgt: str

    @property
    def label(self) -> str:
        return f"{self.src}|{self.alg}|{self.tgt}"


@dataclass(frozen=True)
class DMorphism:
    source: TypeDStructure
    target: TypeDStructure
    entries: tuple[MorEntry, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", _xor_dedupe(_coerce(MorEntry, e) for e in self.entries))

    def __add__(self, other: "DMorphism") -> "DMorphism":
        return DMorphism(self.source, self.target, self.entries + other.entries)

    def typing_errors(self) -> list[str]:
        errs = []
        for e in self.entries:
            if e.src not in self.source.idem or e.tgt not in self.target.idem:
                errs.append(f"unknown generator in {e}")
            elif (alg.left(e.alg), alg.right(e.alg)) != (self.source.idem[e.src], self.target.idem[e.tgt]):
                errs.append(f"ill-typed entry {e}")
        return errs

    def is_zero(self) -> bool:
        return not self.entries

    def __repr__(self):
        if not self.entries:
            return "0"
        parts = []
        for e in sorted(self.entries):
            a = "" if alg.is_idempotent(e.alg) else alg.PRETTY[e.alg] + "·"
            parts.append(f"({e.src} ↦ {a}{e.tgt})")
        return " + ".join(parts)


def morphism(source: TypeDStructure, target: TypeDStructure,
             terms: Iterable[tuple[str, str, str]]) -> DMorphism:
    """Build a D-morphism; ``'1'`` as the algebra label means the matching idempotent."""
    entries = []
    for s, a, t in terms:
        if a == "1":
            a = source.idem[s]
        entries.append(MorEntry(s, a, t))
    f = DMorphism(source, target, tuple(entries))
    errs = f.typing_errors()
    if errs:
        raise ValueError("; ".join(errs))
    return f


def _d_entry(N1: TypeDStructure, N2: TypeDStructure, e: MorEntry):
    for b in N2.arrows_from(e.tgt):
        p = alg.mul_basis(e.alg, b.rho)
        if p is not None:
            yield MorEntry(e.src, p, b.tgt)
    for c in N1.arrows_into(e.src):
        p = alg.mul_basis(c.rho, e.alg)
        if p is not None:
            yield MorEntry(c.src, p, e.tgt)


def d_morphism(f: DMorphism) -> DMorphism:
    """d(f) = delta_2 o f + f o delta_1."""
    out = []
    for e in f.entries:
        out.extend(_d_entry(f.source, f.target, e))
    return DMorphism(f.source, f.target, tuple(out))


def is_cycle(f: DMorphism) -> bool:
    return d_morphism(f).is_zero()


@dataclass(frozen=True)
class MorComplex:
    """The morphism complex as an ungraded F2 complex with labelled basis."""

    complex: FreeComplex
    labels: dict[str, MorEntry]
    source: TypeDStructure
    target: TypeDStructure

    def chain(self, f: DMorphism) -> Chain:
        out: Chain = {}
        for e in f.entries:
            add_term(out, e.label, ONE)
        return out

    def morphism(self, chain: Mapping) -> DMorphism:
        return DMorphism(self.source, self.target, tuple(self.labels[g] for g, p in chain.items() if p))


def mor_complex(N1: TypeDStructure, N2: TypeDStructure) -> MorComplex:
    labels = {}
    for x, ix in N1.generators:
        for y, iy in N2.generators:
            for a in alg.elements_between(ix, iy):
                e = MorEntry(x, a, y)
                labels[e.label] = e
    gens = tuple(Generator(g) for g in labels)
    diff = []
    for g, e in labels.items():
        for t in _d_entry(N1, N2, e):
            diff.append(Entry(g, t.label))
    return MorComplex(FreeComplex("F2", gens, tuple(diff), graded=False), labels, N1, N2)
