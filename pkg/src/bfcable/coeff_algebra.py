"""Exact coefficients, free graded chain complexes and their homology.

Complexes live over one of three ground rings:

* ``F2``  -- the field with two elements,
* ``FU``  -- F2[U], U of Maslov degree -2,
* ``FUV`` -- F2[U, V] with a (gr_U, gr_V) bigrading.

Differentials are stored as sparse lists of monomial entries.  Homology is
computed over F2 and F2[U] by a graded Smith-normal-form reduction which keeps
a transcript of every change of basis, so class membership is exact.

Alexander grading convention: ``A(x) = (gr_U(x) - gr_V(x)) / 2``, so that
multiplication by U lowers A by one and multiplication by V raises it by one.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from . import _gf2

RINGS = ("F2", "FU", "FUV")
INFINITE = math.inf

Chain = dict  # generator id -> UPoly


class ComplexError(ValueError):
    """Raised for malformed or unsupported complexes."""


class NotACycle(ValueError):
    pass


class UPoly(int):
    """An element of F2[U], stored as a bitmask (bit k is the coefficient of U^k)."""

    __slots__ = ()

    @classmethod
    def monomial(cls, k: int) -> "UPoly":
        if k < 0:
            raise ValueError("negative U exponent")
        return cls(1 << k)

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> "UPoly":
        bits = 0
        for k in exps:
            bits ^= 1 << k
        return cls(bits)

    def __add__(self, other):
        return UPoly(int(self) ^ int(other))

    __sub__ = __add__
    __radd__ = __add__

    def __mul__(self, other):
        a, b = int(self), int(other)
        out = 0
        while b:
            low = b & -b
            out ^= a << (low.bit_length() - 1)
            b ^= low
        return UPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "UPoly":
        """Multiply by U^k (k may be negative when the division is exact)."""
        if k >= 0:
            return UPoly(int(self) << k)
        if int(self) & ((1 << -k) - 1):
            raise ValueError("U-division is not exact")
        return UPoly(int(self) >> -k)

    def mod_u(self, k: int) -> "UPoly":
        """Reduce modulo U^k."""
        return UPoly(int(self) & ((1 << k) - 1))

    @property
    def exponents(self) -> tuple[int, ...]:
        bits, out, k = int(self), [], 0
        while bits:
            if bits & 1:
                out.append(k)
            bits >>= 1
            k += 1
        return tuple(out)

    @property
    def min_exp(self) -> int:
        if not self:
            raise ValueError("zero polynomial has no exponents")
        return (int(self) & -int(self)).bit_length() - 1

    def is_monomial(self) -> bool:
        return bool(self) and not int(self) & (int(self) - 1)

    def __repr__(self):
        if not self:
            return "0"
        terms = []
        for k in self.exponents:
            terms.append("1" if k == 0 else ("U" if k == 1 else f"U^{k}"))
        return " + ".join(terms)

    __str__ = __repr__


ZERO = UPoly(0)
ONE = UPoly(1)


@dataclass(frozen=True, order=True)
class UVMonomial:
    u_exp: int = 0
    v_exp: int = 0

    def act(self, gr_u: int, gr_v: int) -> tuple[int, int]:
        return gr_u - 2 * self.u_exp, gr_v - 2 * self.v_exp


@dataclass(frozen=True)
class Generator:
    id: str
    gr_u: int = 0
    gr_v: int | None = None

    @property
    def alexander(self) -> int:
        if self.gr_v is None:
            raise ComplexError(f"{self.id} has no V-grading")
        diff = self.gr_u - self.gr_v
        if diff % 2:
            raise ComplexError(f"odd gr_U - gr_V on {self.id}")
        return diff // 2


@dataclass(frozen=True, order=True)
class Entry:
    """One monomial term ``src -> U^u_exp V^v_exp tgt`` of a differential."""

    src: str
    tgt: str
    u_exp: int = 0
    v_exp: int = 0


def add_term(chain: dict, gen: str, coeff) -> None:
    """In-place ``chain += coeff * gen`` over F2[U]."""
    new = chain.get(gen, ZERO) + coeff
    if new:
        chain[gen] = new
    else:
        chain.pop(gen, None)


def add_chains(*chains: Mapping) -> Chain:
    out: Chain = {}
    for c in chains:
        for g, p in c.items():
            add_term(out, g, p)
    return out


def scale_chain(chain: Mapping, coeff) -> Chain:
    coeff = UPoly(coeff)
    return {g: p * coeff for g, p in chain.items() if p * coeff}


def chain_of(*gens: str) -> Chain:
    out: Chain = {}
    for g in gens:
        add_term(out, g, ONE)
    return out


@dataclass(frozen=True)
class FreeComplex:
    """A finitely generated free chain complex with a monomial differential.

    For ``graded=False`` the gradings are ignored; this is used for the
    ungraded F2 complexes coming from morphism spaces and hat pairings.
    """

    ring: str
    generators: tuple[Generator, ...]
    differential: tuple[Entry, ...]
    graded: bool = True

    def __post_init__(self):
        if self.ring not in RINGS:
            raise ComplexError(f"unknown ring {self.ring!r}")
        object.__setattr__(self, "generators", tuple(self.generators))
        # entries cancel in pairs over F2
        counts: dict[Entry, int] = defaultdict(int)
        for e in self.differential:
            counts[e] ^= 1
        kept = tuple(e for e in dict.fromkeys(self.differential) if counts[e])
        object.__setattr__(self, "differential", kept)
        ids = [g.id for g in self.generators]
        if len(set(ids)) != len(ids):
            raise ComplexError("duplicate generator ids")
        known = set(ids)
        for e in kept:
            if e.src not in known or e.tgt not in known:
                raise ComplexError(f"entry {e} mentions an unknown generator")
            if self.ring != "FUV" and e.v_exp:
                raise ComplexError(f"V-power in a {self.ring} complex: {e}")
            if self.ring == "F2" and e.u_exp:
                raise ComplexError(f"U-power in an F2 complex: {e}")

    @cached_property
    def _gens(self) -> dict[str, Generator]:
        return {g.id: g for g in self.generators}

    @cached_property
    def _out(self) -> dict[str, list[Entry]]:
        out = defaultdict(list)
        for e in self.differential:
            out[e.src].append(e)
        return out

    @property
    def ids(self) -> list[str]:
        return [g.id for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def gen(self, gid: str) -> Generator:
        return self._gens[gid]

    def grading(self, gid: str) -> int:
        return self._gens[gid].gr_u

    def entries_from(self, gid: str) -> list[Entry]:
        return self._out.get(gid, [])

    def d_gen(self, gid: str) -> Chain:
        if self.ring == "FUV":
            raise ComplexError("use d_uv for FUV complexes")
        out: Chain = {}
        for e in self._out.get(gid, ()):
            add_term(out, e.tgt, UPoly.monomial(e.u_exp))
        return out

    def d(self, chain: Mapping) -> Chain:
        out: Chain = {}
        for g, p in chain.items():
            for t, q in self.d_gen(g).items():
                add_term(out, t, p * q)
        return out

    def d_uv(self, chain: Mapping[str, Iterable[tuple[int, int]]]) -> dict:
        """Differential over F2[U,V]; chains map ids to sets of (u, v) exponents."""
        out: dict[str, set] = defaultdict(set)
        for g, monos in chain.items():
            for (a, b) in monos:
                for e in self._out.get(g, ()):
                    out[e.tgt] ^= {(a + e.u_exp, b + e.v_exp)}
        return {g: m for g, m in out.items() if m}

    def relabel(self, mapping: Mapping[str, str]) -> "FreeComplex":
        gens = tuple(Generator(mapping.get(g.id, g.id), g.gr_u, g.gr_v) for g in self.generators)
        diff = tuple(
            Entry(mapping.get(e.src, e.src), mapping.get(e.tgt, e.tgt), e.u_exp, e.v_exp)
            for e in self.differential
        )
        return FreeComplex(self.ring, gens, diff, self.graded)

    def shift_gradings(self, k: int) -> "FreeComplex":
        gens = tuple(
            Generator(g.id, g.gr_u + k, None if g.gr_v is None else g.gr_v + k)
            for g in self.generators
        )
        return FreeComplex(self.ring, gens, self.differential, self.graded)

    def restrict(self, ids: Iterable[str]) -> "FreeComplex":
        """Sub-quotient spanned by ``ids`` (entries leaving the set are dropped)."""
        keep = set(ids)
        gens = tuple(g for g in self.generators if g.id in keep)
        diff = tuple(e for e in self.differential if e.src in keep and e.tgt in keep)
        return FreeComplex(self.ring, gens, diff, self.graded)

    # -- serialization -------------------------------------------------
    def to_dict(self) -> dict:
        gens = []
        for g in self.generators:
            item = {"id": g.id, "gr_u": g.gr_u}
            if g.gr_v is not None:
                item["gr_v"] = g.gr_v
            gens.append(item)
        diff = []
        for e in self.differential:
            item = {"from": e.src, "to": e.tgt, "u_exp": e.u_exp}
            if self.ring == "FUV":
                item["v_exp"] = e.v_exp
            diff.append(item)
        return {"format": 1, "ring": self.ring, "graded": self.graded,
                "generators": gens, "differential": diff}

    @classmethod
    def from_dict(cls, data: Mapping) -> "FreeComplex":
        gens = tuple(Generator(g["id"], g.get("gr_u", 0), g.get("gr_v")) for g in data["generators"])
        diff = tuple(
            Entry(e["from"], e["to"], e.get("u_exp", 0), e.get("v_exp", 0))
            for e in data["differential"]
        )
        return cls(data["ring"], gens, diff, data.get("graded", True))


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, msg: str):
        self.violations.append(msg)


def validate_complex(C: FreeComplex) -> ValidationReport:
    """Check d^2 = 0 and grading homogeneity of every entry."""
    report = ValidationReport()
    for g in C.generators:
        if C.ring == "FUV":
            dd = C.d_uv(C.d_uv({g.id: {(0, 0)}}))
            for z, monos in sorted(dd.items()):
                report.add(f"d^2({g.id}) has nonzero coefficient {sorted(monos)} on {z}")
        else:
            for z, p in sorted(C.d(C.d_gen(g.id)).items()):
                report.add(f"d^2({g.id}) has nonzero coefficient {p!r} on {z}")
    if not C.graded:
        return report
    for e in C.differential:
        s, t = C.gen(e.src), C.gen(e.tgt)
        if C.ring == "FUV":
            if s.gr_v is None or t.gr_v is None:
                report.add(f"missing V-grading on entry {e}")
                continue
            want = UVMonomial(e.u_exp, e.v_exp).act(t.gr_u, t.gr_v)
            if want != (s.gr_u - 1, s.gr_v - 1):
                report.add(f"non-homogeneous entry {e}")
        elif t.gr_u - 2 * e.u_exp != s.gr_u - 1:
            report.add(f"non-homogeneous entry {e}")
    return report


def infer_gradings(C: FreeComplex, anchors: Mapping[str, int] | None = None) -> dict[str, int]:
    """Relative Maslov gradings making every entry homogeneous.

    Each connected component is anchored at its first generator listed in
    ``anchors`` (else at its first generator, grading 0).  Raises
    ComplexError when no homogeneous grading exists.
    """
    if C.ring == "FUV":
        raise ComplexError("grading inference is for singly graded complexes")
    anchors = dict(anchors or {})
    nbrs = defaultdict(list)
    for e in C.differential:
        # gr(tgt) = gr(src) - 1 + 2u
        nbrs[e.src].append((e.tgt, -1 + 2 * e.u_exp))
        nbrs[e.tgt].append((e.src, 1 - 2 * e.u_exp))
    gr: dict[str, int] = {}
    for g in C.ids:
        if g in gr:
            continue
        comp, stack, rel = [], [g], {g: 0}
        while stack:
            cur = stack.pop()
            comp.append(cur)
            for nxt, step in nbrs[cur]:
                val = rel[cur] + step
                if nxt in rel:
                    if rel[nxt] != val:
                        raise ComplexError(f"no homogeneous grading near {cur} -> {nxt}")
                else:
                    rel[nxt] = val
                    stack.append(nxt)
        offset = 0
        for c in C.ids:
            if c in rel and c in anchors:
                offset = anchors[c] - rel[c]
                break
        for c in comp:
            gr[c] = rel[c] + offset
    return gr


def with_gradings(C: FreeComplex, gradings: Mapping[str, int]) -> FreeComplex:
    gens = tuple(Generator(g.id, gradings[g.id], None) for g in C.generators)
    return FreeComplex(C.ring, gens, C.differential, True)


def set_v_zero(C: FreeComplex) -> FreeComplex:
    """The F2[U] complex obtained by setting V = 0."""
    if C.ring != "FUV":
        raise ComplexError("set_v_zero expects an FUV complex")
    gens = tuple(Generator(g.id, g.gr_u) for g in C.generators)
    diff = tuple(Entry(e.src, e.tgt, e.u_exp) for e in C.differential if e.v_exp == 0)
    return FreeComplex("FU", gens, diff, C.graded)


def _a0_label(gid: str, alex: int) -> str:
    if alex == 0:
        return gid
    var, k = ("U", alex) if alex > 0 else ("V", -alex)
    return f"{var}{gid}" if k == 1 else f"{var}^{k}{gid}"


def a0_minus(C: FreeComplex) -> FreeComplex:
    """The Alexander-grading-zero subcomplex, as a complex over F2[UV].

    Each generator x is replaced by U^A(x) x (A >= 0) or V^-A(x) x (A < 0);
    the product UV plays the role of the single variable U of the output.
    """
    if C.ring != "FUV":
        raise ComplexError("a0_minus expects an FUV complex")
    rep: dict[str, tuple[int, int]] = {}
    gens = []
    label = {}
    for g in C.generators:
        alex = g.alexander
        ru, rv = max(alex, 0), max(-alex, 0)
        rep[g.id] = (ru, rv)
        label[g.id] = _a0_label(g.id, alex)
        gens.append(Generator(label[g.id], g.gr_u - 2 * ru))
    diff = []
    for e in C.differential:
        su, sv = rep[e.src]
        tu, tv = rep[e.tgt]
        du, dv = su + e.u_exp - tu, sv + e.v_exp - tv
        if du != dv or du < 0:
            raise ComplexError(f"entry {e} is not Alexander-homogeneous")
        diff.append(Entry(label[e.src], label[e.tgt], du))
    return FreeComplex("FU", tuple(gens), tuple(diff), C.graded)


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class Summand:
    generator_chain: Chain
    grading: int
    order: float  # positive int, or INFINITE for free summands


@dataclass
class HomologyDecomposition:
    ring: str
    summands: list[Summand]
    complex: FreeComplex
    _basis_ids: list[str]  # current-basis generator of each summand
    _sources: dict[str, str]  # torsion target -> its cancelling source
    _transcript: list[tuple[str, str, int]]

    @property
    def free_rank(self) -> int:
        return sum(1 for s in self.summands if s.order == INFINITE)

    @property
    def torsion(self) -> list[Summand]:
        return [s for s in self.summands if s.order != INFINITE]

    def profile(self) -> list[tuple[int, float]]:
        """Sorted multiset of (grading, order) pairs."""
        return sorted((s.grading, s.order) for s in self.summands)

    def dimension(self) -> int:
        """F2-dimension (finite only if there are no free summands over FU)."""
        if self.ring == "FU" and self.free_rank:
            return INFINITE
        if self.ring == "FU":
            return sum(int(s.order) for s in self.summands)
        return len(self.summands)

    def class_of(self, chain: Mapping) -> "HomologyClass":
        return class_of(self, chain)


@dataclass(frozen=True)
class HomologyClass:
    decomposition: HomologyDecomposition
    coords: tuple  # one UPoly per summand

    def is_zero(self) -> bool:
        return not any(self.coords)

    def times_u(self, n: int) -> "HomologyClass":
        out = []
        for s, c in zip(self.decomposition.summands, self.coords):
            c = UPoly(c).shift(n)
            out.append(c if s.order == INFINITE else c.mod_u(int(s.order)))
        return HomologyClass(self.decomposition, tuple(out))

    def annihilation_order(self) -> float:
        """Least n with U^n * class = 0 (INFINITE when the class is non-torsion)."""
        best = 0
        for s, c in zip(self.decomposition.summands, self.coords):
            if not c:
                continue
            if s.order == INFINITE:
                return INFINITE
            best = max(best, int(s.order) - UPoly(c).min_exp)
        return best

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        if other.decomposition is not self.decomposition:
            raise ValueError("classes from different decompositions")
        return HomologyClass(self.decomposition,
                             tuple(UPoly(a) + b for a, b in zip(self.coords, other.coords)))


class _Reducer:
    """Mutable working copy of a differential under changes of basis."""

    def __init__(self, C: FreeComplex):
        self.out: dict[str, dict[str, int]] = {g: {} for g in C.ids}
        self.inn: dict[str, set] = {g: set() for g in C.ids}
        for e in C.differential:
            self._set(e.src, e.tgt, self.out[e.src].get(e.tgt, 0) ^ (1 << e.u_exp))
        self.fwd: dict[str, dict[str, int]] = {g: {g: 1} for g in C.ids}
        self.transcript: list[tuple[str, str, int]] = []

    def _set(self, s, t, val):
        if val:
            self.out[s][t] = val
            self.inn[t].add(s)
        else:
            self.out[s].pop(t, None)
            self.inn[t].discard(s)

    def change_basis(self, s: str, t: str, c: int):
        """Replace basis element s by s + c*t."""
        # d(s + c t) in old coordinates
        new_img = dict(self.out[s])
        for z, q in self.out[t].items():
            new_img[z] = new_img.get(z, 0) ^ int(UPoly(c) * q)
        for z in list(self.out[s]):
            self._set(s, z, 0)
        for z, q in new_img.items():
            self._set(s, z, q)
        # rewrite every image in new coordinates: coef[t] += c * coef[s]
        for w in list(self.inn[s]):
            cs = self.out[w][s]
            self._set(w, t, self.out[w].get(t, 0) ^ int(UPoly(c) * cs))
        self.transcript.append((t, s, c))
        fs = self.fwd[s]
        for g, q in self.fwd[t].items():
            val = fs.get(g, 0) ^ int(UPoly(c) * q)
            if val:
                fs[g] = val
            else:
                fs.pop(g, None)

    def remove(self, g):
        for z in list(self.out[g]):
            self._set(g, z, 0)
        del self.out[g], self.inn[g]


def _pick_pivot(red: _Reducer, order: dict[str, int]):
    best = None
    for s, img in red.out.items():
        for t, q in img.items():
            key = (UPoly(q).min_exp, order[s], order[t])
            if best is None or key < best[0]:
                best = (key, s, t)
    return best


def homology(C: FreeComplex) -> HomologyDecomposition:
    """Homology over F2 or F2[U], as a direct sum of cyclic summands."""
    if C.ring == "FUV":
        raise ComplexError("homology over F2[U,V] is not supported")
    if C.ring == "FU" and not C.graded:
        raise ComplexError("FU homology needs a graded complex (see infer_gradings)")
    red = _Reducer(C)
    order = {g: i for i, g in enumerate(C.ids)}
    pairs: list[tuple[str, str, int]] = []
    while True:
        pick = _pick_pivot(red, order)
        if pick is None:
            break
        (k, _, _), x, y = pick
        if not UPoly(red.out[x][y]).is_monomial():
            raise ComplexError("non-monomial pivot; complex is not homogeneous")
        for x2 in sorted(red.inn[y] - {x}, key=order.get):
            c = UPoly(red.out[x2][y]).shift(-k)
            red.change_basis(x2, x, c)
        for y2 in sorted(set(red.out[x]) - {y}, key=order.get):
            c = UPoly(red.out[x][y2]).shift(-k)
            red.change_basis(y, y2, c)
        assert set(red.out[x]) == {y} and red.inn[y] == {x}
        assert not red.out[y] and not red.inn[x], "d^2 != 0 during reduction"
        red.remove(x)
        red.remove(y)
        pairs.append((x, y, k))
    summands, basis_ids, sources = [], [], {}
    grade = C.grading if C.graded else (lambda g: 0)
    for g in C.ids:
        if g in red.out:
            summands.append(Summand(_as_chain(red.fwd[g]), grade(g), INFINITE))
            basis_ids.append(g)
    for x, y, k in pairs:
        sources[y] = x
        if k > 0:
            summands.append(Summand(_as_chain(red.fwd[y]), grade(y), k))
            basis_ids.append(y)
    return HomologyDecomposition(C.ring, summands, C, basis_ids, sources, red.transcript)


def _as_chain(vec: Mapping[str, int]) -> Chain:
    return {g: UPoly(q) for g, q in vec.items() if q}


def class_of(H: HomologyDecomposition, chain: Mapping) -> HomologyClass:
    """Coordinates of the homology class of a cycle; all zero iff it is a boundary."""
    chain = {g: UPoly(p) for g, p in chain.items() if p}
    if H.complex.d(chain):
        raise NotACycle("chain is not a cycle")
    v = {g: int(p) for g, p in chain.items()}
    for dst, src, c in H._transcript:
        cs = v.get(src)
        if cs:
            v[dst] = v.get(dst, 0) ^ int(UPoly(c) * cs)
    for y, x in H._sources.items():
        if v.get(x):
            raise AssertionError("cycle has a component on a non-cycle basis element")
    coords = []
    for s, g in zip(H.summands, H._basis_ids):
        c = UPoly(v.get(g, 0))
        if s.order != INFINITE:
            c = c.mod_u(int(s.order))
        coords.append(c)
    return HomologyClass(H, tuple(coords))


def rank_per_grading_f2(C: FreeComplex) -> dict[int, int]:
    """Dimension of homology of an F2 complex in each grading, by rank-nullity."""
    if C.ring != "F2":
        raise ComplexError("expects an F2 complex")
    grade = C.grading if C.graded else (lambda g: 0)
    by_deg = defaultdict(list)
    for g in C.ids:
        by_deg[grade(g)].append(g)
    index = {g: i for gs in by_deg.values() for i, g in enumerate(gs)}
    rank_out = {}
    for deg, gs in by_deg.items():
        cols = []
        for g in gs:
            vec = 0
            for t in C.d_gen(g):
                vec ^= 1 << index[t]
            cols.append(vec)
        rank_out[deg] = _gf2.rank(cols)
    dims = {}
    for deg, gs in by_deg.items():
        incoming = rank_out.get(deg + 1, 0) if C.graded else rank_out[deg]
        dims[deg] = len(gs) - rank_out[deg] - incoming
    return dims


# ---------------------------------------------------------------------------
# chain maps


@dataclass(frozen=True)
class ChainMap:
    source: FreeComplex
    target: FreeComplex
    images: Mapping[str, Chain]

    def __call__(self, chain: Mapping) -> Chain:
        out: Chain = {}
        for g, p in chain.items():
            for t, q in self.images.get(g, {}).items():
                add_term(out, t, UPoly(p) * q)
        return out

    def __add__(self, other: "ChainMap") -> "ChainMap":
        keys = set(self.images) | set(other.images)
        return ChainMap(self.source, self.target,
                        {g: add_chains(self.images.get(g, {}), other.images.get(g, {})) for g in keys})

    def compose(self, first: "ChainMap") -> "ChainMap":
        """self o first."""
        return ChainMap(first.source, self.target,
                        {g: self(first.images.get(g, {})) for g in first.source.ids})

    def is_chain_map(self) -> bool:
        for g in self.source.ids:
            lhs = self.target.d(self.images.get(g, {}))
            rhs = self(self.source.d_gen(g))
            if add_chains(lhs, rhs):
                return False
        return True

    def degree(self) -> int | None:
        """Common grading shift of all nonzero terms (None for the zero map)."""
        deg = None
        for g, img in self.images.items():
            for t, p in img.items():
                for k in UPoly(p).exponents:
                    d = self.target.grading(t) - 2 * k - self.source.grading(g)
                    if deg is None:
                        deg = d
                    elif d != deg:
                        raise ComplexError("chain map is not homogeneous")
        return deg

    def is_zero(self) -> bool:
        return not any(self.images.values())


def identity_map(C: FreeComplex) -> ChainMap:
    return ChainMap(C, C, {g: chain_of(g) for g in C.ids})


def are_chain_homotopic(f: ChainMap, g: ChainMap) -> bool:
    """Decide whether f + g = dH + Hd for some map H, as an F2 linear system."""
    C, D = f.source, f.target
    if not (f.is_chain_map() and g.is_chain_map()):
        raise ValueError("inputs must be chain maps")
    h = f + g
    if h.is_zero():
        return True
    ring = C.ring
    if ring == "FU" and not (C.graded and D.graded):
        raise ComplexError("homotopy search over F2[U] requires graded complexes")
    if ring == "FU":
        deg = h.degree()
        unknowns = []
        for x in C.ids:
            for y in D.ids:
                twice = D.grading(y) - C.grading(x) - deg - 1
                if twice >= 0 and twice % 2 == 0:
                    unknowns.append((x, y, twice // 2))
    else:
        unknowns = [(x, y, 0) for x in C.ids for y in D.ids]

    eq_index: dict[tuple, int] = {}

    def bit(key):
        if key not in eq_index:
            eq_index[key] = len(eq_index)
        return 1 << eq_index[key]

    incoming = defaultdict(list)  # x -> [(w, u_exp)] with d w containing U^u x
    for e in C.differential:
        incoming[e.tgt].append((e.src, e.u_exp))
    columns = []
    for x, y, k in unknowns:
        col = 0
        for e in D.entries_from(y):
            col ^= bit((x, e.tgt, k + e.u_exp))
        for w, b in incoming[x]:
            col ^= bit((w, y, k + b))
        columns.append(col)
    target = 0
    for x, img in h.images.items():
        for z, p in img.items():
            for k in UPoly(p).exponents:
                target ^= bit((x, z, k))
    return _gf2.solve(columns, target) is not None


def regrade_maps(*maps: ChainMap) -> list[ChainMap]:
    """Re-infer gradings on source and target so every map has degree 0.

    Box tensor gradings are only relative per connected component; this
    glues the components of source and target together along the map
    entries.  All maps must share one source and one target.
    """
    C, D = maps[0].source, maps[0].target
    edges = defaultdict(list)

    def link(a, b, step):
        edges[a].append((b, step))
        edges[b].append((a, -step))

    for e in C.differential:
        link(("s", e.src), ("s", e.tgt), -1 + 2 * e.u_exp)
    for e in D.differential:
        link(("t", e.src), ("t", e.tgt), -1 + 2 * e.u_exp)
    for F in maps:
        if F.source is not C or F.target is not D:
            raise ValueError("maps must share source and target")
        for g, img in F.images.items():
            for t, p in img.items():
                for k in UPoly(p).exponents:
                    link(("s", g), ("t", t), 2 * k)
    nodes = [("s", g) for g in C.ids] + [("t", g) for g in D.ids]
    gr: dict = {}
    for start in nodes:
        if start in gr:
            continue
        # anchor each new component so an existing grading is kept where possible
        base = C.grading(start[1]) if start[0] == "s" else D.grading(start[1])
        gr[start] = base
        stack = [start]
        while stack:
            cur = stack.pop()
            for nxt, step in edges[cur]:
                val = gr[cur] + step
                if nxt in gr:
                    if gr[nxt] != val:
                        raise ComplexError(f"maps are not homogeneous near {cur[1]} -> {nxt[1]}")
                else:
                    gr[nxt] = val
                    stack.append(nxt)
    C2 = with_gradings(C, {g: gr[("s", g)] for g in C.ids})
    D2 = with_gradings(D, {g: gr[("t", g)] for g in D.ids})
    return [ChainMap(C2, D2, F.images) for F in maps]
