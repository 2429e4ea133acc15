"""Type-D and type-A validators, morphisms and morphism complexes."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bfcable import paper_objects as po
from bfcable import torus_algebra as alg
from bfcable.bordered_structures import (Arrow, MorEntry, Operation, TypeAModule, TypeDStructure,
                                         d_morphism, is_cycle, mor_complex, morphism,
                                         validate_type_a, validate_type_d)
from bfcable.coeff_algebra import homology
from oracles import mor_homology_dim, structure_equation_failures


def as_oracle(N: TypeDStructure):
    return dict(N.generators), [(a.src, a.rho, a.tgt) for a in N.delta]


def test_builtin_structures_validate():
    assert validate_type_d(po.cfd_J()).ok
    assert validate_type_d(po.cfd_unknot()).ok


def test_cfd_J_census():
    N = po.cfd_J()
    idems = list(N.idem.values())
    assert len(N.generators) == 33
    assert idems.count("i0") == 17 and idems.count("i1") == 16


def test_relabelled_arrow_breaks_the_structure_equation():
    N = po.cfd_J()
    # r1 then the r2 arrow y1_1 -> b1 composes to r12
    arrows = tuple(Arrow("a1", "r1", "y1_1") if a == Arrow("a1", "r3", "y1_1") else a for a in N.delta)
    broken = TypeDStructure(N.generators, arrows)
    rep = validate_type_d(broken)
    assert not rep.ok
    assert any("(a1, b1)" in v for v in rep.violations)


def test_ill_typed_arrow_reported():
    N = TypeDStructure((("x", "i0"), ("y", "i0")), (("x", "r1", "y"),))
    assert any("ill-typed" in v for v in validate_type_d(N).violations)


def test_unreduced_arrow_rejected():
    with pytest.raises(ValueError):
        TypeDStructure((("x", "i0"), ("y", "i0")), (("x", "i0", "y"),))


def test_duplicate_arrows_cancel():
    N = TypeDStructure((("x", "i0"),), (("x", "r12", "x"), ("x", "r12", "x")))
    assert N.delta == ()


def test_mor_U_J_dimension_ten():
    M = mor_complex(po.cfd_unknot(), po.cfd_J())
    assert len(M.complex.generators) == 82
    assert homology(M.complex).dimension() == 10
    assert mor_homology_dim(*as_oracle(po.cfd_unknot()), *as_oracle(po.cfd_J())) == 10


def test_mor_U_U_dimension_two():
    U = po.cfd_unknot()
    assert homology(mor_complex(U, U).complex).dimension() == 2


def test_basis_morphisms_are_cycles_and_independent():
    U, J = po.cfd_unknot(), po.cfd_J()
    M = mor_complex(U, J)
    H = homology(M.complex)
    mors = po.basis_morphisms()
    assert len(mors) == 10
    for f in mors.values():
        assert is_cycle(f)
    classes = [H.class_of(M.chain(f)) for f in mors.values()]
    # independence: no nonempty subset sums to zero
    for r in range(1, 4):
        for sub in itertools.combinations(classes, r):
            total = sub[0]
            for c in sub[1:]:
                total = total + c
            assert not total.is_zero()


def test_morphism_typing_errors():
    U, J = po.cfd_unknot(), po.cfd_J()
    with pytest.raises(ValueError):
        morphism(U, J, [("v", "r2", "a1")])
    f = morphism(U, J, [("v", "1", "x")])
    assert f.entries == (MorEntry("v", "i0", "x"),)


def test_d_morphism_of_non_cycle():
    U, J = po.cfd_unknot(), po.cfd_J()
    f = morphism(U, J, [("v", "1", "a1")])
    assert not is_cycle(f)
    assert is_cycle(d_morphism(f))


# random type-D structures on a few generators
@st.composite
def random_type_d(draw):
    n0, n1 = draw(st.integers(1, 3)), draw(st.integers(0, 3))
    gens = [(f"p{i}", "i0") for i in range(n0)] + [(f"q{i}", "i1") for i in range(n1)]
    arrows = []
    for _ in range(draw(st.integers(0, 7))):
        s = draw(st.sampled_from(gens))
        t = draw(st.sampled_from(gens))
        rho = draw(st.sampled_from(alg.REEB))
        arrows.append((s[0], rho, t[0]))
    return TypeDStructure(tuple(gens), tuple(arrows))


@settings(max_examples=300, deadline=None)
@given(random_type_d())
def test_type_d_validator_matches_oracle(N):
    assert validate_type_d(N).ok == (not structure_equation_failures(*as_oracle(N)))


@settings(max_examples=100, deadline=None)
@given(random_type_d(), st.randoms())
def test_mor_dim_matches_oracle_and_relabeling(N, rnd):
    assume(validate_type_d(N).ok)
    U = po.cfd_unknot()
    dim = homology(mor_complex(U, N).complex).dimension()
    assert dim == mor_homology_dim(*as_oracle(U), *as_oracle(N))
    names = [g for g, _ in N.generators]
    perm = names[:]
    rnd.shuffle(perm)
    ren = dict(zip(names, [p + "_r" for p in perm]))
    N2 = TypeDStructure(tuple((ren[g], i) for g, i in N.generators),
                        tuple((ren[a.src], a.rho, ren[a.tgt]) for a in N.delta))
    assert homology(mor_complex(U, N2).complex).dimension() == dim


# ---------------------------------------------------------------------------
# type-A


@pytest.mark.parametrize("p", [1, 2, 3, 5, 10, 25])
def test_cable_module_validates(p):
    assert validate_type_a(po.cfa_cable(p)).ok


@pytest.mark.parametrize("p,jm", [(2, 3), (3, 3), (3, 4)])
def test_truncated_cable_agrees_with_exhaustive(p, jm):
    M = po.cfa_cable(p, j_max=jm)
    assert validate_type_a(M).ok and validate_type_a(M, exhaustive=True).ok


@pytest.mark.parametrize("n", [1, 2, 3, 6, 12])
def test_framed_module_validates(n):
    assert validate_type_a(po.cfa_framed_solid_torus_hat(n)).ok


def test_longitude_validates():
    assert validate_type_a(po.cfa_longitude()).ok


@pytest.mark.parametrize("n", [2, 3, 4])
def test_printed_framed_table_fails_without_completion(n):
    rep = validate_type_a(po.cfa_framed_solid_torus_hat(n, completed=False))
    assert not rep.ok


@pytest.mark.parametrize("n", [2, 3, 5])
def test_deleting_r3_operation_is_caught(n):
    M = po.cfa_framed_solid_torus_hat(n)
    ops = tuple(op for op in M.ops if not (op.gen == f"alpha{n}" and op.rhos == ("r3",)))
    assert not validate_type_a(TypeAModule("hat", M.generators, ops)).ok


@pytest.mark.parametrize("n", [1, 2, 3])
def test_relevant_sequences_agree_with_exhaustive(n):
    for completed in (True, False):
        M = po.cfa_framed_solid_torus_hat(n, completed)
        assert validate_type_a(M).ok == validate_type_a(M, exhaustive=True).ok


def test_type_a_typing_errors():
    bad = TypeAModule("hat", (("a", "i0"), ("b", "i1")), (Operation("a", ("r2",), (("b", 0),)),))
    assert any("non-composable" in v for v in validate_type_a(bad).violations)
    hat_u = TypeAModule("hat", (("a", "i0"), ("b", "i1")), (Operation("a", ("r1",), (("b", 1),)),))
    assert any("U-power" in v for v in validate_type_a(hat_u).violations)


def test_json_round_trips():
    N = po.cfd_J()
    assert TypeDStructure.from_dict(N.to_dict()) == N
    M = po.cfa_cable(3, j_max=4)
    M2 = TypeAModule.from_dict(M.to_dict())
    assert M2.table == M.table and M2.complete == M.complete
