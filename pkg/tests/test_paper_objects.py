"""Concrete complexes, modules, morphisms and involutions."""

from __future__ import annotations

import pytest

from bfcable import paper_objects as po
from bfcable.bordered_structures import is_cycle, mor_complex
from bfcable.coeff_algebra import INFINITE, chain_of, homology, set_v_zero, validate_complex
from bfcable.invariants import tau_distance


def test_cfk_J_gradings_and_differential():
    C = po.cfk_J()
    assert len(C.generators) == 17
    b1 = C.gen("b1")
    assert (b1.gr_u, b1.gr_v) == (1, -1)
    assert C.d_uv({"a1": {(0, 0)}}) == {"b1": {(1, 0)}, "c1": {(0, 1)}}


def test_set_v_zero_homology_of_J():
    H = homology(set_v_zero(po.cfk_J()))
    assert H.free_rank == 1
    assert sorted(s.order for s in H.torsion) == [1] * 8


def test_longitude_table():
    M = po.cfa_longitude()
    assert M.m("alpha", ("r3", "r2")) == (("alpha", 1),)
    assert not any(op.rhos[0] == "r1" for op in M.ops)
    assert M.truncation == po.DEFAULT_JMAX


def test_jmax_env(monkeypatch):
    monkeypatch.setenv("BFH_JMAX", "10")
    assert po.jmax() == 10
    assert po.cfa_longitude(po.jmax()).max_key_length == 11


def test_cable_tables():
    M = po.cfa_cable(2)
    assert M.m("alpha", ("r1",)) == (("beta2", 0),)
    assert M.m("alpha", ("r3", "r2", "r1")) == (("beta1", 1),)
    assert M.m("alpha", ("r3", "r2")) == (("alpha", 2),)
    one, lon = po.cfa_cable(1), po.cfa_longitude()
    assert one.ids == ["alpha"] and one.table == lon.table


def test_framed_n1_table():
    M = po.cfa_framed_solid_torus_hat(1, completed=False)
    assert M.table == {("alpha1", ("r1",)): (("beta", 0),), ("alpha1", ("r3",)): (("beta", 0),)}
    assert po.cfa_framed_solid_torus_hat(1).table == M.table


@pytest.mark.parametrize("p", [1, 2, 3, 5, 10, 25])
def test_cable_complex_census_and_validity(p):
    C = po.cfk_cable_J(p)
    assert validate_complex(C).ok
    if p > 1:
        assert len(C.generators) == sum(po.cable_census(p).values()) == 17 + 32 * (p - 1)
    H = homology(C)
    assert H.free_rank == 1
    assert (0, INFINITE) in H.profile()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_cable_torsion_orders(p):
    C = po.cfk_cable_J(p)
    H = homology(C)
    assert H.class_of(chain_of("alpha|x")).annihilation_order() == INFINITE
    for k in (1, 2):
        assert tau_distance(C, chain_of(f"alpha|e{k}"), H) == p
        for i in range(p - 1):
            assert tau_distance(C, chain_of(f"beta{2 * p - i - 2}|y3_{k}"), H) <= p - 1


@pytest.mark.parametrize("p", [3, 4, 5])
def test_literal_presentation_is_flagged(p):
    C = po.cfk_cable_J(p, literal=True)
    assert validate_complex(C).ok
    # a knot complex has exactly one tower; the printed rows leave many
    assert homology(C).free_rank > 1


def test_basis_morphisms_and_candidates():
    B = po.basis_morphisms()
    assert set(B) == {"phi", "psi"} | {f"g{i}" for i in range(1, 5)} | {f"h{i}" for i in range(1, 5)}
    assert po.candidate_map_sum(0, 0).entries == (B["g1"] + B["g2"]).entries
    M = mor_complex(po.cfd_unknot(), po.cfd_J())
    H = homology(M.complex)
    classes = {}
    for e1 in (0, 1):
        for e2 in (0, 1):
            f = po.candidate_map_sum(e1, e2)
            assert is_cycle(f)
            classes[e1, e2] = H.class_of(M.chain(f))
    assert not (classes[0, 0] + classes[1, 0]).is_zero()
    with pytest.raises(ValueError):
        po.candidate_map_sum(2, 0)


@pytest.mark.parametrize("name", po.INVOLUTIONS)
def test_involutions_are_chain_involutions(name):
    f = po.a0_J_involution(name)
    C = f.source
    assert f.is_chain_map()
    assert f.degree() == 0
    assert f.compose(f).images == {g: chain_of(g) for g in C.ids}


def test_involution_constraints():
    s, i_s = po.a0_J_involution("sigma"), po.a0_J_involution("iota_sigma")
    assert s(chain_of("x", "e1")) == chain_of("x", "e1")
    assert s(chain_of("x", "e2")) == chain_of("x", "e2")
    assert i_s(chain_of("x")) == chain_of("x", "e1", "e2")
    assert i_s(chain_of("x", "e1")) == chain_of("x", "e2")
    with pytest.raises(ValueError):
        po.a0_J_involution("tau")


def test_catalog_lookup_and_override():
    cat = po.Catalog({"cfd-J": po.cfd_unknot()})
    assert cat.get("cfd-J") is po.cfd_unknot()
    assert po.DEFAULT_CATALOG.get("cfa-cable:3") is po.cfa_cable(3)
    for bad in ("nope", "cfd-J:3", "cfa-cable"):
        with pytest.raises(KeyError):
            po.DEFAULT_CATALOG.get(bad)


def test_constructors_reject_bad_parameters():
    for fn in (po.cfa_cable, po.cfa_framed_solid_torus_hat, po.cfk_cable_J):
        with pytest.raises(ValueError):
            fn(0)
