"""Tests for module realisation, lattices, homomorphisms and isomorphism."""

import pytest

from nomiddle.errors import ModuleConstructionError
from nomiddle.modkit import (
    composition_length,
    composition_series,
    cyclic_module,
    direct_sum,
    enumerate_submodules,
    hom_enumerate,
    is_isomorphic,
    is_local,
    is_semisimple,
    is_simple,
    local_length_two_modules,
    minimal_submodules,
    module_summary,
    quotient,
    realize_paired,
    realize_regular,
    regular_socle,
    simples_up_to_iso,
    singular_submodule,
    singular_submodule_definitional,
    socle,
    structure_profile,
    submodule_handles,
    submodule_module,
    verify_module_axioms,
)
from nomiddle.ringkit import jacobson_radical
from tests.conftest import FLEET


def test_regular_zmod8(zmod8):
    M = realize_regular(zmod8)
    profile = structure_profile(M)

    assert profile.composition_length == 3
    assert profile.socle == frozenset({0, 4})
    assert profile.radical == frozenset({0, 2, 4, 6})
    assert profile.is_local
    assert not profile.is_semisimple
    assert len(enumerate_submodules(M)) == 4


def test_cyclic_quotients(zmod8):
    Z4 = cyclic_module(zmod8, frozenset({0, 4}))
    Z2 = cyclic_module(zmod8, frozenset({0, 2, 4, 6}))

    assert Z4.size == 4 and Z2.size == 2
    assert is_simple(Z2)
    assert not is_simple(Z4)
    assert is_local(Z4)
    assert composition_length(Z4) == 2
    assert verify_module_axioms(Z4)


def test_singular_submodule_matches_definition(zmod8, trimat_z4):
    for R in (zmod8, trimat_z4):
        M = realize_regular(R)
        assert singular_submodule(M) == singular_submodule_definitional(M)
    assert singular_submodule(realize_regular(zmod8)) == frozenset({0, 2, 4, 6})


def test_trimat_z4_socle_radical_singular(trimat_z4):
    """Soc(R_R) = J(R) = Z(R_R) with four elements."""
    soc = regular_socle(trimat_z4)
    assert len(soc) == 4
    assert soc == jacobson_radical(trimat_z4)
    assert soc == singular_submodule(realize_regular(trimat_z4))


def test_simples_zmod8(zmod8):
    classes = simples_up_to_iso(zmod8)
    assert len(classes) == 1
    assert classes[0].module.size == 2
    assert not classes[0].projective


def test_simples_trimat_z4(trimat_z4):
    classes = simples_up_to_iso(trimat_z4)
    assert len(classes) == 2
    assert not any(c.projective for c in classes)


def test_local_length_two_counts(zmod8, trimat_z4, make_ring):
    assert [N.size for N in local_length_two_modules(zmod8)] == [4]
    assert len(local_length_two_modules(trimat_z4)) == 2
    ideal = local_length_two_modules(make_ring("idealize(gf(2),2)"))
    assert len(ideal) == 3
    for i, M in enumerate(ideal):
        for N in ideal[i + 1 :]:
            assert not is_isomorphic(M, N)


def test_hom_enumerate_counts(zmod8):
    Z4 = cyclic_module(zmod8, frozenset({0, 4}))
    Z2 = cyclic_module(zmod8, frozenset({0, 2, 4, 6}))
    R8 = realize_regular(zmod8)

    homs = hom_enumerate(Z4, R8)
    assert len(homs) == 4
    assert all(f.verify() for f in homs)
    assert len(hom_enumerate(Z2, Z4)) == 2
    assert len(hom_enumerate(R8, Z4)) == 4


def test_isomorphism(zmod8):
    R8 = realize_regular(zmod8)
    Z2a = cyclic_module(zmod8, frozenset({0, 2, 4, 6}))
    Z2b = submodule_module(R8, frozenset({0, 4}))
    Z4 = cyclic_module(zmod8, frozenset({0, 4}))

    assert is_isomorphic(Z2a, Z2b)
    assert not is_isomorphic(direct_sum(Z2a, Z2b), Z4)
    assert direct_sum(Z2a, Z2b).size == 4
    assert is_semisimple(direct_sum(Z2a, Z2b))


def test_submodule_rejects_non_submodule(zmod8):
    with pytest.raises(ModuleConstructionError):
        submodule_module(realize_regular(zmod8), frozenset({0, 1}))


def test_handles_and_quotients(zmod8):
    M = realize_regular(zmod8)
    handles = submodule_handles(M)
    sizes = sorted(len(h) for h in handles)
    assert sizes == [1, 2, 4, 8]
    for h in handles:
        assert h.as_module().size * h.quotient().size == M.size


def test_minimal_submodules_and_socle(trimat_z4):
    M = realize_regular(trimat_z4)
    mins = minimal_submodules(M)
    assert mins
    assert all(is_simple(submodule_module(M, K)) for K in mins)
    assert socle(M) == regular_socle(trimat_z4)


def test_paired_modules(companion_tri, zmod8):
    layout = companion_tri.layout
    full = realize_paired(companion_tri, 1)
    restricted = realize_paired(companion_tri, 2, layout.matrices)

    assert full.size == 2 * 16
    assert restricted.size == 2 * 4
    assert verify_module_axioms(full)
    assert verify_module_axioms(restricted)
    assert is_local(restricted)
    assert composition_length(restricted) == 2
    with pytest.raises(ModuleConstructionError):
        realize_paired(companion_tri, 3)
    with pytest.raises(ModuleConstructionError):
        realize_paired(zmod8, 1)


@pytest.mark.parametrize("text", FLEET)
def test_jordan_holder_additivity(make_ring, text):
    M = realize_regular(make_ring(text))
    for K in enumerate_submodules(M):
        sub = submodule_module(M, K)
        top = quotient(M, K)
        assert composition_length(sub) + composition_length(top) == composition_length(M)


@pytest.mark.parametrize("text", FLEET)
def test_composition_series_steps_are_simple(make_ring, text):
    M = realize_regular(make_ring(text))
    chain = composition_series(M)
    for lower, upper in zip(chain, chain[1:]):
        step = quotient(submodule_module(M, upper), frozenset(sorted(upper).index(x) for x in lower))
        assert is_simple(step)


def test_module_summary(zmod8):
    summary = module_summary(cyclic_module(zmod8, frozenset({0, 4}), label="Z4"), with_action=True)
    assert summary.label == "Z4"
    assert summary.size == 4
    assert summary.composition_length == 2
    assert summary.is_local
    assert len(summary.action) == 4
