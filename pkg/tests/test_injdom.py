"""Tests for the injectivity oracle and witness search."""

import pytest

from nomiddle.injdom import (
    classify_module,
    has_no_simple_middle_class,
    is_injective,
    is_poor,
    is_poor_definitional,
    middle_witness_search,
    relatively_injective,
)
from nomiddle.models import ModuleClass
from nomiddle.modkit import cyclic_module, local_length_two_modules, realize_regular, simples_up_to_iso


@pytest.fixture
def z4_over_z8(zmod8):
    return cyclic_module(zmod8, frozenset({0, 4}), label="Z4")


@pytest.fixture
def z2_over_z8(zmod8):
    return cyclic_module(zmod8, frozenset({0, 2, 4, 6}), label="Z2")


def test_zmod8_classes(zmod8, z4_over_z8, z2_over_z8):
    assert classify_module(z2_over_z8).classification is ModuleClass.POOR
    assert classify_module(realize_regular(zmod8)).classification is ModuleClass.INJECTIVE

    middle = classify_module(z4_over_z8)
    assert middle.classification is ModuleClass.MIDDLE
    assert middle.relative == {"L1": True, "R_R": False}
    assert middle.member is not None and middle.member.size == 4


def test_baer_failure_rechecks(z4_over_z8):
    baer = is_injective(z4_over_z8)
    assert not baer.injective
    assert baer.failure is not None
    assert len(baer.failure.submodule) == 2
    assert baer.failure.recheck(z4_over_z8)

    model = baer.failure.to_model()
    assert model.test_module.endswith("_R")
    assert model.submodule == [0, 4]


def test_semisimple_test_module_is_trivial(zmod8, z4_over_z8, z2_over_z8):
    result = relatively_injective(z4_over_z8, z2_over_z8)
    assert result.injective
    assert result.failure is None


def test_poor_agrees_with_definition(zmod8, z2_over_z8, z4_over_z8):
    assert is_poor(z2_over_z8).poor
    assert is_poor_definitional(z2_over_z8)
    assert not is_poor(z4_over_z8).poor
    assert not is_poor_definitional(realize_regular(zmod8))


def test_witness_search_zmod8(zmod8):
    search = middle_witness_search(zmod8)
    assert search.witness is not None
    assert search.witness.module.size == 4
    assert search.examined == 2
    assert search.witness.recheck()

    model = search.to_model()
    assert model.found
    assert model.witness.profile.classification is ModuleClass.MIDDLE


def test_witness_search_exhausts_on_zmod4(zmod4):
    search = middle_witness_search(zmod4)
    assert search.witness is None
    assert search.exhausted
    assert search.hit_bound is None


def test_witness_search_on_semisimple_ring(make_ring):
    search = middle_witness_search(make_ring("prod(zmod(2),gf(2,2))"))
    assert search.witness is None
    assert search.exhausted
    assert search.examined == 0


def test_semisimple_ring_modules_are_injective(make_ring):
    R = make_ring("mat(zmod(2),2)")
    profile = classify_module(realize_regular(R))
    assert profile.semisimple_ring
    assert profile.injective and profile.poor


def test_trimat_z4_oracle(trimat_z4):
    """Simples split into one injective and one poor; R_R is poor; a cyclic witness of size 4 exists."""
    classes = [classify_module(s.module).classification for s in simples_up_to_iso(trimat_z4)]
    assert sorted(c.value for c in classes) == sorted([ModuleClass.INJECTIVE.value, ModuleClass.POOR.value])
    assert classify_module(realize_regular(trimat_z4)).classification is ModuleClass.POOR

    search = middle_witness_search(trimat_z4)
    assert search.witness is not None
    assert search.witness.module.size == 4
    assert search.witness.module.is_cyclic


def test_simple_middle_class(zmod8, make_ring):
    assert has_no_simple_middle_class(zmod8).holds

    split = has_no_simple_middle_class(make_ring("prod(zmod(4),zmod(4))"))
    assert not split.holds
    simple, profile = split.witness
    assert profile.classification is ModuleClass.MIDDLE
    assert simple.module.size == 2


@pytest.mark.parametrize("text", ["zmod(4)", "zmod(8)", "idealize(gf(2),2)"])
def test_injective_modules_are_never_poor(make_ring, text):
    for N in local_length_two_modules(make_ring(text)):
        profile = classify_module(N)
        assert not (profile.injective and profile.poor)
        if profile.injective:
            assert not is_poor(N).poor
