"""Property suites over the small-ring fleet."""

import itertools

import pytest

from nomiddle.criteria import (
    SELF_ONLY,
    classify_ring_no_middle_class,
    paired_hom_formula,
    paired_iso_criterion,
    row_span_criterion,
    unique_local_criterion,
)
from nomiddle.exactalg import Mat, field_make, subalgebra_closure
from nomiddle.injdom import classify_module, is_injective, middle_witness_search, relatively_injective
from nomiddle.models import MiddleClassVerdict, ModuleClass, Verdict
from nomiddle.modkit import (
    cyclic_module,
    direct_sum,
    enumerate_submodules,
    hom_enumerate,
    local_length_two_modules,
    quotient,
    radical,
    realize_regular,
    submodule_module,
)
from nomiddle.ringkit import is_semisimple_ring, quotient_ring, right_ideals, two_sided_ideal
from tests.conftest import COMPANION_TRI, FLEET, FULL_TRI, SCALAR_TRI, TRIMAT_Z4

SMALL = ["zmod(4)", "zmod(6)", "zmod(8)", "prod(zmod(2),zmod(4))", "idealize(gf(2),2)", FULL_TRI, TRIMAT_Z4]


def cyclic_modules(R):
    """One R/K per proper right ideal K."""
    return [cyclic_module(R, K) for K in right_ideals(R) if len(K) < R.size]


@pytest.mark.parametrize("text", SMALL)
def test_domain_closed_under_subfactors(make_ring, text):
    R = make_ring(text)
    tests = [realize_regular(R), *local_length_two_modules(R)]
    for M in cyclic_modules(R):
        for N in tests:
            if not relatively_injective(M, N).injective:
                continue
            for K in enumerate_submodules(N):
                assert relatively_injective(M, submodule_module(N, K)).injective
                assert relatively_injective(M, quotient(N, K)).injective


@pytest.mark.parametrize("text", ["zmod(8)", "idealize(gf(2),2)"])
def test_domain_closed_under_direct_sums(make_ring, text):
    R = make_ring(text)
    locals_ = local_length_two_modules(R)
    for M in cyclic_modules(R):
        for N1, N2 in itertools.combinations_with_replacement(locals_, 2):
            if relatively_injective(M, N1).injective and relatively_injective(M, N2).injective:
                assert relatively_injective(M, direct_sum(N1, N2)).injective


@pytest.mark.parametrize("text", SMALL)
def test_baer_equivalence(make_ring, text):
    R = make_ring(text)
    modules = cyclic_modules(R)
    for M in modules:
        assert is_injective(M).injective == all(relatively_injective(M, N).injective for N in modules)


@pytest.mark.parametrize("text", FLEET)
def test_poor_injective_exclusivity(make_ring, text):
    R = make_ring(text)
    semisimple = is_semisimple_ring(R)
    for M in cyclic_modules(R):
        profile = classify_module(M)
        if semisimple:
            assert profile.injective and profile.poor
            assert profile.classification is ModuleClass.INJECTIVE
        else:
            assert not (profile.injective and profile.poor)


@pytest.mark.parametrize("text", FLEET)
def test_radical_and_socle_cross_checks(make_ring, text):
    for M in cyclic_modules(make_ring(text)):
        radical(M, cross_check=True)


@pytest.mark.parametrize("text", ["zmod(2)", "zmod(4)", "zmod(6)", "gf(2,2)", "prod(zmod(2),zmod(4))", FULL_TRI])
def test_no_middle_class_passes_to_factor_rings(make_ring, text):
    R = make_ring(text)
    assert classify_ring_no_middle_class(R, with_predicates=False).middle_class is MiddleClassVerdict.NO
    ideals = {two_sided_ideal(R, [x]) for x in range(R.size)}
    for I in ideals:
        if len(I) in (1, R.size):
            continue
        Q = quotient_ring(R, I)
        report = classify_ring_no_middle_class(Q, with_predicates=False)
        assert report.middle_class is not MiddleClassVerdict.HAS
        assert report.witness_search.found is False


@pytest.mark.parametrize("text", FLEET)
def test_semisimple_summand_does_not_change_witnesses(make_ring, text):
    T = make_ring(text)
    S = make_ring(f"prod(gf(2),{text})")
    assert (middle_witness_search(S).witness is None) == (middle_witness_search(T).witness is None)


@pytest.mark.parametrize("text", ["zmod(8)", TRIMAT_Z4])
def test_hom_counts_multiply_over_direct_sums(make_ring, text):
    modules = cyclic_modules(make_ring(text))[:3]
    for K1, K2, M in itertools.product(modules, repeat=3):
        total = len(hom_enumerate(direct_sum(K1, K2), M))
        assert total == len(hom_enumerate(K1, M)) * len(hom_enumerate(K2, M))


@pytest.mark.parametrize("p", [2, 3])
def test_self_only_row_span_matches_all_conjugates(p):
    """For division D' in M_2(F_p) containing the scalars, the two row-span modes agree."""
    F = field_make(p)
    seen = set()
    for entries in itertools.product(range(p), repeat=4):
        A = Mat.from_lists(F, [list(entries[:2]), list(entries[2:])])
        D = subalgebra_closure([A], F)
        if not D.is_division or not D.contains_scalars or D.elements in seen:
            continue
        seen.add(D.elements)
        self_only = row_span_criterion(F, 2, D, SELF_ONLY)
        everywhere = row_span_criterion(F, 2, D)
        assert (self_only.verdict is Verdict.HOLDS) == (everywhere.verdict is Verdict.HOLDS)


@pytest.mark.parametrize("text", [COMPANION_TRI, SCALAR_TRI, FULL_TRI, "tri(gf(3);1;full)"])
def test_paired_module_formulas_match_brute_force(make_ring, text):
    R = make_ring(text)
    n = R.layout.n
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        paired_hom_formula(R, i, j, cross_check=True)
        paired_iso_criterion(R, i, j, cross_check=True)
    unique_local_criterion(R, cross_check=True)
