"""Tests for the decision procedures and the ring-level classifiers."""

import pytest

from nomiddle.criteria import (
    ALL_CONJUGATES,
    SELF_ONLY,
    classify_ring_no_middle_class,
    classify_simple_middle_class,
    companion_subfield,
    complete_to_basis,
    conjugate_iso_criterion,
    paired_hom_formula,
    paired_iso_criterion,
    prime_degree_span_check,
    row_orbit_failure,
    row_span_criterion,
    structural_predicates,
    theorem_shape_validators,
    triangularity_criterion,
    unique_local_criterion,
)
from nomiddle.errors import ModuleConstructionError
from nomiddle.exactalg import Poly, field_make, mat_inverse
from nomiddle.models import EvidenceKind, MiddleClassVerdict, SimpleMiddleClassVerdict, Verdict
from nomiddle.ringkit import dprime_algebra
from nomiddle.ringspec import parse_spec
from tests.conftest import SCALAR_TRI

NO = MiddleClassVerdict.NO
HAS = MiddleClassVerdict.HAS


def _by_id(verdicts):
    return {v.id: v for v in verdicts}


# Row span


def test_row_span_holds_for_companion_field(companion_tri):
    layout = companion_tri.layout
    verdict = row_span_criterion(layout.field, 2, layout.dprime)

    assert verdict.verdict is Verdict.HOLDS
    assert verdict.predicts == NO.value
    assert verdict.certificate == {"method": "gl-enumeration", "conjugates": 6}


def test_row_span_fails_for_scalars(scalar_tri):
    layout = scalar_tri.layout
    verdict = row_span_criterion(layout.field, 2, layout.dprime)

    assert verdict.verdict is Verdict.FAILS
    assert verdict.predicts == HAS.value
    assert verdict.certificate["row"] == 1
    assert verdict.certificate["span_dim"] == 1


def test_row_span_self_only(companion_tri, scalar_tri):
    for R, expected in ((companion_tri, Verdict.HOLDS), (scalar_tri, Verdict.FAILS)):
        layout = R.layout
        verdict = row_span_criterion(layout.field, 2, layout.dprime, SELF_ONLY)
        assert verdict.id == "row-span-self"
        assert verdict.verdict is expected
    with pytest.raises(ValueError):
        row_span_criterion(layout.field, 2, layout.dprime, "some-conjugates")


def test_row_span_falls_back_to_row_orbits(companion_tri):
    layout = companion_tri.layout
    verdict = row_span_criterion(layout.field, 2, layout.dprime, ALL_CONJUGATES, bound=5)

    assert verdict.verdict is Verdict.HOLDS
    assert verdict.certificate == {"method": "row-orbit", "vectors": 3, "conjugates": 6}


def test_row_span_undecided_when_both_methods_exceed_bound(companion_tri):
    layout = companion_tri.layout
    verdict = row_span_criterion(layout.field, 2, layout.dprime, ALL_CONJUGATES, bound=2)

    assert verdict.verdict is Verdict.UNDECIDED
    assert "row orbit" in verdict.reason


def test_prime_subfield_splits_over_extension():
    """GF(2)[w] inside M_2(GF(4)) has eigenvectors, so some conjugate has a one-dimensional row span."""
    algebra = dprime_algebra(parse_spec("tri(gf(2,2);2;gen[[0,1],[1,1]])"))
    F = algebra.field
    assert not algebra.contains_scalars

    verdict = row_span_criterion(F, 2, algebra)
    assert verdict.verdict is Verdict.FAILS
    assert verdict.certificate["method"] == "gl-enumeration"

    v, dim, _ = row_orbit_failure(F, 2, algebra.elements)
    assert v is not None
    assert dim == 1
    u = complete_to_basis(v, F, 2)
    assert u.row(0) == tuple(v)
    assert mat_inverse(u) is not None


def test_row_orbit_agrees_with_enumeration(companion_tri, scalar_tri):
    for R in (companion_tri, scalar_tri):
        layout = R.layout
        v, _, checked = row_orbit_failure(layout.field, 2, layout.matrices)
        enumerated = row_span_criterion(layout.field, 2, layout.dprime)
        assert (v is None) == (enumerated.verdict is Verdict.HOLDS)
        assert checked <= 3


# Criteria on tri rings


def test_triangularity(companion_tri, scalar_tri, full_tri):
    holds = triangularity_criterion(companion_tri.layout.dprime)
    assert holds.verdict is Verdict.HOLDS
    assert holds.predicts == NO.value

    fails = triangularity_criterion(scalar_tri.layout.dprime)
    assert fails.verdict is Verdict.FAILS
    assert fails.predicts == HAS.value
    assert fails.certificate == {"all_lower": True, "all_upper": True}

    assert triangularity_criterion(full_tri.layout.dprime).verdict is Verdict.INAPPLICABLE


@pytest.mark.parametrize("i,j", [(1, 1), (1, 2), (2, 1)])
def test_paired_hom_formula(companion_tri, i, j):
    maps = paired_hom_formula(companion_tri, i, j)
    assert len(maps) == 8
    assert all(f.verify() for f in maps)


def test_paired_iso(companion_tri, scalar_tri):
    iso = paired_iso_criterion(companion_tri, 1, 2)
    assert iso.verdict is Verdict.HOLDS
    assert iso.certificate["matrix"] == [[1, 1], [1, 0]]

    assert paired_iso_criterion(scalar_tri, 1, 2).verdict is Verdict.FAILS
    assert paired_iso_criterion(scalar_tri, 2, 2).verdict is Verdict.HOLDS


def test_unique_local(companion_tri, scalar_tri):
    assert unique_local_criterion(companion_tri).verdict is Verdict.HOLDS

    fails = unique_local_criterion(scalar_tri)
    assert fails.verdict is Verdict.FAILS
    assert fails.certificate["uncovered"] == [0, 1]


def test_conjugate_iso(companion_tri, scalar_tri, full_tri):
    holds = conjugate_iso_criterion(companion_tri)
    assert holds.verdict is Verdict.HOLDS
    assert holds.predicts == NO.value

    fails = conjugate_iso_criterion(scalar_tri)
    assert fails.verdict is Verdict.FAILS
    assert fails.predicts == HAS.value

    assert conjugate_iso_criterion(full_tri).certificate == {"n": 1}


def test_tri_only_criteria_reject_other_rings(zmod8):
    with pytest.raises(ModuleConstructionError):
        unique_local_criterion(zmod8)


# Subfields


def test_companion_subfield():
    F = field_make(2)
    K = companion_subfield(F, Poly(F, (1, 1, 1)))
    assert K.size == 4
    assert K.is_division
    with pytest.raises(ValueError):
        companion_subfield(F, Poly(F, (1, 0, 1)))


def test_prime_degree_check():
    small, large = field_make(2), field_make(2, 2)
    K = companion_subfield(small, Poly(small, (1, 1, 1)))
    verdict = prime_degree_span_check(small, large, K)

    assert verdict.verdict is Verdict.HOLDS
    assert verdict.certificate["min_poly_degree"] == 2
    assert verdict.certificate["conjugates"] == 6
    assert verdict.certificate["ambient_conjugates_hold"] is False
    assert verdict.certificate["ambient_failure"]["span_dim"] == 1


def test_prime_degree_needs_prime_size():
    small, large = field_make(2), field_make(2, 4)
    K = companion_subfield(small, Poly(small, (1, 1, 0, 0, 1)))
    assert prime_degree_span_check(small, large, K).verdict is Verdict.INAPPLICABLE


# Structural predicates


def test_zmod8_predicates(zmod8):
    p = structural_predicates(zmod8)

    assert p.commutative and p.local and not p.semisimple
    assert p.serial is True
    assert p.gv is False and p.si is False
    assert p.qf is True
    assert p.homogeneous_socle is True
    assert p.soc_eq_j_eq_z is False
    assert p.j_squared_zero is False
    assert p.radical_ideal_flag is True
    assert p.double_annihilator is True


def test_trimat_z4_predicates(trimat_z4):
    p = structural_predicates(trimat_z4)

    assert not p.commutative and not p.local
    assert p.soc_eq_j_eq_z is True
    assert p.j_squared_zero is True
    assert p.serial is False


# Classifiers


def test_classify_zmod4(zmod4):
    report = classify_ring_no_middle_class(zmod4)

    assert report.middle_class is NO
    assert report.evidence_kind is EvidenceKind.THEOREM_CERTIFIED
    assert report.summary == "no middle class (commutative local, composition length 2)"
    assert report.witness_search.found is False
    assert report.agreement is True


def test_classify_zmod8(zmod8):
    report = classify_ring_no_middle_class(zmod8)

    assert report.middle_class is HAS
    assert report.summary == "has middle class (commutative local, composition length 3)"
    assert report.evidence_kind is EvidenceKind.WITNESS_REFUTED
    assert report.witness_search.witness.module.size == 4


def test_classify_zmod12(make_ring):
    report = classify_ring_no_middle_class(make_ring("zmod(12)"))

    assert report.middle_class is NO
    assert report.decomposition.factor_sizes == [3, 4]
    assert report.decomposition.semisimple_part == 3


def test_classify_semisimple(make_ring):
    report = classify_ring_no_middle_class(make_ring("prod(zmod(2),gf(2,2))"), with_predicates=False)
    assert report.middle_class is NO
    assert report.summary == "no middle class (semisimple ring)"


def test_classify_trimat_z4(trimat_z4):
    report = classify_ring_no_middle_class(trimat_z4)
    verdicts = _by_id(report.verdicts)

    assert report.middle_class is HAS
    assert report.evidence_kind is EvidenceKind.WITNESS_REFUTED
    assert verdicts["serial-j2"].verdict is Verdict.FAILS
    assert verdicts["radical-ideal"].predicts == HAS.value


def test_classify_tri_rings(companion_tri, scalar_tri, full_tri):
    assert classify_ring_no_middle_class(companion_tri, with_predicates=False).middle_class is NO
    assert classify_ring_no_middle_class(full_tri, with_predicates=False).middle_class is NO

    scalar = classify_ring_no_middle_class(scalar_tri, with_predicates=False)
    assert scalar.middle_class is HAS
    assert scalar.witness_search.found


def test_classify_idealization(make_ring):
    report = classify_ring_no_middle_class(make_ring("idealize(gf(2),2)"), with_predicates=False)
    assert report.middle_class is HAS
    assert report.summary == "has middle class (commutative local, composition length 3)"


def test_classify_by_morita(make_ring):
    report = classify_ring_no_middle_class(make_ring("mat(zmod(4),2)"), search=False, with_predicates=False)
    verdicts = _by_id(report.verdicts)

    assert report.middle_class is NO
    assert report.summary.endswith("via Morita equivalence with zmod(4)")
    assert verdicts["morita"].certificate["base_size"] == 4
    assert "commutative" in verdicts
    assert report.witness_search is None


def test_classify_product_through_its_non_semisimple_factor(make_ring):
    report = classify_ring_no_middle_class(make_ring(f"prod(gf(2),{SCALAR_TRI})"), with_predicates=False)
    verdicts = _by_id(report.verdicts)

    assert report.middle_class is HAS
    assert verdicts["product-factor"].certificate == {"factor": SCALAR_TRI, "factor_size": 16}
    assert verdicts["product-factor"].predicts == HAS.value
    assert verdicts["row-span"].verdict is Verdict.FAILS
    assert report.summary.endswith(f"via the non-semisimple factor {SCALAR_TRI}")
    assert report.witness_search.found


def test_simple_middle_class_zmod8(zmod8):
    report = classify_simple_middle_class(zmod8)

    assert report.simple_middle_class is SimpleMiddleClassVerdict.NO
    assert report.simple_destitute is True
    assert report.summary == "no simple middle class (one noninjective simple, singular socle)"
    assert report.verdicts[0].certificate["case"] == 2
    assert report.evidence_kind is EvidenceKind.ORACLE_COMPLETE


def test_simple_middle_class_product(make_ring):
    report = classify_simple_middle_class(make_ring("prod(zmod(4),zmod(4))"))
    verdicts = _by_id(report.verdicts)

    assert report.simple_middle_class is SimpleMiddleClassVerdict.HAS
    assert report.summary == "has simple middle class (S1 is Middle)"
    assert verdicts["commutative-simple"].verdict is Verdict.FAILS
    assert report.simple_destitute is False


def test_theorem_shapes_zmod8(zmod8):
    checks = _by_id(theorem_shape_validators(zmod8))

    assert checks["singular-socle"].verdict is Verdict.HOLDS
    assert checks["artinian-socle"].verdict is Verdict.HOLDS
    assert checks["serial-simple"].verdict is Verdict.INAPPLICABLE
    assert checks["gv-socle"].verdict is Verdict.INAPPLICABLE
    assert checks["commutative-simple"].verdict is Verdict.HOLDS
