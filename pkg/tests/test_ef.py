import random

import pytest

from extform import instances
from extform.core import AffineMapSpec, HPoly, VarSpace
from extform.ef import (AugmentationSpec, AugmentationStatus, NotAnAugmentationError,
                        RelationTag, augmentation_status, check_augmentation, check_ef,
                        classify_relationship, construct_mutual_augmentation,
                        independent_spaces, overlap_augmentation_invariance)
from extform.polyhedron import is_bounded, poly_equal
from extform.projection import project
from extform.redundancy import redundancy_report, remove_row_redundancy

X1 = VarSpace.of(("x", 1))
XW = VarSpace.of(("x", 1), ("w", 1))


def segment():
    return HPoly.from_rows(X1, [([1], "<=", 2), ([-1], "<=", 0)])


def lifted_segment():
    """``0 <= w <= x <= 2``: projects onto the segment."""
    return HPoly.from_rows(XW, [([1, 0], "<=", 2), ([-1, 0], "<=", 0),
                                ([-1, 1], "<=", 0), ([0, -1], "<=", 0)])


def test_independence_by_labels():
    p, q = instances.indep_p(), instances.indep_q()
    assert independent_spaces(p, q)
    assert not independent_spaces(segment(), lifted_segment())


def test_overlapping_lift_is_ef_under_one_and_three():
    v = check_ef(segment(), lifted_segment())
    assert v.def1 and v.def3


def test_overlapping_cut_is_not_ef():
    cut = lifted_segment().with_rows([([1, 0], "<=", 1)])
    v = check_ef(segment(), cut)
    assert v.def1 is False and v.def3 is False
    assert v.notes["def3_unliftable_point"] == (2,)


def test_independent_pair_verdicts():
    p, q = instances.indep_p(), instances.indep_q()
    v = check_ef(p, q, witness=instances.collapse_map())
    assert v.def1 is False and v.def3 is False and v.def2_holds
    assert str(v.projection) == "FullSpace(2)"


def test_wrong_witness_rejected():
    p, q = instances.indep_p(), instances.indep_q()
    bad = AffineMapSpec(((1, 0), (0, 1)), (0, 0), q.space, p.space)
    v = check_ef(p, q, 2, bad)
    assert not v.def2_holds and v.notes["def2"] == "witness rejected"


def test_definition_two_needs_witness():
    with pytest.raises(ValueError):
        check_ef(instances.indep_p(), instances.indep_q(), 2)


def test_classify():
    p, q = instances.indep_p(), instances.indep_q()
    assert classify_relationship(p, q, [instances.collapse_map()]).tag is RelationTag.ILL_DEFINED
    rel = classify_relationship(p, q)
    assert rel.tag is RelationTag.NO_RELATION and rel.caveat
    assert classify_relationship(segment(), lifted_segment()).tag is RelationTag.WELL_DEFINED_EF


def test_augmentation_statuses():
    base = segment()
    assert check_augmentation(base, lifted_segment())
    missing = HPoly.from_rows(XW, [([-1, 1], "<=", 0), ([0, -1], "<=", 0)])
    assert augmentation_status(base, missing) is AugmentationStatus.NOT_BY_CONSTRUCTION
    with pytest.raises(NotAnAugmentationError):
        check_augmentation(base, missing, strict=True)
    cutting = lifted_segment().with_rows([([1, 1], "<=", 1)])
    assert augmentation_status(base, cutting) is AugmentationStatus.CUTS_BASE


def test_augmentation_accepts_rescaled_base_rows():
    scaled = HPoly.from_rows(XW, [([3, 0], "<=", 6), ([-1, 0], "<=", 0), ([0, -1], "<=", 0)])
    assert check_augmentation(segment(), scaled)


def test_mutual_augmentation_example_projects_back():
    p1, p2 = instances.pair_p1(), instances.pair_p2()
    w = construct_mutual_augmentation(p1, p2, instances.pair_spec())
    assert w.space.classes == ("x", "w", "u")
    assert next(iter(w.rows())) == ((14, 7, 0, 0, 0, 0, 0), "<=", 42)
    assert poly_equal(project(w, "x").as_hpoly(p1.space), p1)
    assert poly_equal(project(w, "w").as_hpoly(p2.space), p2)
    assert check_augmentation(p1, w) and check_augmentation(p2, w)


def test_mutual_augmentation_errors():
    p1, p2 = instances.pair_p1(), instances.pair_p2()
    spec = instances.pair_spec()
    with pytest.raises(ValueError):
        construct_mutual_augmentation(p1, p1, spec)
    with pytest.raises(ValueError):
        construct_mutual_augmentation(p1, p2, spec, slack_label="w")
    empty = HPoly.from_rows(VarSpace.of(("x", 2)), [([1, 0], "<=", -1), ([-1, 0], "<=", 0),
                                                    ([0, 1], "<=", 0)])
    with pytest.raises(ValueError):
        construct_mutual_augmentation(empty, p2, spec)
    flipping = AugmentationSpec(((1, 1),), ((1, 1, 1),), (-7, 1, 1), (2, 1, 1, 1, 1))
    with pytest.raises(ValueError):
        construct_mutual_augmentation(p1, p2, flipping)


def test_augspec_rejects_off_diagonal_and_zero():
    with pytest.raises(ValueError):
        AugmentationSpec(((1,),), ((1,),), ((1, 2), (0, 1)), (1,))
    with pytest.raises(ValueError):
        AugmentationSpec(((1,),), ((1,),), (0,), (1,))


def test_overlap_invariance_random():
    rng = random.Random(3)
    for i in range(20):
        p1, p2, p3 = instances.random_overlap_triple(rng, make_ef=bool(i % 2))
        assert overlap_augmentation_invariance(p1, p2, p3)


def test_overlap_invariance_preconditions():
    with pytest.raises(ValueError):
        overlap_augmentation_invariance(instances.indep_p(), instances.indep_q(),
                                        instances.indep_q())


def test_definitions_one_and_three_agree_on_minimal_overlapping_candidates():
    rng = random.Random(8)
    checked = 0
    for i in range(30):
        p1, p2, _ = instances.random_overlap_triple(rng, make_ef=bool(i % 2))
        p2 = remove_row_redundancy(p2)
        if not redundancy_report(p2).minimal:
            continue
        v = check_ef(p1, p2)
        assert v.def1 == v.def3
        checked += 1
    assert checked >= 10


def test_definitions_one_and_three_agree_on_lifts():
    rng = random.Random(9)
    for i in range(20):
        p1, p2, _ = instances.random_overlap_triple(rng, make_ef=bool(i % 2))
        v = check_ef(p1, p2)
        assert v.def1 == v.def3 == bool(i % 2)


def test_trivial_coupling_is_a_product():
    p1, p2 = instances.pair_p1(), instances.pair_p2()
    spec = AugmentationSpec(((0, 0),), ((0, 0, 0),), (1, 1, 1), (1, 1, 1, 1, 1))
    w = construct_mutual_augmentation(p1, p2, spec)
    space = w.space
    product = p1.embed(space).with_rows(p2.embed(space).rows()).with_rows(
        [((0,) * 5 + (-1,), "<=", 0)])
    assert poly_equal(w, product)


def test_classify_linked_and_copy():
    f = instances.random_linked_family(random.Random(1))
    assert classify_relationship(f.x, f.k1).tag is RelationTag.WELL_DEFINED_EF
    sq = HPoly.from_rows(VarSpace.of(("x", 2)), [([1, 0], "<=", 1), ([0, 1], "<=", 1),
                                                 ([-1, 0], "<=", 0), ([0, -1], "<=", 0)])
    copy = HPoly(VarSpace.of(("y", 2)), sq.a, sq.b, sq.senses)
    rel = classify_relationship(sq, copy)
    assert rel.tag is RelationTag.NO_RELATION and rel.caveat


def test_independent_pairs_never_both_def2_and_def1():
    rng = random.Random(21)
    for _ in range(15):
        p, q = instances.random_independent_pair(rng)
        m = AffineMapSpec(tuple(tuple(rng.randint(0, 1) for _ in range(q.dim))
                                for _ in range(p.dim)), (), q.space, p.space)
        rel = classify_relationship(p, q, [m])
        for v in (rel.forward, rel.backward):
            assert not (v.def2_holds and v.def1)


def test_def1_and_def3_agree_on_unbounded_targets():
    rng = random.Random(77)
    unbounded = 0
    for _ in range(15):
        f = instances.random_linked_family(rng, rng.randint(1, 2), rng.randint(1, 2))
        pairs = ((f.x, f.k1), (f.y, f.k2), (f.x, f.k3), (f.y, f.link))
        for target, cand in pairs + tuple((c, t) for t, c in pairs):
            unbounded += not is_bounded(target)[0]
            v = check_ef(target, cand)
            assert v.def1 == v.def3
    assert unbounded >= 30


def test_def3_reports_unliftable_ray():
    sp = VarSpace.of(("x", 1))
    half_line = HPoly.from_rows(sp, [([-1], "<=", 0)])
    cand = HPoly.from_rows(sp + VarSpace.of(("w", 1)),
                           [([-1, 0], "<=", 0), ([1, -1], "<=", 0), ([0, 1], "<=", 3)])
    v = check_ef(half_line, cand, 3)
    assert v.def3 is False and v.notes["def3_unliftable_ray"] == (1,)
