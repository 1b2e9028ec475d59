import random

import pytest

from oracles import cofactor_det, gram_of, invariant_factors, sympy_det
from vanishing_roots.constructions import (
    IMPOSSIBLE,
    NOT_HYPERSURFACE,
    THEOREM_VARIETIES,
    BlowupExtension,
    DelPezzo,
    ExpectedOutcome,
    ExtraordinaryQuadricPencil,
    HomologyData,
    OrdinaryQuadricPencil,
    OutcomeKind,
    Quadric,
    Scroll,
    VeronesePencil,
    VeroneseQuadric,
    build_homology,
    canonical_gram,
    classify_construction,
    construction_from_dict,
    construction_lattice,
    default_catalog,
    expected_outcome,
    kernel_basis,
    lambda_basis,
    outcome_matches,
    root_system_type,
    structured_det,
    structured_matrix,
    table2_constructions,
    theorem_filter,
    vanishing_lattice,
)
from vanishing_roots.errors import ConstructionError, DegenerateFormError, NotPositiveDefiniteError
from vanishing_roots.lattice import discriminant_group, is_even
from vanishing_roots.roots import A, D, E


# ------------------------------------------------------------ build_homology


def test_scroll_homology():
    h = build_homology(Scroll(3))
    assert h.y_rank == 3 and h.x_rank == 1
    assert [list(r) for r in h.pushforward] == [[1, 1, 1]]
    k = kernel_basis(h)
    assert len(k) == 2 and all(sum(r) == 0 for r in k)


def test_del_pezzo_cubic_homology():
    h = build_homology(DelPezzo(3))
    assert h.y_rank == 7
    assert [list(r) for r in h.pushforward] == [[3, 1, 1, 1, 1, 1, 1]]
    assert len(kernel_basis(h)) == 6


def test_blowup_homology_shapes():
    base = build_homology(VeroneseQuadric())
    h = build_homology(BlowupExtension(VeroneseQuadric(), 2))
    assert h.y_rank == base.y_rank + 2 and h.x_rank == base.x_rank + 2
    assert [list(r[-2:]) for r in h.pushforward[-2:]] == [[1, 0], [0, 1]]
    assert all(not any(r[-2:]) for r in h.pushforward[:-2])


def test_homology_validation():
    with pytest.raises(ValueError):
        HomologyData(("a",), ((1, 0),), ("x",), ((1,),))
    with pytest.raises(ValueError):
        HomologyData(("a", "b"), ((1, 2), (0, 1)), ("x",), ((1, 1),))


def test_parameter_validation():
    for bad in (lambda: Scroll(0), lambda: OrdinaryQuadricPencil(0), lambda: DelPezzo(2),
                lambda: DelPezzo(6, "V9"), lambda: BlowupExtension(VeroneseQuadric(), 0)):
        with pytest.raises(ConstructionError):
            bad()


# ------------------------------------------------------------ vanishing_lattice


def test_scroll_r1_is_rank_zero():
    assert construction_lattice(Scroll(1)).rank == 0


def test_ordinary_m5_lattice():
    lat = construction_lattice(OrdinaryQuadricPencil(5))
    assert lat.rank == 5 and is_even(lat)
    assert discriminant_group(lat).order == 4
    assert abs(cofactor_det(lat.gram_matrix())) == 4


def test_del_pezzo_quartic_lambda_gram():
    lat = construction_lattice(DelPezzo(4))
    expected = [[8, 3, 3, 3, 3]] + [[3] + [2 if i == j else 1 for j in range(4)] for i in range(4)]
    assert lat.gram_matrix() == expected
    # recompute from the (h, l_j) pairing independently of the package
    pairing = [[-1 if i == j == 0 else int(i == j) for j in range(6)] for i in range(6)]
    assert gram_of(lambda_basis(5), pairing) == expected


def test_vanishing_lattice_rejects_degenerate():
    h = HomologyData(("a", "b"), ((0, 0), (0, 1)), ("x",), ((0, 1),))
    with pytest.raises(DegenerateFormError):
        vanishing_lattice(h)


def test_vanishing_lattice_rejects_indefinite():
    h = HomologyData(("a", "b"), ((-1, 0), (0, 1)), ("x",), ((0, 0),))
    with pytest.raises(NotPositiveDefiniteError):
        vanishing_lattice(h)


def test_kernel_is_saturated_for_catalog():
    for c in default_catalog():
        k = kernel_basis(c.homology())
        if k:
            assert invariant_factors(k) == [1] * len(k), c.label


# ------------------------------------------------------------ expected outcomes


def test_expected_examples():
    assert expected_outcome(Scroll(7)) == root_system_type(A(6))
    assert expected_outcome(Scroll(1)) == NOT_HYPERSURFACE
    assert expected_outcome(DelPezzo(6, "V6")) == root_system_type(A(1))
    assert expected_outcome(VeronesePencil(8)) == ExpectedOutcome(
        OutcomeKind.AMBIGUOUS_OVERLATTICE, (D(8), E(8))
    )
    assert expected_outcome(OrdinaryQuadricPencil(2)) == IMPOSSIBLE
    assert expected_outcome(VeroneseQuadric()) == root_system_type(D(5))


def test_expected_round_trip():
    for c in default_catalog():
        e = c.expected()
        assert ExpectedOutcome.from_dict(e.to_dict()) == e


def test_outcome_matches_rejects_wrong_type():
    report = classify_construction(Scroll(4))
    assert outcome_matches(root_system_type(A(3)), report)
    assert not outcome_matches(root_system_type(A(4)), report)
    assert not outcome_matches(IMPOSSIBLE, report)


@pytest.mark.parametrize("c", default_catalog(), ids=lambda c: c.label)
def test_catalog_matches_expected(c):
    assert outcome_matches(c.expected(), classify_construction(c))


def test_construction_dict_round_trip():
    for c in default_catalog() + [BlowupExtension(DelPezzo(4), 3)]:
        assert construction_from_dict(c.to_dict()) == c
    with pytest.raises(ConstructionError):
        construction_from_dict({"family": "nope"})
    with pytest.raises(ConstructionError):
        construction_from_dict({"family": "scroll", "params": {"q": 1}})


# ------------------------------------------------------------ structured determinant


def test_structured_det_examples():
    assert structured_det(8, 3, 2, 1, 6) == 3
    assert structured_det(8, 3, 2, 1, 4) == 5
    assert structured_det(1, 0, 1, 0, 3) == 1
    with pytest.raises(ValueError):
        structured_det(1, 0, 1, 0, 1)


def test_structured_det_random():
    rng = random.Random(1729)
    for _ in range(200):
        a, b, c, d = (rng.randint(-3, 8) for _ in range(4))
        r = rng.randint(2, 10)
        assert structured_det(a, b, c, d, r) == sympy_det(structured_matrix(a, b, c, d, r))


# ------------------------------------------------------------ isometries


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("base", [VeroneseQuadric(), DelPezzo(4)], ids=["v2Q", "V4"])
def test_blowup_invariance(base, k):
    c = BlowupExtension(base, k)
    assert canonical_gram(c.homology()) == canonical_gram(base.homology())
    assert classify_construction(c).components == [D(5)]


@pytest.mark.parametrize("m", range(3, 10))
def test_veronese_and_ordinary_pencils_isometric(m):
    assert canonical_gram(VeronesePencil(m).homology()) == canonical_gram(
        OrdinaryQuadricPencil(m).homology()
    )


@pytest.mark.parametrize("r", range(2, 10))
def test_scroll_disc_is_r(r):
    assert discriminant_group(construction_lattice(Scroll(r))).order == r


# ------------------------------------------------------------ theorem filter


def test_theorem_filter_scrolls():
    kept = theorem_filter([Scroll(2), Scroll(3)])
    assert kept == [Scroll(2)]


def test_theorem_filter_pencils():
    assert theorem_filter([ExtraordinaryQuadricPencil(2)]) == [ExtraordinaryQuadricPencil(2)]
    assert theorem_filter([OrdinaryQuadricPencil(4)]) == []


def test_theorem_filter_rejects_reducible_and_rootless():
    assert theorem_filter([OrdinaryQuadricPencil(1), OrdinaryQuadricPencil(2), Scroll(1)]) == []


def test_theorem_default_catalog_varieties():
    kept = theorem_filter(default_catalog())
    assert {c.variety_name for c in kept} == set(THEOREM_VARIETIES)
    assert Quadric() in kept


def test_table2_rows():
    assert [c.row for c in table2_constructions()] == ["V3", "V4", "V5", "V6", "V6'", "V7", "V8"]
    got = [classify_construction(c).components for c in table2_constructions()]
    assert got == [[E(6)], [D(5)], [A(4)], [A(1)], [A(2)], [A(1)], [A(1)]]
