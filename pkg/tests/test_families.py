import random
from itertools import product

import pytest

from bfree.errors import FamilyParseError, UnknownPresetError
from bfree.families import (
    Explicit,
    FamilySpec,
    Geometric,
    Primes,
    RectEntry,
    RectTemplate,
    Rectangular,
    Static,
    Template,
    format_family,
    odd_primes,
    parse_family,
    preset,
)
from bfree.lattices import Lattice, UnimodularMap, hnf


# closed-form membership oracles for the two worked examples


def ex2_free(n, m):
    return n % 2 == 1 and m % 2 == 1 and abs(m - n) == 2


def ex1_free(n, m):
    return n in (-2, 0, 2) and m % 2 == 1


def is_squarefree(n):
    n = abs(n)
    if n == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# presets against the closed forms


def test_ex2_membership_examples():
    spec = preset("ex2")
    assert spec.covered((1, 5))
    assert not spec.covered((3, 1))
    assert spec.covered((0, 0))


def test_ex2_closed_form_window():
    spec = preset("ex2")
    for p in product(range(-50, 51), repeat=2):
        assert spec.free(p) == ex2_free(*p), p


def test_ex1_eta_examples():
    spec = preset("ex1")
    assert spec.eta((0, 3)) == 1
    assert spec.eta((4, 3)) == 0
    assert spec.eta((6, 3)) == 0


def test_ex1_closed_form_window():
    spec = preset("ex1")
    for p in product(range(-50, 51), repeat=2):
        assert spec.free(p) == ex1_free(*p), p


def test_squarefree_preset_matches_sieve():
    spec = preset("squarefree-1d")
    for n in range(-300, 301):
        assert spec.free((n,)) == is_squarefree(n), n


def test_rect_demo_preset():
    spec = preset("rect-demo")
    assert len(spec.entries) == 5
    assert spec.covered((2, 4))
    assert spec.free((1, 1))


def test_unknown_preset():
    with pytest.raises(UnknownPresetError):
        preset("nope")


def test_origin_always_covered():
    for name in ("ex2", "ex1", "squarefree-1d", "rect-demo"):
        spec = preset(name)
        assert spec.covered((0,) * spec.dim)


# ---------------------------------------------------------------------------
# instances


def test_instances_ex2_bound6():
    got = preset("ex2").instances_up_to(6)
    expected = {
        Lattice.from_diagonal((2, 1)),
        Lattice.from_diagonal((1, 2)),
        hnf([(1, 1), (0, 4)]),
        hnf([(1, 1), (0, 6)]),
    }
    assert set(got) == expected
    assert len(got) == 4


def test_instances_bound1_empty():
    for name in ("ex2", "ex1", "rect-demo"):
        assert preset(name).instances_up_to(1) == []


def test_instances_rect_demo():
    got = preset("rect-demo").instances_up_to(25)
    assert got == [
        Lattice.from_diagonal((2, 2)),
        Lattice.from_diagonal((3, 3)),
        Lattice.from_diagonal((5, 5)),
    ]


def test_instances_monotone_and_member_consistent():
    spec = preset("ex1")
    small = spec.instances_up_to(12)
    large = spec.instances_up_to(40)
    assert set(small) <= set(large)
    rng = random.Random(2)
    for lat in large:
        for _ in range(10):
            ks = (rng.randint(-3, 3), rng.randint(-3, 3))
            p = tuple(
                ks[0] * lat.columns[0][r] + ks[1] * lat.columns[1][r] for r in range(2)
            )
            assert spec.covered(p)


def test_member_containing_trace():
    spec = preset("ex2")
    member = spec.member_containing((1, 5))
    assert member == hnf([(1, 1), (0, 4)])
    assert spec.member_containing((3, 1)) is None


# ---------------------------------------------------------------------------
# parameter sequences


def test_primes_candidates():
    p = Primes()
    assert p.candidates(((12, 1),)) == [2, 3]
    assert p.candidates(((12, 2),)) == [2]
    assert odd_primes().candidates(((12, 1),)) == [3]
    assert 97 in p and 96 not in p


def test_geometric_membership_and_candidates():
    g = Geometric(2, 1)
    assert 8 in g and 6 not in g and 1 not in g
    assert g.candidates(((24, 1),)) == [2, 4, 8]
    assert Geometric(2, 2).candidates(((24, 1),)) == [4, 8]
    assert g.values_up_to(20) == [2, 4, 8, 16]


def test_explicit_validation():
    with pytest.raises(ValueError):
        Explicit(())
    with pytest.raises(ValueError):
        Explicit((3, 3))
    assert Explicit((2, 6)).candidates(((12, 1),)) == [2, 6]


def test_residues_mod():
    assert Primes().residues_mod(6) == {1, 5, 2, 3}
    assert odd_primes().residues_mod(6) == {1, 5, 3}
    assert Geometric(2, 1).residues_mod(6) == {2, 4}
    assert Explicit((4, 9)).residues_mod(6) == {4, 3}


# ---------------------------------------------------------------------------
# entry validation


def test_improper_entries_rejected():
    with pytest.raises(ValueError):
        Static(Lattice.whole(2))
    with pytest.raises(ValueError):
        Rectangular((1, 1))
    with pytest.raises(ValueError):
        RectTemplate((RectEntry(1, 1),), Explicit((1, 3)))
    with pytest.raises(ValueError):
        Template(Lattice.whole(2), 0, Explicit((1, 2)))


def test_template_zero_scaled_coordinate():
    # points on the main diagonal zero out the scaled row, so membership is
    # parameter-independent and holds for every member
    spec = preset("ex2")
    entry = spec.entries[2]
    assert entry.covered((3, 3))
    assert entry.member_containing((3, 3)).index == 4  # smallest prime parameter
    assert not entry.covered((0, 2))  # would need the parameter to divide 1


# ---------------------------------------------------------------------------
# transformed families


def test_transformed_family_pullback():
    base = FamilySpec(2, (Rectangular((3, 5)),))
    shear = UnimodularMap(((1, 0), (2, 1)))
    moved = FamilySpec(2, base.entries, transform=shear)
    for p in product(range(-12, 13), repeat=2):
        image = shear.apply_point(p)
        assert base.covered(p) == moved.covered(image)
    assert moved.instances_up_to(20) == [shear.apply(Lattice.from_diagonal((3, 5)))]
    member = moved.member_containing(shear.apply_point((3, 0)))
    assert member == shear.apply(Lattice.from_diagonal((3, 5)))


# ---------------------------------------------------------------------------
# the text format


EXAMPLE_TEXT = """
# demo family
dim 2
static [[2,0],[0,1]]
rect [1,2]
template base=[[1,1],[0,2]] scale=(2,2) params=primes
recttemplate [t,2] params=geometric:2
"""


def test_parse_family_roundtrip():
    spec = parse_family(EXAMPLE_TEXT)
    assert spec.dim == 2
    assert len(spec.entries) == 4
    assert spec.entries[0] == Static(Lattice.from_diagonal((2, 1)))
    assert spec.entries[1] == Rectangular((1, 2))
    assert spec.entries[2] == Template(hnf([(1, 1), (0, 2)]), 1, Primes())
    assert spec.entries[3] == RectTemplate((RectEntry(1, 1), RectEntry(2, 0)), Geometric(2))
    assert parse_family(format_family(spec)) == spec


def test_parse_family_transform():
    text = "dim 2\nrect [3,5]\ntransform [[1,0],[2,1]]\n"
    spec = parse_family(text)
    assert spec.transform == UnimodularMap(((1, 0), (2, 1)))
    assert parse_family(format_family(spec)) == spec


def test_parse_rejects_improper_with_line_number():
    bad = "dim 2\nstatic [[1,0],[0,1]]\n"
    with pytest.raises(FamilyParseError) as exc:
        parse_family(bad)
    assert exc.value.line_no == 2
    assert "line 2" in str(exc.value)


def test_parse_rejects_rank_deficient():
    with pytest.raises(FamilyParseError):
        parse_family("dim 2\nstatic [[2,4]]\n")


def test_parse_rejects_missing_dim():
    with pytest.raises(FamilyParseError):
        parse_family("rect [2,2]\n")


def test_parse_slot_forms():
    spec = parse_family("dim 3\nrecttemplate [t^2,3t,7] params=primes!2,5\n")
    entry = spec.entries[0]
    assert entry.entries == (RectEntry(1, 2), RectEntry(3, 1), RectEntry(7, 0))
    assert entry.params == Primes(exclude=(2, 5))


def test_squarefree_closed_under_roundtrip():
    spec = preset("squarefree-1d")
    assert parse_family(format_family(spec)) == spec
