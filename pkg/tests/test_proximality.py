import itertools
import json
import random

import pytest

from bfree.errors import (
    InconsistencyError,
    InvalidCoverError,
    NotPairwiseCoprimeError,
    NotRectangularError,
)
from bfree.families import (
    FamilySpec,
    Geometric,
    Primes,
    RectEntry,
    RectTemplate,
    Rectangular,
    Static,
    odd_primes,
    preset,
)
from bfree.lattices import Lattice, UnimodularMap, hnf
from bfree.proximality import (
    INCONCLUSIVE,
    NOT_PROXIMAL,
    PROXIMAL,
    ConditionRow,
    Covering,
    CoprimeSubscheme,
    Evidence,
    SearchBudget,
    _check_consistency,
    check_coprime_cover_candidate,
    check_covering,
    check_fixed_translate,
    conditions_report,
    coprime_index_subset,
    decide,
    decide_rectangular,
    extract_coprime_subset,
    prove_no_zero_window,
)
from bfree.windows import Box, Shape, all_zero_windows, find_zero_window, zero_window_by_crt


def rect_spec(*diags):
    return FamilySpec(len(diags[0]), tuple(Rectangular(d) for d in diags))


GEOM_2I_X3 = FamilySpec(2, (RectTemplate((RectEntry(1, 1), RectEntry(3, 0)), Geometric(2)),))
TT_PRIMES = FamilySpec(2, (RectTemplate((RectEntry(1, 1), RectEntry(1, 1)), Primes()),))


# ---------------------------------------------------------------------------
# decide


def test_decide_tt_over_primes_proximal():
    v = decide_rectangular(TT_PRIMES)
    assert v.status == PROXIMAL
    assert isinstance(v.certificate, CoprimeSubscheme)
    sample = v.certificate.sample
    for a, b in itertools.combinations(sample, 2):
        assert a.coprime(b)


def test_decide_squarefree_proximal():
    v = decide_rectangular(preset("squarefree-1d"))
    assert v.status == PROXIMAL


def test_decide_geometric_not_proximal_with_cover():
    v = decide_rectangular(GEOM_2I_X3)
    assert v.status == NOT_PROXIMAL
    assert isinstance(v.certificate, Covering)
    assert [c.to_columns() for c in v.certificate.covers] == [[[2, 0], [0, 3]]]


def test_decide_rect_demo_not_proximal():
    v = decide(preset("rect-demo"))
    assert v.status == NOT_PROXIMAL  # finite families are never proximal


def test_decide_rectangular_rejects_templates():
    with pytest.raises(NotRectangularError):
        decide_rectangular(preset("ex2"))


def test_decide_ex_presets_inconclusive_with_evidence():
    for name in ("ex2", "ex1"):
        v = decide(preset(name), SearchBudget(max_side=2, search_radius=12))
        assert v.status == INCONCLUSIVE
        assert isinstance(v.certificate, Evidence)
        assert v.zero_window_sides == (1, 2)


def test_verdict_json_shape():
    v = decide_rectangular(GEOM_2I_X3)
    data = json.loads(v.to_json())
    assert data["status"] == "NotProximal"
    assert data["certificate"]["kind"] == "Covering"
    assert "zero_window_sides" in data["evidence"]


def test_one_dimensional_recovery():
    # m = 1: proximal iff an infinite pairwise coprime subfamily exists
    primes_1d = FamilySpec(1, (RectTemplate((RectEntry(1, 1),), Primes()),))
    assert decide_rectangular(primes_1d).status == PROXIMAL
    even_1d = FamilySpec(1, (RectTemplate((RectEntry(2, 1),), Primes()),))
    v = decide_rectangular(even_1d)
    assert v.status == NOT_PROXIMAL
    assert [c.to_columns() for c in v.certificate.covers] == [[[2]]]
    mixed = FamilySpec(
        1,
        (
            Rectangular((6,)),
            RectTemplate((RectEntry(1, 1),), odd_primes()),
        ),
    )
    assert decide_rectangular(mixed).status == PROXIMAL


def test_proximal_certificate_feeds_crt_windows():
    v = decide_rectangular(TT_PRIMES)
    entry = TT_PRIMES.entries[v.certificate.entry_index]
    for k in (1, 2, 3):
        shape = Shape.from_box(Box((0, 0), (k, k)))
        members = [entry.member(p) for p in entry.params.values_up_to(200)[: len(shape)]]
        a = zero_window_by_crt(members, shape)
        for lat, f in zip(members, shape.offsets):
            assert lat.contains((a[0] + f[0], a[1] + f[1]))
        assert all(TT_PRIMES.covered((a[0] + f[0], a[1] + f[1])) for f in shape.offsets)


# ---------------------------------------------------------------------------
# coverings


def test_check_covering_geometric_family():
    report = check_covering(GEOM_2I_X3, [Lattice.from_diagonal((2, 3))])
    assert report.covered
    cert = report.certificate
    assert cert.missed_coset is not None
    assert not any(
        Lattice.from_diagonal((2, 3)).contains(cert.missed_coset) for _ in (0,)
    )


def test_check_covering_rejects_union_everything():
    covers = [
        Lattice.from_diagonal((1, 2)),
        Lattice.from_diagonal((2, 1)),
        hnf([(1, 1), (0, 2)]),
    ]
    with pytest.raises(InvalidCoverError):
        check_covering(preset("ex2"), covers)


def test_check_covering_rejects_improper():
    with pytest.raises(InvalidCoverError):
        check_covering(GEOM_2I_X3, [Lattice.whole(2)])


def test_check_covering_negative_with_witness():
    report = check_covering(TT_PRIMES, [Lattice.from_diagonal((2, 2))])
    assert not report.covered
    idx, label, point = report.witness
    assert idx == 0
    assert TT_PRIMES.covered(point)
    assert not Lattice.from_diagonal((2, 2)).contains(point)


def test_prove_no_zero_window_geometric():
    shape = Shape.from_offsets([(0, 0), (1, 0)])
    covers = [Lattice.from_diagonal((2, 3))]
    assert prove_no_zero_window(GEOM_2I_X3, shape, covers)
    # and indeed a scan of one full period finds nothing
    assert all_zero_windows(GEOM_2I_X3, shape, Box((0, 0), (1, 2))) == []
    # sanity: the single-cell shape does have windows
    assert find_zero_window(GEOM_2I_X3, Shape.from_offsets([(0, 0)]), Box.centered(4, 2))


def test_prove_no_zero_window_silent_when_windows_exist():
    spec = rect_spec((2, 2), (3, 3))
    covers = [Lattice.from_diagonal((2, 2)), Lattice.from_diagonal((3, 3))]
    shape = Shape.from_offsets([(0, 0), (1, 0)])
    assert not prove_no_zero_window(spec, shape, covers)


# ---------------------------------------------------------------------------
# fixed translates


def test_fixed_translate_ex1_examples():
    spec = preset("ex1")
    report = check_fixed_translate(spec, (0, 1), Lattice.from_diagonal((4, 2)))
    assert not report.holds and report.exact
    # the origin is covered, so it can never anchor a free translate
    for lat in (Lattice.from_diagonal((2, 2)), hnf([(1, 1), (0, 4)])):
        assert not check_fixed_translate(spec, (0, 0), lat).holds


def test_fixed_translate_ex1_never_holds():
    spec = preset("ex1")
    rng = random.Random(4)
    for _ in range(25):
        lat = Lattice.from_diagonal((rng.randint(1, 6), rng.randint(1, 6)))
        a = (rng.randint(-6, 6), rng.randint(-6, 6))
        assert not check_fixed_translate(spec, a, lat).holds


def test_fixed_translate_positive_case():
    # family {2Z x 2Z}: the odd-odd translate of 2Z x 2Z stays free
    spec = rect_spec((2, 2))
    report = check_fixed_translate(spec, (1, 1), Lattice.from_diagonal((2, 2)))
    assert report.holds and report.exact


def test_fixed_translate_missed_coset_of_covering():
    v = decide_rectangular(GEOM_2I_X3)
    cert = v.certificate
    period = cert.covers[0]
    for other in cert.covers[1:]:
        period = period.intersect(other)
    report = check_fixed_translate(GEOM_2I_X3, cert.missed_coset, period)
    assert report.holds and report.exact


# ---------------------------------------------------------------------------
# coprime subsets


def test_extract_coprime_subset_example():
    lats = [
        Lattice.from_diagonal((2, 2)),
        Lattice.from_diagonal((3, 3)),
        Lattice.from_diagonal((4, 4)),
    ]
    got = extract_coprime_subset(lats)
    assert got == [lats[0], lats[1]]


def test_extract_coprime_subset_all_coprime():
    lats = [Lattice.from_diagonal((p, p)) for p in (2, 3, 5, 7)]
    assert extract_coprime_subset(lats) == lats


def test_extract_coprime_subset_ex2_instances():
    spec = preset("ex2")
    instances = spec.instances_up_to(30)
    got = extract_coprime_subset(instances)
    # the two axes are coprime to each other but template members are
    # pairwise non-coprime, so at most one of them joins
    template_members = [lat for lat in got if not lat.is_diagonal()]
    assert len(template_members) <= 1


def test_extract_coprime_subset_greedy_path():
    lats = [Lattice.from_diagonal((p, p)) for p in (2, 3, 5, 7, 11, 13, 17)]
    got = extract_coprime_subset(lats, exact_limit=3)
    assert got == lats  # greedy keeps everything when all are coprime


def test_coprime_index_subset_examples():
    a = hnf([(2, 1), (0, 3)])  # index 6
    b = hnf([(5, 2), (0, 7)])  # index 35
    assert a.coprime(b)
    got = coprime_index_subset([a, b])
    assert got == [a, b]
    single = [Lattice.from_diagonal((2, 3))]
    assert coprime_index_subset(single) == single


def test_coprime_index_subset_requires_pairwise_coprime():
    with pytest.raises(NotPairwiseCoprimeError):
        coprime_index_subset(
            [Lattice.from_diagonal((2, 2)), Lattice.from_diagonal((2, 3))]
        )


def test_coprime_index_subset_pair_fallback():
    # greedy would keep only the first; the fallback still finds a coprime pair
    a = hnf([(2, 1), (0, 3)])  # index 6
    b = hnf([(2, 1), (0, 5)])  # hmm replaced below if not coprime to a
    c = hnf([(5, 2), (0, 7)])  # index 35, coprime indices with neither 6? gcd(6,35)=1
    lats = [a, c]
    got = coprime_index_subset(lats)
    assert len(got) == 2


def _random_coprime_family(rng, size):
    """Pairwise coprime lattices in Z^2 built from distinct prime diagonals."""
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    rng.shuffle(primes)
    out = []
    for p in primes[:size]:
        if rng.random() < 0.5:
            out.append(Lattice.from_diagonal((p, p)))
        else:
            out.append(hnf([(p, rng.randrange(p)), (0, p)]))
    return out


def test_coprime_index_subset_randomized_soundness():
    rng = random.Random(71)
    for _ in range(100):
        fam = _random_coprime_family(rng, rng.randint(1, 8))
        got = coprime_index_subset(fam)
        for x, y in itertools.combinations(got, 2):
            from math import gcd

            assert gcd(x.index, y.index) == 1
        if len(fam) >= 2:
            assert len(got) >= 2


# ---------------------------------------------------------------------------
# condition reports


def test_conditions_report_ex2():
    report = conditions_report(preset("ex2"), SearchBudget(max_side=3, search_radius=16))
    rows = report.rows
    assert rows["b"].holds is True and rows["b"].mode == "evidence"
    assert rows["d"].holds is False and rows["d"].mode == "exact"
    assert rows["a"].holds is True


def test_conditions_report_ex1_with_dprime():
    candidate = FamilySpec(2, (RectTemplate((RectEntry(1, 1), RectEntry(1, 1)), odd_primes()),))
    report = conditions_report(
        preset("ex1"), SearchBudget(max_side=3, search_radius=16), dprime_candidate=candidate
    )
    rows = report.rows
    assert rows["a"].holds is True
    assert rows["b"].holds is True
    assert rows["d"].holds is False and rows["d"].mode == "exact"
    assert rows["d_prime"].holds is False and rows["d_prime"].mode == "exact"


def test_conditions_report_ex2_dprime_candidate_survives():
    candidate = FamilySpec(2, (RectTemplate((RectEntry(1, 1), RectEntry(1, 1)), odd_primes()),))
    report = conditions_report(
        preset("ex2"), SearchBudget(max_side=2, search_radius=12), dprime_candidate=candidate
    )
    assert report.rows["d_prime"].holds is True
    assert report.rows["d_prime"].mode == "evidence"


def test_conditions_report_rectangular_all_true():
    report = conditions_report(TT_PRIMES, SearchBudget(max_side=2, search_radius=10))
    for key in ("a", "b", "c", "d", "e", "f"):
        assert report.rows[key].holds is True


def test_conditions_report_not_proximal_family():
    report = conditions_report(GEOM_2I_X3, SearchBudget(max_side=2, search_radius=10))
    for key in ("a", "b", "c", "e", "f"):
        assert report.rows[key].holds is False
    assert report.rows["d"].holds is False


def test_consistency_checker_raises():
    rows = {
        "a": ConditionRow(True, "exact", "x"),
        "b": ConditionRow(False, "exact", "y"),
    }
    with pytest.raises(InconsistencyError):
        _check_consistency(rows)
    rows = {
        "a": ConditionRow(False, "exact", "x"),
        "d": ConditionRow(True, "exact", "y"),
    }
    with pytest.raises(InconsistencyError):
        _check_consistency(rows)


def test_dprime_checker_requires_certified_candidate():
    vague = FamilySpec(2, (Static(hnf([(1, 1), (0, 2)])),))
    report = check_coprime_cover_candidate(preset("ex2"), vague)
    assert report.holds is None


# ---------------------------------------------------------------------------
# transported families


def test_decide_transported_matches_base():
    for k in (1, 2, 3):
        shear = UnimodularMap(((1, 0), (k, 1)))
        for base in (TT_PRIMES, GEOM_2I_X3):
            moved = FamilySpec(2, base.entries, transform=shear)
            assert decide(moved).status == decide(base).status


def test_transported_covering_certificate_verifies():
    shear = UnimodularMap(((1, 0), (2, 1)))
    moved = FamilySpec(2, GEOM_2I_X3.entries, transform=shear)
    v = decide(moved)
    assert v.status == NOT_PROXIMAL
    assert check_covering(moved, v.certificate.covers).covered
    expected_cover = shear.apply(Lattice.from_diagonal((2, 3)))
    assert list(v.certificate.covers) == [expected_cover]


# ---------------------------------------------------------------------------
# certificate construction routes


def test_crt_window_certificate_with_subscheme_note():
    from bfree.proximality import crt_window_certificate

    shape = Shape.from_offsets([(0, 0), (1, 0), (0, 1)])
    translate, period, cert = crt_window_certificate(TT_PRIMES, shape)
    assert len(cert.lattices) == 3
    for lat, f in zip(cert.lattices, shape.offsets):
        assert lat.contains((translate[0] + f[0], translate[1] + f[1]))
    assert "every window size" in cert.extension
    assert period == cert.lattices[0].intersect(cert.lattices[1]).intersect(cert.lattices[2])


def test_crt_window_certificate_finite_family_note():
    from bfree.proximality import crt_window_certificate

    shape = Shape.from_offsets([(0, 0), (1, 0)])
    translate, period, cert = crt_window_certificate(preset("rect-demo"), shape)
    assert "finite verification only" in cert.extension
    assert period == Lattice.from_diagonal((6, 6))


def test_fixed_translate_verdict():
    from bfree.proximality import fixed_translate_verdict

    spec = rect_spec((2, 2))
    v = fixed_translate_verdict(spec, (1, 1), Lattice.from_diagonal((2, 2)))
    assert v.status == NOT_PROXIMAL
    assert v.certificate.kind == "FixedTranslate"
    with pytest.raises(ValueError):
        fixed_translate_verdict(preset("ex2"), (0, 0), Lattice.from_diagonal((2, 2)))


def test_coprime_index_subset_fallback_triple():
    # pairwise coprime lattices with indices 6, 10, 21: greedy from the first
    # keeps only index 6 (shares a factor with both others), but the pair
    # (10, 21) has coprime indices and the fallback must surface it
    l6 = hnf([(2, 1), (0, 3)])
    l10 = hnf([(5, 2), (0, 2)])
    l21 = hnf([(7, 3), (0, 3)])
    assert l6.index, l10.index == (6, 10)
    assert l21.index == 21
    for a, b in itertools.combinations([l6, l10, l21], 2):
        assert a.coprime(b)
    got = coprime_index_subset([l6, l10, l21])
    assert got == [l10, l21]
    from math import gcd
    assert gcd(got[0].index, got[1].index) == 1
