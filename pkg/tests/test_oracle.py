import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectile import (
    CapacityError,
    GroupParams,
    GroupSet,
    canonicalize,
    difference_set,
    enumerate_and_check,
    find_complement_bruteforce,
    find_spectrum_bruteforce,
    scale_translate,
    spectral_pair_violation,
    tiling_pair_violation,
    verify_spectral_pair,
    verify_tiling_pair,
    zero_set,
)
from spectile.oracle import EnumerationReport, Mismatch

from conftest import SMALL_PARAMS, make_set

P22 = GroupParams(2, 2)


class TestVerifiers:
    def test_spectral_pair_example(self):
        A = make_set(P22, [(0, 0), (0, 1)])
        B = make_set(P22, [(0, 0), (0, 2)])
        assert verify_spectral_pair(A, B)

    def test_singleton_pair_vacuous(self):
        A = GroupSet.from_indices(P22, [3])
        B = GroupSet.from_indices(P22, [6])
        assert verify_spectral_pair(A, B)

    def test_spectral_pair_negative_with_witness(self):
        A = make_set(P22, [(0, 0), (0, 1)])
        violation = spectral_pair_violation(A, A)
        assert violation == P22.element(0, 1)

    def test_tiling_pair_example(self):
        A = make_set(P22, [(0, 0), (0, 1)])
        T = make_set(P22, [(0, 0), (0, 2), (1, 0), (1, 2)])
        assert verify_tiling_pair(A, T)

    def test_full_group_with_origin(self):
        assert verify_tiling_pair(GroupSet.full(P22), GroupSet.from_indices(P22, [0]))

    def test_tiling_pair_negative_with_witness(self):
        A = make_set(P22, [(0, 0), (0, 1)])
        T = make_set(P22, [(0, 0), (0, 1), (1, 0), (1, 1)])
        assert tiling_pair_violation(A, T) == P22.element(0, 1)

    def test_size_product_violation_message(self):
        A = make_set(P22, [(0, 0), (0, 1)])
        T = make_set(P22, [(0, 0)])
        assert "!=" in tiling_pair_violation(A, T)

    @settings(deadline=None, max_examples=80)
    @given(data=st.data())
    def test_pair_check_symmetry(self, data):
        q = data.draw(st.sampled_from(SMALL_PARAMS))
        A = GroupSet(q, data.draw(st.integers(0, (1 << q.order) - 1)))
        B = GroupSet(q, data.draw(st.integers(0, (1 << q.order) - 1)))
        assert verify_spectral_pair(A, B) == verify_spectral_pair(B, A)
        assert verify_tiling_pair(A, T=B) == verify_tiling_pair(B, T=A)


class TestBruteForceSearches:
    def test_find_spectrum_example(self):
        A = make_set(P22, [(0, 0), (0, 1)])
        assert find_spectrum_bruteforce(A) == make_set(P22, [(0, 0), (0, 2)])

    def test_find_spectrum_none_for_mixed_size(self):
        q = GroupParams(3, 2)
        A = GroupSet.from_indices(q, range(6))
        assert find_spectrum_bruteforce(A) is None

    def test_find_spectrum_singleton(self):
        A = GroupSet.from_indices(P22, [5])
        assert find_spectrum_bruteforce(A) == GroupSet.from_indices(P22, [0])

    def test_find_complement_example(self):
        A = make_set(P22, [(0, 0), (0, 1)])
        T = find_complement_bruteforce(A)
        assert T == make_set(P22, [(0, 0), (0, 2), (1, 0), (1, 2)])

    def test_find_complement_size_obstruction(self):
        A = GroupSet.from_indices(P22, [0, 1, 2])
        assert find_complement_bruteforce(A) is None

    def test_find_complement_full_group(self):
        assert find_complement_bruteforce(GroupSet.full(P22)) == GroupSet.from_indices(P22, [0])

    def test_empty_set_has_no_partners(self):
        E = GroupSet.empty(P22)
        assert find_spectrum_bruteforce(E) is None
        assert find_complement_bruteforce(E) is None

    def test_capacity_cap(self):
        q = GroupParams(2, 16)  # order 2^17 exceeds the per-set oracle cap
        A = GroupSet.from_indices(q, [0])
        with pytest.raises(CapacityError):
            find_spectrum_bruteforce(A)
        with pytest.raises(CapacityError):
            find_complement_bruteforce(A)

    @settings(deadline=None, max_examples=40)
    @given(data=st.data())
    def test_found_partners_verify(self, data):
        q = data.draw(st.sampled_from(SMALL_PARAMS))
        A = GroupSet(q, data.draw(st.integers(1, (1 << q.order) - 1)))
        B = find_spectrum_bruteforce(A)
        if B is not None:
            assert verify_spectral_pair(A, B)
            assert B.cardinality == A.cardinality
        T = find_complement_bruteforce(A)
        if T is not None:
            assert verify_tiling_pair(A, T)
            assert A.cardinality * T.cardinality == q.order
            if 1 < A.cardinality < q.order:
                assert not zero_set(A).is_empty()
                assert not zero_set(T).is_empty()

    @settings(deadline=None, max_examples=30)
    @given(data=st.data())
    def test_orbit_invariance_of_verdicts(self, data):
        q = data.draw(st.sampled_from(SMALL_PARAMS[:4]))
        A = GroupSet(q, data.draw(st.integers(1, (1 << q.order) - 1)))
        a = data.draw(st.sampled_from(q.units()))
        g = q.element_from_index(data.draw(st.integers(0, q.order - 1)))
        A2 = scale_translate(A, a, g)
        assert (find_spectrum_bruteforce(A) is None) == (find_spectrum_bruteforce(A2) is None)
        assert (find_complement_bruteforce(A) is None) == (find_complement_bruteforce(A2) is None)


class TestCanonicalize:
    def test_idempotent(self, small_params):
        q = small_params
        A = GroupSet(q, 0b1101 % (1 << q.order) | 1)
        assert canonicalize(canonicalize(A)) == canonicalize(A)

    def test_example_translation(self):
        A = make_set(P22, [(1, 2), (1, 3)])
        assert canonicalize(A) == make_set(P22, [(0, 0), (0, 1)])

    def test_full_group_fixed(self, small_params):
        q = small_params
        assert canonicalize(GroupSet.full(q)) == GroupSet.full(q)

    def test_constant_on_orbit(self):
        q = GroupParams(3, 1)
        A = make_set(q, [(0, 0), (1, 2), (2, 1)])
        canon = canonicalize(A)
        for a in q.units():
            for gi in range(q.order):
                img = scale_translate(A, a, q.element_from_index(gi))
                assert canonicalize(img) == canon


class TestEnumerate:
    def test_z2z2_counts_match_known_values(self):
        report = enumerate_and_check(GroupParams(2, 1))
        assert report.subsets_examined == 16
        assert report.tiles == 11
        assert report.spectral == 11
        assert report.mismatches == []

    def test_z2z4_clean(self):
        report = enumerate_and_check(P22)
        assert report.subsets_examined == 256
        assert report.tiles == report.spectral == 75
        assert report.mismatches == []

    def test_z3z3_clean(self):
        report = enumerate_and_check(GroupParams(3, 1))
        assert report.subsets_examined == 512
        assert report.tiles == report.spectral == 94
        assert report.mismatches == []

    def test_shard_reports_byte_identical(self):
        reports = [enumerate_and_check(P22, shards=s) for s in (1, 2, 4)]
        assert reports[0].canonical_json() == reports[1].canonical_json()
        assert reports[0].canonical_json() == reports[2].canonical_json()

    def test_size_filter_counts(self):
        q = GroupParams(3, 1)
        report = enumerate_and_check(q, size_filter=[3, 6])
        assert report.size_filter == (3, 6)
        assert report.subsets_examined == 84 + 84
        assert report.tiles == report.spectral == 84
        assert report.mismatches == []

    def test_canonical_mode(self):
        report = enumerate_and_check(P22, use_canonical=True)
        # independent oracle: Burnside count of affine orbits on subsets
        q = P22
        total = 0
        maps = 0
        for a in q.units():
            for gi in range(q.order):
                g = q.element_from_index(gi)
                perm = [(q.element_from_index(i).scale(a) + g).index for i in range(q.order)]
                seen = [False] * q.order
                cycles = 0
                for s in range(q.order):
                    if seen[s]:
                        continue
                    cycles += 1
                    j = s
                    while not seen[j]:
                        seen[j] = True
                        j = perm[j]
                total += 2**cycles
                maps += 1
        assert total % maps == 0
        assert report.orbits_examined == total // maps == 34
        assert report.tiles == report.spectral == 15
        assert report.mismatches == []

    def test_canonical_shard_determinism(self):
        r1 = enumerate_and_check(P22, use_canonical=True, shards=1)
        r3 = enumerate_and_check(P22, use_canonical=True, shards=3)
        assert r1.canonical_json() == r3.canonical_json()

    def test_full_sweep_capacity(self):
        with pytest.raises(CapacityError):
            enumerate_and_check(GroupParams(2, 4))  # order 32 > 27 without filter

    def test_filtered_capacity(self):
        with pytest.raises(CapacityError):
            enumerate_and_check(GroupParams(2, 5), size_filter=[2])  # order 64 > 32

    def test_wall_time_not_in_canonical_report(self):
        report = enumerate_and_check(GroupParams(2, 1))
        assert report.wall_time > 0
        assert "wall" not in report.canonical_json()

    def test_mismatch_serialization_embeds_set_text(self):
        # fabricated mismatches exercise the canonical embedding
        report = EnumerationReport(
            params=P22,
            size_filter=None,
            subsets_examined=0,
            orbits_examined=None,
            tiles=0,
            spectral=0,
            mismatches=[Mismatch("divisibility", 0b11, 2, "a")],
            wall_time=1.0,
        )
        text = report.canonical_json()
        assert '"divisibility"' in text
        assert "2 2\\n0 0\\n0 1\\n" in text
