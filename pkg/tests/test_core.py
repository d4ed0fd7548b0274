import itertools

import pytest

from prkit import (
    FamilyPair,
    MalformedInputError,
    PRStructure,
    all_pr_structures,
    entails,
    entails_indexed,
    entails_pairset,
    family_witnesses,
    is_partitioned,
    pr_structure,
    reindex,
    rho_inverse,
    sigma_n,
    two_element_lattical,
)

import oracles


@pytest.fixture(scope="module")
def s3():
    return sigma_n(3)


def small_structures():
    for p in (1, 2):
        for r in (1, 2):
            yield from all_pr_structures(p, r)


class TestConstruction:
    def test_rejects_empty_props(self):
        with pytest.raises(MalformedInputError):
            PRStructure((), ("r",), ())

    def test_rejects_empty_reals(self):
        with pytest.raises(MalformedInputError):
            PRStructure(("a",), (), (0,))

    def test_rejects_wrong_cell_count(self):
        with pytest.raises(MalformedInputError):
            PRStructure(("a", "b"), ("r",), (0, 0, 0))

    def test_rejects_unknown_realizer_bits(self):
        with pytest.raises(MalformedInputError):
            PRStructure(("a",), ("r",), (2,))

    def test_rejects_duplicate_names(self):
        with pytest.raises(MalformedInputError):
            PRStructure(("a", "a"), ("r",), (0, 0, 0, 0))

    def test_pr_structure_builder(self, s3):
        rebuilt = pr_structure(
            s3.props,
            s3.reals,
            {
                (s3.props[a], s3.props[b]): s3.cell_names(a, b)
                for a in range(3)
                for b in range(3)
            },
        )
        assert rebuilt == s3


class TestEntailsIndexed:
    def test_sigma3_diagonal_family(self, s3):
        f = FamilyPair((0, 1), (0, 1))
        assert entails_indexed(s3, f)
        assert family_witnesses(s3, f) == frozenset({"2", "3"})

    def test_sigma3_shifted_family(self, s3):
        assert not entails_indexed(s3, FamilyPair((0, 1), (1, 2)))

    def test_empty_family_everywhere(self, s3):
        f = FamilyPair((), ())
        assert entails_indexed(s3, f)
        assert family_witnesses(s3, f) == frozenset(s3.reals)
        for s in itertools.islice(small_structures(), 50):
            assert entails_indexed(s, f)

    def test_invalid_prop_rejected(self, s3):
        with pytest.raises(MalformedInputError):
            entails_indexed(s3, FamilyPair((0, 7), (0, 0)))

    def test_mismatched_lengths_rejected(self):
        with pytest.raises(MalformedInputError):
            FamilyPair((0,), (0, 0))


class TestEntails:
    def test_sigma3_chain(self, s3):
        assert entails(s3, 0, 2)
        assert not entails(s3, 2, 0)

    def test_lattical_top_not_below_bottom(self):
        tel = two_element_lattical()
        assert not entails(tel, tel.prop_id("top"), tel.prop_id("bot"))

    def test_agrees_with_singleton_family(self, s3):
        for a in range(3):
            for b in range(3):
                assert entails(s3, a, b) == entails_indexed(
                    s3, FamilyPair((a,), (b,))
                )

    def test_invalid_id(self, s3):
        with pytest.raises(MalformedInputError):
            entails(s3, 0, 9)


class TestEntailsPairset:
    def test_sigma3_examples(self, s3):
        assert entails_pairset(s3, [(0, 1), (0, 2)])
        assert entails_pairset(s3, [])
        assert entails_pairset(s3, [(0, 0), (1, 1), (2, 2)])
        assert family_witnesses(s3, FamilyPair((0, 1, 2), (0, 1, 2))) == frozenset(
            {"3"}
        )

    def test_factors_every_family(self, s3):
        for phi in itertools.product(range(3), repeat=2):
            for psi in itertools.product(range(3), repeat=2):
                f = FamilyPair(phi, psi)
                assert entails_indexed(s3, f) == entails_pairset(s3, f.pair_set())


class TestReindex:
    def test_identity_map(self):
        f = FamilyPair((0, 1), (1, 2))
        assert reindex(f, (0, 1)) == f

    def test_constant_map_from_entailing_component(self, s3):
        f = FamilyPair((0, 1), (1, 2))
        g = reindex(f, (0, 0, 0))
        assert g == FamilyPair((0, 0, 0), (1, 1, 1))
        assert entails_indexed(s3, g)

    def test_can_create_entailment_never_destroy(self, s3):
        f = FamilyPair((0, 1), (1, 2))
        assert not entails_indexed(s3, f)
        g = reindex(f, (0,))
        assert g == FamilyPair((0,), (1,))
        assert entails_indexed(s3, g)

    def test_out_of_range(self):
        with pytest.raises(MalformedInputError):
            reindex(FamilyPair((0,), (0,)), (1,))

    def test_functoriality_exhaustive_small(self):
        # entailment over the target index set survives any precomposition
        for s in itertools.islice(small_structures(), 0, None, 7):
            n = s.n_props
            for phi in itertools.product(range(n), repeat=2):
                for psi in itertools.product(range(n), repeat=2):
                    f = FamilyPair(phi, psi)
                    if not entails_indexed(s, f):
                        continue
                    for k in (0, 1, 2, 3):
                        for m in itertools.product(range(2), repeat=k):
                            assert entails_indexed(s, reindex(f, m))


class TestRhoInverse:
    def test_sigma3_first_realizer(self, s3):
        assert rho_inverse(s3, 0) == frozenset({(0, 0), (0, 1), (0, 2)})

    def test_sigma3_last_realizer(self, s3):
        assert rho_inverse(s3, 2) == frozenset({(0, 0), (1, 1), (2, 2)})

    def test_unused_realizer(self):
        s = pr_structure(("a",), ("r", "s"), {("a", "a"): ["r"]})
        assert rho_inverse(s, 1) == frozenset()

    def test_invalid_id(self, s3):
        with pytest.raises(MalformedInputError):
            rho_inverse(s3, 3)


class TestIsPartitioned:
    def test_single_realizer_always(self):
        for r in range(4):
            s = pr_structure(("a", "b"), ("*",), {("a", "b"): ["*"]})
            assert is_partitioned(s)

    def test_sigma3_is_not(self, s3):
        assert not is_partitioned(s3)

    def test_matches_disjoint_preimages_exhaustively(self):
        for s in small_structures():
            disjoint = all(
                not (rho_inverse(s, r) & rho_inverse(s, t))
                for r in range(s.n_reals)
                for t in range(r + 1, s.n_reals)
            )
            assert is_partitioned(s) == disjoint


class TestPointwiseSoundness:
    def test_indexed_implies_pointwise(self):
        for s in itertools.islice(small_structures(), 0, None, 5):
            n = s.n_props
            for phi in itertools.product(range(n), repeat=2):
                for psi in itertools.product(range(n), repeat=2):
                    if entails_indexed(s, FamilyPair(phi, psi)):
                        assert all(entails(s, a, b) for a, b in zip(phi, psi))


class TestPermuteRealizers:
    def test_cells_follow_names(self, s3):
        perm = (2, 0, 1)
        permuted = s3.permute_realizers(perm)
        for a in range(3):
            for b in range(3):
                assert set(permuted.cell_names(a, b)) == set(s3.cell_names(a, b))

    def test_rejects_non_permutation(self, s3):
        with pytest.raises(MalformedInputError):
            s3.permute_realizers((0, 0, 1))
