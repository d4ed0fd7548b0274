import itertools
import random

import pytest

from prkit import (
    PreconditionError,
    all_pr_structures,
    bin_rel,
    canonicalize,
    compare,
    degree,
    equivalent,
    is_p_structure,
    observed_pointwise_cutoff,
    pr_structure,
    pumping_structures,
    random_pr_structures,
    reduce_dominated,
    rho_inverse,
    sigma_from_bin,
    sigma_n,
    structure_of,
    two_element_lattical,
)
from prkit.canonical import canonical_pair_sets

import oracles


def named_pairs(s, member_pairs):
    return frozenset((s.props[a], s.props[b]) for a, b in member_pairs)


class TestReduceDominated:
    def test_duplicate_preimages_collapse(self):
        s = pr_structure(("a",), ("r", "s"), {("a", "a"): ["r", "s"]})
        reduced = reduce_dominated(s)
        assert reduced.reals == ("r",)
        assert reduced.cell_names(0, 0) == ("r",)

    def test_sigma3_already_reduced(self):
        s3 = sigma_n(3)
        reduced = reduce_dominated(s3)
        assert reduced.reals == s3.reals
        assert reduced.rho == s3.rho

    def test_single_realizer_unchanged(self):
        s = pr_structure(("a", "b"), ("r",), {("a", "b"): ["r"]})
        assert reduce_dominated(s) == s

    def test_strictly_dominated_removed(self):
        s = pr_structure(
            ("a", "b"),
            ("big", "small"),
            {("a", "a"): ["big", "small"], ("a", "b"): ["big"]},
        )
        assert reduce_dominated(s).reals == ("big",)

    def test_all_empty_preimages_keep_one(self):
        s = pr_structure(("a",), ("r", "s", "t"), {})
        reduced = reduce_dominated(s)
        assert reduced.reals == ("r",)
        assert reduced.cell(0, 0) == 0


class TestCanonicalize:
    def test_sigma3_antichain(self):
        s3 = sigma_n(3)
        cf = canonicalize(s3)
        members = {named_pairs(s3, cf.member_pairs(m)) for m in cf.antichain}
        assert members == {
            frozenset({("1", "1"), ("1", "2"), ("1", "3")}),
            frozenset({("1", "1"), ("2", "2"), ("2", "3")}),
            frozenset({("1", "1"), ("2", "2"), ("3", "3")}),
        }

    def test_two_element_lattical_antichain(self):
        tel = two_element_lattical()
        cf = canonicalize(tel)
        members = {named_pairs(tel, cf.member_pairs(m)) for m in cf.antichain}
        assert members == {
            frozenset({("bot", "bot"), ("bot", "top")}),
            frozenset({("bot", "bot"), ("top", "top")}),
            frozenset({("bot", "top"), ("top", "top")}),
        }

    def test_single_realizer_structure_single_member(self):
        b = bin_rel(("x", "y"), [("x", "x"), ("x", "y"), ("y", "y")])
        s = sigma_from_bin(b)
        cf = canonicalize(s)
        assert len(cf.antichain) == 1
        assert named_pairs(s, cf.member_pairs(cf.antichain[0])) == frozenset(
            {("x", "x"), ("x", "y"), ("y", "y")}
        )

    def test_antichain_property_everywhere(self):
        for s in random_pr_structures(3, 6, seed=11, count=300):
            cf = canonicalize(s)
            for x in cf.antichain:
                for y in cf.antichain:
                    if x != y:
                        assert x | y != y, "one antichain member inside another"

    def test_enumeration_independence(self):
        rng = random.Random(5)
        for s in random_pr_structures(3, 5, seed=7, count=200):
            perm = list(range(s.n_reals))
            rng.shuffle(perm)
            assert canonical_pair_sets(s) == canonical_pair_sets(
                s.permute_realizers(tuple(perm))
            )

    def test_idempotent_through_rebuild(self):
        for s in random_pr_structures(3, 5, seed=13, count=200):
            cf = canonicalize(s)
            assert canonicalize(structure_of(cf)).antichain == cf.antichain

    def test_rebuilt_structure_equivalent(self):
        for s in random_pr_structures(2, 4, seed=17, count=100):
            assert equivalent(s, structure_of(canonicalize(s)))


class TestEquivalent:
    def test_reduction_is_equivalent(self):
        for s in random_pr_structures(3, 6, seed=23, count=200):
            assert equivalent(s, reduce_dominated(s))

    def test_realizer_renaming_is_equivalent(self):
        s3 = sigma_n(3)
        assert equivalent(s3, s3.permute_realizers((2, 1, 0)))

    def test_sigma2_padded_differs_from_sigma3(self):
        s3 = sigma_n(3)
        padded = pr_structure(
            ("1", "2", "3"),
            ("1", "2"),
            {
                ("1", "1"): ["1", "2"],
                ("1", "2"): ["1"],
                ("2", "2"): ["2"],
            },
        )
        assert not equivalent(s3, padded)
        assert compare(s3, padded) == "antichain-mismatch"

    def test_proposition_mismatch_reported(self):
        a = pr_structure(("a",), ("r",), {("a", "a"): ["r"]})
        b = pr_structure(("b",), ("r",), {("b", "b"): ["r"]})
        assert compare(a, b) == "proposition-mismatch"

    def test_matches_definitional_equivalence_exhaustively(self):
        # |P|=2, |R|<=2: equivalence iff equal entailed pair sets
        structures = [
            s for r in (1, 2) for s in all_pr_structures(2, r)
        ]
        signatures = [oracles.pairset_signature(s) for s in structures]
        pair_sets = [canonical_pair_sets(s) for s in structures]
        for i in range(0, len(structures), 3):
            for j in range(i, len(structures), 5):
                assert (pair_sets[i] == pair_sets[j]) == (
                    signatures[i] == signatures[j]
                )


class TestDegree:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_sigma_n(self, n):
        assert degree(sigma_n(n)) == n

    def test_p_structures_from_relations(self):
        b = bin_rel(("x", "y"), [("x", "y")])
        assert degree(sigma_from_bin(b)) == 1
        assert is_p_structure(sigma_from_bin(b))

    def test_two_element_lattical_by_brute_force(self):
        from prkit import PRStructure

        tel = two_element_lattical()
        assert degree(tel) == 3
        signature = oracles.pairset_signature(tel)
        for r in (1, 2):
            for candidate in all_pr_structures(2, r):
                renamed = PRStructure(tel.props, candidate.reals, candidate.rho)
                assert oracles.pairset_signature(renamed) != signature

    def test_finiteness_bound(self):
        for s in random_pr_structures(2, 6, seed=31, count=100):
            assert degree(s) <= 2 ** (s.n_props**2)


class TestIsPStructure:
    def test_examples(self):
        assert is_p_structure(
            sigma_from_bin(bin_rel(("x",), [("x", "x")]))
        )
        assert not is_p_structure(two_element_lattical())
        assert not is_p_structure(sigma_n(3))

    def test_matches_pointwise_oracle_exhaustively(self):
        for r in (1, 2):
            for s in all_pr_structures(2, r):
                assert is_p_structure(s) == oracles.pointwise_everywhere(s)


class TestPumping:
    def test_full_relation_cutoff_two(self):
        psi = bin_rel(
            ("a", "b"), [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]
        )
        first, second = pumping_structures(psi, 2)
        assert observed_pointwise_cutoff(first) == 2
        assert observed_pointwise_cutoff(second) == 4

    def test_three_pair_relation_second_structure(self):
        psi = bin_rel(("a", "b"), [("a", "a"), ("a", "b"), ("b", "b")])
        _, second = pumping_structures(psi, 2)
        assert observed_pointwise_cutoff(second) == 3

    def test_first_structure_realizers_are_small_subsets(self):
        psi = bin_rel(("a", "b"), [("a", "a"), ("a", "b")])
        first, _ = pumping_structures(psi, 2)
        assert set(first.reals) == {"{}", "{a->a}", "{a->b}"}

    def test_degenerate_cutoff_rejected(self):
        psi = bin_rel(("a",), [("a", "a")])
        with pytest.raises(PreconditionError):
            pumping_structures(psi, 1)
        with pytest.raises(PreconditionError):
            pumping_structures(psi, 0)

    def test_empty_relation_rejected(self):
        psi = bin_rel(("a",), [])
        with pytest.raises(PreconditionError):
            pumping_structures(psi, 2)

    def test_no_cutoff_when_pointwise(self):
        s = sigma_from_bin(bin_rel(("x", "y"), [("x", "y")]))
        assert observed_pointwise_cutoff(s) is None
