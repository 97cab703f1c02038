import random

import pytest

from ssp_kit.core import Interaction, Region, is_region, type_of, validate_ts
from ssp_kit.engine import (
    AtomStatus,
    Decision,
    InvalidAtom,
    OracleCapExceeded,
    SearchBudget,
    WrongTypeFamily,
    brute_force_decide,
    brute_force_regions,
    brute_force_supports,
    decide_ssp,
    embedding_certificate,
    fast_path_swap_core,
    solve_atom,
)
from ssp_kit.verify import (
    fixture_event_cycle,
    fixture_parallel_pair,
    fixture_single_loop,
    fixture_single_state,
    random_ts,
    random_type,
)

I = Interaction
NOP_INP = type_of(I.NOP, I.INP)


class TestSolveAtom:
    def test_solved_returns_validated_region(self):
        ts = fixture_parallel_pair()
        verdict = solve_atom(ts, NOP_INP, ("r0", "r1"))
        assert verdict.status is AtomStatus.SOLVED
        assert is_region(ts, NOP_INP, verdict.region)
        assert verdict.region.solves(("r0", "r1"))

    def test_unsolvable_on_the_event_cycle(self):
        ts = fixture_event_cycle()
        verdict = solve_atom(ts, NOP_INP, ("s0", "s1"))
        assert verdict.status is AtomStatus.UNSOLVABLE
        assert verdict.region is None

    def test_zero_budget_exhausts_immediately(self):
        ts = fixture_parallel_pair()
        verdict = solve_atom(ts, NOP_INP, ("r0", "r1"), budget=0)
        assert verdict.status is AtomStatus.EXHAUSTED
        assert verdict.nodes == 0

    def test_budget_object(self):
        ts = fixture_parallel_pair()
        verdict = solve_atom(
            ts, NOP_INP, ("r0", "r1"), budget=SearchBudget(max_nodes=None)
        )
        assert verdict.status is AtomStatus.SOLVED

    def test_invalid_atom(self):
        ts = fixture_parallel_pair()
        with pytest.raises(InvalidAtom):
            solve_atom(ts, NOP_INP, ("r0", "r0"))
        with pytest.raises(InvalidAtom):
            solve_atom(ts, NOP_INP, ("r0", "ghost"))

    def test_empty_type_cannot_separate(self):
        ts = fixture_parallel_pair()
        verdict = solve_atom(ts, frozenset(), ("r0", "r1"))
        assert verdict.status is AtomStatus.UNSOLVABLE


class TestDecideSsp:
    def test_single_state_has_ssp_vacuously(self):
        report = decide_ssp(fixture_single_state(), frozenset())
        assert report.decision is Decision.HAS_SSP
        assert report.witness_atom is None
        assert report.regions == []

    def test_lacks_reports_first_unsolvable_atom(self):
        report = decide_ssp(fixture_event_cycle(), NOP_INP)
        assert report.decision is Decision.LACKS_SSP
        assert report.witness_atom == ("s0", "s1")

    def test_unknown_on_exhaustion(self):
        chain = validate_ts(
            [("a", "x", "b"), ("b", "y", "c")], "a"
        )
        report = decide_ssp(chain, NOP_INP, budget=0)
        assert report.decision is Decision.UNKNOWN
        assert report.witness_atom is None

    def test_reuse_skips_searches(self):
        ts = validate_ts(
            [("a", "x", "b"), ("b", "y", "c"), ("c", "z", "d")], "a"
        )
        with_reuse = decide_ssp(ts, type_of(I.NOP, I.INP, I.OUT), reuse=True)
        without = decide_ssp(ts, type_of(I.NOP, I.INP, I.OUT), reuse=False)
        assert with_reuse.decision is without.decision is Decision.HAS_SSP
        assert with_reuse.stats.nodes_expanded < without.stats.nodes_expanded

    def test_parallel_matches_sequential(self):
        rng = random.Random(99)
        for _ in range(25):
            ts = random_ts(rng, max_states=5, max_events=3)
            tau = random_type(rng)
            seq = decide_ssp(ts, tau)
            par = decide_ssp(ts, tau, max_workers=4)
            assert seq.decision is par.decision
            assert seq.witness_atom == par.witness_atom

    def test_report_region_vectors_separate_all_atoms(self):
        ts = validate_ts(
            [("a", "x", "b"), ("b", "y", "c"), ("c", "z", "a")], "a"
        )
        report = decide_ssp(ts, type_of(I.NOP, I.INP, I.OUT))
        assert report.decision is Decision.HAS_SSP
        assert embedding_certificate(ts, report.regions).injective


class TestBruteForce:
    def test_region_count_on_the_event_cycle(self):
        regions = brute_force_regions(fixture_event_cycle(), NOP_INP)
        keys = {r.key() for r in regions}
        assert len(regions) == len(keys) == 2
        assert all(r.signature["a"] is I.NOP for r in regions)

    def test_all_eight_on_single_state(self):
        loop = fixture_single_loop()
        regions = brute_force_regions(loop, frozenset(Interaction))
        # loops admit exactly the value-preserving interactions per support
        sigs = {(r.support["s0"], r.signature["a"]) for r in regions}
        assert sigs == {
            (0, I.NOP), (0, I.RES), (0, I.FREE),
            (1, I.NOP), (1, I.SET), (1, I.USED),
        }

    def test_cap_enforced(self):
        edges = [(f"s{i}", "x", f"s{i+1}") for i in range(17)]
        big = validate_ts(edges, "s0")
        with pytest.raises(OracleCapExceeded):
            brute_force_regions(big, NOP_INP)

    def test_supports_plain_and_normalized_agree_with_identity(self):
        # with the identity present, a support admits a region exactly when
        # it admits a normalized one
        rng = random.Random(7)
        for _ in range(40):
            ts = random_ts(rng, max_states=5, max_events=3)
            tau = random_type(rng) | {I.NOP}
            assert brute_force_supports(ts, tau) == brute_force_supports(
                ts, tau, normalized=True
            )

    def test_decide_agrees_with_engine(self):
        rng = random.Random(31337)
        for _ in range(60):
            ts = random_ts(rng, max_states=5, max_events=3)
            tau = random_type(rng)
            got = decide_ssp(ts, tau)
            want = brute_force_decide(ts, tau)
            assert got.decision is want.decision
            assert got.witness_atom == want.witness_atom


class TestFastPath:
    def test_rejects_other_types(self):
        with pytest.raises(WrongTypeFamily):
            fast_path_swap_core(fixture_single_state(), NOP_INP)
        with pytest.raises(WrongTypeFamily):
            fast_path_swap_core(
                fixture_single_state(), type_of(I.INP, I.OUT)
            )

    def test_single_state(self):
        report = fast_path_swap_core(fixture_single_state(), type_of(I.SWAP))
        assert report.decision is Decision.HAS_SSP

    def test_loop_kills_everything(self):
        looped = validate_ts([("a", "x", "b"), ("b", "y", "b")], "a")
        report = fast_path_swap_core(looped, type_of(I.SWAP, I.INP))
        assert report.decision is Decision.LACKS_SSP

    def test_two_states_separable(self):
        report = fast_path_swap_core(fixture_event_cycle(), type_of(I.SWAP))
        assert report.decision is Decision.HAS_SSP

    def test_three_states_never_separable(self):
        chain = validate_ts([("a", "x", "b"), ("b", "y", "c")], "a")
        report = fast_path_swap_core(chain, type_of(I.SWAP, I.INP, I.OUT))
        assert report.decision is Decision.LACKS_SSP
        # the witness pair really is unsolvable
        verdict = solve_atom(
            chain, type_of(I.SWAP, I.INP, I.OUT), report.witness_atom
        )
        assert verdict.status is AtomStatus.UNSOLVABLE

    def test_branching_witness(self):
        fork = validate_ts([("a", "x", "b"), ("a", "y", "c")], "a")
        report = fast_path_swap_core(fork, type_of(I.SWAP))
        assert report.decision is Decision.LACKS_SSP
        assert report.witness_atom == ("b", "c")


class TestEmbeddingCertificate:
    def test_vacuous_single_state(self):
        cert = embedding_certificate(fixture_single_state(), [])
        assert cert.injective

    def test_detects_collision(self):
        ts = fixture_parallel_pair()
        same = Region({"r0": 1, "r1": 1}, {"b": I.NOP, "c": I.NOP})
        cert = embedding_certificate(ts, [same])
        assert not cert.injective
        assert cert.vectors["r0"] == cert.vectors["r1"] == (1,)
