import logging
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sentanalogy.datagen import CATEGORY_POOL, AnalogyQuestion, expand_questions
from sentanalogy.solver import (
    Diagnostics,
    Prediction,
    SolverConfig,
    resolve_candidates,
    score_cos_add,
    score_cos_mul,
    solve,
    solve_batch,
)
from sentanalogy.store import EmbeddingTable

from test_datagen import synthetic_pairs


def oracle_cosine(table, x, y):
    """Cosine from raw vectors; zero-norm items score 0 against everything."""
    vx, vy = table.vector(x), table.vector(y)
    nx, ny = math.sqrt(float(vx @ vx)), math.sqrt(float(vy @ vy))
    if nx == 0.0 or ny == 0.0:
        return 0.0
    return float(vx @ vy) / (nx * ny)


def oracle_solve(table, question, candidates, cfg):
    """Candidate-at-a-time reference: python loops, raw-vector cosines."""
    scores = []
    for d in candidates:
        if cfg.metric == "cos_mul":
            s_c = (oracle_cosine(table, d, question.c) + 1.0) / 2.0
            s_b = (oracle_cosine(table, d, question.b) + 1.0) / 2.0
            s_a = (oracle_cosine(table, d, question.a) + 1.0) / 2.0
            scores.append(s_c * s_b / (s_a + cfg.epsilon))
        elif cfg.add_form == "offset":
            target = table.vector(question.b) - table.vector(question.a) + table.vector(question.c)
            norm = math.sqrt(float(target @ target))
            if norm == 0.0:
                scores.append(0.0)
            else:
                vd = table.vector(d)
                nd = math.sqrt(float(vd @ vd))
                scores.append(0.0 if nd == 0.0 else float(vd @ target) / (nd * norm))
        else:
            scores.append(
                oracle_cosine(table, d, question.c)
                + oracle_cosine(table, d, question.b)
                - oracle_cosine(table, d, question.a)
            )
    if cfg.constrained:
        for i, d in enumerate(candidates):
            if d in question.exclusions:
                scores[i] = -math.inf
    best = 0
    for i in range(1, len(scores)):
        if scores[i] > scores[best]:
            best = i
    rank = None
    if question.gold_d in candidates:
        gold_pos = candidates.index(question.gold_d)
        gold_score = scores[gold_pos]
        if math.isfinite(gold_score):
            rank = (
                1
                + sum(1 for s in scores if s > gold_score)
                + sum(1 for s in scores[:gold_pos] if s == gold_score)
            )
    return Prediction(
        question.qid,
        candidates[best],
        float(scores[best]),
        rank,
        candidates[best] == question.gold_d,
        cfg.metric,
        cfg.protocol,
    )


def assert_matches_oracle(got, want):
    """Discrete fields must agree exactly; scores come from two different
    float evaluation orders, so they match to relative 1e-9 only."""
    assert (got.qid, got.predicted, got.rank_of_gold, got.correct) == (
        want.qid,
        want.predicted,
        want.rank_of_gold,
        want.correct,
    )
    assert (got.metric, got.protocol) == (want.metric, want.protocol)
    assert got.score == pytest.approx(want.score, rel=1e-9, abs=1e-12)


def random_instance(rng, in_pool_query):
    """One table + question + candidate list with dim <= 16, <= 50 candidates."""
    dim = int(rng.integers(2, 17))
    n_cand = int(rng.integers(4, 51))
    cand_ids = [f"d{k}" for k in range(n_cand)]
    if in_pool_query:
        a, b, c = cand_ids[0], cand_ids[1], cand_ids[2]
        gold = cand_ids[int(rng.integers(3, n_cand))]
        ids = cand_ids
    else:
        a, b, c = "qa", "qb", "qc"
        gold = cand_ids[int(rng.integers(0, n_cand))]
        ids = cand_ids + [a, b, c]
    matrix = rng.standard_normal((len(ids), dim))
    # occasional duplicate rows to exercise tie-breaking
    if n_cand >= 8 and rng.random() < 0.5:
        matrix[3] = matrix[4]
    table = EmbeddingTable(ids, matrix)
    question = AnalogyQuestion("q", "cat", a, b, c, gold, tuple(cand_ids), (a, b, c))
    return table, question, tuple(cand_ids)


ALL_CONFIGS = [
    SolverConfig(metric=metric, constrained=constrained)
    for metric in ("cos_add", "cos_mul")
    for constrained in (True, False)
]


class TestSolverConfig:
    def test_unknown_metric(self):
        with pytest.raises(ValueError, match="metric"):
            SolverConfig(metric="euclid")

    def test_epsilon_positive(self):
        with pytest.raises(ValueError, match="epsilon"):
            SolverConfig(epsilon=0.0)

    def test_unknown_add_form(self):
        with pytest.raises(ValueError, match="add_form"):
            SolverConfig(add_form="raw")

    def test_protocol_names(self):
        assert SolverConfig(constrained=True).protocol == "constrained"
        assert SolverConfig(constrained=False).protocol == "unconstrained"


class TestScoreFunctions:
    def test_add_no_offset_direction(self):
        # orthonormal a, b, c with d = (b - a + c)/sqrt(3):
        # cos(d,c) = cos(d,b) = 1/sqrt(3), cos(d,a) = -1/sqrt(3) -> sqrt(3)
        table = EmbeddingTable(
            ["a", "b", "c", "d"],
            np.array(
                [
                    [1.0, 0.0, 0.0],
                    [0.0, 1.0, 0.0],
                    [0.0, 0.0, 1.0],
                    [-1.0 / math.sqrt(3.0), 1.0 / math.sqrt(3.0), 1.0 / math.sqrt(3.0)],
                ]
            ),
        )
        got = score_cos_add(table, "a", "b", "c", "d")
        assert got == pytest.approx(math.sqrt(3.0), abs=1e-12)
        assert got == pytest.approx(1.7320508075688772, abs=1e-12)

    def test_add_with_d_equal_c_and_a_equal_b(self, random_table):
        table = random_table(["a", "c"], 8, seed=11)
        # a == b cancels; d == c contributes cosine 1
        assert score_cos_add(table, "a", "a", "c", "c") == pytest.approx(1.0, abs=1e-12)

    def test_add_matches_oracle(self, random_table):
        table = random_table(["a", "b", "c", "d"], 12, seed=3)
        expected = (
            oracle_cosine(table, "d", "c")
            + oracle_cosine(table, "d", "b")
            - oracle_cosine(table, "d", "a")
        )
        assert score_cos_add(table, "a", "b", "c", "d") == pytest.approx(expected, abs=1e-12)

    def test_mul_orthogonal_baseline(self):
        table = EmbeddingTable(["a", "b", "c", "d"], np.eye(4))
        got = score_cos_mul(table, "a", "b", "c", "d")
        assert got == pytest.approx(0.25 / 0.501, abs=1e-12)

    def test_mul_with_d_equal_a(self):
        table = EmbeddingTable(["a", "b", "c"], np.eye(3))
        got = score_cos_mul(table, "a", "b", "c", "a")
        assert got == pytest.approx(0.25 / 1.001, abs=1e-12)

    def test_mul_epsilon_guards_denominator(self, random_table):
        table = random_table(["a", "b", "c", "d"], 6, seed=5)
        big = score_cos_mul(table, "a", "b", "c", "d", epsilon=0.001)
        small = score_cos_mul(table, "a", "b", "c", "d", epsilon=0.5)
        assert big > small > 0.0

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_score_ranges(self, seed):
        rng = np.random.default_rng(seed)
        table = EmbeddingTable(["a", "b", "c", "d"], rng.standard_normal((4, 5)))
        add = score_cos_add(table, "a", "b", "c", "d")
        mul = score_cos_mul(table, "a", "b", "c", "d")
        assert -3.0 <= add <= 3.0
        assert 0.0 <= mul <= 1.0 / 0.001


class TestSolveAgainstOracle:
    def test_two_hundred_random_instances_all_configs(self):
        rng = np.random.default_rng(20240811)
        for trial in range(200):
            table, question, candidates = random_instance(rng, in_pool_query=trial % 2 == 0)
            for cfg in ALL_CONFIGS:
                got = solve(question, table, candidates, cfg)
                want = oracle_solve(table, question, candidates, cfg)
                assert_matches_oracle(got, want)

    def test_offset_form_against_oracle(self):
        rng = np.random.default_rng(99)
        cfg = SolverConfig(add_form="offset")
        for trial in range(50):
            table, question, candidates = random_instance(rng, in_pool_query=True)
            assert_matches_oracle(
                solve(question, table, candidates, cfg),
                oracle_solve(table, question, candidates, cfg),
            )

    def test_lowest_index_tie_break(self):
        # two identical candidate vectors: the earlier id must win
        table = EmbeddingTable(
            ["a", "b", "c", "d0", "d1"],
            np.array(
                [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [0.0, 1.0], [0.0, 1.0]],
            ),
        )
        q = AnalogyQuestion("q", "cat", "a", "b", "c", "d1", ("d0", "d1"), ("a", "b", "c"))
        got = solve(q, table, ("d0", "d1"), SolverConfig())
        assert got.predicted == "d0"
        assert got.rank_of_gold == 2

    def test_gold_rank_one_when_correct(self, random_table):
        table = random_table([f"i{k}" for k in range(6)], 4, seed=8)
        q = AnalogyQuestion(
            "q", "cat", "i0", "i1", "i2", "i3", tuple(f"i{k}" for k in range(6)), ("i0", "i1", "i2")
        )
        got = solve(q, table, tuple(f"i{k}" for k in range(6)), SolverConfig())
        assert got.correct == (got.rank_of_gold == 1)


class TestProtocols:
    def test_constrained_excludes_a_b_c(self):
        rng = np.random.default_rng(0)
        for trial in range(30):
            table, question, candidates = random_instance(rng, in_pool_query=True)
            got = solve(question, table, candidates, SolverConfig(constrained=True))
            assert got.predicted not in question.exclusions

    def test_unconstrained_with_a_equal_b_returns_c(self):
        # cos(d,b) - cos(d,a) vanishes, so the best candidate is c itself
        rng = np.random.default_rng(4)
        ids = [f"i{k}" for k in range(10)]
        table = EmbeddingTable(ids, rng.standard_normal((10, 6)))
        q = AnalogyQuestion("q", "cat", "i0", "i0", "i2", "i3", tuple(ids), ("i0", "i0", "i2"))
        got = solve(q, table, tuple(ids), SolverConfig(constrained=False))
        assert got.predicted == "i2"
        assert got.score == pytest.approx(1.0, abs=1e-12)

    def test_constrained_rank_never_worse(self):
        rng = np.random.default_rng(17)
        for trial in range(50):
            table, question, candidates = random_instance(rng, in_pool_query=True)
            if question.gold_d in question.exclusions:
                continue
            r_con = solve(question, table, candidates, SolverConfig(constrained=True)).rank_of_gold
            r_unc = solve(question, table, candidates, SolverConfig(constrained=False)).rank_of_gold
            assert r_con is not None and r_unc is not None and r_con <= r_unc

    def test_all_candidates_excluded_raises(self):
        table = EmbeddingTable(["a", "b", "c"], np.eye(3))
        q = AnalogyQuestion("q", "cat", "a", "b", "c", "c", ("a", "b", "c"), ("a", "b", "c"))
        with pytest.raises(ValueError, match="no candidates left"):
            solve(q, table, ("a", "b", "c"), SolverConfig(constrained=True))


class TestAddFormDivergence:
    def make(self):
        ids = ["a", "b", "c", "d1", "d2"]
        mat = np.array([[10.0, 0.0], [0.0, 1.0], [1.0, 0.0], [0.0, 1.0], [-1.0, 0.2]])
        table = EmbeddingTable(ids, mat)
        q = AnalogyQuestion("q", "cat", "a", "b", "c", "d1", ("d1", "d2"), ("a", "b", "c"))
        return table, q

    def test_forms_diverge_off_unit_sphere(self):
        table, q = self.make()
        p_sum = solve(q, table, ("d1", "d2"), SolverConfig(add_form="sum-of-cosines"))
        p_off = solve(q, table, ("d1", "d2"), SolverConfig(add_form="offset"))
        assert (p_sum.predicted, p_off.predicted) == ("d1", "d2")
        assert p_sum.score == pytest.approx(1.0, abs=1e-12)

    def test_forms_agree_on_unit_sphere(self):
        rng = np.random.default_rng(23)
        for trial in range(200):
            dim = int(rng.integers(2, 9))
            n = int(rng.integers(5, 20))
            ids = [f"i{k}" for k in range(n)]
            matrix = rng.standard_normal((n, dim))
            matrix /= np.linalg.norm(matrix, axis=1, keepdims=True)
            table = EmbeddingTable(ids, matrix)
            q = AnalogyQuestion(
                "q", "cat", "i0", "i1", "i2", ids[-1], tuple(ids), ("i0", "i1", "i2")
            )
            p_sum = solve(q, table, tuple(ids), SolverConfig(add_form="sum-of-cosines"))
            p_off = solve(q, table, tuple(ids), SolverConfig(add_form="offset"))
            assert p_sum.predicted == p_off.predicted


class TestZeroNorm:
    def make_table(self):
        return EmbeddingTable(
            ["a", "b", "c", "d0", "d1"],
            np.array(
                [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0], [0.0, 0.0]],
            ),
        )

    def test_zero_norm_query_scores_zero_similarity(self):
        table = self.make_table()
        q = AnalogyQuestion("q", "cat", "a", "b", "c", "d0", ("d0", "d1"), ("a", "b", "c"))
        got = solve(q, table, ("d0", "d1"), SolverConfig())
        want = oracle_solve(table, q, ("d0", "d1"), SolverConfig())
        assert_matches_oracle(got, want)

    def test_diagnostics_collects_zero_norm_items(self, caplog):
        table = self.make_table()
        q = AnalogyQuestion("q", "cat", "a", "b", "c", "d0", ("d0", "d1"), ("a", "b", "c"))
        diag = Diagnostics()
        with caplog.at_level(logging.WARNING):
            solve(q, table, ("d0", "d1"), SolverConfig(), diag=diag)
        assert diag.zero_norm_items == {"a", "d1"}
        assert any("zero-norm" in r.message for r in caplog.records)

    def test_batch_diagnostics_match(self):
        table = self.make_table()
        q = AnalogyQuestion("q", "cat", "a", "b", "c", "d0", ("d0", "d1"), ("a", "b", "c"))
        diag = Diagnostics()
        solve_batch([q], table, SolverConfig(), diag=diag)
        assert diag.zero_norm_items == {"a", "d1"}


class TestResolveCandidates:
    def test_category_pool_is_sorted_distinct_ids(self):
        questions = expand_questions(synthetic_pairs("cat", 3))
        resolved = resolve_candidates(questions)
        expected = tuple(sorted(f"cat/p{i:04d}/{side}" for i in range(3) for side in "ab"))
        assert all(resolved[q.qid] == expected for q in questions)

    def test_explicit_scope_kept_verbatim(self):
        scope = ("z", "m", "a")
        q = AnalogyQuestion("q", "cat", "a", "b", "c", "z", scope, ("a", "b", "c"))
        assert resolve_candidates([q]) == {"q": scope}

    def test_pools_isolated_by_category(self):
        questions = expand_questions(synthetic_pairs("c1", 2) + synthetic_pairs("c2", 2))
        resolved = resolve_candidates(questions)
        for q in questions:
            assert all(item.startswith(q.category) for item in resolved[q.qid])


class TestSolveBatch:
    def build_workload(self):
        pairs = synthetic_pairs("c1", 6) + synthetic_pairs("c2", 4)
        scope_owner = "c2/p0003"
        questions = expand_questions(pairs, {scope_owner: ("c2/p0003/b", "c2/p0000/a", "c2/p0001/b")})
        ids = sorted({i for q in questions for i in (q.a, q.b, q.c, q.gold_d)})
        rng = np.random.default_rng(31)
        table = EmbeddingTable(ids, rng.standard_normal((len(ids), 12)))
        return questions, table

    @pytest.mark.parametrize("cfg", ALL_CONFIGS + [SolverConfig(add_form="offset")])
    def test_batch_equals_sequential(self, cfg):
        questions, table = self.build_workload()
        resolved = resolve_candidates(questions)
        sequential = [solve(q, table, resolved[q.qid], cfg) for q in questions]
        assert solve_batch(questions, table, cfg) == sequential

    def test_parallel_equals_serial(self):
        questions, table = self.build_workload()
        cfg = SolverConfig(metric="cos_mul")
        assert solve_batch(questions, table, cfg, max_workers=4) == solve_batch(
            questions, table, cfg
        )

    def test_singleton_pool_group(self):
        # a question whose explicit scope is unique takes the single-question path
        table = EmbeddingTable(["a", "b", "c", "z"], np.eye(4))
        q = AnalogyQuestion("q", "cat", "a", "b", "c", "z", ("z",), ("a", "b", "c"))
        out = solve_batch([q], table, SolverConfig())
        assert out[0].predicted == "z" and out[0].correct

    def test_order_matches_input(self):
        questions, table = self.build_workload()
        shuffled = list(reversed(questions))
        out = solve_batch(shuffled, table, SolverConfig())
        assert [p.qid for p in out] == [q.qid for q in shuffled]

    def test_empty_input(self, random_table):
        assert solve_batch([], random_table(["a"], 3), SolverConfig()) == []

    def test_unknown_item_id_raises_key_error(self):
        table = EmbeddingTable(["a", "b", "c"], np.eye(3))
        q = AnalogyQuestion("q", "cat", "a", "b", "c", "zz", ("a", "b", "c", "zz"), ())
        with pytest.raises(KeyError, match="zz"):
            solve_batch([q], table, SolverConfig(constrained=False))

    def test_block_boundary_consistency(self):
        # more questions than one scoring block to cover multi-block gathers
        pairs = synthetic_pairs("big", 80)  # 3160 questions > block size
        questions = expand_questions(pairs)
        ids = sorted({i for q in questions for i in (q.a, q.b, q.c, q.gold_d)})
        rng = np.random.default_rng(7)
        table = EmbeddingTable(ids, rng.standard_normal((len(ids), 8)))
        cfg = SolverConfig()
        batch = solve_batch(questions, table, cfg)
        resolved = resolve_candidates(questions)
        spot = np.random.default_rng(1).choice(len(questions), size=60, replace=False)
        for i in spot:
            assert batch[i] == solve(questions[i], table, resolved[questions[i].qid], cfg)
