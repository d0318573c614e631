import numpy as np
import pytest

from qverify import (
    BooleanFunction,
    build_algorithm,
    build_stage_query,
    build_stage_unitary,
    check_exact,
    compute,
    hadamard_power,
    index_set,
    is_unitary,
    run,
    stage_plan,
    tensor,
)

import refdata


class TestIndexSet:
    def test_first_stage_of_eight(self):
        # 1-based form {1, 5}.
        assert index_set(1, 8).tolist() == [0, 4]

    def test_second_stage_of_eight(self):
        # 1-based form {1, 3, 5, 7}.
        assert index_set(2, 8).tolist() == [0, 2, 4, 6]

    def test_first_stage_of_four(self):
        # 1-based form {1, 3}.
        assert index_set(1, 4).tolist() == [0, 2]

    def test_last_stage_is_every_index(self):
        assert index_set(3, 8).tolist() == list(range(8))

    @pytest.mark.parametrize("i,k", [(3, 4), (2, 2), (0, 8), (1, 6)])
    def test_rejects_bad_arguments(self, i, k):
        with pytest.raises(ValueError):
            index_set(i, k)

    @pytest.mark.parametrize("k", [2, 8, 64, 1024])
    def test_spacing_formula(self, k):
        for i in range(1, k.bit_length()):
            indices = index_set(i, k)
            assert indices.shape == (1 << i,)
            assert np.array_equal(indices, np.arange(1 << i) * (k >> i))
            assert indices[0] == 0


class TestStagePlan:
    def test_pairs_partition_consecutive_indices(self):
        plan = stage_plan(2, 8)
        assert plan.stage == 2
        assert plan.pairs.tolist() == [[0, 2], [4, 6]]
        assert np.array_equal(plan.pairs.reshape(-1), plan.indices)

    def test_pair_count(self):
        for i in range(1, 6):
            assert stage_plan(i, 32).pairs.shape == (1 << (i - 1), 2)


class TestStageMatrices:
    def test_six_bit_stage_unitaries(self):
        assert np.abs(build_stage_unitary(1, 8) - refdata.SIX_BIT_U1).max() <= 1e-12
        assert np.abs(build_stage_unitary(2, 8) - refdata.SIX_BIT_U2).max() <= 1e-12
        assert np.abs(build_stage_unitary(3, 8) - refdata.SIX_BIT_U3).max() <= 1e-12

    def test_six_bit_stage_queries(self):
        assert build_stage_query(1, 8).var_map.tolist() == refdata.SIX_BIT_Q1_VARS
        assert build_stage_query(2, 8).var_map.tolist() == refdata.SIX_BIT_Q2_VARS
        assert build_stage_query(3, 8).var_map.tolist() == refdata.SIX_BIT_Q3_VARS

    def test_four_bit_stage_matrices(self):
        assert np.abs(build_stage_unitary(1, 4) - refdata.FOUR_BIT_U1).max() <= 1e-12
        assert np.abs(build_stage_unitary(2, 4) - refdata.FOUR_BIT_U2).max() <= 1e-12
        assert build_stage_query(1, 4).var_map.tolist() == refdata.FOUR_BIT_Q1_VARS
        assert build_stage_query(2, 4).var_map.tolist() == refdata.FOUR_BIT_Q2_VARS

    def test_single_pair_stage_is_hadamard(self):
        assert np.abs(build_stage_unitary(1, 2) - hadamard_power(1)).max() <= 1e-12

    @pytest.mark.parametrize("k", [2, 4, 16, 128])
    def test_stage_unitaries_are_unitary(self, k):
        for i in range(1, k.bit_length()):
            assert is_unitary(build_stage_unitary(i, k), tol=1e-12)


class TestBuildAlgorithm:
    def test_four_bit_run_table(self, alg4):
        for word, (stage1, stage2, final, output) in refdata.FOUR_BIT_RUNS.items():
            trace = run(alg4, word)
            assert np.allclose(trace.after_stage(1), stage1, atol=1e-9), word
            assert np.allclose(trace.after_stage(2), stage2, atol=1e-9), word
            assert np.allclose(trace.final, final, atol=1e-9), word
            assert compute(alg4, word).output == output, word

    def test_two_bit_instance_by_hand(self):
        alg = build_algorithm(2)
        for word, (after_stage, final, output) in refdata.TWO_BIT_RUNS.items():
            trace = run(alg, word)
            assert np.allclose(trace.after_stage(1), after_stage, atol=1e-9), word
            assert np.allclose(trace.final, final, atol=1e-9), word
            result = compute(alg, word)
            assert (result.output, result.exact) == (output, True), word

    def test_two_bit_instance_matches_negated_xor(self):
        alg = build_algorithm(2)
        for word in ("00", "01", "10", "11"):
            x1, x2 = int(word[0]), int(word[1])
            assert compute(alg, word).output == 1 - (x1 ^ x2)

    def test_six_bit_matrices_match_fixtures(self, alg6):
        expected = (refdata.SIX_BIT_U1, refdata.SIX_BIT_U2, refdata.SIX_BIT_U3)
        expected_vars = (refdata.SIX_BIT_Q1_VARS, refdata.SIX_BIT_Q2_VARS,
                         refdata.SIX_BIT_Q3_VARS)
        for stage, exp_u, exp_v in zip(alg6.stages, expected, expected_vars):
            assert np.abs(stage.unitary - exp_u).max() <= 1e-12
            assert stage.query.var_map.tolist() == exp_v

    def test_final_unitary_is_tensor_power(self, alg6):
        h = hadamard_power(1)
        assert np.abs(alg6.final_unitary - tensor(tensor(h, h), h)).max() <= 1e-12

    @pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12, 14, 16])
    def test_dimension_law(self, n):
        alg = build_algorithm(n)
        assert alg.t_queries == n // 2
        assert alg.dim == 1 << (n // 2)
        assert alg.start[0] == 1.0 and not alg.start[1:].any()
        assert alg.labels[0] == 1 and not alg.labels[1:].any()

    @pytest.mark.parametrize("n", [3, 0, -2, 26])
    def test_rejects_bad_n(self, n):
        with pytest.raises(ValueError):
            build_algorithm(n)

    @pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12])
    def test_built_matrices_are_unitary(self, n):
        alg = build_algorithm(n)
        assert alg.unitary_within(1e-12)

    @pytest.mark.parametrize("n", [2, 6, 10, 12])
    def test_exact_on_every_word(self, n):
        report = check_exact(build_algorithm(n), BooleanFunction.verify(n))
        assert report.exact
        assert report.min_probability >= 1 - 1e-9
