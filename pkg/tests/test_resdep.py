import random

import pytest

from qrespath import (
    FormulaError,
    QueryStats,
    dres_connecting_set,
    dres_contains,
    dres_full,
    dres_of_existential,
    dtriv_full,
    enumerate_resolution_paths,
    is_dependency_pair,
    parse_qdimacs,
    path_violations,
    relation_to_json_dict,
    relation_to_text,
    resolution_connected,
    resolution_connected_bruteforce,
)

import helpers

# ex1 variables: y1=1 y2=2 x1=3 y3=4 x2=5
# ex2 variables: u=1 e=2 v=3 x=4 y=5 z=6


class TestResolutionConnected:
    def test_example1_x1_to_y3_through_y1(self, ex1):
        connected, _ = resolution_connected(ex1, {1}, 3, 4)
        assert connected

    def test_example1_prose_companion_to_negated_y3(self, ex1):
        connected, _ = resolution_connected(ex1, {1}, 3, -4)
        assert connected

    def test_example1_negated_x1_disconnected_without_links(self, ex1):
        assert resolution_connected(ex1, set(), -3, 4)[0] is False
        assert resolution_connected(ex1, set(), -3, -4)[0] is False

    def test_example2_both_polarities(self, ex2):
        assert resolution_connected(ex2, {3, 5, 6}, 1, 2)[0] is True
        assert resolution_connected(ex2, {3, 5, 6}, -1, -2)[0] is True

    def test_same_literal_rejected(self, ex1):
        with pytest.raises(FormulaError):
            resolution_connected(ex1, set(), 1, 1)

    def test_unknown_literal_rejected(self, ex1):
        with pytest.raises(FormulaError):
            resolution_connected(ex1, set(), 9, 1)

    def test_universal_connecting_rejected(self, ex1):
        with pytest.raises(FormulaError):
            resolution_connected(ex1, {3}, 1, 4)

    def test_witness_validates_on_original_formula(self, ex1):
        connected, witness = resolution_connected(ex1, {1}, 3, 4, want_witness=True)
        assert connected
        assert witness.start == 3 and witness.end == 4
        assert path_violations(ex1, {1}, witness) == []
        assert witness.clause_indices == (0, 3)  # through C1 then C4

    def test_symmetry(self):
        rng = random.Random(61)
        for _ in range(80):
            f = helpers.random_qcnf(rng, max_vars=5, max_clauses=5)
            lits = sorted(f.literals)
            if len(lits) < 2:
                continue
            a, b = rng.sample(lits, 2)
            exist = sorted(f.existential_vars)
            connecting = set(rng.sample(exist, rng.randint(0, len(exist))))
            assert (
                resolution_connected(f, connecting, a, b)[0]
                == resolution_connected(f, connecting, b, a)[0]
            )

    def test_monotone_in_connecting_set(self):
        rng = random.Random(62)
        for _ in range(80):
            f = helpers.random_qcnf(rng, max_vars=5, max_clauses=5)
            lits = sorted(f.literals)
            if len(lits) < 2:
                continue
            a, b = rng.sample(lits, 2)
            exist = sorted(f.existential_vars)
            small = set(rng.sample(exist, rng.randint(0, len(exist))))
            grown = small | set(rng.sample(exist, rng.randint(0, len(exist))))
            if resolution_connected(f, small, a, b)[0]:
                assert resolution_connected(f, grown, a, b)[0]


class TestDependencyPair:
    def test_example1_y1_x1_wrt_empty(self, ex1):
        assert is_dependency_pair(ex1, set(), 1, 3).dependent

    def test_example1_x1_y3_wrt_y1_y2(self, ex1):
        assert is_dependency_pair(ex1, {1, 2}, 3, 4).dependent

    def test_example2_u_e(self, ex2):
        result = is_dependency_pair(ex2, {3, 5, 6}, 1, 2)
        assert result.dependent and result.crossed_polarity is False

    def test_strict_formula_is_crossed(self, strict):
        result = is_dependency_pair(strict, set(), 2, 3)
        assert result.dependent and result.crossed_polarity is True

    def test_nonoccurring_variable_never_pairs(self):
        f = parse_qdimacs("p cnf 3 1\na 1 0\ne 2 3 0\n2 3 0\n")
        assert is_dependency_pair(f, set(), 1, 2).dependent is False


class TestDresContains:
    def test_example1_memberships(self, ex1):
        assert dres_contains(ex1, 1, 3).dependent is True
        assert dres_contains(ex1, 3, 4).dependent is False

    def test_connecting_set_definition(self, ex1, ex2):
        assert dres_connecting_set(ex1, 3, 4) == set()
        assert dres_connecting_set(ex1, 1, 3) == {2, 4}
        assert dres_connecting_set(ex2, 1, 2) == {3, 5, 6}

    def test_strict_formula_pair(self, strict):
        assert dres_contains(strict, 2, 3).dependent is True

    def test_wrong_order_or_same_quantifier(self, ex1):
        assert dres_contains(ex1, 4, 1).dependent is False  # depth order violated
        assert dres_contains(ex1, 1, 2).dependent is False  # both existential
        assert dres_contains(ex1, 3, 5).dependent is False  # both universal

    def test_unknown_variable(self, ex1):
        with pytest.raises(FormulaError):
            dres_contains(ex1, 1, 9)

    def test_example2_witness_clause_order(self, ex2):
        result = dres_contains(ex2, 1, 2, want_witness=True)
        assert result.dependent
        pos, neg = result.witness
        assert pos.clause_indices == (0, 1, 2, 3)
        assert neg.clause_indices == (4,)
        assert path_violations(ex2, dres_connecting_set(ex2, 1, 2), pos) == []
        assert path_violations(ex2, dres_connecting_set(ex2, 1, 2), neg) == []


class TestDresSets:
    def test_example1_y1(self, ex1):
        assert dres_of_existential(ex1, 1) == {3}

    def test_example2_e(self, ex2):
        assert dres_of_existential(ex2, 2) == set()

    def test_no_universals_anywhere(self):
        f = parse_qdimacs("p cnf 2 1\ne 1 2 0\n1 2 0\n")
        assert dres_of_existential(f, 1) == set()

    def test_universal_argument_rejected(self, ex1):
        with pytest.raises(FormulaError):
            dres_of_existential(ex1, 3)

    def test_agrees_with_pairwise_queries(self):
        rng = random.Random(63)
        for _ in range(60):
            f = helpers.random_qcnf(rng, max_vars=6, max_clauses=6)
            for y in sorted(f.existential_vars & f.occurring_vars):
                from_set = dres_of_existential(f, y)
                pairwise = {
                    x
                    for x in f.right_of(y)
                    if f.quantifier(x) == "a" and dres_contains(f, y, x).dependent
                }
                assert from_set == pairwise, (f, y)


class TestFullRelations:
    def test_example1_full(self, ex1):
        relation = dres_full(ex1)
        assert (1, 3) in relation.pairs
        assert (3, 4) not in relation.pairs

    def test_single_block_is_empty(self):
        f = parse_qdimacs("p cnf 3 1\ne 1 2 3 0\n1 2 3 0\n")
        assert dres_full(f).pairs == frozenset()
        assert dtriv_full(f).pairs == frozenset()

    def test_trivial_scheme_example1(self, ex1):
        triv = dtriv_full(ex1)
        assert (1, 3) in triv.pairs
        assert (1, 4) in triv.pairs
        assert (3, 5) in triv.pairs
        assert (1, 2) not in triv.pairs

    def test_alternating_prefix_all_pairs(self):
        f = parse_qdimacs("p cnf 3 1\na 1 0\ne 2 0\na 3 0\n1 2 3 0\n")
        assert dtriv_full(f).pairs == {(1, 2), (1, 3), (2, 3)}

    def test_containment_chain(self):
        rng = random.Random(64)
        for _ in range(60):
            f = helpers.random_qcnf(rng, max_vars=6, max_clauses=6)
            res = dres_full(f).pairs
            triv = dtriv_full(f).pairs
            r_f = {
                (a, b)
                for i, a in enumerate(f.variables)
                for b in f.variables[i + 1 :]
            }
            assert res <= triv <= r_f

    def test_jobs_parallelism_matches_serial(self, ex1, ex2):
        for f in (ex1, ex2):
            assert dres_full(f, jobs=4).pairs == dres_full(f).pairs

    def test_full_relation_matches_bruteforce(self):
        rng = random.Random(65)
        for _ in range(40):
            f = helpers.random_qcnf(rng, max_vars=5, max_clauses=5)
            relation = dres_full(f)
            for i, x in enumerate(f.variables):
                for y in f.variables[i + 1 :]:
                    if f.quantifier(x) == f.quantifier(y):
                        expected = False
                    elif not {x, y} <= f.occurring_vars:
                        expected = False
                    else:
                        cs = dres_connecting_set(f, x, y)
                        same = resolution_connected_bruteforce(
                            f, cs, x, y
                        ) and resolution_connected_bruteforce(f, cs, -x, -y)
                        crossed = resolution_connected_bruteforce(
                            f, cs, x, -y
                        ) and resolution_connected_bruteforce(f, cs, -x, y)
                        expected = same or crossed
                    assert ((x, y) in relation.pairs) == expected, (f, x, y)


class TestSerialization:
    def test_text_ordering(self, ex1):
        text = relation_to_text(ex1, dtriv_full(ex1))
        lines = text.splitlines()
        assert lines[0] == "1 3"
        assert lines == sorted(lines, key=lambda s: tuple(map(int, s.split())))

    def test_json_fields(self, ex1):
        doc = relation_to_json_dict(ex1, dres_full(ex1), {"free_variables": []})
        assert doc["scheme"] == "res"
        assert doc["formula_hash"].startswith("sha256:")
        assert [1, 3] in doc["pairs"]
        assert doc["diagnostics"] == {"free_variables": []}

    def test_stats_push_bound(self, ex2):
        stats = QueryStats()
        dres_full(ex2, stats=stats)
        assert stats.walks > 0
        assert stats.queue_pushes <= 2 * stats.edges * stats.walks
