import pytest

from pcohesion import (
    CohesionParams,
    Graph,
    brute_force_minimal,
    elv,
    expand,
    is_valid_cohesion,
    merit,
    minimal_p_cohesion,
    penalty,
    score_breakdown,
    shrink,
    two_hop_neighborhood,
)

from .conftest import complete_graph, gnp, path_graph
from .oracles import adjacency_lists, check_cohesion, find_smaller_valid_subset


def triangle() -> Graph:
    return Graph.from_edges([(0, 1), (0, 2), (1, 2)])


class TestParams:
    @pytest.mark.parametrize("p", [0.0, 1.0, -0.2, 1.5])
    def test_rejects_out_of_range(self, p):
        with pytest.raises(ValueError):
            CohesionParams(p=p)

    def test_quota_is_exact(self):
        assert CohesionParams(p=0.07).required(100) == 7
        assert CohesionParams(p=0.5).required(3) == 2
        assert CohesionParams(p=0.5).required(0) == 0


class TestMerit:
    def test_triangle_hand_value(self):
        # w adjacent to both members, one common neighbor with q, both
        # members still short of quota: (2/2) * (1/2) * (2/2).
        g = triangle()
        assert merit(g, {0, 1}, 0, 2, CohesionParams(p=0.9)) == pytest.approx(0.5)

    def test_no_neighbors_inside_scores_zero(self):
        g = Graph.from_edges([(0, 1), (2, 3)])
        assert merit(g, {0, 1}, 0, 2, CohesionParams(p=0.5)) == 0.0

    def test_zero_when_everyone_satisfied(self):
        # Ring of 4 with p=0.4: quota 1 each, already met inside {0, 1}.
        g = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0)])
        params = CohesionParams(p=0.4)
        for w in (2, 3):
            assert merit(g, {0, 1}, 0, w, params) == 0.0

    def test_member_candidate_rejected(self):
        g = triangle()
        with pytest.raises(ValueError):
            merit(g, {0, 1}, 0, 1, CohesionParams(p=0.5))


class TestPenalty:
    def test_zero_when_quota_met(self):
        g = Graph.from_edges([(0, 1), (0, 2), (1, 2), (2, 3)])
        # w=0 has 2 members inside and quota ceil(0.5*2)=1.
        assert penalty(g, {1, 2}, 0, CohesionParams(p=0.5)) == 0.0

    def test_hand_value(self):
        # w=0 with degree 4, quota 2, nothing inside; the two best outside
        # neighbors each hold one member edge: (2/4) / ((1+1)/4) = 1.
        g = Graph.from_edges([(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 6), (5, 6)])
        assert penalty(g, {5, 6}, 0, CohesionParams(p=0.5)) == pytest.approx(1.0)

    def test_cap_when_supporters_have_no_inside_edges(self):
        g = Graph.from_edges([(0, 1), (0, 2), (3, 4)])
        # Quota 1, inside 0; both outside neighbors have zero inside degree.
        assert penalty(g, {3, 4}, 0, CohesionParams(p=0.5)) == 2.0

    def test_breakdown_total(self):
        g = triangle()
        sb = score_breakdown(g, {0, 1}, 0, 2, CohesionParams(p=0.9))
        assert sb.total == pytest.approx(sb.merit - sb.penalty)


class TestExpand:
    def test_isolated_query(self):
        g = Graph.from_edges([(0, 1)], isolated=[2])
        r = expand(g, 2, CohesionParams(p=0.5))
        assert r.members == {2}
        assert r.is_minimal is False
        assert r.density is None

    @pytest.mark.parametrize("p", [0.2, 0.5])
    @pytest.mark.parametrize("seed", range(6))
    def test_output_is_always_valid(self, seed, p):
        g = gnp(15, 0.4, seed=seed)
        adj = adjacency_lists(g)
        params = CohesionParams(p=p)
        for q in g.vertices():
            r = expand(g, q, params)
            assert check_cohesion(adj, set(r.members), q, p) == []

    def test_deterministic(self):
        g = gnp(25, 0.3, seed=42)
        params = CohesionParams(p=0.4)
        first = [expand(g, q, params).members for q in g.vertices()]
        second = [expand(g, q, params).members for q in g.vertices()]
        assert first == second

    @pytest.mark.parametrize("seed", range(4))
    def test_strict_refresh_is_equivalent(self, seed):
        g = gnp(14, 0.35, seed=seed)
        params = CohesionParams(p=0.5)
        for q in g.vertices():
            lazy = expand(g, q, params, strict_refresh=False)
            strict = expand(g, q, params, strict_refresh=True)
            assert lazy.members == strict.members


class TestShrink:
    def test_singleton_fixpoint(self):
        g = Graph.from_edges([(0, 1)], isolated=[2])
        start = expand(g, 2, CohesionParams(p=0.5))
        assert shrink(g, start, 2, CohesionParams(p=0.5)).members == {2}

    def test_triangle_reduces_to_edge(self):
        g = triangle()
        params = CohesionParams(p=0.5)
        r = shrink(g, expand(g, 0, params), 0, params)
        assert r.is_minimal is True
        assert r.members in brute_force_minimal(g, 0, params)

    def test_rejects_invalid_input(self):
        g = triangle()
        params = CohesionParams(p=0.9)
        from pcohesion.cohesion import CohesionResult

        bad = CohesionResult(query=0, members=frozenset({0, 1}), is_minimal=False,
                             density=1.0, size=2)
        with pytest.raises(ValueError):
            shrink(g, bad, 0, params)  # both vertices are below quota

    def test_rejects_query_outside(self):
        g = triangle()
        params = CohesionParams(p=0.5)
        r = expand(g, 0, params)
        with pytest.raises(ValueError):
            shrink(g, r, 9, params)

    @pytest.mark.parametrize("p", [0.3, 0.5])
    @pytest.mark.parametrize("seed", range(25))
    def test_no_smaller_valid_subset(self, seed, p):
        g = gnp(4 + seed % 7, 0.45, seed=100 + seed)
        adj = adjacency_lists(g)
        params = CohesionParams(p=p)
        for q in g.vertices():
            r = minimal_p_cohesion(g, q, params)
            assert check_cohesion(adj, set(r.members), q, p) == []
            smaller = find_smaller_valid_subset(adj, r.members, q, p)
            assert smaller is None, (
                f"seed={seed} p={p} q={q}: {sorted(r.members)} contains valid {sorted(smaller)}")

    @pytest.mark.parametrize("seed", range(8))
    def test_member_of_brute_force_family(self, seed):
        g = gnp(8, 0.4, seed=200 + seed)
        params = CohesionParams(p=0.5)
        for q in g.vertices():
            family = brute_force_minimal(g, q, params)
            r = minimal_p_cohesion(g, q, params)
            assert r.members in family


class TestBruteForce:
    def test_triangle_family(self):
        g = triangle()
        family = brute_force_minimal(g, 0, CohesionParams(p=0.5))
        assert family == {frozenset({0, 1}), frozenset({0, 2})}

    def test_isolated(self):
        g = Graph.from_edges([(0, 1)], isolated=[2])
        assert brute_force_minimal(g, 2, CohesionParams(p=0.5)) == {frozenset({2})}

    def test_k4_high_p_needs_everyone(self):
        g = complete_graph(4)
        family = brute_force_minimal(g, 0, CohesionParams(p=0.7))
        assert family == {frozenset({0, 1, 2, 3})}

    def test_refuses_large_graphs(self):
        g = gnp(17, 0.2, seed=1)
        with pytest.raises(ValueError):
            brute_force_minimal(g, 0, CohesionParams(p=0.5))


class TestElv:
    def test_path_endpoint(self):
        g = path_graph(4)
        r = elv(g, 0)
        assert r.members == {0, 1, 2}
        assert r.is_minimal is False

    def test_complete_graph(self):
        g = complete_graph(4)
        assert elv(g, 1).members == {0, 1, 2, 3}

    def test_superset_of_closed_neighborhood(self):
        g = gnp(30, 0.2, seed=9)
        for q in g.vertices():
            r = elv(g, q)
            assert r.size >= g.degree(q) + 1
            assert r.members == two_hop_neighborhood(g, q)


class TestPipelineProperties:
    @pytest.mark.parametrize("seed", range(10))
    def test_containment_chain(self, seed):
        g = gnp(18, 0.3, seed=300 + seed)
        params = CohesionParams(p=0.4)
        for q in g.vertices():
            grown = expand(g, q, params)
            minimal = shrink(g, grown, q, params)
            assert q in grown.members and q in minimal.members
            assert minimal.members <= grown.members

    def test_size_mostly_monotone_in_p(self):
        # Greedy scores can break strict monotonicity; expect it to hold
        # on at least 90% of (graph, query) pairs.
        low, high = CohesionParams(p=0.2), CohesionParams(p=0.5)
        pairs = 0
        monotone = 0
        for seed in range(12):
            g = gnp(16, 0.3, seed=400 + seed)
            for q in g.vertices():
                a = minimal_p_cohesion(g, q, low).size
                b = minimal_p_cohesion(g, q, high).size
                pairs += 1
                monotone += a <= b
        assert monotone / pairs >= 0.9

    def test_validity_reported_by_checker(self):
        g = gnp(20, 0.25, seed=77)
        params = CohesionParams(p=0.3)
        for q in g.vertices():
            r = minimal_p_cohesion(g, q, params)
            assert is_valid_cohesion(g, r.members, q, params)
