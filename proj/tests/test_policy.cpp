#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "wsnlife/policy.hpp"

using namespace wsnlife;
using namespace wsnlife::testing;

namespace {

double min_source_cost(const StepContext& ctx) {
    double best = std::numeric_limits<double>::infinity();
    for (NodeId j : ctx.sets.out[0]) best = std::min(best, ctx.params.c_s * ctx.d0[j] * ctx.d0[j] + ctx.params.c_f);
    return best;
}

}  // namespace

TEST(ArcWeight, Examples) {
    const Topology t = line3();
    const auto p = reference_params();
    const auto d0 = source_distances(t, {0, 0});
    EXPECT_NEAR(arc_weight(0, 1, t, d0, p), 0.11, 1e-15);
    EXPECT_NEAR(arc_weight(0, 2, t, d0, p), 0.14, 1e-15);
    EXPECT_NEAR(arc_weight(1, 2, t, d0, p), 0.11, 1e-15);
    const auto at_relay = source_distances(t, {10, 0});
    EXPECT_NEAR(arc_weight(0, 1, t, at_relay, p), 0.10, 1e-15);
}

TEST(SolveP1, LineChoosesRelay) {
    const Topology t = line3();
    const auto out = solve_p1(t, fresh_state(t), {0, 0}, reference_params());
    EXPECT_EQ(out.w.weight(0, 1), 1.0);
    EXPECT_EQ(out.w.weight(0, 2), 0.0);
    EXPECT_NEAR(out.objective, 0.06, 1e-15);
    EXPECT_TRUE(out.w.is_row_stochastic());
}

TEST(SolveP1, SingleArcGetsEverything) {
    Topology t = line3();
    t.arcs = std::vector<Arc>{{0, 2}, {1, 2}};
    const auto out = solve_p1(t, fresh_state(t), {0, 0}, reference_params());
    EXPECT_EQ(out.w.weight(0, 2), 1.0);
    EXPECT_NEAR(out.objective, 0.09, 1e-15);
}

TEST(SolveP1, EqualDistanceTieGoesToLowerId) {
    const Topology t = diamond();
    const auto out = solve_p1(t, fresh_state(t), {0, 0}, reference_params());
    EXPECT_EQ(out.w.weight(0, 1), 1.0);
    EXPECT_EQ(out.w.weight(0, 2), 0.0);
}

TEST(SolveP1, NoNeighbourIsNoRoute) {
    Topology t = line3();
    t.ranges[0] = 1.0;
    EXPECT_THROW(solve_p1(t, fresh_state(t), {0, 0}, reference_params()), NoRoute);
}

TEST(SolveP1, MatchesClosedFormAndOracle) {
    std::mt19937_64 rng(11);
    const auto p = reference_params();
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = random_instance(rng);
        const auto st = fresh_state(inst.topology);
        const StepContext ctx(inst.topology, st, inst.source, p);
        if (ctx.sets.out[0].empty()) continue;
        const auto out = solve_p1(ctx);
        EXPECT_NEAR(out.objective, min_source_cost(ctx), 1e-12);
        const auto oracle = vertex_oracle(ctx, OracleP1{});
        EXPECT_NEAR(out.objective, oracle.objective, 1e-12);
    }
}

TEST(NuResidual, Examples) {
    EXPECT_NEAR(nu_residual({0.06, 0.11}, 1.0), -1.22 / 0.12, 1e-12);
    EXPECT_DOUBLE_EQ(nu_residual({0.5, 0.3}, 0.0), -1.0);
    EXPECT_DOUBLE_EQ(nu_residual({0.5, 0.0, 0.0}, 7.0), -1.0);
    EXPECT_THROW(nu_residual({0.0, 0.1}, 1.0), DegenerateSource);
}

TEST(SolveP2, EpsilonZeroRecoversP1) {
    const Topology t = line3();
    PolicyConfig cfg;
    cfg.policy = Policy::P2;
    cfg.epsilon = 0.0;
    const auto p2 = solve_p2(t, fresh_state(t), {0, 0}, reference_params(), cfg);
    const auto p1 = solve_p1(t, fresh_state(t), {0, 0}, reference_params());
    EXPECT_NEAR(p2.objective, p1.objective, 1e-9);
    EXPECT_NEAR(p2.w.weight(0, 1), 1.0, 1e-9);
    ASSERT_TRUE(p2.nu.has_value());
    EXPECT_NEAR(*p2.nu, -1.0 / 0.12, 1e-6);
}

TEST(SolveP2, LineWithUnitEpsilonIsSelfConsistent) {
    const Topology t = line3();
    PolicyConfig cfg;
    cfg.policy = Policy::P2;
    cfg.epsilon = 1.0;
    const auto st = fresh_state(t);
    const StepContext ctx(t, st, {0, 0}, reference_params());
    const auto out = solve_p2(ctx, cfg);
    ASSERT_TRUE(out.nu.has_value());
    EXPECT_NEAR(out.w.weight(0, 1), 1.0, 1e-9);
    EXPECT_NEAR(*out.nu, -1.22 / 0.12, 1e-6);
    EXPECT_LE(std::abs(nu_residual(out.workloads, 1.0) - *out.nu), 1e-6);
    EXPECT_NEAR(out.objective, 0.06 + 0.11 / *out.nu, 1e-9);
    const auto oracle = vertex_oracle(ctx, p2_neighbor_sets(ctx), OracleP2{*out.nu, 1.0});
    EXPECT_LE(out.objective, oracle.objective + 1e-9);
}

TEST(SolveP2, ContractOnRandomInstances) {
    std::mt19937_64 rng(21);
    const auto p = reference_params();
    std::uniform_real_distribution<double> eps(0.0, 8.0);
    int converged = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = random_instance(rng, 4);
        const auto st = fresh_state(inst.topology);
        const StepContext ctx(inst.topology, st, inst.source, p);
        if (ctx.sets.out[0].empty()) continue;
        PolicyConfig cfg;
        cfg.policy = Policy::P2;
        cfg.epsilon = eps(rng);
        cfg.multistart_count = 64;
        PolicyOutcome out;
        try {
            out = solve_p2(ctx, cfg);
        } catch (const NuDiverged&) {
            continue;
        }
        ++converged;
        ASSERT_TRUE(out.nu.has_value());
        EXPECT_LE(*out.nu, 0.0);
        EXPECT_LE(std::abs(nu_residual(out.workloads, cfg.epsilon) - *out.nu), 1e-6);
        EXPECT_TRUE(out.w.is_row_stochastic(1e-9));
        // With enough vertex starts the search should be no worse than the best vertex at this nu.
        const auto oracle = vertex_oracle(ctx, p2_neighbor_sets(ctx), OracleP2{*out.nu, cfg.epsilon});
        EXPECT_LE(out.objective, oracle.objective + 1e-9);

        cfg.epsilon = 0.0;
        EXPECT_NEAR(solve_p2(ctx, cfg).objective, solve_p1(ctx).objective, 1e-9);
    }
    EXPECT_GT(converged, 20);
}

TEST(SolveP2, LoopFreeSetsAreAcyclic) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = random_instance(rng);
        const auto st = fresh_state(inst.topology);
        const StepContext ctx(inst.topology, st, inst.source, reference_params());
        const auto sets = p2_neighbor_sets(ctx);
        const NodeId base = ctx.base();
        // Every reachable relay must still reach the base, and no relay cycle may remain.
        std::vector<int> colour(base + 1, 0);
        std::function<bool(NodeId)> cyclic = [&](NodeId u) {
            colour[u] = 1;
            for (NodeId v : sets.out[u]) {
                if (v == base) continue;
                if (colour[v] == 1) return true;
                if (colour[v] == 0 && cyclic(v)) return true;
            }
            colour[u] = 2;
            return false;
        };
        for (NodeId i = 1; i < base; ++i)
            if (colour[i] == 0) {
                EXPECT_FALSE(cyclic(i));
            }
        for (NodeId i = 1; i < base; ++i)
            if (!ctx.sets.out[i].empty()) {
                EXPECT_FALSE(sets.out[i].empty());
            }
    }
}

TEST(P2Objective, GradientMatchesFiniteDifferences) {
    std::mt19937_64 rng(8);
    const auto p = reference_params();
    int checked = 0;
    for (int trial = 0; trial < 60 && checked < 25; ++trial) {
        const auto inst = random_instance(rng);
        const auto st = fresh_state(inst.topology);
        const StepContext ctx(inst.topology, st, inst.source, p);
        if (ctx.sets.out[0].empty()) continue;
        const auto sets = p2_neighbor_sets(ctx);
        RoutingVector w = random_routing(rng, sets.out);
        for (auto& row : w.rows) {
            for (auto& e : row) e.weight = 0.5 * e.weight + 0.5 / static_cast<double>(row.size());
        }
        const detail::P2Objective obj{ctx, sets, 1.5, -4.0};
        const auto grad = obj.gradient(w, flow_solve(w));
        const double h = 1e-6;
        for (std::size_t i = 0; i < w.rows.size(); ++i)
            for (std::size_t k = 0; k < w.rows[i].size(); ++k) {
                RoutingVector up = w, down = w;
                up.rows[i][k].weight += h;
                down.rows[i][k].weight -= h;
                const double fd = (obj.evaluate(up) - obj.evaluate(down)) / (2 * h);
                EXPECT_NEAR(grad[i][k], fd, 1e-6 * std::max(1.0, std::abs(fd)));
            }
        ++checked;
    }
    EXPECT_GE(checked, 20);
}

TEST(ProjectToSimplex, KnownProjections) {
    std::vector<double> v{0.5, 0.5};
    detail::project_to_simplex(v);
    EXPECT_DOUBLE_EQ(v[0], 0.5);
    v = {2.0, 0.0};
    detail::project_to_simplex(v);
    EXPECT_DOUBLE_EQ(v[0], 1.0);
    EXPECT_DOUBLE_EQ(v[1], 0.0);
    v = {0.3, 0.3, 0.0};
    detail::project_to_simplex(v);
    EXPECT_NEAR(v[0], 1.3 / 3.0, 1e-15);
    EXPECT_NEAR(v[1], 1.3 / 3.0, 1e-15);
    EXPECT_NEAR(v[2], 0.4 / 3.0, 1e-15);
    v = {1.0, -1.0, 0.5};
    detail::project_to_simplex(v);
    EXPECT_NEAR(v[0], 0.75, 1e-15);
    EXPECT_EQ(v[1], 0.0);
    EXPECT_NEAR(v[2], 0.25, 1e-15);
}

TEST(ShortestPath, LineGoesDirect) {
    const Topology t = line3();
    const auto out = solve_p3_shortest_path(t, fresh_state(t), {0, 0}, reference_params());
    EXPECT_EQ(*out.path, (std::vector<NodeId>{0, 2}));
    EXPECT_EQ(out.w.weight(0, 2), 1.0);
    EXPECT_NEAR(out.objective, 0.09, 1e-15);
}

TEST(ShortestPath, FiveUnitHopsStillLoseToDirect) {
    Topology t;
    t.positions = {{0, 0}, {5, 0}, {10, 0}};
    t.ranges = {kInfiniteRange, kInfiniteRange};
    const StepContext ctx(t, fresh_state(t), {0, 0}, reference_params());
    double cost = 0.0;
    const auto path = shortest_path(ctx, &cost);
    EXPECT_EQ(*path, (std::vector<NodeId>{0, 2}));
    EXPECT_NEAR(cost, 0.11, 1e-15);
    EXPECT_NEAR(path_cost({0, 1, 2}, t, ctx.d0, reference_params()), 0.205, 1e-15);
}

TEST(ShortestPath, SingleArcIsThePath) {
    Topology t = line3();
    t.arcs = std::vector<Arc>{{0, 2}, {1, 2}};
    const StepContext ctx(t, fresh_state(t), {0, 0}, reference_params());
    double cost = 0.0;
    EXPECT_EQ(*shortest_path(ctx, &cost), (std::vector<NodeId>{0, 2}));
    EXPECT_NEAR(cost, arc_weight(0, 2, t, ctx.d0, reference_params()), 0.0);
}

TEST(ShortestPath, SymmetricDiamondTieIsLexicographic) {
    const Topology t = diamond();
    const StepContext ctx(t, fresh_state(t), {0, 0}, reference_params());
    const auto out = solve_p3_shortest_path(ctx);
    EXPECT_EQ(*out.path, (std::vector<NodeId>{0, 1, 3}));
    const auto d0 = source_distances(t, {0, 0});
    EXPECT_NEAR(path_cost({0, 1, 3}, t, d0, reference_params()), path_cost({0, 2, 3}, t, d0, reference_params()), 1e-12);
    std::vector<double> costs;
    enumerate_vertices(ctx, ctx.sets, [&](const RoutingVector&, const FlowVector&, const Workloads& load) {
        costs.push_back(total_drain(load));
    });
    ASSERT_EQ(costs.size(), 2u);
    EXPECT_NEAR(costs[0], costs[1], 1e-12);
}

TEST(ShortestPath, UnreachableBaseIsNoRoute) {
    Topology t = line3();
    t.ranges[1] = 5.0;
    t.arcs = std::vector<Arc>{{0, 1}};
    EXPECT_THROW(solve_p3_shortest_path(t, fresh_state(t), {0, 0}, reference_params()), NoRoute);
}

TEST(ShortestPath, MatchesPathEnumerationAndVertexOracle) {
    std::mt19937_64 rng(99);
    const auto p = reference_params();
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto inst = random_instance(rng);
        const auto st = fresh_state(inst.topology);
        const StepContext ctx(inst.topology, st, inst.source, p);
        if (ctx.sets.out[0].empty()) continue;
        const auto out = solve_p3_shortest_path(ctx);
        double best = std::numeric_limits<double>::infinity();
        for_each_simple_path(ctx.sets.out, [&](const std::vector<NodeId>& path) {
            best = std::min(best, path_drain(path, inst.topology, inst.source, p));
        });
        EXPECT_NEAR(out.objective, best, 1e-9);
        EXPECT_NEAR(out.objective, vertex_oracle(ctx, OracleP3{}).objective, 1e-9);
        const double q = path_cost(*out.path, inst.topology, ctx.d0, p);
        EXPECT_NEAR(q - out.objective, p.c_r, 1e-12);
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(VertexOracle, TooLargeIsRejected) {
    Topology t;
    t.positions.push_back({0, 0});
    for (int i = 0; i < 9; ++i) t.positions.push_back({10.0 + i, static_cast<double>(i)});
    t.positions.push_back({50, 0});
    t.ranges.assign(10, kInfiniteRange);
    const StepContext ctx(t, fresh_state(t), {0, 0}, reference_params());
    EXPECT_THROW(vertex_oracle(ctx, OracleP3{}), TooLarge);
}

TEST(Solvers, RepeatedCallsAreBitwiseIdentical) {
    std::mt19937_64 rng(4);
    const auto inst = random_instance(rng, 5);
    const auto st = fresh_state(inst.topology);
    const StepContext ctx(inst.topology, st, {10, 40}, reference_params());
    ASSERT_FALSE(ctx.sets.out[0].empty());
    for (Policy pol : {Policy::P1, Policy::P2, Policy::P3}) {
        PolicyConfig cfg;
        cfg.policy = pol;
        const auto a = solve_policy(ctx, cfg);
        const auto b = solve_policy(ctx, cfg);
        EXPECT_EQ(a.w, b.w) << to_string(pol);
        EXPECT_EQ(a.workloads, b.workloads) << to_string(pol);
    }
}

TEST(PolicyConfig, RejectsInvalidSettings) {
    PolicyConfig cfg;
    cfg.epsilon = -1.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    cfg.nu_init = 0.5;
    EXPECT_THROW(cfg.validate(), ConfigError);
}
