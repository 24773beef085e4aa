#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "wsnlife/core.hpp"

using namespace wsnlife;
using namespace wsnlife::testing;

TEST(SourceDistances, AxisAlignedTriangleAndCoincident) {
    Topology t;
    t.positions = {{0, 0}, {10, 0}, {3, 4}, {1, 1}};
    t.ranges = {kInfiniteRange, kInfiniteRange, kInfiniteRange};
    const auto d = source_distances(t, {0, 0});
    EXPECT_DOUBLE_EQ(d[1], 10.0);
    EXPECT_DOUBLE_EQ(d[2], 5.0);
    EXPECT_DOUBLE_EQ(source_distances(t, {1, 1})[3], 0.0);
}

TEST(NeighborSets, FullConnectivityExcludesSourceAsReceiver) {
    const Topology t = line3();
    const auto st = fresh_state(t);
    const auto ns = neighbor_sets(t, st, source_distances(t, {0, 0}));
    EXPECT_EQ(ns.out[0], (std::vector<NodeId>{1, 2}));
    EXPECT_EQ(ns.out[1], (std::vector<NodeId>{2}));
    EXPECT_TRUE(ns.out[2].empty());
    EXPECT_EQ(ns.in[2], (std::vector<NodeId>{0, 1}));
    EXPECT_TRUE(ns.in[0].empty());
}

TEST(NeighborSets, DeadRelayIsPruned) {
    const Topology t = line3();
    auto st = fresh_state(t);
    st.residual[1] = 0.0;
    st.refresh_alive();
    const auto ns = neighbor_sets(t, st, source_distances(t, {0, 0}));
    EXPECT_EQ(ns.out[0], (std::vector<NodeId>{2}));
    EXPECT_TRUE(ns.out[1].empty());
}

TEST(NeighborSets, OutOfRangeSourceHasNoNeighbours) {
    Topology t = line3();
    t.ranges[0] = 5.0;
    const auto ns = neighbor_sets(t, fresh_state(t), source_distances(t, {0, 0}));
    EXPECT_TRUE(ns.out[0].empty());
}

TEST(NeighborSets, RelayWithoutRouteToBaseIsDropped) {
    Topology t;
    t.positions = {{0, 0}, {10, 0}, {100, 0}};
    t.ranges = {kInfiniteRange, 5.0};  // relay 1 cannot reach anything
    const auto ns = neighbor_sets(t, fresh_state(t), source_distances(t, {0, 0}));
    EXPECT_EQ(ns.out[0], (std::vector<NodeId>{2}));
}

TEST(NeighborSets, ExplicitArcsOverrideRanges) {
    Topology t = line3();
    t.ranges = {1.0, 1.0};
    t.arcs = std::vector<Arc>{{0, 1}, {1, 2}};
    const auto ns = neighbor_sets(t, fresh_state(t), source_distances(t, {0, 0}));
    EXPECT_EQ(ns.out[0], (std::vector<NodeId>{1}));
    EXPECT_EQ(ns.out[1], (std::vector<NodeId>{2}));
}

TEST(Topology, ViolationsAreAllReported) {
    Topology t = line3();
    t.arcs = std::vector<Arc>{{1, 0}, {2, 1}, {1, 1}};
    EXPECT_EQ(t.violations().size(), 3u);
    EXPECT_THROW(t.validate(), ConfigError);
}

TEST(FlowSolve, ChainConservesFlow) {
    RoutingVector w(3);
    w.rows[0] = {{1, 1.0}};
    w.rows[1] = {{2, 1.0}};
    const auto g = flow_solve(w);
    EXPECT_DOUBLE_EQ(g[1], 1.0);
    EXPECT_DOUBLE_EQ(g[2], 1.0);
}

TEST(FlowSolve, DiamondSplitsSymmetrically) {
    RoutingVector w(4);
    w.rows[0] = {{1, 0.5}, {2, 0.5}};
    w.rows[1] = {{3, 1.0}};
    w.rows[2] = {{3, 1.0}};
    const auto g = flow_solve(w);
    EXPECT_DOUBLE_EQ(g[1], 0.5);
    EXPECT_DOUBLE_EQ(g[2], 0.5);
    EXPECT_DOUBLE_EQ(g[3], 1.0);
}

TEST(FlowSolve, AbsorbingCycleIsSingular) {
    RoutingVector w(4);
    w.rows[0] = {{1, 1.0}};
    w.rows[1] = {{2, 1.0}};
    w.rows[2] = {{1, 1.0}};
    EXPECT_THROW(flow_solve(w), SingularFlow);
}

TEST(FlowSolve, LeakyCycleIsSolved) {
    // 1 -> 2 -> 1 with half of relay 2's flow escaping to the base
    RoutingVector w(4);
    w.rows[0] = {{1, 1.0}};
    w.rows[1] = {{2, 1.0}};
    w.rows[2] = {{1, 0.5}, {3, 0.5}};
    const auto g = flow_solve(w);
    EXPECT_NEAR(g[1], 2.0, 1e-12);
    EXPECT_NEAR(g[2], 2.0, 1e-12);
    EXPECT_NEAR(g[3], 1.0, 1e-12);
}

TEST(FlowSolve, UnreachableNodesCarryNoFlow) {
    RoutingVector w(4);
    w.rows[0] = {{3, 1.0}};
    w.rows[1] = {{2, 1.0}};  // closed loop nobody feeds
    w.rows[2] = {{1, 1.0}};
    const auto g = flow_solve(w);
    EXPECT_EQ(g[1], 0.0);
    EXPECT_EQ(g[2], 0.0);
    EXPECT_EQ(g[3], 1.0);
}

TEST(FlowSolve, MatchesNeumannSeriesOnRandomRoutings) {
    std::mt19937_64 rng(7);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto inst = random_instance(rng);
        const auto st = fresh_state(inst.topology);
        const auto ns = neighbor_sets(inst.topology, st, source_distances(inst.topology, inst.source));
        if (ns.out[0].empty()) continue;
        const auto w = random_routing(rng, ns.out);
        const auto oracle = neumann_flow(w);
        FlowVector g;
        try {
            g = flow_solve(w);
        } catch (const SingularFlow&) {
            EXPECT_FALSE(oracle.has_value());
            continue;
        }
        ASSERT_TRUE(oracle.has_value());
        for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i], (*oracle)[i], 1e-9 * std::max(1.0, g[i]));
        EXPECT_NEAR(g.back(), 1.0, 1e-9);
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(Workload, RelayExamples) {
    const Topology t = line3();
    const auto p = reference_params();
    RoutingVector w(3);
    w.rows[0] = {{1, 1.0}, {2, 0.0}};
    w.rows[1] = {{2, 1.0}};
    FlowVector g{1.0, 1.0, 1.0};
    EXPECT_NEAR(relay_workload(1, w, g, t, p), 0.11, 1e-15);
    g[1] = 0.0;
    EXPECT_EQ(relay_workload(1, w, g, t, p), 0.0);
    g[1] = 0.5;
    EXPECT_NEAR(relay_workload(1, w, g, t, p), 0.055, 1e-15);
}

TEST(Workload, SourceExamples) {
    const Topology t = line3();
    const auto p = reference_params();
    const auto d0 = source_distances(t, {0, 0});
    RoutingVector w(3);
    w.rows[0] = {{1, 1.0}, {2, 0.0}};
    EXPECT_NEAR(source_workload(w, d0, p), 0.06, 1e-15);
    w.rows[0] = {{1, 0.0}, {2, 1.0}};
    EXPECT_NEAR(source_workload(w, d0, p), 0.09, 1e-15);
    w.rows[0] = {{1, 0.5}, {2, 0.5}};
    EXPECT_NEAR(source_workload(w, d0, p), 0.075, 1e-15);

    auto sensing = p;
    sensing.c_e = 0.01;
    EXPECT_NEAR(source_workload(w, d0, sensing), 0.085, 1e-15);
}

TEST(Workload, StrictlyIncreasingInLinkDistance) {
    const auto p = reference_params();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        Topology t = line3();
        t.positions[2].x = 10.0 + u(rng);
        RoutingVector w(3);
        w.rows[0] = {{1, 1.0}, {2, 0.0}};
        w.rows[1] = {{2, 1.0}};
        const FlowVector g{1.0, 1.0, 1.0};
        const double before = relay_workload(1, w, g, t, p);
        t.positions[2].x += 0.5 + u(rng);
        EXPECT_GT(relay_workload(1, w, g, t, p), before);
        EXPECT_GE(before, 0.0);
    }
}

TEST(EnergyStep, Examples) {
    const std::vector<double> r{80.0, 0.05};
    const auto st = NetworkState::initial(r);
    const auto next = energy_step(st, {0.11, 0.11}, 1.0);
    EXPECT_NEAR(next.residual[0], 79.89, 1e-12);
    EXPECT_EQ(next.residual[1], 0.0);
    EXPECT_FALSE(next.alive[1]);
    EXPECT_TRUE(next.alive[2]);
    EXPECT_DOUBLE_EQ(next.t, 1.0);
    const auto idle = energy_step(st, {0.0, 0.0}, 1.0);
    EXPECT_EQ(idle.residual, st.residual);
    EXPECT_THROW(energy_step(st, {0.0, 0.0}, 0.0), PreconditionError);
}

TEST(EnergyStep, ThresholdMarksDeath) {
    const std::vector<double> r{80.0, 80.0};
    auto st = NetworkState::initial(r, 0.1);
    const auto next = energy_step(st, {0.0, 72.5}, 1.0);
    EXPECT_FALSE(next.alive[1]);  // 7.5 <= 8
    EXPECT_TRUE(next.alive[0]);
}
