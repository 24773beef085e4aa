#pragma once

// Network model shared by the solvers and the simulator: geometry, neighbour
// sets, flow conservation, per-node workloads and battery bookkeeping.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wsnlife/errors.hpp"

namespace wsnlife {

using NodeId = int;

inline constexpr NodeId kSourceId = 0;
inline constexpr double kInfiniteRange = std::numeric_limits<double>::infinity();

struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

inline double distance(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Radio energy model: transmitting one bit over distance d costs
/// c_f + c_s * d^beta, receiving costs c_r, sensing costs c_e (source only).
struct EnergyParams {
    double c_s = 1e-4;
    double c_f = 0.05;
    double c_r = 0.05;
    double c_e = 0.0;
    double beta = 2.0;

    friend bool operator==(const EnergyParams&, const EnergyParams&) = default;

    [[nodiscard]] double transmit_cost(double d) const {
        const double dp = beta == 2.0 ? d * d : std::pow(d, beta);
        return c_s * dp + c_f;
    }

    void validate() const {
        if (!(c_s >= 0.0 && c_f >= 0.0 && c_r >= 0.0 && c_e >= 0.0))
            throw ConfigError("energy costs must be non-negative and finite");
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw ConfigError("beta must be positive");
    }
};

struct Arc {
    NodeId from = 0;
    NodeId to = 0;

    friend bool operator==(const Arc&, const Arc&) = default;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Static part of the network. Node 0 is the mobile source (its position comes
/// from the trajectory, positions[0] is ignored), 1..N-1 are relays and N is
/// the base station.
///
/// Adjacency is range-derived (j in O(i) iff d_ij <= ranges[i]) unless the
/// sender appears in `arcs`, in which case its out-set is exactly its listed
/// arcs. The source is never a receiver and the base never a sender.
struct Topology {
    std::vector<Position> positions;          // size N+1
    std::vector<double> ranges;               // size N, one per sender
    std::optional<std::vector<Arc>> arcs;

    friend bool operator==(const Topology&, const Topology&) = default;

    [[nodiscard]] NodeId base() const { return static_cast<NodeId>(positions.size()) - 1; }
    [[nodiscard]] int node_count() const { return static_cast<int>(positions.size()); }

    [[nodiscard]] bool has_explicit_arcs(NodeId sender) const {
        if (!arcs) return false;
        return std::any_of(arcs->begin(), arcs->end(), [&](const Arc& a) { return a.from == sender; });
    }

    /// Returns every violation found, empty when valid.
    [[nodiscard]] std::vector<std::string> violations() const {
        std::vector<std::string> out;
        const int n = node_count();
        if (n < 2) {
            out.emplace_back("topology needs at least a source and a base");
            return out;
        }
        if (static_cast<int>(ranges.size()) != n - 1)
            out.emplace_back("expected one transmission range per non-base node");
        for (int i = 1; i < n; ++i)
            if (!std::isfinite(positions[i].x) || !std::isfinite(positions[i].y))
                out.push_back("node " + std::to_string(i) + " has a non-finite position");
        for (std::size_t i = 0; i < ranges.size(); ++i)
            if (std::isnan(ranges[i]) || ranges[i] < 0.0)
                out.push_back("node " + std::to_string(i) + " has an invalid range");
        if (arcs) {
            for (const Arc& a : *arcs) {
                const std::string tag = "arc " + std::to_string(a.from) + "->" + std::to_string(a.to);
                if (a.from < 0 || a.from >= n || a.to < 0 || a.to >= n)
                    out.push_back(tag + " references an unknown node");
                else if (a.to == kSourceId)
                    out.push_back(tag + ": the source cannot relay");
                else if (a.from == base())
                    out.push_back(tag + ": the base never transmits");
                else if (a.from == a.to)
                    out.push_back(tag + " is a self loop");
            }
        }
        return out;
    }

    void validate() const {
        const auto v = violations();
        if (v.empty()) return;
        std::ostringstream os;
        os << "invalid topology:";
        for (const auto& s : v) os << "\n  " << s;
        throw ConfigError(os.str());
    }
};

/// Per-sender probability distribution over out-neighbours. rows[i] is sorted
/// by receiver id; the base row is always empty.
struct RoutingEntry {
    NodeId to = 0;
    double weight = 0.0;

    friend bool operator==(const RoutingEntry&, const RoutingEntry&) = default;
};

struct RoutingVector {
    std::vector<std::vector<RoutingEntry>> rows;

    friend bool operator==(const RoutingVector&, const RoutingVector&) = default;

    RoutingVector() = default;
    explicit RoutingVector(int node_count) : rows(static_cast<std::size_t>(node_count)) {}

    [[nodiscard]] int node_count() const { return static_cast<int>(rows.size()); }

    [[nodiscard]] double weight(NodeId i, NodeId j) const {
        for (const auto& e : rows[i])
            if (e.to == j) return e.weight;
        return 0.0;
    }

    void set_uniform(NodeId i, std::span<const NodeId> out) {
        rows[i].clear();
        const double w = out.empty() ? 0.0 : 1.0 / static_cast<double>(out.size());
        for (NodeId j : out) rows[i].push_back({j, w});
    }

    void set_vertex(NodeId i, std::span<const NodeId> out, NodeId chosen) {
        rows[i].clear();
        for (NodeId j : out) rows[i].push_back({j, j == chosen ? 1.0 : 0.0});
    }

    [[nodiscard]] bool is_row_stochastic(double tol = 1e-12) const {
        for (const auto& row : rows) {
            if (row.empty()) continue;
            double s = 0.0;
            for (const auto& e : row) {
                if (e.weight < 0.0 || e.weight > 1.0) return false;
                s += e.weight;
            }
            if (std::abs(s - 1.0) > tol) return false;
        }
        return true;
    }
};

/// Inflow rate per node, source normalised to 1.
using FlowVector = std::vector<double>;
/// Battery drain rate per energy-constrained node (0..N-1).
using Workloads = std::vector<double>;

struct NeighborSets {
    std::vector<std::vector<NodeId>> out;
    std::vector<std::vector<NodeId>> in;
};

/// Residual energies and liveness. A node i < N is alive while
/// residual[i] > death_level[i]; the base is always alive.
struct NetworkState {
    double t = 0.0;
    std::vector<double> residual;     // size N
    std::vector<double> death_level;  // size N
    std::vector<bool> alive;          // size N+1

    friend bool operator==(const NetworkState&, const NetworkState&) = default;

    static NetworkState initial(std::span<const double> energies, double threshold_fraction = 0.0) {
        NetworkState s;
        s.residual.assign(energies.begin(), energies.end());
        s.death_level.resize(energies.size());
        for (std::size_t i = 0; i < energies.size(); ++i) s.death_level[i] = threshold_fraction * energies[i];
        s.alive.assign(energies.size() + 1, true);
        s.refresh_alive();
        return s;
    }

    void refresh_alive() {
        alive.resize(residual.size() + 1);
        for (std::size_t i = 0; i < residual.size(); ++i) alive[i] = residual[i] > death_level[i];
        alive.back() = true;
    }
};

/// d_{0,j} for every node j (entry 0 is 0).
inline std::vector<double> source_distances(const Topology& topo, Position src) {
    std::vector<double> d(static_cast<std::size_t>(topo.node_count()), 0.0);
    for (NodeId j = 1; j < topo.node_count(); ++j) d[j] = distance(src, topo.positions[j]);
    return d;
}

/// Distance of link (i, j); source links use the supplied source distances.
inline double link_distance(const Topology& topo, std::span<const double> d0, NodeId i, NodeId j) {
    if (i == kSourceId) return d0[j];
    if (j == kSourceId) return d0[i];
    return distance(topo.positions[i], topo.positions[j]);
}

/// Out/in sets over alive nodes. Relays that cannot reach the base through
/// alive nodes are dropped as well, since any flow sent to them is lost.
/// Dead or disconnected senders get an empty out-set.
inline NeighborSets neighbor_sets(const Topology& topo, const NetworkState& state, std::span<const double> d0) {
    const int n = topo.node_count();
    const NodeId base = topo.base();
    NeighborSets ns;
    ns.out.assign(n, {});
    ns.in.assign(n, {});

    auto usable = [&](NodeId j) { return j == base || (j != kSourceId && state.alive[j]); };

    std::vector<std::vector<NodeId>> out(n);
    for (NodeId i = 0; i < base; ++i) {
        if (!state.alive[i]) continue;
        if (topo.has_explicit_arcs(i)) {
            for (const Arc& a : *topo.arcs)
                if (a.from == i && usable(a.to)) out[i].push_back(a.to);
        } else {
            for (NodeId j = 1; j < n; ++j)
                if (j != i && usable(j) && link_distance(topo, d0, i, j) <= topo.ranges[i]) out[i].push_back(j);
        }
        std::sort(out[i].begin(), out[i].end());
        out[i].erase(std::unique(out[i].begin(), out[i].end()), out[i].end());
    }

    // Keep only nodes that can still deliver to the base.
    std::vector<bool> reaches(n, false);
    reaches[base] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (NodeId i = 0; i < base; ++i) {
            if (reaches[i]) continue;
            if (std::any_of(out[i].begin(), out[i].end(), [&](NodeId j) { return reaches[j]; })) {
                reaches[i] = true;
                changed = true;
            }
        }
    }
    for (NodeId i = 0; i < base; ++i) {
        if (!reaches[i]) continue;
        for (NodeId j : out[i])
            if (reaches[j]) {
                ns.out[i].push_back(j);
                ns.in[j].push_back(i);
            }
    }
    for (auto& in : ns.in) std::sort(in.begin(), in.end());
    return ns;
}

/// Solves G_i = sum_k w_ki G_k (i >= 1), G_0 = 1 as a dense linear system over
/// the nodes reachable from the source, so cyclic routing is accepted. Nodes
/// that receive no flow get G_i = 0.
inline FlowVector flow_solve(const RoutingVector& w) {
    const int n = w.node_count();
    if (n < 2) throw PreconditionError("routing vector needs a source and a base");
    const NodeId base = n - 1;

    std::vector<bool> reached(n, false);
    std::vector<NodeId> stack{kSourceId};
    reached[kSourceId] = true;
    while (!stack.empty()) {
        const NodeId i = stack.back();
        stack.pop_back();
        for (const auto& e : w.rows[i]) {
            if (e.weight <= 0.0) continue;
            if (e.to == kSourceId) throw PreconditionError("the source cannot be a receiver");
            if (!reached[e.to]) {
                reached[e.to] = true;
                stack.push_back(e.to);
            }
        }
    }

    std::vector<bool> delivers(n, false);
    delivers[base] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (NodeId i = 0; i < base; ++i) {
            if (delivers[i] || !reached[i]) continue;
            for (const auto& e : w.rows[i])
                if (e.weight > 0.0 && delivers[e.to]) {
                    delivers[i] = true;
                    changed = true;
                    break;
                }
        }
    }
    for (NodeId i = 0; i < n; ++i)
        if (reached[i] && !delivers[i])
            throw SingularFlow("routing traps flow at node " + std::to_string(i) + " with no path to the base");

    std::vector<int> index(n, -1);
    std::vector<NodeId> nodes;
    for (NodeId i = 0; i < n; ++i)
        if (reached[i]) {
            index[i] = static_cast<int>(nodes.size());
            nodes.push_back(i);
        }
    const auto m = static_cast<Eigen::Index>(nodes.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
    for (NodeId k : nodes)
        for (const auto& e : w.rows[k])
            if (e.weight > 0.0) a(index[e.to], index[k]) -= e.weight;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    b(index[kSourceId]) = 1.0;

    const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) throw SingularFlow("flow conservation system is singular");
    const Eigen::VectorXd g = lu.solve(b);

    FlowVector flow(n, 0.0);
    for (Eigen::Index r = 0; r < m; ++r) {
        if (!std::isfinite(g(r)) || g(r) < -1e-12) throw SingularFlow("flow conservation yields a negative inflow");
        flow[nodes[r]] = std::max(0.0, g(r));
    }
    return flow;
}

/// I_i = G_i [ sum_j w_ij (c_s d_ij^beta + c_f) + c_r ] for a relay i.
inline double relay_workload(NodeId i, const RoutingVector& w, const FlowVector& g, const Topology& topo,
                             const EnergyParams& p) {
    if (g[i] == 0.0) return 0.0;
    double tx = 0.0;
    for (const auto& e : w.rows[i]) tx += e.weight * p.transmit_cost(distance(topo.positions[i], topo.positions[e.to]));
    return g[i] * (tx + p.c_r);
}

/// I_0 = sum_j w_0j (c_s d_0j^beta + c_f) + c_e.
inline double source_workload(const RoutingVector& w, std::span<const double> d0, const EnergyParams& p) {
    double tx = 0.0;
    for (const auto& e : w.rows[kSourceId]) tx += e.weight * p.transmit_cost(d0[e.to]);
    return tx + p.c_e;
}

/// Workloads of nodes 0..N-1.
inline Workloads workloads(const RoutingVector& w, const FlowVector& g, const Topology& topo,
                           std::span<const double> d0, const EnergyParams& p) {
    Workloads out(static_cast<std::size_t>(topo.base()), 0.0);
    out[kSourceId] = source_workload(w, d0, p);
    for (NodeId i = 1; i < topo.base(); ++i) out[i] = relay_workload(i, w, g, topo, p);
    return out;
}

/// Sum of relay workloads (nodes 1..N-1).
inline double relay_load(const Workloads& load) {
    double s = 0.0;
    for (std::size_t i = 1; i < load.size(); ++i) s += load[i];
    return s;
}

/// Total battery drain, source included.
inline double total_drain(const Workloads& load) {
    double s = 0.0;
    for (double v : load) s += v;
    return s;
}

/// r_i <- max(0, r_i - I_i * delta); advances the clock and refreshes liveness.
inline NetworkState energy_step(const NetworkState& state, const Workloads& load, double delta) {
    if (!(delta > 0.0)) throw PreconditionError("time step must be positive");
    NetworkState next = state;
    for (std::size_t i = 0; i < next.residual.size(); ++i)
        next.residual[i] = std::max(0.0, state.residual[i] - load[i] * delta);
    next.t = state.t + delta;
    next.refresh_alive();
    return next;
}

}  // namespace wsnlife
