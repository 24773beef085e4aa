#pragma once

// Per-step routing solvers for the three lifetime definitions:
//   P1  minimise the source workload I_0,
//   P2  minimise I_0 + (eps / nu) * sum of relay workloads, nu self-consistent,
//   P3  minimise total drain, solved as a shortest path over Q_ij arc costs.
// vertex_oracle enumerates every deterministic routing vector and is used as
// ground truth on small networks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "wsnlife/core.hpp"
#include "wsnlife/errors.hpp"

namespace wsnlife {

enum class Policy { P1, P2, P3 };

inline const char* to_string(Policy p) {
    switch (p) {
        case Policy::P1: return "p1";
        case Policy::P2: return "p2";
        case Policy::P3: return "p3";
    }
    return "?";
}

struct PolicyConfig {
    Policy policy = Policy::P1;
    double epsilon = 1.0;

    // nu fixed point (P2)
    double nu_init = -1.0;
    double nu_damping = 0.5;
    double nu_tol = 1e-6;
    int nu_max_iter = 100;

    // inner projected-gradient search (P2)
    int multistart_count = 8;
    std::uint64_t multistart_seed = 0x6d756c7469ULL;
    int gradient_max_iter = 500;
    double gradient_tol = 1e-8;
    double armijo = 1e-4;

    friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;

    void validate() const {
        if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be >= 0");
        if (!(nu_init < 0.0)) throw ConfigError("nu_init must be negative");
        if (!(nu_damping > 0.0 && nu_damping <= 1.0)) throw ConfigError("nu_damping must lie in (0, 1]");
        if (!(nu_tol > 0.0)) throw ConfigError("nu_tol must be positive");
        if (nu_max_iter < 1) throw ConfigError("nu_max_iter must be at least 1");
        if (multistart_count < 1) throw ConfigError("multistart_count must be at least 1");
        if (gradient_max_iter < 1 || !(gradient_tol > 0.0)) throw ConfigError("invalid gradient settings");
    }
};

struct PolicyOutcome {
    RoutingVector w;
    double objective = 0.0;
    std::optional<double> nu;
    std::optional<std::vector<NodeId>> path;
    FlowVector flow;
    Workloads workloads;
    bool nonconvex_warning = false;
};

/// Everything a per-step solver needs, computed once per step.
struct StepContext {
    const Topology& topology;
    EnergyParams params;
    std::vector<double> d0;
    NeighborSets sets;

    StepContext(const Topology& topo, const NetworkState& state, Position src, const EnergyParams& p)
        : topology(topo), params(p), d0(source_distances(topo, src)), sets(neighbor_sets(topo, state, d0)) {}

    [[nodiscard]] NodeId base() const { return topology.base(); }

    /// c_s d_ij^beta + c_f
    [[nodiscard]] double transmit_cost(NodeId i, NodeId j) const {
        return params.transmit_cost(link_distance(topology, d0, i, j));
    }
};

/// Q_ij = c_r + c_s d_ij^beta + c_f, the energy spent network-wide to move one
/// bit across arc (i, j).
inline double arc_weight(NodeId i, NodeId j, const Topology& topo, std::span<const double> d0, const EnergyParams& p) {
    return p.transmit_cost(link_distance(topo, d0, i, j)) + p.c_r;
}

namespace detail {

inline PolicyOutcome finish(RoutingVector w, const StepContext& ctx) {
    PolicyOutcome out;
    out.flow = flow_solve(w);
    out.workloads = workloads(w, out.flow, ctx.topology, ctx.d0, ctx.params);
    out.w = std::move(w);
    return out;
}

inline RoutingVector uniform_routing(const NeighborSets& sets) {
    RoutingVector w(static_cast<int>(sets.out.size()));
    for (NodeId i = 0; i + 1 < w.node_count(); ++i) w.set_uniform(i, sets.out[i]);
    return w;
}

/// Euclidean projection onto the probability simplex (sort-based).
inline void project_to_simplex(std::span<double> v) {
    if (v.empty()) return;
    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        cumulative += u[k];
        const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (u[k] - t > 0.0) theta = t;
    }
    double s = 0.0;
    for (double& x : v) {
        x = std::max(0.0, x - theta);
        s += x;
    }
    // re-normalise so rows sum to 1 up to rounding
    if (s > 0.0)
        for (double& x : v) x /= s;
}

}  // namespace detail

// ---------------------------------------------------------------- P1

/// Cheapest source arc gets all traffic; relays split uniformly.
inline PolicyOutcome solve_p1(const StepContext& ctx) {
    const auto& out0 = ctx.sets.out[kSourceId];
    if (out0.empty()) throw NoRoute("source has no out-neighbour");
    NodeId best = out0.front();
    double best_cost = ctx.transmit_cost(kSourceId, best);
    for (NodeId j : out0) {
        const double c = ctx.transmit_cost(kSourceId, j);
        if (c < best_cost) {
            best = j;
            best_cost = c;
        }
    }
    RoutingVector w = detail::uniform_routing(ctx.sets);
    w.set_vertex(kSourceId, out0, best);
    PolicyOutcome res = detail::finish(std::move(w), ctx);
    res.objective = res.workloads[kSourceId];
    return res;
}

inline PolicyOutcome solve_p1(const Topology& topo, const NetworkState& state, Position src, const EnergyParams& p) {
    return solve_p1(StepContext(topo, state, src, p));
}

// ---------------------------------------------------------------- P3

/// Min-cost path 0 -> N on Q_ij weights. Ties (relative 1e-12) go to the
/// lexicographically smaller node sequence.
inline std::optional<std::vector<NodeId>> shortest_path(const StepContext& ctx, double* cost = nullptr) {
    const int n = ctx.topology.node_count();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<std::vector<NodeId>> path(n);
    std::vector<bool> done(n, false);
    dist[kSourceId] = 0.0;
    path[kSourceId] = {kSourceId};

    auto better = [](double da, const std::vector<NodeId>& pa, double db, const std::vector<NodeId>& pb) {
        const double tol = 1e-12 * std::max(1.0, std::max(std::abs(da), std::abs(db)));
        if (std::abs(da - db) <= tol) return pa < pb;
        return da < db;
    };

    for (int it = 0; it < n; ++it) {
        NodeId u = -1;
        for (NodeId v = 0; v < n; ++v) {
            if (done[v] || dist[v] == inf) continue;
            if (u < 0 || better(dist[v], path[v], dist[u], path[u])) u = v;
        }
        if (u < 0) break;
        done[u] = true;
        for (NodeId v : ctx.sets.out[u]) {
            if (done[v]) continue;
            const double nd = dist[u] + arc_weight(u, v, ctx.topology, ctx.d0, ctx.params);
            std::vector<NodeId> np = path[u];
            np.push_back(v);
            if (dist[v] == inf || better(nd, np, dist[v], path[v])) {
                dist[v] = nd;
                path[v] = std::move(np);
            }
        }
    }
    const NodeId base = ctx.base();
    if (dist[base] == inf) return std::nullopt;
    if (cost) *cost = dist[base];
    return path[base];
}

/// Deterministic routing along the Q-shortest path; off-path rows are uniform
/// so the vector stays feasible. Objective is total drain, which equals the
/// path cost minus one receive cost at the base (plus c_e).
inline PolicyOutcome solve_p3_shortest_path(const StepContext& ctx) {
    const auto path = shortest_path(ctx);
    if (!path) throw NoRoute("base unreachable from the source");
    RoutingVector w = detail::uniform_routing(ctx.sets);
    for (std::size_t k = 0; k + 1 < path->size(); ++k) w.set_vertex((*path)[k], ctx.sets.out[(*path)[k]], (*path)[k + 1]);
    PolicyOutcome res = detail::finish(std::move(w), ctx);
    res.objective = total_drain(res.workloads);
    res.path = *path;
    return res;
}

inline PolicyOutcome solve_p3_shortest_path(const Topology& topo, const NetworkState& state, Position src,
                                            const EnergyParams& p) {
    return solve_p3_shortest_path(StepContext(topo, state, src, p));
}

inline double path_cost(const std::vector<NodeId>& path, const Topology& topo, std::span<const double> d0,
                        const EnergyParams& p) {
    double c = 0.0;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) c += arc_weight(path[k], path[k + 1], topo, d0, p);
    return c;
}

// ---------------------------------------------------------------- P2

/// nu implied by the terminal condition with r_i'(T) = -I_i:
/// nu = -(1 + 2 eps sum_{i>=1} I_i) / (2 I_0).
inline double nu_residual(const Workloads& load, double epsilon) {
    if (load.empty() || load[kSourceId] == 0.0) throw DegenerateSource("source workload is zero");
    return -(1.0 + 2.0 * epsilon * relay_load(load)) / (2.0 * load[kSourceId]);
}

/// Arc set the P2 search runs on. P2 rewards relay workload, so any relay cycle
/// makes it unbounded (flow around a near-closed loop grows without limit).
/// When the relay graph has a cycle, relay arcs are kept only if they strictly
/// decrease (Q-distance to base, node id); otherwise the sets are unchanged.
inline NeighborSets p2_neighbor_sets(const StepContext& ctx) {
    const int n = ctx.topology.node_count();
    const NodeId base = ctx.base();
    NeighborSets sets = ctx.sets;

    // Kahn's algorithm on relay-to-relay arcs.
    std::vector<int> indeg(n, 0);
    for (NodeId i = 1; i < base; ++i)
        for (NodeId j : sets.out[i])
            if (j != base) ++indeg[j];
    std::vector<NodeId> queue;
    for (NodeId i = 1; i < base; ++i)
        if (indeg[i] == 0) queue.push_back(i);
    int seen = 0;
    while (!queue.empty()) {
        const NodeId i = queue.back();
        queue.pop_back();
        ++seen;
        for (NodeId j : sets.out[i])
            if (j != base && --indeg[j] == 0) queue.push_back(j);
    }
    if (seen == base - 1) return sets;

    // Bellman-Ford style relaxation of Q-distance to base over relays.
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    dist[base] = 0.0;
    for (int round = 0; round < n; ++round)
        for (NodeId i = 1; i < base; ++i)
            for (NodeId j : sets.out[i])
                dist[i] = std::min(dist[i], dist[j] + arc_weight(i, j, ctx.topology, ctx.d0, ctx.params));

    auto downhill = [&](NodeId i, NodeId j) {
        if (j == base) return true;
        if (dist[j] != dist[i]) return dist[j] < dist[i];
        return j < i;
    };
    for (NodeId i = 1; i < base; ++i) {
        auto& out = sets.out[i];
        out.erase(std::remove_if(out.begin(), out.end(), [&](NodeId j) { return !downhill(i, j); }), out.end());
    }
    for (auto& in : sets.in) in.clear();
    for (NodeId i = 0; i < base; ++i)
        for (NodeId j : sets.out[i]) sets.in[j].push_back(i);
    for (auto& in : sets.in) std::sort(in.begin(), in.end());
    return sets;
}

namespace detail {

/// Inner objective I_0 + coef * S (S = relay load); when nu is ~0 the problem
/// degenerates to maximising eps * S.
struct P2Objective {
    const StepContext& ctx;
    const NeighborSets& sets;
    double epsilon;
    double nu;

    [[nodiscard]] bool degenerate() const { return std::abs(nu) < 1e-9; }

    [[nodiscard]] double value(const Workloads& load) const {
        if (degenerate()) return -epsilon * relay_load(load);
        return load[kSourceId] + (epsilon / nu) * relay_load(load);
    }

    [[nodiscard]] double evaluate(const RoutingVector& w) const {
        const FlowVector g = flow_solve(w);
        return value(workloads(w, g, ctx.topology, ctx.d0, ctx.params));
    }

    /// Analytic gradient over the entries of every row. Uses the adjoint
    /// y = (I - W)^{-1} a, a_i = per-unit-inflow relay cost, so that
    /// dS/dw_kj = G_k (q_kj [k relay] + y_j).
    [[nodiscard]] std::vector<std::vector<double>> gradient(const RoutingVector& w, const FlowVector& g) const {
        const int n = w.node_count();
        const NodeId base = n - 1;
        Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
        Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
        for (NodeId i = 0; i < base; ++i)
            for (const auto& e : w.rows[i]) {
                m(i, e.to) -= e.weight;
                if (i != kSourceId) a(i) += e.weight * ctx.transmit_cost(i, e.to);
            }
        for (NodeId i = 1; i < base; ++i)
            if (!w.rows[i].empty()) a(i) += ctx.params.c_r;
        const Eigen::VectorXd y = m.partialPivLu().solve(a);

        const double s_coef = degenerate() ? -epsilon : epsilon / nu;
        const double i0_coef = degenerate() ? 0.0 : 1.0;
        std::vector<std::vector<double>> grad(n);
        for (NodeId k = 0; k < base; ++k) {
            grad[k].resize(w.rows[k].size());
            for (std::size_t idx = 0; idx < w.rows[k].size(); ++idx) {
                const NodeId j = w.rows[k][idx].to;
                if (k == kSourceId) {
                    grad[k][idx] = i0_coef * ctx.transmit_cost(k, j) + s_coef * y(j);
                } else {
                    grad[k][idx] = s_coef * g[k] * (ctx.transmit_cost(k, j) + y(j));
                }
            }
        }
        return grad;
    }
};

struct InnerResult {
    RoutingVector w;
    double value = 0.0;
    bool nonconvex = false;
};

inline RoutingVector projected_step(const RoutingVector& w, const std::vector<std::vector<double>>& grad, double step) {
    RoutingVector next = w;
    for (std::size_t i = 0; i < next.rows.size(); ++i) {
        auto& row = next.rows[i];
        if (row.size() < 2) continue;
        std::vector<double> v(row.size());
        for (std::size_t k = 0; k < row.size(); ++k) v[k] = row[k].weight - step * grad[i][k];
        project_to_simplex(v);
        for (std::size_t k = 0; k < row.size(); ++k) row[k].weight = v[k];
    }
    return next;
}

inline double dot_diff(const RoutingVector& a, const RoutingVector& b, const std::vector<std::vector<double>>& grad) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        for (std::size_t k = 0; k < a.rows[i].size(); ++k) s += grad[i][k] * (a.rows[i][k].weight - b.rows[i][k].weight);
    return s;
}

inline double squared_diff(const RoutingVector& a, const RoutingVector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        for (std::size_t k = 0; k < a.rows[i].size(); ++k) {
            const double d = a.rows[i][k].weight - b.rows[i][k].weight;
            s += d * d;
        }
    return s;
}

/// Projected gradient with Armijo backtracking along the projection arc.
inline std::pair<RoutingVector, double> descend(const P2Objective& obj, RoutingVector w, const PolicyConfig& cfg) {
    FlowVector g = flow_solve(w);
    double f = obj.value(workloads(w, g, obj.ctx.topology, obj.ctx.d0, obj.ctx.params));
    double step = 1.0;
    for (int it = 0; it < cfg.gradient_max_iter; ++it) {
        const auto grad = obj.gradient(w, g);
        const RoutingVector probe = projected_step(w, grad, 1.0);
        if (std::sqrt(squared_diff(probe, w)) < cfg.gradient_tol) break;

        step = std::min(step * 4.0, 1e8);
        bool accepted = false;
        while (step > 1e-14) {
            RoutingVector cand = projected_step(w, grad, step);
            FlowVector cg;
            try {
                cg = flow_solve(cand);
            } catch (const SingularFlow&) {
                step *= 0.5;
                continue;
            }
            const double cf = obj.value(workloads(cand, cg, obj.ctx.topology, obj.ctx.d0, obj.ctx.params));
            if (cf <= f + cfg.armijo * dot_diff(cand, w, grad)) {
                w = std::move(cand);
                g = std::move(cg);
                f = cf;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }
    return {std::move(w), f};
}

inline InnerResult solve_inner(const P2Objective& obj, const PolicyConfig& cfg) {
    const NeighborSets& sets = obj.sets;
    const int n = static_cast<int>(sets.out.size());
    std::mt19937_64 rng(cfg.multistart_seed);

    InnerResult best;
    double worst = -std::numeric_limits<double>::infinity();
    bool have = false;
    for (int s = 0; s < cfg.multistart_count; ++s) {
        RoutingVector start = uniform_routing(sets);
        if (s > 0) {
            for (NodeId i = 0; i + 1 < n; ++i) {
                const auto& out = sets.out[i];
                if (out.empty()) continue;
                start.set_vertex(i, out, out[static_cast<std::size_t>(rng() % out.size())]);
            }
        }
        auto [w, f] = descend(obj, std::move(start), cfg);
        worst = std::max(worst, f);
        if (!have || f < best.value) {
            best.w = std::move(w);
            best.value = f;
            have = true;
        }
    }
    best.nonconvex = worst - best.value > 1e-6;
    return best;
}

}  // namespace detail

/// Minimises I_0 + (eps/nu) sum I_i together with a self-consistent nu, via a
/// damped fixed-point iteration on nu around a multistart projected-gradient
/// inner solve. If the iteration cycles between candidate routings, each
/// candidate is tested for self-consistency before giving up.
inline PolicyOutcome solve_p2(const StepContext& ctx, const PolicyConfig& cfg) {
    cfg.validate();
    if (ctx.sets.out[kSourceId].empty()) throw NoRoute("source has no out-neighbour");
    const NeighborSets sets = p2_neighbor_sets(ctx);

    auto load_of = [&](const RoutingVector& w) { return workloads(w, flow_solve(w), ctx.topology, ctx.d0, ctx.params); };

    auto accept = [&](detail::InnerResult inner, double nu) {
        PolicyOutcome res = detail::finish(std::move(inner.w), ctx);
        res.nu = nu;
        res.objective = detail::P2Objective{ctx, sets, cfg.epsilon, nu}.value(res.workloads);
        res.nonconvex_warning = inner.nonconvex;
        return res;
    };

    double nu = cfg.nu_init;
    double last_residual = std::numeric_limits<double>::quiet_NaN();
    std::vector<RoutingVector> visited;
    for (int it = 0; it < cfg.nu_max_iter; ++it) {
        detail::InnerResult inner = detail::solve_inner({ctx, sets, cfg.epsilon, nu}, cfg);
        const double implied = nu_residual(load_of(inner.w), cfg.epsilon);
        last_residual = implied;
        if (std::abs(implied - nu) <= cfg.nu_tol) return accept(std::move(inner), nu);
        if (std::find(visited.begin(), visited.end(), inner.w) == visited.end()) visited.push_back(inner.w);
        nu = (1.0 - cfg.nu_damping) * nu + cfg.nu_damping * implied;
    }

    for (const RoutingVector& cand : visited) {
        const double nu_c = nu_residual(load_of(cand), cfg.epsilon);
        detail::InnerResult inner = detail::solve_inner({ctx, sets, cfg.epsilon, nu_c}, cfg);
        if (std::abs(nu_residual(load_of(inner.w), cfg.epsilon) - nu_c) <= cfg.nu_tol)
            return accept(std::move(inner), nu_c);
    }
    throw NuDiverged("nu fixed point not reached within " + std::to_string(cfg.nu_max_iter) + " iterations", nu,
                     last_residual);
}

inline PolicyOutcome solve_p2(const Topology& topo, const NetworkState& state, Position src, const EnergyParams& p,
                              const PolicyConfig& cfg) {
    return solve_p2(StepContext(topo, state, src, p), cfg);
}

/// Dispatches on cfg.policy.
inline PolicyOutcome solve_policy(const StepContext& ctx, const PolicyConfig& cfg) {
    switch (cfg.policy) {
        case Policy::P1: return solve_p1(ctx);
        case Policy::P2: return solve_p2(ctx, cfg);
        case Policy::P3: return solve_p3_shortest_path(ctx);
    }
    throw ConfigError("unknown policy");
}

// ---------------------------------------------------------------- oracle

struct OracleP1 {};
struct OracleP2 {
    double nu;
    double epsilon;
};
struct OracleP3 {};
using OracleObjective = std::variant<OracleP1, OracleP2, OracleP3>;

inline double oracle_value(const OracleObjective& objective, const Workloads& load) {
    return std::visit(
        [&](const auto& o) -> double {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, OracleP1>) {
                return load[kSourceId];
            } else if constexpr (std::is_same_v<T, OracleP2>) {
                if (std::abs(o.nu) < 1e-9) return -o.epsilon * relay_load(load);
                return load[kSourceId] + (o.epsilon / o.nu) * relay_load(load);
            } else {
                return total_drain(load);
            }
        },
        objective);
}

inline constexpr double kOracleLimit = 1e6;

/// Calls visit(w, flow, load) for every deterministic routing vector over
/// `sets` whose flow system is nonsingular, in lexicographic order of the
/// per-node choices (node 0 most significant).
inline void enumerate_vertices(const StepContext& ctx, const NeighborSets& sets,
                               const std::function<void(const RoutingVector&, const FlowVector&, const Workloads&)>& visit) {
    const int n = static_cast<int>(sets.out.size());
    std::vector<NodeId> senders;
    double combos = 1.0;
    for (NodeId i = 0; i + 1 < n; ++i)
        if (!sets.out[i].empty()) {
            senders.push_back(i);
            combos *= static_cast<double>(sets.out[i].size());
        }
    if (combos > kOracleLimit) throw TooLarge("vertex enumeration exceeds 1e6 routing vectors");
    if (senders.empty() || senders.front() != kSourceId) throw NoRoute("source has no out-neighbour");

    std::vector<std::size_t> choice(senders.size(), 0);
    std::vector<std::size_t> sender_index(static_cast<std::size_t>(n), 0);
    for (std::size_t s = 0; s < senders.size(); ++s) sender_index[senders[s]] = s;
    std::vector<bool> on_walk(static_cast<std::size_t>(n));
    RoutingVector w(n);
    while (true) {
        for (std::size_t s = 0; s < senders.size(); ++s) {
            const auto& out = sets.out[senders[s]];
            w.set_vertex(senders[s], out, out[choice[s]]);
        }
        // A deterministic routing carries flow along a single walk from the
        // source; it is singular exactly when that walk revisits a node.
        bool delivers = false;
        std::fill(on_walk.begin(), on_walk.end(), false);
        for (NodeId u = kSourceId; !on_walk[u];) {
            on_walk[u] = true;
            if (u == n - 1) {
                delivers = true;
                break;
            }
            if (sets.out[u].empty()) break;
            u = sets.out[u][choice[sender_index[u]]];
        }
        if (delivers) {
            const FlowVector g = flow_solve(w);
            visit(w, g, workloads(w, g, ctx.topology, ctx.d0, ctx.params));
        }
        // odometer, last sender fastest
        std::size_t s = senders.size();
        while (s > 0) {
            --s;
            if (++choice[s] < sets.out[senders[s]].size()) break;
            choice[s] = 0;
            if (s == 0) return;
        }
    }
}

/// Best deterministic routing vector for `objective`; first in enumeration
/// order wins ties.
inline PolicyOutcome vertex_oracle(const StepContext& ctx, const NeighborSets& sets, const OracleObjective& objective) {
    std::optional<PolicyOutcome> best;
    enumerate_vertices(ctx, sets, [&](const RoutingVector& w, const FlowVector& g, const Workloads& load) {
        const double v = oracle_value(objective, load);
        if (!best || v < best->objective) {
            best = PolicyOutcome{};
            best->w = w;
            best->flow = g;
            best->workloads = load;
            best->objective = v;
        }
    });
    if (!best) throw NoRoute("no deterministic routing vector delivers to the base");
    if (const auto* p2 = std::get_if<OracleP2>(&objective)) best->nu = p2->nu;
    return *best;
}

inline PolicyOutcome vertex_oracle(const StepContext& ctx, const OracleObjective& objective) {
    return vertex_oracle(ctx, ctx.sets, objective);
}

}  // namespace wsnlife
