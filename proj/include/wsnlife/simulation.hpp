#pragma once

#include <cmath>
#include <future>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsnlife/core.hpp"
#include "wsnlife/errors.hpp"
#include "wsnlife/policy.hpp"
#include "wsnlife/trajectory.hpp"

namespace wsnlife {

struct SimulationConfig {
    double delta = 1.0;
    double death_threshold_fraction = 0.0;
    PolicyConfig policy;
    long max_steps = 1'000'000;
    /// Place T inside the final step by linear interpolation instead of at
    /// its end.
    bool interpolate_lifetime = true;

    friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;

    void validate() const {
        if (!(delta > 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be positive");
        if (!(death_threshold_fraction >= 0.0 && death_threshold_fraction < 1.0))
            throw ConfigError("death threshold fraction must lie in [0, 1)");
        if (max_steps < 1) throw ConfigError("max_steps must be at least 1");
        policy.validate();
    }
};

enum class Termination { SourceDead, NoRoute, MaxSteps };

inline const char* to_string(Termination t) {
    switch (t) {
        case Termination::SourceDead: return "source_dead";
        case Termination::NoRoute: return "no_route";
        case Termination::MaxSteps: return "max_steps";
    }
    return "?";
}

/// State at the start of step k and the decision taken for it.
struct StepRecord {
    long k = 0;
    double t = 0.0;
    Position source;
    std::vector<double> residual;
    std::vector<bool> alive;
    RoutingVector w;
    Workloads load;
    double objective = 0.0;
    std::optional<double> nu;
    std::optional<std::vector<NodeId>> path;
    bool nonconvex_warning = false;

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct DeathEvent {
    NodeId node = 0;
    long step = 0;
    double t = 0.0;

    friend bool operator==(const DeathEvent&, const DeathEvent&) = default;
};

struct SimulationResult {
    double lifetime = 0.0;
    Termination reason = Termination::MaxSteps;
    std::vector<StepRecord> steps;
    std::vector<DeathEvent> deaths;
    /// State at `lifetime` (for SourceDead, r_0 equals its death level).
    NetworkState final_state;

    friend bool operator==(const SimulationResult&, const SimulationResult&) = default;
};

/// A solver failed mid-run; carries the partial trace up to the failing step.
class SimulationAborted : public Error {
public:
    SimulationAborted(const std::string& what, long step, std::shared_ptr<const SimulationResult> partial)
        : Error(what), step(step), partial(std::move(partial)) {}
    long step;
    std::shared_ptr<const SimulationResult> partial;
};

inline SimulationResult run_simulation(const Topology& topo, std::span<const double> initial_energy,
                                       const Trajectory& traj, const EnergyParams& params,
                                       const SimulationConfig& cfg) {
    topo.validate();
    params.validate();
    cfg.validate();
    validate(traj);
    if (static_cast<int>(initial_energy.size()) != topo.base())
        throw ConfigError("expected one initial energy per non-base node");
    for (double r : initial_energy)
        if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("initial energies must be positive");

    SimulationResult res;
    NetworkState state = NetworkState::initial(initial_energy, cfg.death_threshold_fraction);

    for (long k = 0; k < cfg.max_steps; ++k) {
        const double t = static_cast<double>(k) * cfg.delta;
        state.t = t;
        const Position pos = position_at(traj, t);
        const StepContext ctx(topo, state, pos, params);
        if (ctx.sets.out[kSourceId].empty()) {
            res.reason = Termination::NoRoute;
            res.lifetime = t;
            res.final_state = state;
            return res;
        }

        PolicyOutcome decision;
        try {
            decision = solve_policy(ctx, cfg.policy);
        } catch (const Error& e) {
            auto partial = std::make_shared<SimulationResult>(res);
            partial->final_state = state;
            throw SimulationAborted("step " + std::to_string(k) + " (t=" + std::to_string(t) + "): " + e.what(), k,
                                    std::move(partial));
        }

        StepRecord rec;
        rec.k = k;
        rec.t = t;
        rec.source = pos;
        rec.residual = state.residual;
        rec.alive = state.alive;
        rec.w = decision.w;
        rec.load = decision.workloads;
        rec.objective = decision.objective;
        rec.nu = decision.nu;
        rec.path = decision.path;
        rec.nonconvex_warning = decision.nonconvex_warning;
        res.steps.push_back(std::move(rec));

        const auto& load = decision.workloads;
        const double r0 = state.residual[kSourceId];
        const double level = state.death_level[kSourceId];
        if (r0 - load[kSourceId] * cfg.delta <= level) {
            const double dt = cfg.interpolate_lifetime ? (r0 - level) / load[kSourceId] : cfg.delta;
            NetworkState last = state;
            for (std::size_t i = 0; i < last.residual.size(); ++i)
                last.residual[i] = std::max(0.0, state.residual[i] - load[i] * dt);
            last.residual[kSourceId] = level;
            last.t = t + dt;
            last.refresh_alive();
            res.reason = Termination::SourceDead;
            res.lifetime = last.t;
            res.final_state = std::move(last);
            return res;
        }

        NetworkState next = energy_step(state, load, cfg.delta);
        for (NodeId i = 1; i < topo.base(); ++i)
            if (state.alive[i] && !next.alive[i]) res.deaths.push_back({i, k, next.t});
        state = std::move(next);
    }

    res.reason = Termination::MaxSteps;
    res.lifetime = static_cast<double>(cfg.max_steps) * cfg.delta;
    state.t = res.lifetime;
    res.final_state = std::move(state);
    return res;
}

struct SweepRow {
    double epsilon = 0.0;
    double lifetime = 0.0;
    Termination reason = Termination::MaxSteps;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// One P2 run per epsilon over the same topology, energies and trajectory.
/// Runs are independent and execute concurrently; rows keep input order.
inline std::vector<SweepRow> sweep_epsilon(const Topology& topo, std::span<const double> initial_energy,
                                           const Trajectory& traj, const EnergyParams& params,
                                           const SimulationConfig& cfg, std::span<const double> epsilons) {
    std::vector<std::future<SimulationResult>> runs;
    runs.reserve(epsilons.size());
    const std::vector<double> energy(initial_energy.begin(), initial_energy.end());
    for (double eps : epsilons) {
        SimulationConfig c = cfg;
        c.policy.policy = Policy::P2;
        c.policy.epsilon = eps;
        runs.push_back(std::async(std::launch::async, [&topo, &energy, &traj, &params, c] {
            return run_simulation(topo, energy, traj, params, c);
        }));
    }
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const SimulationResult r = runs[i].get();
        rows.push_back({epsilons[i], r.lifetime, r.reason});
    }
    return rows;
}

}  // namespace wsnlife
