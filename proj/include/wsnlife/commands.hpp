#pragma once

// Command-line entry points. Precedence for every setting is
// flag > scenario file > built-in default.
//
// Exit codes: 0 success, 2 parse/validation/config error, 3 solver failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsnlife/errors.hpp"
#include "wsnlife/policy.hpp"
#include "wsnlife/scenario.hpp"
#include "wsnlife/simulation.hpp"
#include "wsnlife/tpbvp.hpp"
#include "wsnlife/trace.hpp"

namespace wsnlife {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitSolver = 3;

struct Overrides {
    std::optional<Policy> policy;
    std::optional<double> epsilon;
    std::optional<std::uint64_t> seed;
    std::optional<double> delta;
    std::optional<double> threshold;
    std::optional<std::string> out_dir;
};

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError({"cannot read " + path});
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

inline void apply_overrides(Scenario& s, const Overrides& o, std::ostream& err) {
    if (o.policy) s.simulation.policy.policy = *o.policy;
    if (o.epsilon) s.simulation.policy.epsilon = *o.epsilon;
    if (o.delta) s.simulation.delta = *o.delta;
    if (o.threshold) s.simulation.death_threshold_fraction = *o.threshold;
    if (o.out_dir) s.out_dir = *o.out_dir;
    if (o.seed) {
        if (auto* rw = std::get_if<RandomWalk>(&s.trajectory))
            rw->seed = *o.seed;
        else
            err << "note: --seed ignored, trajectory is " << trajectory_kind(s.trajectory) << '\n';
    }
    if (auto v = scenario_violations(s); !v.empty()) throw ValidationError(v);
}

namespace detail {

inline std::filesystem::path prepare_out_dir(const Scenario& s) {
    std::filesystem::path dir(s.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + p.string());
    out << content;
}

/// Runs `body`, mapping library errors onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ScenarioError& e) {
        err << e.what() << '\n';
        return kExitInput;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitInput;
    } catch (const PreconditionError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Error& e) {
        err << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitInput;
    }
}

}  // namespace detail

/// Writes trace.csv, summary.txt and the effective scenario (scenario.scn).
inline int cmd_simulate(const std::string& path, const Overrides& o, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        Scenario s = load_scenario(path);
        apply_overrides(s, o, err);
        const auto dir = detail::prepare_out_dir(s);
        detail::write_file(dir / "scenario.scn", serialize_scenario(s));

        SimulationResult res;
        int code = kExitOk;
        try {
            res = run_simulation(s.topology, s.initial_energy, s.trajectory, s.energy, s.simulation);
        } catch (const SimulationAborted& e) {
            err << "solver failure: " << e.what() << '\n';
            res = *e.partial;
            code = kExitSolver;
        }
        std::ostringstream trace;
        write_trace_csv(trace, res, s.topology.node_count());
        detail::write_file(dir / "trace.csv", trace.str());
        std::ostringstream summary;
        write_summary(summary, s, res);
        detail::write_file(dir / "summary.txt", summary.str());
        if (code == kExitOk)
            out << "lifetime = " << format_number(res.lifetime) << "\ntermination = " << to_string(res.reason) << '\n';
        return code;
    });
}

/// P2 lifetime for each epsilon; writes sweep.csv and prints the table.
inline int cmd_sweep_epsilon(const std::string& path, const Overrides& o, std::vector<double> epsilons,
                             std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        Scenario s = load_scenario(path);
        apply_overrides(s, o, err);
        if (epsilons.empty()) epsilons = s.sweep;
        if (epsilons.empty()) throw ConfigError("no epsilon values: pass --epsilon or set [simulation] sweep");
        for (double e : epsilons)
            if (!(e >= 0.0)) throw ConfigError("epsilon values must be >= 0");
        const auto dir = detail::prepare_out_dir(s);
        const auto rows = sweep_epsilon(s.topology, s.initial_energy, s.trajectory, s.energy, s.simulation, epsilons);
        std::ostringstream table;
        write_sweep_csv(table, rows);
        detail::write_file(dir / "sweep.csv", table.str());
        out << table.str();
        return kExitOk;
    });
}

/// Initial guess for T: R_0 over the source drain at t = 0.
inline double default_terminal_guess(const Scenario& s, const Parametric& motion) {
    const auto out = solve_p1(s.topology, all_alive(s.topology), motion.initial, s.energy);
    return s.initial_energy[kSourceId] / out.workloads[kSourceId];
}

/// Shooting on a parametric trajectory; writes tpbvp_trace.csv and
/// tpbvp_summary.txt (the best iterate when it fails to converge).
inline int cmd_tpbvp(const std::string& path, const Overrides& o, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        Scenario s = load_scenario(path);
        apply_overrides(s, o, err);
        const auto* motion = std::get_if<Parametric>(&s.trajectory);
        if (!motion)
            throw ConfigError(std::string("tpbvp needs a parametric trajectory (constant_velocity or circular), got ") +
                              trajectory_kind(s.trajectory));
        ShootingUnknowns guess = s.tpbvp_guess;
        guess.T = s.tpbvp_guess_T ? *s.tpbvp_guess_T : default_terminal_guess(s, *motion);
        const auto dir = detail::prepare_out_dir(s);

        ShootingResult res;
        bool converged = true;
        try {
            res = shoot(s.topology, s.initial_energy, *motion, s.energy, guess, s.tpbvp);
        } catch (const ShootingDiverged& e) {
            res = e.best;
            converged = false;
        }
        std::ostringstream trace;
        write_shooting_csv(trace, res);
        detail::write_file(dir / "tpbvp_trace.csv", trace.str());
        std::ostringstream summary;
        write_shooting_summary(summary, s, res, converged);
        detail::write_file(dir / "tpbvp_summary.txt", summary.str());
        out << summary.str();
        if (!converged) {
            err << "shooting did not converge; best residual norm " << format_number(res.residual_norm) << '\n';
            return kExitSolver;
        }
        return kExitOk;
    });
}

inline int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const Scenario s = load_scenario(path);
        out << "ok: " << s.name << " (" << s.topology.node_count() << " nodes, " << trajectory_kind(s.trajectory)
            << " trajectory)\n";
        return kExitOk;
    });
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Lifetime-maximising routing for sensor networks with a mobile source"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string policy;
    std::string epsilon;
    std::uint64_t seed = 0;
    double delta = 0.0;
    double threshold = 0.0;
    std::string out_dir;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("scenario", scenario_path, "scenario document")->required();
        sub->add_option("--policy", policy, "routing policy")->check(CLI::IsMember({"p1", "p2", "p3"}));
        sub->add_option("--seed", seed, "random-walk seed");
        sub->add_option("--delta", delta, "time step");
        sub->add_option("--threshold", threshold, "death threshold as a fraction of initial energy");
        sub->add_option("--out-dir", out_dir, "output directory");
    };
    CLI::App* simulate = app.add_subcommand("simulate", "run the lifetime simulation and export traces");
    add_common(simulate);
    simulate->add_option("--epsilon", epsilon, "P2 relay weight");
    CLI::App* sweep = app.add_subcommand("sweep-epsilon", "compare P2 lifetimes across epsilon values");
    add_common(sweep);
    sweep->add_option("--epsilon", epsilon, "comma-separated epsilon list, e.g. 0.5,1,8");
    CLI::App* tpbvp = app.add_subcommand("tpbvp", "solve the known-trajectory problem by shooting");
    add_common(tpbvp);
    CLI::App* validate_cmd = app.add_subcommand("validate", "parse and validate a scenario");
    validate_cmd->add_option("scenario", scenario_path, "scenario document")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitInput;
    }

    CLI::App* active = app.get_subcommands().front();
    if (active == validate_cmd) return cmd_validate(scenario_path, out, err);

    Overrides o;
    if (active->count("--policy")) o.policy = parse_policy(policy);
    if (active->count("--seed")) o.seed = seed;
    if (active->count("--delta")) o.delta = delta;
    if (active->count("--threshold")) o.threshold = threshold;
    if (active->count("--out-dir")) o.out_dir = out_dir;

    if (active == tpbvp) return cmd_tpbvp(scenario_path, o, out, err);

    std::vector<std::string> bad;
    std::vector<double> eps;
    if (active->count("--epsilon")) {
        eps = parse_number_list(epsilon, &bad);
        if (!bad.empty() || eps.empty()) {
            err << "--epsilon: expected a number or comma-separated list\n";
            return kExitInput;
        }
    }
    if (active == sweep) return cmd_sweep_epsilon(scenario_path, o, eps, out, err);
    if (eps.size() > 1) {
        err << "--epsilon: simulate takes a single value (use sweep-epsilon for lists)\n";
        return kExitInput;
    }
    if (!eps.empty()) o.epsilon = eps.front();
    return cmd_simulate(scenario_path, o, out, err);
}

}  // namespace wsnlife
