#pragma once

// CSV trace tables and key = value summaries. Numbers use the shortest
// representation that parses back to the same double.

#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wsnlife/core.hpp"
#include "wsnlife/scenario.hpp"
#include "wsnlife/simulation.hpp"
#include "wsnlife/tpbvp.hpp"

namespace wsnlife {

/// Every ordered pair (i, j) with i < N, j >= 1, i != j, so the column set
/// depends only on the node count.
inline std::vector<Arc> trace_arc_columns(int node_count) {
    std::vector<Arc> arcs;
    const NodeId base = node_count - 1;
    for (NodeId i = 0; i < base; ++i)
        for (NodeId j = 1; j <= base; ++j)
            if (i != j) arcs.push_back({i, j});
    return arcs;
}

inline std::string join_path(const std::vector<NodeId>& path) {
    std::string s;
    for (std::size_t k = 0; k < path.size(); ++k) s += (k ? "-" : "") + std::to_string(path[k]);
    return s;
}

inline void write_trace_csv(std::ostream& out, const SimulationResult& res, int node_count) {
    const auto f = format_number;
    const NodeId base = node_count - 1;
    const auto arcs = trace_arc_columns(node_count);

    out << "k,t,x0,y0";
    for (NodeId i = 0; i < base; ++i) out << ",r_" << i;
    for (NodeId i = 0; i < base; ++i) out << ",I_" << i;
    for (NodeId i = 0; i < base; ++i) out << ",alive_" << i;
    for (const Arc& a : arcs) out << ",w_" << a.from << '_' << a.to;
    out << ",objective,nu,path,nonconvex\n";

    for (const StepRecord& s : res.steps) {
        out << s.k << ',' << f(s.t) << ',' << f(s.source.x) << ',' << f(s.source.y);
        for (NodeId i = 0; i < base; ++i) out << ',' << f(s.residual[i]);
        for (NodeId i = 0; i < base; ++i) out << ',' << f(s.load[i]);
        for (NodeId i = 0; i < base; ++i) out << ',' << (s.alive[i] ? 1 : 0);
        for (const Arc& a : arcs) out << ',' << f(s.w.weight(a.from, a.to));
        out << ',' << f(s.objective) << ',' << (s.nu ? f(*s.nu) : "") << ',' << (s.path ? join_path(*s.path) : "")
            << ',' << (s.nonconvex_warning ? 1 : 0) << '\n';
    }
}

inline void write_summary(std::ostream& out, const Scenario& sc, const SimulationResult& res) {
    const auto f = format_number;
    out << "scenario = " << sc.name << '\n';
    out << "lifetime = " << f(res.lifetime) << '\n';
    out << "termination = " << to_string(res.reason) << '\n';
    out << "policy = " << to_string(sc.simulation.policy.policy) << '\n';
    out << "epsilon = " << f(sc.simulation.policy.epsilon) << '\n';
    if (const auto* rw = std::get_if<RandomWalk>(&sc.trajectory))
        out << "seed = " << rw->seed << '\n';
    else
        out << "seed = -\n";
    out << "delta = " << f(sc.simulation.delta) << '\n';
    out << "threshold = " << f(sc.simulation.death_threshold_fraction) << '\n';
    out << "steps = " << res.steps.size() << '\n';
    out << "final_residual =";
    for (double r : res.final_state.residual) out << ' ' << f(r);
    out << '\n';
    out << "deaths =";
    for (const DeathEvent& d : res.deaths) out << ' ' << d.node << '@' << f(d.t);
    out << '\n';
    std::size_t warnings = 0;
    for (const auto& s : res.steps) warnings += s.nonconvex_warning ? 1 : 0;
    out << "nonconvex_steps = " << warnings << '\n';
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "epsilon,lifetime,termination\n";
    for (const auto& r : rows) out << format_number(r.epsilon) << ',' << format_number(r.lifetime) << ',' << to_string(r.reason) << '\n';
}

inline void write_shooting_csv(std::ostream& out, const ShootingResult& res) {
    const auto f = format_number;
    const std::size_t n = res.trace.empty() ? 0 : res.trace.front().residual.size();
    out << "t,x0,y0";
    for (std::size_t i = 0; i < n; ++i) out << ",r_" << i;
    for (std::size_t i = 0; i < n; ++i) out << ",lambda_" << i;
    out << ",lambda_x,lambda_y,next_hop\n";
    for (const auto& p : res.trace) {
        out << f(p.t) << ',' << f(p.source.x) << ',' << f(p.source.y);
        for (double r : p.residual) out << ',' << f(r);
        for (std::size_t i = 0; i < n; ++i) out << ',' << f(i < p.costate.lambda_r.size() ? p.costate.lambda_r[i] : 0.0);
        out << ',' << f(p.costate.lambda_x) << ',' << f(p.costate.lambda_y) << ',' << p.next_hop << '\n';
    }
}

inline void write_shooting_summary(std::ostream& out, const Scenario& sc, const ShootingResult& res, bool converged) {
    const auto f = format_number;
    out << "scenario = " << sc.name << '\n';
    out << "converged = " << (converged ? "true" : "false") << '\n';
    out << "T = " << f(res.unknowns.T) << '\n';
    out << "nu = " << f(res.unknowns.nu) << '\n';
    out << "mu_x = " << f(res.unknowns.mu_x) << '\n';
    out << "mu_y = " << f(res.unknowns.mu_y) << '\n';
    out << "residual = " << f(res.residual[0]) << ' ' << f(res.residual[1]) << ' ' << f(res.residual[2]) << '\n';
    out << "residual_norm = " << f(res.residual_norm) << '\n';
    out << "iterations = " << res.iterations << '\n';
}

/// Minimal CSV reader for the tables above (no quoting is ever emitted).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(std::string_view name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw Error("missing column " + std::string(name));
    }
};

inline CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    auto split = [](const std::string& l) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream ss(l);
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        if (!l.empty() && l.back() == ',') out.emplace_back();
        return out;
    };
    if (std::getline(in, line)) t.header = split(line);
    while (std::getline(in, line))
        if (!line.empty()) t.rows.push_back(split(line));
    return t;
}

}  // namespace wsnlife
