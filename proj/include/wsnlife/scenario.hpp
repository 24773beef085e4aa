#pragma once

// Scenario documents: a line-oriented key/value format with [sections] and a
// whitespace-separated node table.
//
//   name = example
//   [energy]       c_s, c_f, c_r, c_e, beta
//   [network]      base = <id>
//   [nodes]        rows "id x y range energy"; '-' for the base's range and
//                  energy, 'inf' for unlimited range. Node 0 is the source and
//                  its x y is the trajectory start.
//   [arcs]         optional rows "from to"; listed senders ignore their range
//   [trajectory]   kind = stationary | random_walk | waypoints |
//                         constant_velocity | circular
//                  random_walk: step_length, seed, segment_duration
//                  waypoints: one "point = t x y" per waypoint
//                  constant_velocity: vx, vy
//                  circular: center_x, center_y, angular_rate
//   [simulation]   delta, threshold, policy (p1|p2|p3), epsilon, max_steps,
//                  interpolate, nu_init, nu_damping, nu_tol, nu_max_iter,
//                  multistart, multistart_seed, gradient_max_iter,
//                  gradient_tol, sweep (comma-separated epsilons)
//   [tpbvp]        guess_T (number or auto), guess_nu, guess_mu_x, guess_mu_y,
//                  step, max_iter, tol, solve_mu, transversality
//                  (doubled | single_counted)
//   [output]       out_dir
//
// '#' starts a comment. Random-walk headings come from SplitMix64 with the
// standard increment 0x9E3779B97F4A7C15 and finaliser constants
// 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB (see trajectory.hpp).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "wsnlife/core.hpp"
#include "wsnlife/errors.hpp"
#include "wsnlife/policy.hpp"
#include "wsnlife/simulation.hpp"
#include "wsnlife/tpbvp.hpp"
#include "wsnlife/trajectory.hpp"

namespace wsnlife {

struct Scenario {
    std::string name = "scenario";
    EnergyParams energy;
    Topology topology;
    std::vector<double> initial_energy;  // nodes 0..N-1
    Trajectory trajectory = Stationary{};
    SimulationConfig simulation;
    std::vector<double> sweep;
    std::optional<double> tpbvp_guess_T;  // nullopt: derive from the initial P1 drain
    ShootingUnknowns tpbvp_guess;
    ShootingOptions tpbvp;
    std::string out_dir = "out";

    friend bool operator==(const Scenario&, const Scenario&) = default;

    [[nodiscard]] Position source_start() const { return topology.positions.at(kSourceId); }
};

/// Raised with every problem found, not just the first.
class ScenarioError : public Error {
public:
    ScenarioError(const std::string& kind, std::vector<std::string> problems)
        : Error(join(kind, problems)), problems(std::move(problems)) {}
    std::vector<std::string> problems;

private:
    static std::string join(const std::string& kind, const std::vector<std::string>& problems) {
        std::string s = kind;
        for (const auto& p : problems) s += "\n  " + p;
        return s;
    }
};

class ParseError : public ScenarioError {
public:
    explicit ParseError(std::vector<std::string> problems) : ScenarioError("scenario parse error:", std::move(problems)) {}
};

class ValidationError : public ScenarioError {
public:
    explicit ValidationError(std::vector<std::string> problems)
        : ScenarioError("scenario validation error:", std::move(problems)) {}
};

/// Shortest round-trip decimal representation.
inline std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::optional<long long> parse_int(std::string_view s) {
    s = trim(s);
    long long v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::optional<std::uint64_t> parse_u64(std::string_view s) {
    s = trim(s);
    std::uint64_t v = 0;
    int base = 10;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        s.remove_prefix(2);
        base = 16;
    }
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::optional<bool> parse_bool(std::string_view s) {
    s = trim(s);
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    return std::nullopt;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t j = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > j) out.push_back(s.substr(j, i - j));
    }
    return out;
}

struct NodeRow {
    int line = 0;
    long long id = 0;
    double x = 0.0;
    double y = 0.0;
    std::optional<double> range;
    std::optional<double> energy;
};

}  // namespace detail

inline std::optional<Policy> parse_policy(std::string_view s) {
    if (s == "p1" || s == "P1") return Policy::P1;
    if (s == "p2" || s == "P2") return Policy::P2;
    if (s == "p3" || s == "P3") return Policy::P3;
    return std::nullopt;
}

inline std::vector<double> parse_number_list(std::string_view s, std::vector<std::string>* problems = nullptr) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        const std::string_view item = detail::trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
        if (!item.empty()) {
            if (auto v = detail::parse_double(item))
                out.push_back(*v);
            else if (problems)
                problems->push_back("'" + std::string(item) + "' is not a number");
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

/// Semantic checks on an assembled scenario.
inline std::vector<std::string> scenario_violations(const Scenario& s) {
    std::vector<std::string> v = s.topology.violations();
    try {
        s.energy.validate();
    } catch (const Error& e) {
        v.emplace_back(e.what());
    }
    try {
        s.simulation.validate();
    } catch (const Error& e) {
        v.emplace_back(e.what());
    }
    try {
        validate(s.trajectory);
    } catch (const Error& e) {
        v.emplace_back(e.what());
    }
    if (static_cast<int>(s.initial_energy.size()) != s.topology.base())
        v.emplace_back("expected an initial energy for every non-base node");
    for (std::size_t i = 0; i < s.initial_energy.size(); ++i)
        if (!(s.initial_energy[i] > 0.0) || !std::isfinite(s.initial_energy[i]))
            v.push_back("node " + std::to_string(i) + " needs a positive finite initial energy");
    for (double e : s.sweep)
        if (!(e >= 0.0)) v.emplace_back("sweep epsilons must be >= 0");
    if (!(s.tpbvp.step > 0.0)) v.emplace_back("tpbvp step must be positive");
    if (!(s.tpbvp_guess.nu < 0.0)) v.emplace_back("tpbvp guess_nu must be negative");
    if (s.tpbvp_guess_T && !(*s.tpbvp_guess_T > 0.0)) v.emplace_back("tpbvp guess_T must be positive");
    const bool positional = !std::holds_alternative<Waypoints>(s.trajectory);
    if (positional && !s.topology.positions.empty()) {
        Position start;
        if (const auto* st = std::get_if<Stationary>(&s.trajectory)) start = st->pos;
        if (const auto* rw = std::get_if<RandomWalk>(&s.trajectory)) start = rw->start;
        if (const auto* pm = std::get_if<Parametric>(&s.trajectory)) start = pm->initial;
        if (!(start == s.source_start())) v.emplace_back("trajectory start must equal node 0's position");
    }
    return v;
}

inline Scenario parse_scenario(std::string_view doc) {
    using namespace detail;
    std::vector<std::string> perr;
    std::vector<std::string> verr;

    Scenario s;
    std::string section;
    std::vector<NodeRow> rows;
    std::vector<Arc> arcs;
    bool have_arcs = false;
    std::optional<long long> base_id;
    int base_line = 0;
    std::map<std::string, std::pair<int, std::string>> traj;  // key -> (line, value)
    std::vector<Waypoint> points;

    static const std::map<std::string, std::set<std::string>> known = {
        {"", {"name"}},
        {"energy", {"c_s", "c_f", "c_r", "c_e", "beta"}},
        {"network", {"base"}},
        {"trajectory",
         {"kind", "step_length", "seed", "segment_duration", "vx", "vy", "center_x", "center_y", "angular_rate"}},
        {"simulation",
         {"delta", "threshold", "policy", "epsilon", "max_steps", "interpolate", "nu_init", "nu_damping", "nu_tol",
          "nu_max_iter", "multistart", "multistart_seed", "gradient_max_iter", "gradient_tol", "sweep"}},
        {"tpbvp", {"guess_T", "guess_nu", "guess_mu_x", "guess_mu_y", "step", "max_iter", "tol", "solve_mu",
                   "transversality"}},
        {"output", {"out_dir"}},
    };

    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= doc.size()) {
        const std::size_t nl = doc.find('\n', pos);
        std::string_view line = doc.substr(pos, nl == std::string_view::npos ? doc.npos : nl - pos);
        pos = nl == std::string_view::npos ? doc.size() + 1 : nl + 1;
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);

        if (line.front() == '[') {
            if (line.back() != ']') {
                perr.push_back(where + ": malformed section header");
                continue;
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section == "arcs") have_arcs = true;
            if (section != "nodes" && section != "arcs" && !known.count(section))
                perr.push_back(where + ": unknown section [" + section + "]");
            continue;
        }

        if (section == "nodes") {
            const auto f = split_ws(line);
            if (f.size() != 5) {
                perr.push_back(where + ": node rows need 5 fields (id x y range energy)");
                continue;
            }
            NodeRow r;
            r.line = lineno;
            const auto id = parse_int(f[0]);
            const auto x = parse_double(f[1]);
            const auto y = parse_double(f[2]);
            if (!id) perr.push_back(where + ": node id '" + std::string(f[0]) + "' is not an integer");
            if (!x || !y) perr.push_back(where + ": node coordinates must be numbers");
            if (f[3] != "-") {
                r.range = parse_double(f[3]);
                if (!r.range) perr.push_back(where + ": field range: '" + std::string(f[3]) + "' is not a number");
            }
            if (f[4] != "-") {
                r.energy = parse_double(f[4]);
                if (!r.energy) perr.push_back(where + ": field energy: '" + std::string(f[4]) + "' is not a number");
            }
            if (id && x && y) {
                r.id = *id;
                r.x = *x;
                r.y = *y;
                rows.push_back(r);
            }
            continue;
        }
        if (section == "arcs") {
            const auto f = split_ws(line);
            std::optional<long long> a, b;
            if (f.size() == 2) {
                a = parse_int(f[0]);
                b = parse_int(f[1]);
            } else if (f.size() == 3 && f[1] == "->") {
                a = parse_int(f[0]);
                b = parse_int(f[2]);
            }
            if (!a || !b) {
                perr.push_back(where + ": arc rows are 'from to'");
                continue;
            }
            arcs.push_back({static_cast<NodeId>(*a), static_cast<NodeId>(*b)});
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            perr.push_back(where + ": expected 'key = value'");
            continue;
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        const std::string field = where + ": field " + (section.empty() ? "" : section + ".") + key;

        if (section == "trajectory" && key == "point") {
            const auto f = split_ws(value);
            std::optional<double> t, x, y;
            if (f.size() == 3) {
                t = parse_double(f[0]);
                x = parse_double(f[1]);
                y = parse_double(f[2]);
            }
            if (!t || !x || !y)
                perr.push_back(field + ": expected 't x y'");
            else
                points.push_back({*t, {*x, *y}});
            continue;
        }
        const auto sec = known.find(section);
        if (sec == known.end() || !sec->second.count(key)) {
            perr.push_back(field + ": unknown key");
            continue;
        }

        auto num = [&](double& out) {
            if (auto v = parse_double(value))
                out = *v;
            else
                perr.push_back(field + ": '" + std::string(value) + "' is not a number");
        };
        auto integer = [&](auto& out) {
            if (auto v = parse_int(value))
                out = static_cast<std::remove_reference_t<decltype(out)>>(*v);
            else
                perr.push_back(field + ": '" + std::string(value) + "' is not an integer");
        };
        auto boolean = [&](bool& out) {
            if (auto v = parse_bool(value))
                out = *v;
            else
                perr.push_back(field + ": '" + std::string(value) + "' is not a boolean");
        };

        if (section.empty()) {
            s.name = std::string(value);
        } else if (section == "energy") {
            if (key == "c_s") num(s.energy.c_s);
            if (key == "c_f") num(s.energy.c_f);
            if (key == "c_r") num(s.energy.c_r);
            if (key == "c_e") num(s.energy.c_e);
            if (key == "beta") num(s.energy.beta);
        } else if (section == "network") {
            base_line = lineno;
            if (auto v = parse_int(value))
                base_id = *v;
            else
                perr.push_back(field + ": '" + std::string(value) + "' is not an integer");
        } else if (section == "trajectory") {
            traj[key] = {lineno, std::string(value)};
        } else if (section == "simulation") {
            auto& c = s.simulation;
            if (key == "delta") num(c.delta);
            if (key == "threshold") num(c.death_threshold_fraction);
            if (key == "policy") {
                if (auto p = parse_policy(value))
                    c.policy.policy = *p;
                else
                    perr.push_back(field + ": policy must be p1, p2 or p3");
            }
            if (key == "epsilon") num(c.policy.epsilon);
            if (key == "max_steps") integer(c.max_steps);
            if (key == "interpolate") boolean(c.interpolate_lifetime);
            if (key == "nu_init") num(c.policy.nu_init);
            if (key == "nu_damping") num(c.policy.nu_damping);
            if (key == "nu_tol") num(c.policy.nu_tol);
            if (key == "nu_max_iter") integer(c.policy.nu_max_iter);
            if (key == "multistart") integer(c.policy.multistart_count);
            if (key == "multistart_seed") {
                if (auto v = parse_u64(value))
                    c.policy.multistart_seed = *v;
                else
                    perr.push_back(field + ": '" + std::string(value) + "' is not an unsigned integer");
            }
            if (key == "gradient_max_iter") integer(c.policy.gradient_max_iter);
            if (key == "gradient_tol") num(c.policy.gradient_tol);
            if (key == "sweep") {
                std::vector<std::string> bad;
                s.sweep = parse_number_list(value, &bad);
                for (const auto& b : bad) perr.push_back(field + ": " + b);
            }
        } else if (section == "tpbvp") {
            if (key == "guess_T") {
                if (value == "auto")
                    s.tpbvp_guess_T.reset();
                else if (auto v = parse_double(value))
                    s.tpbvp_guess_T = *v;
                else
                    perr.push_back(field + ": expected a number or 'auto'");
            }
            if (key == "guess_nu") num(s.tpbvp_guess.nu);
            if (key == "guess_mu_x") num(s.tpbvp_guess.mu_x);
            if (key == "guess_mu_y") num(s.tpbvp_guess.mu_y);
            if (key == "step") num(s.tpbvp.step);
            if (key == "max_iter") integer(s.tpbvp.max_iter);
            if (key == "tol") num(s.tpbvp.tol);
            if (key == "solve_mu") boolean(s.tpbvp.solve_mu);
            if (key == "transversality") {
                if (value == "doubled")
                    s.tpbvp.form = TransversalityForm::Doubled;
                else if (value == "single_counted")
                    s.tpbvp.form = TransversalityForm::SingleCounted;
                else
                    perr.push_back(field + ": expected doubled or single_counted");
            }
        } else if (section == "output") {
            s.out_dir = std::string(value);
        }
    }

    // ---- node table
    if (!base_id) verr.emplace_back("missing base: set 'base = <id>' in [network]");
    std::map<long long, NodeRow> by_id;
    for (const auto& r : rows) {
        if (!by_id.emplace(r.id, r).second)
            verr.push_back("line " + std::to_string(r.line) + ": duplicate node id " + std::to_string(r.id));
    }
    if (!by_id.count(0)) verr.emplace_back("missing source: node 0 must be defined");
    if (base_id && !by_id.count(*base_id))
        verr.push_back("line " + std::to_string(base_line) + ": base " + std::to_string(*base_id) + " is not in the node table");
    const long long n = static_cast<long long>(by_id.size());
    for (long long i = 0; i < n; ++i)
        if (!by_id.count(i)) {
            verr.emplace_back("node ids must be contiguous from 0");
            break;
        }
    if (base_id && by_id.count(*base_id) && *base_id != n - 1)
        verr.emplace_back("the base must carry the largest node id");

    if (verr.empty() && base_id) {
        s.topology.positions.resize(static_cast<std::size_t>(n));
        s.topology.ranges.assign(static_cast<std::size_t>(n - 1), 0.0);
        s.initial_energy.assign(static_cast<std::size_t>(n - 1), 0.0);
        for (const auto& [id, r] : by_id) {
            s.topology.positions[id] = {r.x, r.y};
            const std::string where = "line " + std::to_string(r.line);
            if (id == *base_id) {
                if (r.range || r.energy) verr.push_back(where + ": the base takes '-' for range and energy");
                continue;
            }
            if (!r.range)
                verr.push_back(where + ": node " + std::to_string(id) + " needs a range");
            else
                s.topology.ranges[id] = *r.range;
            if (!r.energy)
                verr.push_back(where + ": node " + std::to_string(id) + " needs an initial energy");
            else if (*r.energy < 0.0)
                verr.push_back(where + ": node " + std::to_string(id) + " has negative energy");
            else
                s.initial_energy[id] = *r.energy;
        }
        if (have_arcs) s.topology.arcs = arcs;
    }

    // ---- trajectory
    const Position start = s.topology.positions.empty() ? Position{} : s.topology.positions[0];
    auto tnum = [&](const std::string& key, double fallback) {
        const auto it = traj.find(key);
        if (it == traj.end()) return fallback;
        if (auto v = parse_double(it->second.second)) return *v;
        perr.push_back("line " + std::to_string(it->second.first) + ": field trajectory." + key + ": not a number");
        return fallback;
    };
    const std::string kind = traj.count("kind") ? traj["kind"].second : "stationary";
    if (kind == "stationary") {
        s.trajectory = Stationary{start};
    } else if (kind == "random_walk") {
        RandomWalk rw;
        rw.start = start;
        rw.step_length = tnum("step_length", 1.0);
        rw.segment_duration = tnum("segment_duration", 1.0);
        if (const auto it = traj.find("seed"); it != traj.end()) {
            if (auto v = parse_u64(it->second.second))
                rw.seed = *v;
            else
                perr.push_back("line " + std::to_string(it->second.first) + ": field trajectory.seed: not an unsigned integer");
        }
        s.trajectory = rw;
    } else if (kind == "waypoints") {
        s.trajectory = Waypoints{points};
    } else if (kind == "constant_velocity") {
        s.trajectory = Parametric{ConstantVelocity{tnum("vx", 0.0), tnum("vy", 0.0)}, start};
    } else if (kind == "circular") {
        s.trajectory = Parametric{Circular{{tnum("center_x", 0.0), tnum("center_y", 0.0)}, tnum("angular_rate", 0.0)}, start};
    } else {
        perr.push_back("line " + std::to_string(traj["kind"].first) + ": field trajectory.kind: unknown kind '" + kind + "'");
    }
    if (kind != "waypoints" && !points.empty()) perr.emplace_back("waypoint 'point' entries need kind = waypoints");

    if (!perr.empty()) throw ParseError(perr);
    if (verr.empty()) {
        auto more = scenario_violations(s);
        verr.insert(verr.end(), more.begin(), more.end());
    }
    if (!verr.empty()) throw ValidationError(verr);
    return s;
}

/// Canonical form: every field written, fixed order, shortest round-trip
/// numbers.
inline std::string serialize_scenario(const Scenario& s) {
    std::ostringstream o;
    const auto f = format_number;
    o << "name = " << s.name << "\n\n";
    o << "[energy]\n";
    o << "c_s = " << f(s.energy.c_s) << "\nc_f = " << f(s.energy.c_f) << "\nc_r = " << f(s.energy.c_r)
      << "\nc_e = " << f(s.energy.c_e) << "\nbeta = " << f(s.energy.beta) << "\n\n";
    o << "[network]\nbase = " << s.topology.base() << "\n\n";
    o << "[nodes]\n# id x y range energy\n";
    for (NodeId i = 0; i < s.topology.node_count(); ++i) {
        o << i << ' ' << f(s.topology.positions[i].x) << ' ' << f(s.topology.positions[i].y) << ' ';
        if (i == s.topology.base())
            o << "- -\n";
        else
            o << f(s.topology.ranges[i]) << ' ' << f(s.initial_energy[i]) << '\n';
    }
    if (s.topology.arcs) {
        o << "\n[arcs]\n";
        for (const Arc& a : *s.topology.arcs) o << a.from << ' ' << a.to << '\n';
    }
    o << "\n[trajectory]\n";
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Stationary>) {
                o << "kind = stationary\n";
            } else if constexpr (std::is_same_v<T, RandomWalk>) {
                o << "kind = random_walk\nstep_length = " << f(m.step_length) << "\nseed = " << m.seed
                  << "\nsegment_duration = " << f(m.segment_duration) << '\n';
            } else if constexpr (std::is_same_v<T, Waypoints>) {
                o << "kind = waypoints\n";
                for (const auto& p : m.points) o << "point = " << f(p.t) << ' ' << f(p.pos.x) << ' ' << f(p.pos.y) << '\n';
            } else {
                if (const auto* cv = std::get_if<ConstantVelocity>(&m.family)) {
                    o << "kind = constant_velocity\nvx = " << f(cv->vx) << "\nvy = " << f(cv->vy) << '\n';
                } else {
                    const auto& c = std::get<Circular>(m.family);
                    o << "kind = circular\ncenter_x = " << f(c.center.x) << "\ncenter_y = " << f(c.center.y)
                      << "\nangular_rate = " << f(c.angular_rate) << '\n';
                }
            }
        },
        s.trajectory);
    const auto& c = s.simulation;
    o << "\n[simulation]\n";
    o << "delta = " << f(c.delta) << "\nthreshold = " << f(c.death_threshold_fraction)
      << "\npolicy = " << to_string(c.policy.policy) << "\nepsilon = " << f(c.policy.epsilon)
      << "\nmax_steps = " << c.max_steps << "\ninterpolate = " << (c.interpolate_lifetime ? "true" : "false")
      << "\nnu_init = " << f(c.policy.nu_init) << "\nnu_damping = " << f(c.policy.nu_damping)
      << "\nnu_tol = " << f(c.policy.nu_tol) << "\nnu_max_iter = " << c.policy.nu_max_iter
      << "\nmultistart = " << c.policy.multistart_count << "\nmultistart_seed = " << c.policy.multistart_seed
      << "\ngradient_max_iter = " << c.policy.gradient_max_iter << "\ngradient_tol = " << f(c.policy.gradient_tol)
      << '\n';
    if (!s.sweep.empty()) {
        o << "sweep = ";
        for (std::size_t i = 0; i < s.sweep.size(); ++i) o << (i ? ", " : "") << f(s.sweep[i]);
        o << '\n';
    }
    o << "\n[tpbvp]\n";
    o << "guess_T = " << (s.tpbvp_guess_T ? f(*s.tpbvp_guess_T) : std::string("auto"))
      << "\nguess_nu = " << f(s.tpbvp_guess.nu) << "\nguess_mu_x = " << f(s.tpbvp_guess.mu_x)
      << "\nguess_mu_y = " << f(s.tpbvp_guess.mu_y) << "\nstep = " << f(s.tpbvp.step)
      << "\nmax_iter = " << s.tpbvp.max_iter << "\ntol = " << f(s.tpbvp.tol)
      << "\nsolve_mu = " << (s.tpbvp.solve_mu ? "true" : "false") << "\ntransversality = "
      << (s.tpbvp.form == TransversalityForm::Doubled ? "doubled" : "single_counted") << '\n';
    o << "\n[output]\nout_dir = " << s.out_dir << '\n';
    return o.str();
}

}  // namespace wsnlife
