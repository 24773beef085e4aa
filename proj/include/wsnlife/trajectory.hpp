#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <variant>
#include <vector>

#include "wsnlife/core.hpp"
#include "wsnlife/errors.hpp"

namespace wsnlife {

/// SplitMix64 output function for counter value `state`.
inline std::uint64_t splitmix64(std::uint64_t state) {
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

struct Stationary {
    Position pos;
    friend bool operator==(const Stationary&, const Stationary&) = default;
};

/// Segment k (time [k*segment_duration, (k+1)*segment_duration)) moves
/// step_length along heading 2*pi*u_k with
///   u_k = (splitmix64(seed + (k+1) * 0x9E3779B97F4A7C15) >> 11) * 2^-53,
/// at constant velocity.
struct RandomWalk {
    Position start;
    double step_length = 1.0;
    std::uint64_t seed = 0;
    double segment_duration = 1.0;
    friend bool operator==(const RandomWalk&, const RandomWalk&) = default;

    [[nodiscard]] double heading(std::uint64_t k) const {
        const std::uint64_t bits = splitmix64(seed + (k + 1) * kGoldenGamma) >> 11;
        return 2.0 * std::numbers::pi * (static_cast<double>(bits) * 0x1.0p-53);
    }
};

struct Waypoint {
    double t = 0.0;
    Position pos;
    friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

/// Piecewise-linear through the points; held constant outside their span.
struct Waypoints {
    std::vector<Waypoint> points;
    friend bool operator==(const Waypoints&, const Waypoints&) = default;
};

struct ConstantVelocity {
    double vx = 0.0;
    double vy = 0.0;
    friend bool operator==(const ConstantVelocity&, const ConstantVelocity&) = default;
};

/// Rotation about `center` at `angular_rate` rad per unit time; the radius is
/// fixed by the initial position.
struct Circular {
    Position center;
    double angular_rate = 0.0;
    friend bool operator==(const Circular&, const Circular&) = default;
};

using MotionFamily = std::variant<ConstantVelocity, Circular>;

/// Jacobian of (f_x, f_y) with respect to (x_0, y_0), row-major:
/// {dfx/dx, dfx/dy, dfy/dx, dfy/dy}.
using MotionJacobian = std::array<double, 4>;

/// Source motion x' = f(x) with a closed-form flow, as needed by the
/// known-trajectory solver.
struct Parametric {
    MotionFamily family;
    Position initial;
    friend bool operator==(const Parametric&, const Parametric&) = default;

    [[nodiscard]] Position velocity(Position p) const {
        if (const auto* cv = std::get_if<ConstantVelocity>(&family)) return {cv->vx, cv->vy};
        const auto& c = std::get<Circular>(family);
        return {-c.angular_rate * (p.y - c.center.y), c.angular_rate * (p.x - c.center.x)};
    }

    [[nodiscard]] MotionJacobian jacobian(Position) const {
        if (std::holds_alternative<ConstantVelocity>(family)) return {0.0, 0.0, 0.0, 0.0};
        const double w = std::get<Circular>(family).angular_rate;
        return {0.0, -w, w, 0.0};
    }

    /// F(t): closed-form position at time t.
    [[nodiscard]] Position at(double t) const {
        if (const auto* cv = std::get_if<ConstantVelocity>(&family))
            return {initial.x + cv->vx * t, initial.y + cv->vy * t};
        const auto& c = std::get<Circular>(family);
        const double a = c.angular_rate * t;
        const double dx = initial.x - c.center.x;
        const double dy = initial.y - c.center.y;
        return {c.center.x + dx * std::cos(a) - dy * std::sin(a), c.center.y + dx * std::sin(a) + dy * std::cos(a)};
    }

    /// dF/dT
    [[nodiscard]] Position terminal_rate(double t) const { return velocity(at(t)); }
};

using Trajectory = std::variant<Stationary, RandomWalk, Waypoints, Parametric>;

inline const char* trajectory_kind(const Trajectory& traj) {
    switch (traj.index()) {
        case 0: return "stationary";
        case 1: return "random_walk";
        case 2: return "waypoints";
        default: return "parametric";
    }
}

inline void validate(const Trajectory& traj) {
    if (const auto* rw = std::get_if<RandomWalk>(&traj)) {
        if (!(rw->step_length >= 0.0) || !(rw->segment_duration > 0.0))
            throw ConfigError("random walk needs step_length >= 0 and segment_duration > 0");
    } else if (const auto* wp = std::get_if<Waypoints>(&traj)) {
        if (wp->points.empty()) throw ConfigError("waypoint trajectory needs at least one point");
        for (std::size_t i = 1; i < wp->points.size(); ++i)
            if (!(wp->points[i].t > wp->points[i - 1].t)) throw ConfigError("waypoint times must increase strictly");
    }
}

inline Position position_at(const Trajectory& traj, double t) {
    if (t < 0.0) throw PreconditionError("position queried at negative time");
    return std::visit(
        [t](const auto& m) -> Position {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Stationary>) {
                return m.pos;
            } else if constexpr (std::is_same_v<T, RandomWalk>) {
                const double segments = std::floor(t / m.segment_duration);
                const auto full = static_cast<std::uint64_t>(segments);
                Position p = m.start;
                for (std::uint64_t k = 0; k < full; ++k) {
                    const double h = m.heading(k);
                    p.x += m.step_length * std::cos(h);
                    p.y += m.step_length * std::sin(h);
                }
                const double frac = (t - segments * m.segment_duration) / m.segment_duration;
                if (frac > 0.0) {
                    const double h = m.heading(full);
                    p.x += frac * m.step_length * std::cos(h);
                    p.y += frac * m.step_length * std::sin(h);
                }
                return p;
            } else if constexpr (std::is_same_v<T, Waypoints>) {
                const auto& pts = m.points;
                if (t <= pts.front().t) return pts.front().pos;
                if (t >= pts.back().t) return pts.back().pos;
                const auto hi = std::upper_bound(pts.begin(), pts.end(), t,
                                                 [](double v, const Waypoint& w) { return v < w.t; });
                const auto lo = hi - 1;
                const double a = (t - lo->t) / (hi->t - lo->t);
                return {lo->pos.x + a * (hi->pos.x - lo->pos.x), lo->pos.y + a * (hi->pos.y - lo->pos.y)};
            } else {
                return m.at(t);
            }
        },
        traj);
}

}  // namespace wsnlife
