#pragma once

// Shooting solver for lifetime maximisation when the source trajectory is
// known in advance.
//
// Unknowns are the terminal time T and the constants nu (costate of r_0) and
// mu_x, mu_y (multipliers of the terminal position constraint). Energy costates
// are constant: lambda_0 = nu, lambda_i = 0 for relays. With nu < 0 the
// Hamiltonian is minimised pointwise by the I_0-minimising vertex, so the
// forward pass integrates r under that control, the backward pass integrates
// (lambda_x, lambda_y) from (mu_x, mu_y), and a damped Newton iteration drives
// the transversality residual and r_0(T) to zero.
//
// mu_x and mu_y are not identifiable when the source motion is uncontrolled
// (the terminal position constraint holds identically), so by default they are
// held at their initial guess; `solve_mu` lets Newton move them along the
// minimum-norm direction instead.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wsnlife/core.hpp"
#include "wsnlife/errors.hpp"
#include "wsnlife/policy.hpp"
#include "wsnlife/trajectory.hpp"

namespace wsnlife {

struct CostateState {
    std::vector<double> lambda_r;  // size N: lambda_0 = nu, relays 0
    double lambda_x = 0.0;
    double lambda_y = 0.0;
};

struct ShootingUnknowns {
    double T = 1.0;
    double nu = -1.0;
    double mu_x = 0.0;
    double mu_y = 0.0;

    friend bool operator==(const ShootingUnknowns&, const ShootingUnknowns&) = default;
};

/// Doubled keeps both nu*r0'(T) occurrences and the mu*x0'(T) terms of the
/// terminal condition; SingleCounted is the textbook H(T) + dPhi/dt form.
enum class TransversalityForm { Doubled, SingleCounted };

struct ShootingOptions {
    double step = 0.5;
    int max_iter = 60;
    double tol = 1e-4;
    double newton_tol = 1e-11;
    bool solve_mu = false;
    TransversalityForm form = TransversalityForm::Doubled;

    friend bool operator==(const ShootingOptions&, const ShootingOptions&) = default;
};

struct ShootingTracePoint {
    double t = 0.0;
    Position source;
    std::vector<double> residual;
    CostateState costate;
    NodeId next_hop = -1;
};

struct ShootingResult {
    ShootingUnknowns unknowns;
    std::array<double, 3> residual{};
    double residual_norm = 0.0;
    int iterations = 0;
    std::vector<ShootingTracePoint> trace;
};

class ShootingDiverged : public Error {
public:
    ShootingDiverged(const std::string& what, ShootingResult best) : Error(what), best(std::move(best)) {}
    ShootingResult best;
};

inline NetworkState all_alive(const Topology& topo, double energy = 1.0) {
    const std::vector<double> r(static_cast<std::size_t>(topo.base()), energy);
    return NetworkState::initial(r);
}

/// Hamiltonian-minimising routing at one instant. Requires lambda_0 < 0 and
/// zero relay costates.
inline RoutingVector pointwise_control(const NetworkState& state, Position src, const Topology& topo,
                                       const EnergyParams& params, const CostateState& costate) {
    if (costate.lambda_r.empty() || !(costate.lambda_r[kSourceId] < 0.0))
        throw PreconditionError("pointwise control needs lambda_0 < 0");
    for (std::size_t i = 1; i < costate.lambda_r.size(); ++i)
        if (costate.lambda_r[i] != 0.0) throw PreconditionError("relay costates must be zero");
    return solve_p1(topo, state, src, params).w;
}

/// (lambda_x', lambda_y') = -dH/d(x_0, y_0). Only valid for beta = 2.
inline std::pair<double, double> costate_rhs(const CostateState& costate, const RoutingVector& w, Position src,
                                             const MotionJacobian& jac, const Topology& topo,
                                             const EnergyParams& params) {
    if (params.beta != 2.0) throw PreconditionError("costate equations assume beta = 2");
    const double lambda0 = costate.lambda_r.at(kSourceId);
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& e : w.rows[kSourceId]) {
        sx += e.weight * (src.x - topo.positions[e.to].x);
        sy += e.weight * (src.y - topo.positions[e.to].y);
    }
    const double dx = 2.0 * params.c_s * lambda0 * sx - costate.lambda_x * jac[0] - costate.lambda_y * jac[2];
    const double dy = 2.0 * params.c_s * lambda0 * sy - costate.lambda_x * jac[1] - costate.lambda_y * jac[3];
    return {dx, dy};
}

/// Output of one forward/backward sweep for a candidate T.
struct ShootingPass {
    std::vector<double> terminal_energy;
    double terminal_source_rate = 0.0;  // r_0'(T)
    Position terminal_velocity;         // x_0'(T), y_0'(T)
    Position terminal_map_rate;         // dF/dT
    double costate_consistency = 0.0;
    std::vector<ShootingTracePoint> trace;
};

/// [terminal condition, r_0(T), costate consistency]
inline std::array<double, 3> transversality_residual(const ShootingUnknowns& u, const ShootingPass& pass,
                                                     TransversalityForm form = TransversalityForm::Doubled) {
    const double rate = pass.terminal_source_rate;
    const Position v = pass.terminal_velocity;
    const Position dF = pass.terminal_map_rate;
    // lambda_x(T) = mu_x, lambda_y(T) = mu_y
    double h = -1.0 + u.nu * rate + u.mu_x * v.x + u.mu_y * v.y;
    if (form == TransversalityForm::Doubled) {
        h += u.nu * rate + u.mu_x * v.x - u.mu_x * dF.x + u.mu_y * v.y - u.mu_y * dF.y;
    } else {
        h += -u.mu_x * dF.x - u.mu_y * dF.y;
    }
    return {h, pass.terminal_energy.at(kSourceId), pass.costate_consistency};
}

namespace detail {

struct ControlSegment {
    double t0 = 0.0;
    double t1 = 0.0;
    RoutingVector w;
};

inline NodeId next_hop(const RoutingVector& w) {
    for (const auto& e : w.rows[kSourceId])
        if (e.weight == 1.0) return e.to;
    return -1;
}

/// Energy drain rates for a frozen routing vector with the source at `src`.
inline std::vector<double> drain_rates(const Topology& topo, const EnergyParams& params, const RoutingVector& w,
                                       const FlowVector& g, Position src) {
    const auto d0 = source_distances(topo, src);
    return workloads(w, g, topo, d0, params);
}

class Shooter {
public:
    Shooter(const Topology& topo, std::span<const double> energy, const Parametric& motion, const EnergyParams& params,
            const ShootingOptions& opts)
        : topo_(topo), energy_(energy.begin(), energy.end()), motion_(motion), params_(params), opts_(opts),
          state_(all_alive(topo)) {}

    [[nodiscard]] RoutingVector control_at(double t, double nu) const {
        CostateState c;
        c.lambda_r.assign(energy_.size(), 0.0);
        c.lambda_r[kSourceId] = nu;
        return pointwise_control(state_, motion_.at(t), topo_, params_, c);
    }

    /// Splits [0, T] into steps of at most opts.step, cutting additionally at
    /// every control switch (located by bisection).
    [[nodiscard]] std::vector<ControlSegment> segments(double T, double nu) const {
        std::vector<ControlSegment> segs;
        double cur = 0.0;
        RoutingVector w_cur = control_at(0.0, nu);
        while (cur < T) {
            double next = std::min(T, cur + opts_.step);
            if (T - next < 1e-12 * std::max(1.0, T)) next = T;
            RoutingVector w_next = control_at(next, nu);
            if (!(w_next == w_cur)) {
                double lo = cur;
                double hi = next;
                for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, T); ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (control_at(mid, nu) == w_cur)
                        lo = mid;
                    else
                        hi = mid;
                }
                next = hi;
                segs.push_back({cur, next, w_cur});
                cur = next;
                w_cur = control_at(std::min(T, cur + 1e-9 * std::max(1.0, T)), nu);
                continue;
            }
            segs.push_back({cur, next, w_cur});
            cur = next;
        }
        return segs;
    }

    [[nodiscard]] ShootingPass run(const ShootingUnknowns& u) const {
        if (!(u.T > 0.0) || !std::isfinite(u.T)) throw PreconditionError("terminal time must be positive");
        const auto segs = segments(u.T, u.nu);
        ShootingPass pass;

        // forward: r' = -I(w, F(t)); RK4 with frozen control per segment
        std::vector<double> r = energy_;
        pass.trace.reserve(segs.size() + 1);
        auto push_point = [&](double t, const RoutingVector& w) {
            ShootingTracePoint p;
            p.t = t;
            p.source = motion_.at(t);
            p.residual = r;
            p.next_hop = next_hop(w);
            pass.trace.push_back(std::move(p));
        };
        push_point(0.0, segs.front().w);
        for (const auto& s : segs) {
            const FlowVector g = flow_solve(s.w);
            const double h = s.t1 - s.t0;
            const auto k1 = drain_rates(topo_, params_, s.w, g, motion_.at(s.t0));
            const auto k2 = drain_rates(topo_, params_, s.w, g, motion_.at(s.t0 + 0.5 * h));
            const auto k4 = drain_rates(topo_, params_, s.w, g, motion_.at(s.t1));
            // k3 == k2: the right-hand side does not depend on r
            for (std::size_t i = 0; i < r.size(); ++i) r[i] -= h / 6.0 * (k1[i] + 4.0 * k2[i] + k4[i]);
            push_point(s.t1, s.w);
        }
        pass.terminal_energy = r;
        {
            const auto& last = segs.back();
            const auto rates = drain_rates(topo_, params_, last.w, flow_solve(last.w), motion_.at(u.T));
            pass.terminal_source_rate = -rates[kSourceId];
        }
        pass.terminal_velocity = motion_.velocity(motion_.at(u.T));
        pass.terminal_map_rate = motion_.terminal_rate(u.T);

        // backward: costates from (mu_x, mu_y) at T
        CostateState c;
        c.lambda_r.assign(energy_.size(), 0.0);
        c.lambda_r[kSourceId] = u.nu;
        c.lambda_x = u.mu_x;
        c.lambda_y = u.mu_y;
        pass.trace.back().costate = c;
        for (std::size_t idx = segs.size(); idx-- > 0;) {
            const auto& s = segs[idx];
            const double h = s.t0 - s.t1;  // negative
            auto rhs = [&](double t, double lx, double ly) {
                CostateState cs = c;
                cs.lambda_x = lx;
                cs.lambda_y = ly;
                const Position p = motion_.at(t);
                return costate_rhs(cs, s.w, p, motion_.jacobian(p), topo_, params_);
            };
            const double t = s.t1;
            const auto [a1x, a1y] = rhs(t, c.lambda_x, c.lambda_y);
            const auto [a2x, a2y] = rhs(t + 0.5 * h, c.lambda_x + 0.5 * h * a1x, c.lambda_y + 0.5 * h * a1y);
            const auto [a3x, a3y] = rhs(t + 0.5 * h, c.lambda_x + 0.5 * h * a2x, c.lambda_y + 0.5 * h * a2y);
            const auto [a4x, a4y] = rhs(t + h, c.lambda_x + h * a3x, c.lambda_y + h * a3y);
            c.lambda_x += h / 6.0 * (a1x + 2.0 * a2x + 2.0 * a3x + a4x);
            c.lambda_y += h / 6.0 * (a1y + 2.0 * a2y + 2.0 * a3y + a4y);
            pass.trace[idx].costate = c;
        }

        double worst = 0.0;
        for (const auto& p : pass.trace) {
            double dev = std::abs(p.costate.lambda_r[kSourceId] - u.nu);
            for (std::size_t i = 1; i < p.costate.lambda_r.size(); ++i) dev += std::abs(p.costate.lambda_r[i]);
            worst = std::max(worst, dev);
        }
        pass.costate_consistency = worst;
        return pass;
    }

private:
    const Topology& topo_;
    std::vector<double> energy_;
    const Parametric& motion_;
    const EnergyParams& params_;
    ShootingOptions opts_;
    NetworkState state_;
};

}  // namespace detail

/// Solves for (T, nu[, mu_x, mu_y]) by damped Newton with a finite-difference
/// Jacobian and a minimum-norm step. Throws ShootingDiverged (carrying the
/// best iterate) when the residual norm stays above opts.tol.
inline ShootingResult shoot(const Topology& topo, std::span<const double> energy, const Parametric& motion,
                            const EnergyParams& params, const ShootingUnknowns& guess,
                            const ShootingOptions& opts = {}) {
    topo.validate();
    params.validate();
    if (static_cast<int>(energy.size()) != topo.base()) throw ConfigError("expected one initial energy per non-base node");
    if (!(opts.step > 0.0)) throw ConfigError("integration step must be positive");
    if (!std::isfinite(guess.T) || !std::isfinite(guess.nu) || !std::isfinite(guess.mu_x) || !std::isfinite(guess.mu_y))
        throw PreconditionError("shooting guess must be finite");
    if (!(guess.T > 0.0) || !(guess.nu < 0.0)) throw PreconditionError("shooting guess needs T > 0 and nu < 0");

    const detail::Shooter shooter(topo, energy, motion, params, opts);
    const int dims = opts.solve_mu ? 4 : 2;

    auto pack = [&](const ShootingUnknowns& u) {
        Eigen::VectorXd x(dims);
        x(0) = u.T;
        x(1) = u.nu;
        if (dims == 4) {
            x(2) = u.mu_x;
            x(3) = u.mu_y;
        }
        return x;
    };
    auto unpack = [&](const Eigen::VectorXd& x) {
        ShootingUnknowns u = guess;
        u.T = x(0);
        u.nu = x(1);
        if (dims == 4) {
            u.mu_x = x(2);
            u.mu_y = x(3);
        }
        return u;
    };
    auto evaluate = [&](const ShootingUnknowns& u) {
        const auto pass = shooter.run(u);
        const auto res = transversality_residual(u, pass, opts.form);
        Eigen::Vector3d f(res[0], res[1], res[2]);
        return std::make_pair(f, pass);
    };
    auto admissible = [](const ShootingUnknowns& u) { return u.T > 0.0 && u.nu < 0.0 && std::isfinite(u.T) && std::isfinite(u.nu); };

    ShootingUnknowns u = guess;
    auto [f, pass] = evaluate(u);
    int iter = 0;
    for (; iter < opts.max_iter && f.norm() > opts.newton_tol; ++iter) {
        const Eigen::VectorXd x = pack(u);
        Eigen::MatrixXd jac(3, dims);
        for (int c = 0; c < dims; ++c) {
            Eigen::VectorXd xp = x;
            const double h = 1e-7 * std::max(1.0, std::abs(x(c)));
            xp(c) += h;
            ShootingUnknowns up = unpack(xp);
            if (!admissible(up)) {
                xp(c) = x(c) - h;
                up = unpack(xp);
                jac.col(c) = (f - evaluate(up).first) / h;
            } else {
                jac.col(c) = (evaluate(up).first - f) / h;
            }
        }
        const Eigen::VectorXd dx = -jac.completeOrthogonalDecomposition().solve(f);

        bool improved = false;
        for (double lambda = 1.0; lambda > 1e-10; lambda *= 0.5) {
            const ShootingUnknowns cand = unpack(x + lambda * dx);
            if (!admissible(cand)) continue;
            auto trial = evaluate(cand);
            if (trial.first.norm() < f.norm()) {
                u = cand;
                f = trial.first;
                pass = std::move(trial.second);
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }

    ShootingResult out;
    out.unknowns = u;
    out.residual = {f(0), f(1), f(2)};
    out.residual_norm = f.norm();
    out.iterations = iter;
    out.trace = std::move(pass.trace);
    if (!(out.residual_norm <= opts.tol))
        throw ShootingDiverged("shooting residual " + std::to_string(out.residual_norm) + " above tolerance",
                               std::move(out));
    return out;
}

}  // namespace wsnlife
