#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "qsteer/oracles.hpp"
#include "qsteer/qstate.hpp"

namespace qsteer {

/// The 2-dimensional plane the iteration lives in: marked direction,
/// orthogonal direction, and the inclination theta of the trial above the
/// orthogonal axis (sin theta = marked-component norm).
struct PlaneGeometry {
    double theta = 0.0;
    StateVector g_omega; // normalized marked component
    StateVector g_perp;  // normalized orthogonal component; zero state when theta = pi/2
};

enum class Region { Standard, Mixed, Inverted };

inline const char* region_name(Region r) {
    switch (r) {
    case Region::Standard: return "standard";
    case Region::Mixed: return "mixed";
    default: return "inverted";
    }
}

/// Region boundaries in M/N (equivalently sin^2 theta): the one-iteration
/// coefficients cos(3 theta) and sin(3 theta) are both nonnegative up to 1/4,
/// of opposite sign strictly between 1/4 and 3/4, and both nonpositive from
/// 3/4 on. Boundaries belong to the closed outer regions.
inline Region classify_region(double m_ratio) {
    if (m_ratio < 0.0 || m_ratio > 1.0)
        throw validation_error("marked ratio must lie in [0, 1]");
    if (m_ratio <= 0.25) return Region::Standard;
    if (m_ratio < 0.75) return Region::Mixed;
    return Region::Inverted;
}

/// Split a normalized trial state into its marked and orthogonal components.
/// Throws unreachable_target_error when the trial has no marked component;
/// theta = pi/2 (empty orthogonal component) means zero iterations suffice.
inline PlaneGeometry decompose(const StateVector& trial, const TargetSet& target) {
    PlaneGeometry geo;
    geo.g_omega = marked_component(trial, target);
    const double n_omega = geo.g_omega.norm();
    if (n_omega < kAlgebraTol)
        throw unreachable_target_error(
            "target subspace is unreachable from the trial state (theta = 0)");

    geo.g_perp = StateVector(trial.n_qubits);
    for (std::size_t x = 0; x < trial.dim(); ++x)
        geo.g_perp[x] = trial[x] - geo.g_omega[x];
    const double n_perp = geo.g_perp.norm();

    for (auto& a : geo.g_omega.amps) a /= n_omega;
    if (n_perp < kAlgebraTol) {
        // already entirely inside the target subspace
        geo.theta = kPi / 2.0;
        geo.g_perp = StateVector(trial.n_qubits);
    } else {
        geo.theta = std::asin(std::min(1.0, n_omega));
        for (auto& a : geo.g_perp.amps) a /= n_perp;
    }
    return geo;
}

/// r_* = round(pi/(4 theta) - 1/2), clamped to >= 0. Rounds to nearest so the
/// achieved angle (2r+1)theta lands closest to pi/2; exact halves round down
/// to save an oracle call.
inline int optimal_iterations(double theta) {
    if (theta <= 0.0 || theta > kPi / 2.0 + kAlgebraTol)
        throw validation_error("theta must lie in (0, pi/2]");
    const double r = kPi / (4.0 * theta) - 0.5;
    if (r <= 0.0) return 0;
    const double fl = std::floor(r);
    const double frac = r - fl;
    return static_cast<int>(fl) + (frac > 0.5 ? 1 : 0);
}

/// Closed-form marked probability after r iterations: sin^2((2r+1) theta).
inline double success_probability(int r, double theta) {
    if (r < 0) throw validation_error("iteration count must be >= 0");
    const double s = std::sin((2.0 * r + 1.0) * theta);
    return s * s;
}

struct GroverPlan {
    Reflection oracle;
    Reflection diffuser;
    StateVector trial;
    PlaneGeometry geometry;
    Region region;
    int r_star;
    std::optional<Reflection> repair; // U_par, present in the Mixed region
};

inline GroverPlan make_plan(const StateVector& trial, const TargetSet& target) {
    if (std::abs(trial.norm() - 1.0) > kUnitaryTol)
        throw validation_error("trial state must be normalized");
    PlaneGeometry geo = decompose(trial, target);
    const double s = std::sin(geo.theta);
    const Region region = classify_region(s * s);
    const int r_star =
        (geo.theta >= kPi / 2.0 - kAlgebraTol) ? 0 : optimal_iterations(geo.theta);
    std::optional<Reflection> repair;
    if (region == Region::Mixed) repair = parallel_reflection(geo.g_omega);
    return GroverPlan{oracle_for(target, trial.n_qubits),
                      diffusion_about(trial),
                      trial,
                      std::move(geo),
                      region,
                      r_star,
                      std::move(repair)};
}

/// One Grover iteration: oracle then diffuser. In the Mixed region the
/// repair reflection U_par follows every iteration, keeping the iterate in
/// the first quadrant of the plane before the next oracle application.
inline StateVector grover_iterate(StateVector state, const GroverPlan& plan) {
    plan.oracle.apply(state);
    plan.diffuser.apply(state);
    if (plan.repair) plan.repair->apply(state);
    return state;
}

struct TraceEntry {
    int r;
    double predicted; // sin^2((2r+1) theta)
    double measured;  // squared norm of the marked component
};

struct GroverResult {
    StateVector state;
    int iterations = 0;
    std::vector<TraceEntry> trace; // entry 0 is the trial state itself
};

inline GroverResult grover_run(const StateVector& trial, const TargetSet& target,
                               std::optional<int> iterations = std::nullopt,
                               bool record_trajectory = true) {
    const GroverPlan plan = make_plan(trial, target);
    const int r_total = iterations.value_or(plan.r_star);
    if (r_total < 0) throw validation_error("iteration override must be >= 0");

    GroverResult res;
    res.state = trial;
    res.iterations = r_total;
    auto measure = [&](const StateVector& s) {
        return marked_component(s, target).norm_squared();
    };
    if (record_trajectory)
        res.trace.push_back({0, success_probability(0, plan.geometry.theta), measure(res.state)});
    for (int r = 1; r <= r_total; ++r) {
        res.state = grover_iterate(std::move(res.state), plan);
        if (record_trajectory)
            res.trace.push_back(
                {r, success_probability(r, plan.geometry.theta), measure(res.state)});
    }
    return res;
}

} // namespace qsteer
