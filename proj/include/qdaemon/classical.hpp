// classical.hpp — reference ensemble simulator: free flight in a box with a
// momentum-selective reflecting wall at x = 0.

#pragma once

#include <cmath>
#include <vector>

#include "qdaemon/common.hpp"

namespace qdaemon {

/// Momentum-band switch of the daemon wall: +1 on 0 < p < P_R, -1 on
/// -P_UV < p < -P_R, 0 elsewhere, assembled from the half-step combinations
/// 2f±(|p|) = Θ(P_R-|p|) ± Θ(|p|-P_R) ∓ Θ(|p|-P_UV) with Θ(0) = 1/2 at
/// thresholds.  The wall is active wherever the value is nonzero.
inline double activation(double p, double P_R, double P_UV) {
    const double ap = std::fabs(p);
    const double f_a = 0.5 * (theta(P_R - ap) + theta(ap - P_R) - theta(ap - P_UV));
    const double f_b = 0.5 * (theta(P_R - ap) - theta(ap - P_R) + theta(ap - P_UV));
    const double sgn = (p > 0.0) - (p < 0.0);
    return f_a * sgn + f_b;
}

struct ClassicalParticle {
    double x = 0.0;
    double p = 0.0;
};

struct ClassicalEnsemble {
    std::vector<ClassicalParticle> particles;
    double P_R = 1.0;
    double P_UV = 2.0;
    double x_L = 1.0;

    void validate() const {
        if (!(P_R > 0.0)) throw ConfigError("ClassicalEnsemble: P_R must be positive");
        if (!(P_UV > P_R)) throw ConfigError("ClassicalEnsemble: P_UV must exceed P_R");
        if (!(x_L > 0.0)) throw ConfigError("ClassicalEnsemble: x_L must be positive");
        for (const auto& pt : particles)
            if (std::fabs(pt.x) > x_L)
                throw ConfigError("ClassicalEnsemble: particle outside the box");
    }
};

namespace detail {

/// Advance one particle by dt with exact event ordering: elastic reflection
/// at ±x_L, and reflection at x = 0 whenever the activation band is open for
/// the incoming momentum.  |p| is conserved bit-exactly (only sign flips).
inline void advance_particle(ClassicalParticle& pt, double dt, double P_R,
                             double P_UV, double x_L) {
    double remaining = dt;
    while (remaining > 0.0 && pt.p != 0.0) {
        const double wall = pt.p > 0.0 ? x_L : -x_L;
        const double t_wall = (wall - pt.x) / pt.p;
        double t_zero = -1.0;
        if ((pt.x > 0.0 && pt.p < 0.0) || (pt.x < 0.0 && pt.p > 0.0))
            t_zero = -pt.x / pt.p;

        double t_event = t_wall;
        bool zero_event = false;
        if (t_zero >= 0.0 && t_zero < t_wall) {
            t_event = t_zero;
            zero_event = true;
        }
        if (t_event > remaining) {
            pt.x += pt.p * remaining;
            return;
        }
        remaining -= t_event;
        if (zero_event) {
            pt.x = 0.0;
            if (activation(pt.p, P_R, P_UV) != 0.0) pt.p = -pt.p;
        } else {
            pt.x = wall;
            pt.p = -pt.p;
        }
    }
}

} // namespace detail

struct EnsembleTrajectory {
    std::vector<double> times;
    std::vector<std::vector<ClassicalParticle>> snapshots;
};

/// March the ensemble through n_steps steps of size dt, recording a snapshot
/// every snapshot_every steps (and the initial state).
inline EnsembleTrajectory step_ensemble(const ClassicalEnsemble& ens, double dt,
                                        int n_steps, int snapshot_every = 1,
                                        unsigned threads = 1) {
    ens.validate();
    if (!(dt > 0.0)) throw ContractViolation("step_ensemble: dt must be positive");
    if (n_steps < 0) throw ContractViolation("step_ensemble: n_steps must be >= 0");
    if (snapshot_every < 1) snapshot_every = 1;

    EnsembleTrajectory traj;
    std::vector<ClassicalParticle> state = ens.particles;
    traj.times.push_back(0.0);
    traj.snapshots.push_back(state);
    for (int s = 1; s <= n_steps; ++s) {
        parallel_for(state.size(), threads, [&](std::size_t i) {
            detail::advance_particle(state[i], dt, ens.P_R, ens.P_UV, ens.x_L);
        });
        if (s % snapshot_every == 0 || s == n_steps) {
            traj.times.push_back(s * dt);
            traj.snapshots.push_back(state);
        }
    }
    return traj;
}

struct OccupancySummary {
    double slow_left = 0.0;   ///< fraction of |p| < P_R particles at x < 0
    double fast_right = 0.0;  ///< fraction of P_R < |p| < P_UV particles at x > 0
    double temperature_left = 0.0;   ///< mean p² over x < 0
    double temperature_right = 0.0;  ///< mean p² over x > 0
};

inline OccupancySummary occupancy(const std::vector<ClassicalParticle>& state,
                                  double P_R, double P_UV) {
    OccupancySummary s;
    std::size_t slow = 0, slow_left = 0, fast = 0, fast_right = 0;
    std::size_t nl = 0, nr = 0;
    double Tl = 0.0, Tr = 0.0;
    for (const auto& pt : state) {
        const double ap = std::fabs(pt.p);
        if (ap < P_R) {
            ++slow;
            if (pt.x < 0.0) ++slow_left;
        } else if (ap < P_UV) {
            ++fast;
            if (pt.x > 0.0) ++fast_right;
        }
        if (pt.x < 0.0) { ++nl; Tl += pt.p * pt.p; }
        if (pt.x > 0.0) { ++nr; Tr += pt.p * pt.p; }
    }
    s.slow_left = slow ? double(slow_left) / slow : 0.0;
    s.fast_right = fast ? double(fast_right) / fast : 0.0;
    s.temperature_left = nl ? Tl / nl : 0.0;
    s.temperature_right = nr ? Tr / nr : 0.0;
    return s;
}

} // namespace qdaemon
