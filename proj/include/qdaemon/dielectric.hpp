// dielectric.hpp — inverse problem for the daemonic dielectric profile:
// the nonlinear ODE for ε_r(x, ω) in u = log ε_r and its harmonic closed
// form.  Lengths in cm, frequencies as ω/c in cm⁻¹.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "qdaemon/common.hpp"

namespace qdaemon {

/// Band ratio f₊(ω)/f₋(ω) of the frequency selector: +1 below ω_R, -1
/// between ω_R and ω_UV, empty (daemon inactive) above the cutoff and at the
/// ω = ω_R threshold where f₋ vanishes under the Θ(0) = 1/2 convention.
inline std::optional<double> activation_ratio(double omega, double omega_R,
                                              double omega_UV) {
    if (!(omega >= 0.0) || !(omega_R > 0.0) || !(omega_UV > omega_R))
        throw ContractViolation("activation_ratio: need 0 <= omega, 0 < omega_R < omega_UV");
    const double f_plus = 0.5 * (theta(omega_R - omega) + theta(omega - omega_R) -
                                 theta(omega - omega_UV));
    const double f_minus = 0.5 * (theta(omega_R - omega) - theta(omega - omega_R) +
                                  theta(omega - omega_UV));
    if (f_minus == 0.0 || f_plus == 0.0) return std::nullopt;
    return f_plus / f_minus;
}

struct InverseProblemSpec {
    double omega_over_c = pi;          ///< ω/c in cm⁻¹
    double omega_R_over_c = 16 * pi;   ///< reference frequency
    double omega_UV_over_c = std::numeric_limits<double>::infinity();
    double mu_r = 1.0;
    cx eps0 = cx(2.0, 0.0);            ///< ε_r(0)
    cx deps0 = cx(1.0, 0.0);           ///< ε_r′(0)
    std::vector<double> x_grid;        ///< cm, strictly increasing
    double step = 1e-3;                ///< base RK4 step, cm
    double tol = 1e-8;                 ///< relative Richardson tolerance
    int max_refine = 14;               ///< halvings before a stiffness error
    bool mirror_negative = true;       ///< x<0 by the conjugate-mirror branch

    void validate() const {
        if (!(omega_over_c > 0.0))
            throw ConfigError("InverseProblemSpec: omega_over_c must be positive");
        if (!(omega_R_over_c > 0.0))
            throw ConfigError("InverseProblemSpec: omega_R_over_c must be positive");
        if (!(omega_UV_over_c > omega_R_over_c))
            throw ConfigError("InverseProblemSpec: omega_UV_over_c must exceed omega_R_over_c");
        if (!(mu_r > 0.0)) throw ConfigError("InverseProblemSpec: mu_r must be positive");
        if (std::abs(eps0) == 0.0)
            throw ConfigError("InverseProblemSpec: eps0 must be nonzero");
        if (x_grid.empty()) throw ConfigError("InverseProblemSpec: empty x grid");
        for (std::size_t i = 1; i < x_grid.size(); ++i)
            if (!(x_grid[i] > x_grid[i - 1]))
                throw ConfigError("InverseProblemSpec: x grid must be strictly increasing");
        if (!(step > 0.0)) throw ConfigError("InverseProblemSpec: step must be positive");
        if (!(tol > 0.0)) throw ConfigError("InverseProblemSpec: tol must be positive");
    }
};

struct EpsilonSolution {
    std::vector<double> x;
    std::vector<cx> eps;
    std::vector<cx> log_eps;
    std::vector<cx> dlog_eps;   ///< u′ diagnostic (log-derivative column)
    bool daemon_active = true;  ///< false when ω lies outside both bands
};

namespace detail {

struct OdeState {
    cx u;
    cx up;
};

// u″ = 2iκs u′ - 2 μ_r κ² (e^u - 1), κ = ω/c, s the band ratio (0 when the
// selector is inactive, which reduces to the free comparison equation).
inline OdeState epsilon_rhs(const OdeState& y, double kappa, double s, double mu_r) {
    return {y.up, cx(0.0, 2.0 * kappa * s) * y.up -
                      2.0 * mu_r * kappa * kappa * (std::exp(y.u) - 1.0)};
}

inline OdeState rk4_step(const OdeState& y, double h, double kappa, double s, double mu_r) {
    const OdeState k1 = epsilon_rhs(y, kappa, s, mu_r);
    const OdeState k2 = epsilon_rhs({y.u + 0.5 * h * k1.u, y.up + 0.5 * h * k1.up}, kappa, s, mu_r);
    const OdeState k3 = epsilon_rhs({y.u + 0.5 * h * k2.u, y.up + 0.5 * h * k2.up}, kappa, s, mu_r);
    const OdeState k4 = epsilon_rhs({y.u + h * k3.u, y.up + h * k3.up}, kappa, s, mu_r);
    return {y.u + h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
            y.up + h / 6.0 * (k1.up + 2.0 * k2.up + 2.0 * k3.up + k4.up)};
}

inline void check_branch(const OdeState& y) {
    if (y.u.real() < std::log(1e-8))
        throw NumericalError("solve_epsilon_ode: |eps| collapsed below 1e-8 along the path");
    if (!std::isfinite(y.u.real()) || !std::isfinite(y.u.imag()))
        throw NumericalError("solve_epsilon_ode: log eps diverged along the path");
}

// Advance from x0 to x1 with fixed substeps of size <= h; every segment is
// Richardson-checked against a half-step pass and h is halved on mismatch.
inline OdeState integrate_segment(OdeState y, double x0, double x1, double h,
                                  double tol, int max_refine, double kappa,
                                  double s, double mu_r) {
    if (x1 == x0) return y;
    const double dir = x1 > x0 ? 1.0 : -1.0;
    double span = std::fabs(x1 - x0);
    for (int refine = 0;; ++refine) {
        const int n = std::max<int>(1, static_cast<int>(std::ceil(span / h)));
        const double hh = dir * span / n;
        OdeState full = y, half = y;
        for (int i = 0; i < n; ++i) full = rk4_step(full, hh, kappa, s, mu_r);
        for (int i = 0; i < 2 * n; ++i) half = rk4_step(half, 0.5 * hh, kappa, s, mu_r);
        const double err = std::abs(full.u - half.u) / (1.0 + std::abs(half.u));
        if (err < tol) {
            check_branch(half);
            return half;
        }
        if (refine >= max_refine)
            throw NumericalError("solve_epsilon_ode: step rejection persisted; the path is stiff");
        h *= 0.5;
    }
}

} // namespace detail

/// Integrate the inverse ODE along the grid.  x >= 0 is marched from the
/// defect outward; x < 0 is filled with the conjugate-mirror branch
/// ε(-x) = conj(ε(x)) by default (an exact solution of the same equation,
/// matching the bilayer realization), or by raw two-sided integration when
/// mirror_negative is false.
inline EpsilonSolution solve_epsilon_ode(const InverseProblemSpec& spec) {
    spec.validate();
    const double kappa = spec.omega_over_c;
    const auto ratio = activation_ratio(kappa, spec.omega_R_over_c, spec.omega_UV_over_c);
    const double s = ratio.value_or(0.0);
    const double mu = spec.mu_r;

    EpsilonSolution out;
    out.daemon_active = ratio.has_value();
    out.x = spec.x_grid;
    out.eps.resize(out.x.size());
    out.log_eps.resize(out.x.size());
    out.dlog_eps.resize(out.x.size());

    const detail::OdeState y0{std::log(spec.eps0), spec.deps0 / spec.eps0};

    auto march = [&](double from, detail::OdeState y, const std::vector<std::size_t>& idx) {
        double xprev = from;
        for (std::size_t i : idx) {
            y = detail::integrate_segment(y, xprev, out.x[i], spec.step, spec.tol,
                                          spec.max_refine, kappa, s, mu);
            xprev = out.x[i];
            out.log_eps[i] = y.u;
            out.dlog_eps[i] = y.up;
            out.eps[i] = std::exp(y.u);
        }
    };

    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < out.x.size(); ++i)
        (out.x[i] >= 0.0 ? pos : neg).push_back(i);
    std::sort(neg.rbegin(), neg.rend());  // march outward: 0 -> most negative

    march(0.0, y0, pos);
    if (spec.mirror_negative) {
        // conjugate-mirror branch: integrate |x| upward, conjugate the result
        std::vector<double> absx;
        for (std::size_t i : neg) absx.push_back(-out.x[i]);
        detail::OdeState y = y0;
        double xprev = 0.0;
        for (std::size_t k = 0; k < neg.size(); ++k) {
            y = detail::integrate_segment(y, xprev, absx[k], spec.step, spec.tol,
                                          spec.max_refine, kappa, s, mu);
            xprev = absx[k];
            const std::size_t i = neg[k];
            out.log_eps[i] = std::conj(y.u);
            out.dlog_eps[i] = -std::conj(y.up);
            out.eps[i] = std::exp(std::conj(y.u));
        }
    } else {
        march(0.0, y0, neg);
    }
    return out;
}

struct HarmonicPoint {
    cx v;        ///< slowly varying log-amplitude
    cx epsilon;  ///< exp(v e^{iκs x})
};

/// Closed harmonic form from explicit initial data:
/// v(x) = v₀ cos(Wx) + (v₀′/W) sin(Wx), W = √(1+2μ_r)·κ.
inline HarmonicPoint harmonic_log_deviation(double x, cx v0, cx v0p, double kappa,
                                            double s, double mu_r) {
    const double W = std::sqrt(1.0 + 2.0 * mu_r) * kappa;
    const cx v = v0 * std::cos(W * x) + v0p / W * std::sin(W * x);
    const cx u = v * std::exp(cx(0.0, kappa * s * x));
    return {v, std::exp(u)};
}

/// Harmonic approximation of the spec's problem; v₀ = Log ε₀ and
/// v₀′ = ε₀′/ε₀ - iκs·v₀ follow from u = v·e^{iκsx}.
inline HarmonicPoint harmonic_approx(double x, const InverseProblemSpec& spec) {
    spec.validate();
    const double kappa = spec.omega_over_c;
    const double s =
        activation_ratio(kappa, spec.omega_R_over_c, spec.omega_UV_over_c).value_or(0.0);
    const cx v0 = std::log(spec.eps0);
    const cx v0p = spec.deps0 / spec.eps0 - cx(0.0, kappa * s) * v0;
    return harmonic_log_deviation(x, v0, v0p, kappa, s, spec.mu_r);
}

} // namespace qdaemon
