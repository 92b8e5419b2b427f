// common.hpp — shared aliases, error types and small numeric helpers.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace qdaemon {

using cx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cx imag_unit{0.0, 1.0};

/// Invalid run configuration (bad field values, unparsable files).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation was violated by the caller.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Evaluation failed numerically (pole hit, branch collapse, stiffness,
/// non-convergence of an iteration that has no fallback).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Heaviside step with the Θ(0) = 1/2 convention used at band thresholds.
inline double theta(double x) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return 0.0;
    return 0.5;
}

/// Σ_{n≥1} sin(n a)/n, the 2π-periodic sawtooth (π−a)/2 on (0, 2π), odd,
/// zero at multiples of π.
inline double sawtooth_sum(double a) {
    double r = std::fmod(a, 2.0 * pi);
    if (r < 0.0) r += 2.0 * pi;
    if (r == 0.0) return 0.0;
    return 0.5 * (pi - r);
}

/// FNV-1a 64-bit hash; used for the seed-free determinism hash of resolved
/// run configurations.
inline std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Index-ordered parallel loop: f(i) for i in [0, n). Results must be written
/// to disjoint slots so the output is independent of the schedule.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    unsigned nt = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) {
        pool.emplace_back([=, &f] {
            for (std::size_t i = t; i < n; i += nt) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace qdaemon
