// lattice.hpp — discretized daemonic Hamiltonian: construction,
// diagonalization, initial states and unitary time evolution.
//
// Everything is kept in rescaled units: energies Ξ = 2ma²E/ħ², time
// τ = ħt/2ma², potential strength Υ₀ = ma²V₀/ħ².  Sites are indexed
// n = -N..N with the defect at n = 0.

#pragma once

#include <cmath>
#include <string>

#include "qdaemon/common.hpp"

namespace qdaemon {

/// Single source of truth for a lattice run.
struct DaemonConfig {
    int half_size = 1;         ///< N; the chain has 2N+1 sites
    double upsilon0 = 0.0;     ///< Υ₀ ≥ 0, rescaled defect strength
    double kappa_R = pi / 4;   ///< reference momentum, radians per site
    double kappa_D = pi;       ///< ultraviolet cutoff, radians per site

    int size() const { return 2 * half_size + 1; }

    void validate() const {
        if (half_size < 1)
            throw ConfigError("DaemonConfig: half_size must be >= 1");
        if (!(upsilon0 >= 0.0) || !std::isfinite(upsilon0))
            throw ConfigError("DaemonConfig: upsilon0 must be finite and >= 0");
        if (!(kappa_R > 0.0 && kappa_R < pi))
            throw ConfigError("DaemonConfig: kappa_R must lie in (0, pi)");
        if (!(kappa_D > kappa_R && kappa_D <= pi))
            throw ConfigError("DaemonConfig: kappa_D must lie in (kappa_R, pi]");
    }
};

/// Sorted spectrum and phase-fixed orthonormal eigenbasis.
struct EigenSystem {
    VectorXd energies;   ///< ascending rescaled eigenvalues Ξ_m
    MatrixXcd vectors;   ///< column m = ν_m
};

struct StateVector {
    VectorXcd amplitudes;  ///< site n = index - N
};

/// Complex amplitudes over the (time, site) grid, one row per τ.
struct WaveField {
    VectorXd times;
    MatrixXcd frames;
};

/// Off-diagonal daemonic matrix element ⟨n|V|0⟩ / Υ₀ for n ≠ 0:
/// (2cos(κ_R n) - 1 - e^{-iκ_D n}) / (2iπn).
inline cx daemon_column_element(int n, double kappa_R, double kappa_D) {
    const cx num = 2.0 * std::cos(kappa_R * n) - 1.0 -
                   std::exp(cx(0.0, -kappa_D * n));
    return num / (cx(0.0, 2.0 * pi) * static_cast<double>(n));
}

/// Rescaled Hamiltonian: kinetic tridiagonal (2 on-site, -1 hopping) plus the
/// non-local defect column/row at site 0.  Hermitian by construction: row 0
/// is filled as the conjugate of column 0.
inline MatrixXcd build_hamiltonian(const DaemonConfig& cfg) {
    cfg.validate();
    const int N = cfg.half_size;
    const int sz = cfg.size();
    MatrixXcd H = MatrixXcd::Zero(sz, sz);
    for (int i = 0; i < sz; ++i) {
        H(i, i) = 2.0;
        if (i + 1 < sz) {
            H(i, i + 1) = -1.0;
            H(i + 1, i) = -1.0;
        }
    }
    const int c = N;  // index of site 0
    for (int n = -N; n <= N; ++n) {
        if (n == 0) continue;
        const cx v = cfg.upsilon0 * daemon_column_element(n, cfg.kappa_R, cfg.kappa_D);
        H(c + n, c) += v;
        H(c, c + n) += std::conj(v);
    }
    H(c, c) += cfg.upsilon0 * cfg.kappa_D / pi;
    return H;
}

/// ⟨n|H|κ⟩ for the infinite-lattice plane wave e^{iκn}/√(2π): dispersion term
/// plus the two daemonic terms.  The site-0 lattice sum is closed in terms of
/// the sawtooth series Σ sin(na)/n, and the removable n = 0 singularities of
/// both defect terms take their analytic limits (each κ_D/2π).
inline cx hamiltonian_on_plane_wave(const DaemonConfig& cfg, double kappa, int n) {
    cfg.validate();
    if (std::fabs(kappa) > pi)
        throw ContractViolation("hamiltonian_on_plane_wave: |kappa| must be <= pi");
    const double norm = 1.0 / std::sqrt(2.0 * pi);
    cx result = 2.0 * (1.0 - std::cos(kappa)) * std::exp(cx(0.0, kappa * n)) * norm;
    if (cfg.upsilon0 == 0.0) return result;
    if (n != 0) {
        result += cfg.upsilon0 * daemon_column_element(n, cfg.kappa_R, cfg.kappa_D) * norm;
    } else {
        result += cfg.upsilon0 * cfg.kappa_D / (2.0 * pi) * norm;  // column-term limit
        result += cfg.upsilon0 * cfg.kappa_D / (2.0 * pi) * norm;  // row-sum n' = 0 limit
        const double s = sawtooth_sum(kappa + cfg.kappa_R) +
                         sawtooth_sum(kappa - cfg.kappa_R) -
                         sawtooth_sum(kappa) -
                         sawtooth_sum(kappa + cfg.kappa_D);
        result += -cfg.upsilon0 / pi * s * norm;
    }
    return result;
}

/// Hermitian eigensolve with deterministic ordering: ascending eigenvalues,
/// each eigenvector phase-fixed so its first component of magnitude > 1e-8
/// is real positive.
inline EigenSystem diagonalize(const MatrixXcd& H) {
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ContractViolation("diagonalize: input matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(H);
    if (solver.info() != Eigen::Success)
        throw NumericalError("diagonalize: eigensolver failed to converge");
    EigenSystem es;
    es.energies = solver.eigenvalues();
    es.vectors = solver.eigenvectors();
    for (int m = 0; m < es.vectors.cols(); ++m) {
        for (int i = 0; i < es.vectors.rows(); ++i) {
            const cx a = es.vectors(i, m);
            if (std::abs(a) > 1e-8) {
                es.vectors.col(m) *= std::conj(a) / std::abs(a);
                break;
            }
        }
    }
    return es;
}

/// Thermal-like box superposition ψ₀(n) ∝ Σ_q exp(-β(q²-1)) sin(q(n+N)π/2N),
/// normalized.
inline StateVector boltzmann_state(const DaemonConfig& cfg, double beta) {
    cfg.validate();
    if (!(beta > 0.0))
        throw std::domain_error("boltzmann_state: beta must be positive");
    const int N = cfg.half_size;
    VectorXcd psi = VectorXcd::Zero(cfg.size());
    for (int q = 1; q <= 2 * N + 1; ++q) {
        const double w = std::exp(-beta * (static_cast<double>(q) * q - 1.0));
        if (w == 0.0) break;
        for (int n = -N; n <= N; ++n)
            psi(n + N) += w * std::sin(q * (n + N) * pi / (2.0 * N));
    }
    const double nrm = psi.norm();
    if (nrm == 0.0)
        throw NumericalError("boltzmann_state: state vanished after summation");
    psi /= nrm;
    return {psi};
}

/// Uniform amplitude 1/√(2N+1) at every site.
inline StateVector uniform_state(const DaemonConfig& cfg) {
    cfg.validate();
    VectorXcd psi = VectorXcd::Constant(cfg.size(), 1.0 / std::sqrt(double(cfg.size())));
    return {psi};
}

/// Spectral evolution Ψ(n,τ) = Σ_m e^{-iτΞ_m} (ν_m†ψ₀) ν_m^{(n)}.
inline WaveField evolve(const EigenSystem& eig, const StateVector& psi0,
                        const VectorXd& taus, unsigned threads = 1) {
    const Eigen::Index sz = eig.vectors.rows();
    if (eig.vectors.cols() != sz || eig.energies.size() != sz ||
        psi0.amplitudes.size() != sz)
        throw ContractViolation("evolve: dimension mismatch");
    for (Eigen::Index i = 0; i < taus.size(); ++i)
        if (!std::isfinite(taus(i)))
            throw ContractViolation("evolve: non-finite time value");

    const VectorXcd overlaps = eig.vectors.adjoint() * psi0.amplitudes;
    WaveField field;
    field.times = taus;
    field.frames.resize(taus.size(), sz);
    parallel_for(static_cast<std::size_t>(taus.size()), threads, [&](std::size_t t) {
        VectorXcd phase(sz);
        for (Eigen::Index m = 0; m < sz; ++m)
            phase(m) = std::exp(cx(0.0, -taus(static_cast<Eigen::Index>(t)) *
                                        eig.energies(m))) * overlaps(m);
        field.frames.row(static_cast<Eigen::Index>(t)) = (eig.vectors * phase).transpose();
    });
    return field;
}

} // namespace qdaemon
