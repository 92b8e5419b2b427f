// observables.hpp — entropy, lateral probability/energy splits, potential
// work trace and density carpets computed from an evolved WaveField.

#pragma once

#include <cmath>

#include "qdaemon/common.hpp"
#include "qdaemon/lattice.hpp"

namespace qdaemon {

struct EntropyTrace {
    VectorXd taus;
    VectorXd sigma;        ///< Shannon entropy per frame, nats
    MatrixXd occupations;  ///< ϱ_m per frame (row = frame)
};

/// Left/right/center split of a per-frame scalar; the three columns add up
/// to the conserved total (1 for probability, ⟨H⟩ for energy).
struct LateralTrace {
    VectorXd taus;
    VectorXd left;
    VectorXd right;
    VectorXd center;
};

struct PotentialTrace {
    VectorXd taus;
    VectorXd value;         ///< ⟨V⟩(τ)
    VectorXd running_mean;  ///< (1/τ)∫₀^τ ⟨V⟩ dτ′, trapezoid
};

/// Eigenbasis of the defect-free (Υ₀ = 0) chain of the same size; the fixed
/// projection basis for mode occupations.
inline EigenSystem free_energy_basis(const DaemonConfig& cfg) {
    DaemonConfig free_cfg = cfg;
    free_cfg.upsilon0 = 0.0;
    return diagonalize(build_hamiltonian(free_cfg));
}

/// σ(τ) = -Σ_m ϱ_m log ϱ_m with ϱ_m = |ν_m†Ψ(τ)|² and 0·log 0 := 0.
inline EntropyTrace shannon_entropy(const WaveField& field, const EigenSystem& basis) {
    if (field.frames.cols() != basis.vectors.rows())
        throw ContractViolation("shannon_entropy: dimension mismatch");
    const Eigen::Index T = field.frames.rows();
    const Eigen::Index M = basis.vectors.cols();
    EntropyTrace out;
    out.taus = field.times;
    out.sigma.resize(T);
    out.occupations.resize(T, M);
    // overlaps(t, m) = Σ_n Ψ(t,n) conj(ν_m(n))
    const MatrixXcd overlaps = field.frames * basis.vectors.conjugate();
    for (Eigen::Index t = 0; t < T; ++t) {
        double s = 0.0;
        for (Eigen::Index m = 0; m < M; ++m) {
            const double rho = std::norm(overlaps(t, m));
            out.occupations(t, m) = rho;
            if (rho > 0.0) s -= rho * std::log(rho);
        }
        out.sigma(t) = s;
    }
    return out;
}

/// Probability mass at n < 0, n > 0 and the defect site n = 0.
inline LateralTrace lateral_probability(const WaveField& field) {
    const Eigen::Index T = field.frames.rows();
    const Eigen::Index sz = field.frames.cols();
    const Eigen::Index N = (sz - 1) / 2;
    LateralTrace out;
    out.taus = field.times;
    out.left.resize(T);
    out.right.resize(T);
    out.center.resize(T);
    for (Eigen::Index t = 0; t < T; ++t) {
        double l = 0.0, r = 0.0;
        for (Eigen::Index i = 0; i < N; ++i) l += std::norm(field.frames(t, i));
        for (Eigen::Index i = N + 1; i < sz; ++i) r += std::norm(field.frames(t, i));
        out.left(t) = l;
        out.right(t) = r;
        out.center(t) = std::norm(field.frames(t, N));
    }
    return out;
}

/// Compartment energies Re(Ψ† Π_side H Ψ); the Hermitized ordering makes the
/// three pieces real and exactly closing to ⟨H⟩.
inline LateralTrace lateral_energy(const WaveField& field, const MatrixXcd& H) {
    if (field.frames.cols() != H.rows() || H.rows() != H.cols())
        throw ContractViolation("lateral_energy: dimension mismatch");
    const Eigen::Index T = field.frames.rows();
    const Eigen::Index sz = field.frames.cols();
    const Eigen::Index N = (sz - 1) / 2;
    LateralTrace out;
    out.taus = field.times;
    out.left.resize(T);
    out.right.resize(T);
    out.center.resize(T);
    const MatrixXcd HPsiT = field.frames * H.transpose();  // row t = (HΨ)ᵀ
    for (Eigen::Index t = 0; t < T; ++t) {
        cx l = 0.0, r = 0.0;
        for (Eigen::Index i = 0; i < N; ++i)
            l += std::conj(field.frames(t, i)) * HPsiT(t, i);
        for (Eigen::Index i = N + 1; i < sz; ++i)
            r += std::conj(field.frames(t, i)) * HPsiT(t, i);
        const cx c = std::conj(field.frames(t, N)) * HPsiT(t, N);
        out.left(t) = l.real();
        out.right(t) = r.real();
        out.center(t) = c.real();
    }
    return out;
}

/// ⟨V⟩(τ) = Re Ψ†(H - H_free)Ψ plus its running time average.  Negative
/// values mean the wave does work on the defect.
inline PotentialTrace potential_work_trace(const WaveField& field, const DaemonConfig& cfg) {
    const MatrixXcd H = build_hamiltonian(cfg);
    DaemonConfig free_cfg = cfg;
    free_cfg.upsilon0 = 0.0;
    const MatrixXcd dV = H - build_hamiltonian(free_cfg);
    if (field.frames.cols() != dV.rows())
        throw ContractViolation("potential_work_trace: dimension mismatch");
    const Eigen::Index T = field.frames.rows();
    PotentialTrace out;
    out.taus = field.times;
    out.value.resize(T);
    out.running_mean.resize(T);
    const MatrixXcd VPsiT = field.frames * dV.transpose();
    for (Eigen::Index t = 0; t < T; ++t) {
        cx v = 0.0;
        for (Eigen::Index i = 0; i < field.frames.cols(); ++i)
            v += std::conj(field.frames(t, i)) * VPsiT(t, i);
        out.value(t) = v.real();
    }
    double integral = 0.0;
    out.running_mean(0) = out.value(0);
    for (Eigen::Index t = 1; t < T; ++t) {
        integral += 0.5 * (out.value(t) + out.value(t - 1)) *
                    (out.taus(t) - out.taus(t - 1));
        const double span = out.taus(t) - out.taus(0);
        out.running_mean(t) = span > 0.0 ? integral / span : out.value(t);
    }
    return out;
}

/// |Ψ(n,τ)|², row per frame.
inline MatrixXd density_carpet(const WaveField& field) {
    return field.frames.cwiseAbs2();
}

} // namespace qdaemon
