// em_cavity.hpp — dielectric-bilayer cavity solver.
//
// The longitudinal wave equation projected on the Neumann basis
// φ_m(x) = √(2/L) cos(κ_m x), κ_m = mπ/L, m = 0..n_modes-1 gives the
// transcendental eigenproblem D(ω)x = ω²x (frequencies rescaled by c, so ω
// carries cm⁻¹ and time carries cm).  The algebraic part (rational in ω
// through the Lorentz–Drude permittivities) is cleared to a polynomial
// matrix, linearized as a block companion pencil and filtered; the full
// problem (with the logarithmic interface terms) is then refined per mode.
//
// All matrix elements use the exact closed forms of the five integral
// families; no quadrature is performed anywhere in this header.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qdaemon/common.hpp"

namespace qdaemon {

struct Bilayer {
    double omega_p = 0.0;  ///< plasma constant, cm⁻¹
    double omega_0 = 1.0;  ///< spring constant, cm⁻¹
    double gamma = 0.0;    ///< damping constant, cm⁻¹
};

/// Ordered bilayer curtains k = -N..N centered in a vacuum cavity [0, L].
/// The right half of curtain k carries ε_k(ω, Γ), the left half the
/// star side ε_k(ω, -Γ).
struct BilayerStack {
    std::vector<Bilayer> layers;  ///< size 2N+1 (may be empty: bare cavity)
    double b = 0.12;              ///< bilayer thickness, cm
    double L = 12.0;              ///< cavity length, cm
    double mu_r = 1.0;
    double xi2 = 0.0;             ///< transverse ξ², cm⁻²

    int half_count() const { return (static_cast<int>(layers.size()) - 1) / 2; }
    double center(int k) const { return 0.5 * L + k * b; }
    const Bilayer& layer(int k) const { return layers[k + half_count()]; }

    void validate() const {
        if (!(L > 0.0)) throw ConfigError("BilayerStack: L must be positive");
        if (!(mu_r > 0.0)) throw ConfigError("BilayerStack: mu_r must be positive");
        if (layers.empty()) return;
        if (layers.size() % 2 == 0)
            throw ConfigError("BilayerStack: layer count must be odd (k = -N..N)");
        if (!(b > 0.0)) throw ConfigError("BilayerStack: b must be positive");
        if (!(static_cast<double>(layers.size()) * b < L))
            throw ConfigError("BilayerStack: stack does not fit inside the cavity");
        const int N = half_count();
        for (const auto& l : layers) {
            if (!(l.omega_0 > 0.0)) throw ConfigError("BilayerStack: omega_0 must be positive");
            if (l.gamma < 0.0) throw ConfigError("BilayerStack: gamma must be >= 0");
        }
        if (!(center(-N) - 0.5 * b > 0.0) || !(center(N) + 0.5 * b < L))
            throw ConfigError("BilayerStack: curtains must lie inside (0, L)");
    }

    /// Table defaults: 13 curtains, ω̃_p = 3, ω̃_0 = 1.20 - 0.12|k|,
    /// Γ̃ = 0.050 - 0.005|k|, b = 0.12 cm, L = 12 cm.
    static BilayerStack reference_thirteen() {
        BilayerStack s;
        s.b = 0.12;
        s.L = 12.0;
        for (int k = -6; k <= 6; ++k) {
            const int j = std::abs(k);
            s.layers.push_back({3.0, 1.20 - 0.12 * j, 0.050 - 0.005 * j});
        }
        return s;
    }
};

/// Lorentz–Drude permittivity ε(ω,Γ) = 1 + ω_p²/(ω_0² - ω² - iΓω); the star
/// (left) side evaluates with -Γ, which on the real axis is the complex
/// conjugate.
inline cx lorentz_drude(cx omega, const Bilayer& layer, bool star = false) {
    const double g = star ? -layer.gamma : layer.gamma;
    const cx den = layer.omega_0 * layer.omega_0 - omega * omega - cx(0.0, g) * omega;
    if (std::abs(den) < 1e-12)
        throw NumericalError("lorentz_drude: evaluation at a material resonance");
    return 1.0 + layer.omega_p * layer.omega_p / den;
}

/// Piecewise permittivity profile of the loaded cavity.
inline cx epsilon_profile(double x, cx omega, const BilayerStack& stack) {
    stack.validate();
    if (x < 0.0 || x > stack.L)
        throw ContractViolation("epsilon_profile: x outside [0, L]");
    const int N = stack.half_count();
    for (int k = -N; k <= static_cast<int>(N) && !stack.layers.empty(); ++k) {
        const double a = stack.center(k);
        if (x >= a && x < a + 0.5 * stack.b) return lorentz_drude(omega, stack.layer(k), false);
        if (x >= a - 0.5 * stack.b && x < a) return lorentz_drude(omega, stack.layer(k), true);
    }
    return cx(1.0, 0.0);
}

namespace em_detail {

inline double kappa(int m, double L) { return m * pi / L; }

inline double f_plus(int m, int n, double u, double L) {
    return m * std::sin(kappa(m, L) * u) * std::cos(kappa(n, L) * u) +
           n * std::sin(kappa(n, L) * u) * std::cos(kappa(m, L) * u);
}

inline double f_minus(int m, int n, double u, double L) {
    return m * std::sin(kappa(m, L) * u) * std::cos(kappa(n, L) * u) -
           n * std::sin(kappa(n, L) * u) * std::cos(kappa(m, L) * u);
}

inline double g_fun(int m, int n, double u, double L) {
    return std::cos(kappa(m, L) * u) * std::sin(kappa(n, L) * u);
}

/// ∫_lo^hi φ_m φ_n dx in closed form (φ = √(2/L) cos κ_m x).
inline double basis_overlap(int m, int n, double lo, double hi, double L) {
    if (m != n)
        return 2.0 / ((static_cast<double>(m) * m - static_cast<double>(n) * n) * pi) *
               (f_minus(m, n, hi, L) - f_minus(m, n, lo, L));
    if (n != 0)
        return (hi - lo) / L + (g_fun(n, n, hi, L) - g_fun(n, n, lo, L)) / (n * pi);
    return 2.0 * (hi - lo) / L;
}

} // namespace em_detail

/// Basis norm matrix N = diag(1 + δ_{m0}); the constant mode φ₀ of the
/// paper's Neumann basis carries norm² = 2.
inline MatrixXd norm_matrix(int n_modes, double xi2 = 0.0) {
    MatrixXd N = MatrixXd::Zero(n_modes, n_modes);
    for (int m = 0; m < n_modes; ++m) N(m, m) = (m == 0 ? 2.0 : 1.0);
    (void)xi2;
    return N;
}

/// -I₁ = diag(κ_m²).
inline MatrixXd kinetic_matrix(int n_modes, double L) {
    MatrixXd K = MatrixXd::Zero(n_modes, n_modes);
    for (int m = 0; m < n_modes; ++m) {
        const double k = em_detail::kappa(m, L);
        K(m, m) = k * k;
    }
    return K;
}

/// Geometry-only overlap matrices: right/left half-window of each curtain
/// plus the vacuum complement, so that
/// I₃(total)(ω) = C + Σ_k [ε_k A_k + ε_k^⋆ B_k].
struct OverlapMatrices {
    std::vector<MatrixXd> right;  ///< A_k over [a_k, a_k + b/2]
    std::vector<MatrixXd> left;   ///< B_k over [a_k - b/2, a_k]
    MatrixXd vacuum;              ///< complement region
};

inline OverlapMatrices overlap_matrices(const BilayerStack& stack, int n_modes) {
    stack.validate();
    if (n_modes < 1) throw ContractViolation("overlap_matrices: n_modes must be >= 1");
    OverlapMatrices om;
    om.vacuum = MatrixXd::Zero(n_modes, n_modes);
    const int N = stack.half_count();
    MatrixXd inside = MatrixXd::Zero(n_modes, n_modes);
    for (int k = -N; k <= N && !stack.layers.empty(); ++k) {
        const double a = stack.center(k);
        MatrixXd A(n_modes, n_modes), B(n_modes, n_modes);
        for (int m = 0; m < n_modes; ++m)
            for (int n = 0; n < n_modes; ++n) {
                A(m, n) = em_detail::basis_overlap(m, n, a, a + 0.5 * stack.b, stack.L);
                B(m, n) = em_detail::basis_overlap(m, n, a - 0.5 * stack.b, a, stack.L);
            }
        inside += A + B;
        om.right.push_back(A);
        om.left.push_back(B);
    }
    om.vacuum = norm_matrix(n_modes) - inside;
    return om;
}

/// ε-weighted overlap E(ω) = N + Σ_k ω_p²[A_k/d_k + B_k/d_k^⋆].
inline MatrixXcd epsilon_overlap(cx omega, const BilayerStack& stack,
                                 const OverlapMatrices& om, int n_modes) {
    MatrixXcd E = norm_matrix(n_modes).cast<cx>();
    const int N = stack.half_count();
    for (int k = -N; k <= N && !stack.layers.empty(); ++k) {
        const auto& l = stack.layer(k);
        E += (lorentz_drude(omega, l, false) - 1.0) * om.right[k + N].cast<cx>();
        E += (lorentz_drude(omega, l, true) - 1.0) * om.left[k + N].cast<cx>();
    }
    return E;
}

struct LogTermWarning {
    int layer_k = 0;
    cx omega;
    bool star = false;
};

/// Interface log terms I₄ (curvature) and I₅ (drift), principal branch of
/// log ε.  Crossings of the negative real axis are recorded, not rejected.
inline void log_term_matrices(cx omega, const BilayerStack& stack, int n_modes,
                              MatrixXcd& I4, MatrixXcd& I5,
                              std::vector<LogTermWarning>* warnings = nullptr) {
    using namespace em_detail;
    I4 = MatrixXcd::Zero(n_modes, n_modes);
    I5 = MatrixXcd::Zero(n_modes, n_modes);
    const int N = stack.half_count();
    const double L = stack.L;
    for (int k = -N; k <= N && !stack.layers.empty(); ++k) {
        const auto& l = stack.layer(k);
        const cx er = lorentz_drude(omega, l, false);
        const cx es = lorentz_drude(omega, l, true);
        if (warnings) {
            if (er.real() < 0.0 && std::abs(er.imag()) < 1e-9 * std::abs(er))
                warnings->push_back({k, omega, false});
            if (es.real() < 0.0 && std::abs(es.imag()) < 1e-9 * std::abs(es))
                warnings->push_back({k, omega, true});
        }
        const cx le = std::log(er);
        const cx ls = std::log(es);
        const double a = stack.center(k);
        const double ap = a + 0.5 * stack.b;
        const double am = a - 0.5 * stack.b;
        for (int m = 0; m < n_modes; ++m)
            for (int n = 0; n < n_modes; ++n) {
                I4(m, n) += -2.0 * pi / (L * L) *
                            (le * f_plus(m, n, ap, L) - ls * f_plus(m, n, am, L) -
                             (le - ls) * f_plus(m, n, a, L));
                I5(m, n) += 2.0 * n * pi / (L * L) *
                            (le * g_fun(m, n, ap, L) - ls * g_fun(m, n, am, L) -
                             (le - ls) * g_fun(m, n, a, L));
            }
    }
}

/// D(ω) with the convention fixed by the empty-cavity limit
/// (D diagonal = κ_m² + ξ² at μ_r = 1):
///   D(ω) = E(ω)⁻¹ (K + ξ²N - I₄(ω) - I₅(ω)) / μ_r,
/// so that D(ω)x = ω²x reproduces the projected wave equation.  Setting
/// include_log_terms = false gives the algebraic part used by the pencil.
inline MatrixXcd d_matrix(cx omega, const BilayerStack& stack, int n_modes,
                          bool include_log_terms = true,
                          std::vector<LogTermWarning>* warnings = nullptr) {
    stack.validate();
    if (n_modes < 1) throw ContractViolation("d_matrix: n_modes must be >= 1");
    const OverlapMatrices om = overlap_matrices(stack, n_modes);
    MatrixXcd lhs = (kinetic_matrix(n_modes, stack.L) +
                     stack.xi2 * norm_matrix(n_modes)).cast<cx>();
    if (include_log_terms) {
        MatrixXcd I4, I5;
        log_term_matrices(omega, stack, n_modes, I4, I5, warnings);
        lhs -= I4 + I5;
    }
    const MatrixXcd E = epsilon_overlap(omega, stack, om, n_modes);
    return E.partialPivLu().solve(lhs) / stack.mu_r;
}

// ---------------------------------------------------------------------------
// Polynomial clearing and companion linearization
// ---------------------------------------------------------------------------

/// One distinct quadratic denominator d(ω) = ω₀² - ω² - iΓω (Γ sign encodes
/// the star side) together with the summed coefficient matrix of ω_p²-scaled
/// overlaps sharing it.
struct ClearedFactor {
    double omega_0 = 0.0;
    double gamma = 0.0;  ///< signed: star side carries -Γ
    MatrixXd coefficient;

    std::array<cx, 3> poly() const {  // ascending powers
        return {cx(omega_0 * omega_0, 0.0), cx(0.0, -gamma), cx(-1.0, 0.0)};
    }
    std::array<cx, 2> roots() const {
        const cx disc = std::sqrt(cx(4.0 * omega_0 * omega_0 - gamma * gamma, 0.0));
        return {0.5 * (cx(0.0, -gamma) + disc), 0.5 * (cx(0.0, -gamma) - disc)};
    }
};

struct PolynomialMatrix {
    std::vector<MatrixXcd> coeffs;  ///< M_j, ascending powers of ω
    std::vector<ClearedFactor> factors;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    MatrixXcd eval(cx omega) const {
        MatrixXcd P = coeffs.back();
        for (int j = degree() - 1; j >= 0; --j) P = (P * omega + coeffs[j]).eval();
        return P;
    }

    cx denominator(cx omega) const {
        cx prod = 1.0;
        for (const auto& f : factors) {
            const auto q = f.poly();
            prod *= q[0] + q[1] * omega + q[2] * omega * omega;
        }
        return prod;
    }
};

namespace em_detail {

inline std::vector<cx> poly_mul(const std::vector<cx>& a, const std::array<cx, 3>& q) {
    std::vector<cx> r(a.size() + 2, cx(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < 3; ++j) r[i + j] += a[i] * q[j];
    return r;
}

} // namespace em_detail

/// Clear the Lorentz–Drude denominators of the algebraic part
///   (K + ξ²N)x = ω² μ_r E(ω) x
/// into Σ_j M_j ω^j x = 0.  Distinct (ω₀, signed Γ) pairs are deduplicated
/// by exact equality, so the degree is 2 + 2·(number of distinct factors).
inline PolynomialMatrix polynomialize(const BilayerStack& stack, int n_modes,
                                      int degree_cap = 96) {
    stack.validate();
    if (n_modes < 1) throw ContractViolation("polynomialize: n_modes must be >= 1");
    const OverlapMatrices om = overlap_matrices(stack, n_modes);
    const int N = stack.half_count();

    PolynomialMatrix pm;
    auto add_factor = [&](double w0, double g, const MatrixXd& coef) {
        for (auto& f : pm.factors)
            if (f.omega_0 == w0 && f.gamma == g) {
                f.coefficient += coef;
                return;
            }
        pm.factors.push_back({w0, g, coef});
    };
    for (int k = -N; k <= N && !stack.layers.empty(); ++k) {
        const auto& l = stack.layer(k);
        const double wp2 = l.omega_p * l.omega_p;
        add_factor(l.omega_0, l.gamma, wp2 * om.right[k + N]);
        add_factor(l.omega_0, -l.gamma, wp2 * om.left[k + N]);
    }
    // a lossless layer (Γ = 0) contributes the same quadratic on both sides
    const int degree = 2 + 2 * static_cast<int>(pm.factors.size());
    if (degree > degree_cap)
        throw NumericalError("polynomialize: cleared degree exceeds the configured cap");

    std::vector<cx> full{cx(1.0, 0.0)};
    for (const auto& f : pm.factors) full = em_detail::poly_mul(full, f.poly());

    pm.coeffs.assign(degree + 1, MatrixXcd::Zero(n_modes, n_modes));
    const MatrixXcd lhs =
        (kinetic_matrix(n_modes, stack.L) + stack.xi2 * norm_matrix(n_modes)).cast<cx>();
    const MatrixXcd Nc = norm_matrix(n_modes).cast<cx>();
    for (std::size_t p = 0; p < full.size(); ++p) {
        pm.coeffs[p] += full[p] * lhs;
        pm.coeffs[p + 2] -= full[p] * stack.mu_r * Nc;
    }
    for (std::size_t fi = 0; fi < pm.factors.size(); ++fi) {
        std::vector<cx> reduced{cx(1.0, 0.0)};
        for (std::size_t fj = 0; fj < pm.factors.size(); ++fj)
            if (fj != fi) reduced = em_detail::poly_mul(reduced, pm.factors[fj].poly());
        const MatrixXcd C = pm.factors[fi].coefficient.cast<cx>();
        for (std::size_t p = 0; p < reduced.size(); ++p)
            pm.coeffs[p + 2] -= reduced[p] * stack.mu_r * C;
    }
    return pm;
}

struct PencilSpectrum {
    std::vector<cx> all;      ///< every companion eigenvalue
    std::vector<cx> retained; ///< causal subset, Im λ <= tolerance
};

/// Block-companion linearization of Σ M_j ω^j.  The leading coefficient is
/// inverted when well conditioned; otherwise the reversed polynomial
/// (eigenvalues 1/ω) is used, which is the two-matrix pencil in disguise.
inline PencilSpectrum pencil_eigs(const PolynomialMatrix& pm, double causal_tol = 1e-9) {
    const int deg = pm.degree();
    const Eigen::Index n = pm.coeffs.front().rows();
    if (deg < 1) throw ContractViolation("pencil_eigs: polynomial degree must be >= 1");

    auto companion_eigs = [&](const std::vector<MatrixXcd>& coeffs) {
        const int d = static_cast<int>(coeffs.size()) - 1;
        Eigen::PartialPivLU<MatrixXcd> lu(coeffs[d]);
        MatrixXcd C = MatrixXcd::Zero(d * n, d * n);
        for (int i = 0; i + 1 < d; ++i)
            C.block(i * n, (i + 1) * n, n, n) = MatrixXcd::Identity(n, n);
        for (int p = 0; p < d; ++p)
            C.block((d - 1) * n, p * n, n, n) = -lu.solve(coeffs[p]);
        Eigen::ComplexEigenSolver<MatrixXcd> es(C, false);
        if (es.info() != Eigen::Success)
            throw NumericalError("pencil_eigs: companion eigensolve failed");
        return es.eigenvalues();
    };

    const MatrixXcd& top = pm.coeffs[deg];
    const double top_min_sv =
        top.jacobiSvd().singularValues().minCoeff();
    PencilSpectrum out;
    if (top_min_sv > 1e-12 * std::max(1.0, top.cwiseAbs().maxCoeff())) {
        const auto vals = companion_eigs(pm.coeffs);
        out.all.assign(vals.data(), vals.data() + vals.size());
    } else {
        std::vector<MatrixXcd> rev(pm.coeffs.rbegin(), pm.coeffs.rend());
        const auto vals = companion_eigs(rev);
        out.all.reserve(vals.size());
        for (Eigen::Index i = 0; i < vals.size(); ++i)
            if (std::abs(vals(i)) > 1e-14) out.all.push_back(1.0 / vals(i));
    }
    for (const cx& z : out.all)
        if (z.imag() <= causal_tol * (1.0 + std::abs(z))) out.retained.push_back(z);
    return out;
}

// ---------------------------------------------------------------------------
// Refinement, null vectors, modal solution
// ---------------------------------------------------------------------------

inline MatrixXcd eigen_residual_matrix(cx omega, const BilayerStack& stack, int n_modes,
                                       bool include_log_terms = true) {
    return d_matrix(omega, stack, n_modes, include_log_terms) -
           omega * omega * MatrixXcd::Identity(n_modes, n_modes);
}

inline double smallest_singular_value(const MatrixXcd& M) {
    return M.jacobiSvd().singularValues().minCoeff();
}

struct RefineResult {
    cx lambda2;
    double residual = 0.0;  ///< smallest singular value of D(λ₂) - λ₂²·I
    int iterations = 0;
    bool converged = false;
};

/// Iterative transcendental correction λ ← λ + ξ: D(λ+ξ) is expanded to
/// first order in ξ by centered finite differences (step |λ|·1e-6) and the
/// local one-parameter pencil F(λ) + ξF′(λ) is solved for its smallest
/// correction; an optional deflation list steers the step away from roots
/// already claimed.  Non-convergence returns the unrefined value flagged.
inline RefineResult refine_mode(cx lambda1, const BilayerStack& stack, int n_modes,
                                double tol = 1e-8, int max_iter = 50,
                                const std::vector<cx>& deflate = {}) {
    stack.validate();
    RefineResult rr;
    rr.lambda2 = lambda1;
    cx z = lambda1;
    for (int it = 0; it < max_iter; ++it) {
        const MatrixXcd F = eigen_residual_matrix(z, stack, n_modes);
        const double s = smallest_singular_value(F);
        if (s < tol) {
            rr.lambda2 = z;
            rr.residual = s;
            rr.iterations = it;
            rr.converged = true;
            return rr;
        }
        const double h = std::max(std::abs(z), 0.1) * 1e-6;
        const MatrixXcd Fp = (eigen_residual_matrix(z + h, stack, n_modes) -
                              eigen_residual_matrix(z - h, stack, n_modes)) /
                             (2.0 * h);
        cx step;
        if (deflate.empty()) {
            // min-|ξ| eigenvalue of F + ξF′ = 0
            Eigen::ComplexEigenSolver<MatrixXcd> es(-Fp.partialPivLu().solve(F), false);
            if (es.info() != Eigen::Success) break;
            const auto xi = es.eigenvalues();
            Eigen::Index best = 0;
            for (Eigen::Index i = 1; i < xi.size(); ++i)
                if (std::abs(xi(i)) < std::abs(xi(best))) best = i;
            step = xi(best);
        } else {
            // scalarized Newton step with deflation of claimed roots
            cx tr = (F.partialPivLu().solve(Fp)).trace();
            for (const cx& m : deflate)
                if (std::abs(z - m) > 1e-12) tr -= 1.0 / (z - m);
            if (tr == cx(0.0, 0.0)) break;
            step = -1.0 / tr;
        }
        const double cap = 0.08 * std::max(std::abs(z), 0.3);
        if (std::abs(step) > cap) step *= cap / std::abs(step);
        z += step;
    }
    rr.lambda2 = lambda1;
    rr.residual = smallest_singular_value(eigen_residual_matrix(lambda1, stack, n_modes));
    rr.iterations = max_iter;
    rr.converged = false;
    return rr;
}

struct NullVector {
    VectorXcd vector;
    double sigma_min = 0.0;
    bool degenerate = false;   ///< smallest two singular values within 1e-8
    VectorXcd second;          ///< companion vector when degenerate
};

/// Unit right singular vector of the smallest singular value of
/// D(ω) - ω²·I, phase-fixed so the largest-magnitude entry is real positive.
inline NullVector null_vector(cx omega_m, const BilayerStack& stack, int n_modes,
                              bool include_log_terms = true) {
    const MatrixXcd F = eigen_residual_matrix(omega_m, stack, n_modes, include_log_terms);
    Eigen::JacobiSVD<MatrixXcd> svd(F, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    NullVector nv;
    nv.sigma_min = sv(sv.size() - 1);
    auto phase_fix = [](VectorXcd v) {
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        const cx a = v(imax);
        if (std::abs(a) > 0.0) v *= std::conj(a) / std::abs(a);
        return v;
    };
    nv.vector = phase_fix(svd.matrixV().col(sv.size() - 1));
    if (sv.size() > 1 && sv(sv.size() - 2) - sv(sv.size() - 1) < 1e-8) {
        nv.degenerate = true;
        nv.second = phase_fix(svd.matrixV().col(sv.size() - 2));
    }
    return nv;
}

enum class RefinementPolicy {
    algebraic,  ///< keep λ⁽¹⁾ and the algebraic null spaces (log terms off)
    full        ///< transcendental correction λ⁽²⁾ per mode
};

struct Mode {
    cx lambda1;            ///< algebraic-stage eigenvalue
    cx omega;              ///< retained frequency (λ⁽²⁾ when refined)
    double residual = 0.0; ///< σ_min of the stage-consistent residual matrix
    bool refined = false;
    bool degenerate = false;
    VectorXcd vector;
};

struct ModalSolution {
    std::vector<Mode> modes;      ///< retained: every residual below tolerance
    std::vector<Mode> unrefined;  ///< refinement failures, reported with λ⁽¹⁾
    int n_modes = 0;
    RefinementPolicy policy = RefinementPolicy::full;

    std::vector<cx> omegas() const {
        std::vector<cx> w;
        w.reserve(modes.size());
        for (const auto& m : modes) w.push_back(m.omega);
        return w;
    }
    MatrixXcd vector_rows() const {  ///< 𝕍: row per mode, column per basis index
        MatrixXcd V(static_cast<Eigen::Index>(modes.size()), n_modes);
        for (std::size_t i = 0; i < modes.size(); ++i)
            V.row(static_cast<Eigen::Index>(i)) = modes[i].vector.transpose();
        return V;
    }
};

struct SolveOptions {
    RefinementPolicy policy = RefinementPolicy::full;
    double refine_tol = 1e-8;
    int max_iter = 50;
    double causal_tol = 1e-9;
    double algebraic_residual_tol = 1e-6;  ///< genuine-root verification
    double dedup_tol = 1e-7;
};

/// Full modal pipeline.  Companion eigenvalues are verified against the
/// algebraic residual (which drops the exactly-placed roots the denominator
/// clearing manufactures at each material resonance), filtered to the causal
/// half-plane, deduplicated on the canonical Re ω >= 0 half, optionally
/// refined with deflation, and finally mirrored through the exact spectral
/// symmetry ω ↦ -ω̄; every emitted mode carries its own residual.
inline ModalSolution solve_modes(const BilayerStack& stack, int n_modes,
                                 const SolveOptions& opts = {}) {
    stack.validate();
    const PolynomialMatrix pm = polynomialize(stack, n_modes);
    const PencilSpectrum spec = pencil_eigs(pm, opts.causal_tol);

    std::vector<cx> seeds;
    for (const cx& z : spec.retained) {
        if (z.real() < -opts.causal_tol * (1.0 + std::abs(z))) continue;  // canonical half
        const double res =
            smallest_singular_value(eigen_residual_matrix(z, stack, n_modes, false));
        if (res > opts.algebraic_residual_tol * (1.0 + std::norm(z))) continue;  // spurious
        bool dup = false;
        for (const cx& u : seeds)
            if (std::abs(z - u) < opts.dedup_tol * (1.0 + std::abs(z))) { dup = true; break; }
        if (!dup) seeds.push_back(z);
    }
    std::sort(seeds.begin(), seeds.end(),
              [](const cx& a, const cx& b) { return a.real() != b.real() ? a.real() < b.real()
                                                                         : a.imag() < b.imag(); });

    ModalSolution sol;
    sol.n_modes = n_modes;
    sol.policy = opts.policy;

    std::vector<cx> claimed;
    for (const cx& seed : seeds) {
        Mode mode;
        mode.lambda1 = seed;
        if (opts.policy == RefinementPolicy::algebraic) {
            mode.omega = seed;
            mode.refined = false;
            mode.residual =
                smallest_singular_value(eigen_residual_matrix(seed, stack, n_modes, false));
        } else {
            RefineResult rr = refine_mode(seed, stack, n_modes, opts.refine_tol,
                                          opts.max_iter, claimed);
            const bool fresh =
                rr.converged &&
                rr.lambda2.imag() <= opts.causal_tol * (1.0 + std::abs(rr.lambda2)) &&
                rr.lambda2.real() >= -opts.dedup_tol &&
                std::none_of(claimed.begin(), claimed.end(), [&](const cx& m) {
                    return std::abs(m - rr.lambda2) < opts.dedup_tol * (1.0 + std::abs(m));
                });
            if (fresh) {
                mode.omega = rr.lambda2;
                mode.refined = true;
                mode.residual = rr.residual;
                claimed.push_back(rr.lambda2);
            } else {
                // reported but not retained: residual measured against the
                // full transcendental matrix at the unrefined seed
                mode.omega = seed;
                mode.refined = false;
                mode.residual =
                    smallest_singular_value(eigen_residual_matrix(seed, stack, n_modes));
                sol.unrefined.push_back(mode);
                continue;
            }
        }
        const bool logs = opts.policy == RefinementPolicy::full && mode.refined;
        const NullVector nv = null_vector(mode.omega, stack, n_modes, logs);
        mode.degenerate = nv.degenerate;
        mode.vector = nv.vector;
        sol.modes.push_back(mode);
    }

    // mirror partners -conj(ω) of everything off the imaginary axis
    const std::size_t canonical_count = sol.modes.size();
    for (std::size_t i = 0; i < canonical_count; ++i) {
        const Mode& m = sol.modes[i];
        if (m.omega.real() <= opts.dedup_tol) continue;
        Mode mir;
        mir.lambda1 = -std::conj(m.lambda1);
        mir.omega = -std::conj(m.omega);
        mir.refined = m.refined;
        const bool logs = opts.policy == RefinementPolicy::full;
        mir.residual = smallest_singular_value(
            eigen_residual_matrix(mir.omega, stack, n_modes, logs && m.refined));
        const NullVector nv = null_vector(mir.omega, stack, n_modes, logs && m.refined);
        mir.degenerate = nv.degenerate;
        mir.vector = nv.vector;
        sol.modes.push_back(mir);
    }
    std::sort(sol.modes.begin(), sol.modes.end(), [](const Mode& a, const Mode& b) {
        if (a.omega.real() != b.omega.real()) return a.omega.real() < b.omega.real();
        return a.omega.imag() < b.omega.imag();
    });
    return sol;
}

// ---------------------------------------------------------------------------
// Field reconstruction
// ---------------------------------------------------------------------------

struct FieldReconstruction {
    VectorXd times;   ///< τ in cm (t = τ/c)
    VectorXd x_grid;
    MatrixXcd frames; ///< row per τ
    double projection_residual = 0.0;  ///< ‖c𝕍 - b‖₂ of the least-squares fit
    int rank = 0;
    bool truncated = false;  ///< spectrum-truncated pseudoinverse was used
};

/// Ψ(x,τ) = c·diag(e^{-iω_mτ})·𝕍·Φ(x) with c = b𝕍⁺, 𝕍⁺ = (𝕍†𝕍)⁻¹𝕍†
/// computed through the SVD; condition numbers beyond 1e12 trigger a
/// truncated-spectrum inverse, reported in the result.  The stack supplies
/// the cavity length of the Neumann basis.
inline FieldReconstruction reconstruct_field(const ModalSolution& modes,
                                             const BilayerStack& stack,
                                             const VectorXd& b_init,
                                             const VectorXd& taus,
                                             const VectorXd& x_grid,
                                             unsigned threads = 1) {
    if (modes.modes.empty())
        throw ContractViolation("reconstruct_field: no modes retained");
    if (b_init.size() != modes.n_modes)
        throw ContractViolation("reconstruct_field: b_init length must equal n_modes");

    const MatrixXcd V = modes.vector_rows();  // m x n
    Eigen::JacobiSVD<MatrixXcd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    FieldReconstruction out;
    VectorXd inv = VectorXd::Zero(sv.size());
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > smax * 1e-12) {
            inv(i) = 1.0 / sv(i);
            ++rank;
        } else {
            out.truncated = true;
        }
    }
    out.rank = rank;
    const VectorXcd bc = b_init.cast<cx>();
    const VectorXcd c = svd.matrixU().conjugate() *
                        (inv.cast<cx>().asDiagonal() * (svd.matrixV().transpose() * bc));
    out.projection_residual = ((c.transpose() * V).transpose() - bc).norm();

    const Eigen::Index X = x_grid.size();
    MatrixXcd Phi(modes.n_modes, X);
    for (int n = 0; n < modes.n_modes; ++n)
        for (Eigen::Index xi = 0; xi < X; ++xi)
            Phi(n, xi) = std::sqrt(2.0 / stack.L) *
                         std::cos(em_detail::kappa(n, stack.L) * x_grid(xi));
    const MatrixXcd W = V * Phi;  // m x X, mode profiles on the grid

    const std::vector<cx> omegas = modes.omegas();
    out.times = taus;
    out.x_grid = x_grid;
    out.frames.resize(taus.size(), X);
    parallel_for(static_cast<std::size_t>(taus.size()), threads, [&](std::size_t t) {
        const double tau = taus(static_cast<Eigen::Index>(t));
        VectorXcd weights(static_cast<Eigen::Index>(omegas.size()));
        for (std::size_t m = 0; m < omegas.size(); ++m)
            weights(static_cast<Eigen::Index>(m)) =
                c(static_cast<Eigen::Index>(m)) * std::exp(cx(0.0, -1.0) * omegas[m] * tau);
        out.frames.row(static_cast<Eigen::Index>(t)) = (weights.transpose() * W);
    });
    return out;
}

} // namespace qdaemon
