#pragma once

#include "symmeas/matcore.hpp"
#include "symmeas/povm.hpp"
#include "symmeas/states.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace symmeas {

// ---------------------------------------------------------------------------
// Probability matrix P(rho)
// ---------------------------------------------------------------------------

/// Real NM x NM matrix with entries tr(rho (E_{alpha,k} (x) E_{beta,l})),
/// rows/columns flattened alpha-major.
struct ProbabilityMatrix {
    Eigen::Index N = 0;
    Eigen::Index M = 0;
    Eigen::MatrixXd entries;

    double trace_norm() const {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(entries);
        return svd.singularValues().sum();
    }
};

/// P(rho) via the realignment identity: tr(rho (A (x) B)) = a^T R(rho) b with
/// a[(i,i')] = A(i',i). Scale factors implement the corollaries' rescaled
/// effects without mutating the POVM.
inline ProbabilityMatrix probability_matrix(const DensityMatrix& rho,
                                            const SymmetricPovm& povm_a,
                                            const SymmetricPovm& povm_b, double scale_a = 1.0,
                                            double scale_b = 1.0) {
    if (rho.dA != povm_a.dim || rho.dB != povm_b.dim)
        throw std::invalid_argument("probability_matrix: state/POVM dimension mismatch");
    if (povm_a.N != povm_b.N || povm_a.M != povm_b.M)
        throw std::invalid_argument("probability_matrix: POVMs must share (N,M)");
    const Eigen::Index d = rho.dA, N = povm_a.N, M = povm_a.M, NM = N * M;

    auto flatten = [d](const SymmetricPovm& p, double scale) {
        ComplexMatrix rows(p.N * p.M, d * d);
        for (Eigen::Index a = 0; a < p.N; ++a)
            for (Eigen::Index k = 0; k < p.M; ++k)
                for (Eigen::Index i = 0; i < d; ++i)
                    for (Eigen::Index ip = 0; ip < d; ++ip)
                        rows(a * p.M + k, i * d + ip) = scale * p.effect(a, k)(ip, i);
        return rows;
    };
    ComplexMatrix P =
        flatten(povm_a, scale_a) * realign(rho.mat, d, d) * flatten(povm_b, scale_b).transpose();
    const double imag_residue = P.imag().cwiseAbs().maxCoeff();
    if (imag_residue > 1e-12)
        throw std::runtime_error("probability_matrix: imaginary residue " +
                                 std::to_string(imag_residue) + " exceeds 1e-12");
    return ProbabilityMatrix{N, M, P.real()};
}

// ---------------------------------------------------------------------------
// Bound reports
// ---------------------------------------------------------------------------

struct BoundReport {
    double trace_norm_P = 0;
    double threshold = 0;
    double bound_raw = 0;
    double bound = 0;  // max(0, bound_raw)
    std::string method;
    Eigen::Index d = 0;
    Eigen::Index N = 0;
    Eigen::Index M = 0;
    double x = std::numeric_limits<double>::quiet_NaN();
    double t = std::numeric_limits<double>::quiet_NaN();
};

/// Separable ceiling (d-1)(xM^2+d^2)/(dM(M-1)) on the trace norm of P(rho).
inline double separability_threshold(Eigen::Index d, Eigen::Index /*N*/, Eigen::Index M,
                                     double x) {
    return double(d - 1) * (x * double(M * M) + double(d * d)) / double(d * M * (M - 1));
}

/// Concurrence lower bound from an informationally complete (N,M)-POVM:
/// C >= M(M-1)/(xM^2-d) sqrt(2/(d(d-1))) (||P||_tr - threshold).
inline BoundReport nm_bound(const DensityMatrix& rho, const SymmetricPovm& povm) {
    const Eigen::Index d = povm.dim, M = povm.M;
    if (rho.dA != rho.dB || rho.dA != d)
        throw std::invalid_argument("nm_bound: state must be d x d with d = povm.dim");
    if (povm.x <= double(d) / double(M * M) + 1e-12)
        throw std::domain_error("nm_bound: x too close to d/M^2, coefficient diverges");
    BoundReport r;
    r.method = "nm";
    r.d = d;
    r.N = povm.N;
    r.M = M;
    r.x = povm.x;
    r.t = povm.t;
    r.trace_norm_P = probability_matrix(rho, povm, povm).trace_norm();
    r.threshold = separability_threshold(d, povm.N, M, povm.x);
    const double coeff = double(M * (M - 1)) / (povm.x * double(M * M) - double(d)) *
                         std::sqrt(2.0 / double(d * (d - 1)));
    r.bound_raw = coeff * (r.trace_norm_P - r.threshold);
    r.bound = std::max(0.0, r.bound_raw);
    return r;
}

/// GSIC-based bound with rescaled effects E_k = sqrt(d(d+1)/(xd^2+1)) P_k.
/// At x = 1/d^2 the Gell-Mann construction cannot reach the required purity
/// for d in {2,3}; the rank-1 SIC realization is used there instead.
inline BoundReport gsic_bound(const DensityMatrix& rho, Eigen::Index d, double x) {
    SymmetricPovm povm = [&] {
        try {
            return gsic_from_x(d, x);
        } catch (const std::domain_error&) {
            if ((d == 2 || d == 3) && std::abs(x - 1.0 / double(d * d)) < 1e-12)
                return sic_povm(d);
            throw;
        }
    }();
    const double dd = double(d);
    const double scale = std::sqrt(dd * (dd + 1) / (x * dd * dd + 1));
    BoundReport r;
    r.method = "gsic";
    r.d = d;
    r.N = 1;
    r.M = d * d;
    r.x = x;
    r.t = povm.t;
    r.trace_norm_P = probability_matrix(rho, povm, povm, scale, scale).trace_norm();
    r.threshold = (x * dd * dd * dd - 1 + dd * (1 - x * dd)) / ((dd - 1) * (x * dd * dd + 1));
    const double coeff =
        (dd - 1) * (x * dd * dd + 1) / (x * dd * dd * dd - 1) * std::sqrt(2.0 / (dd * (dd - 1)));
    r.bound_raw = coeff * (r.trace_norm_P - r.threshold);
    r.bound = std::max(0.0, r.bound_raw);
    return r;
}

/// SIC-projector bound: E_k = sqrt((d+1)/(2d)) Pi_k, C >= 2 sqrt(2/(d(d-1))) (||P||_tr - 1).
inline BoundReport sic_bound(const DensityMatrix& rho, Eigen::Index d) {
    SymmetricPovm povm = sic_povm(d);
    const double dd = double(d);
    // stored effects are Pi_k/d
    const double scale = dd * std::sqrt((dd + 1) / (2 * dd));
    BoundReport r;
    r.method = "sic";
    r.d = d;
    r.N = 1;
    r.M = d * d;
    r.x = 1.0 / (dd * dd);
    r.trace_norm_P = probability_matrix(rho, povm, povm, scale, scale).trace_norm();
    r.threshold = 1.0;
    r.bound_raw = 2 * std::sqrt(2.0 / (dd * (dd - 1))) * (r.trace_norm_P - 1);
    r.bound = std::max(0.0, r.bound_raw);
    return r;
}

/// Realignment criterion bound: C >= sqrt(2/(d(d-1))) (||R(rho)||_tr - 1).
inline BoundReport realignment_bound(const DensityMatrix& rho) {
    if (rho.dA != rho.dB)
        throw std::invalid_argument("realignment_bound: requires a d x d bipartition");
    const double dd = double(rho.dA);
    BoundReport r;
    r.method = "realignment";
    r.d = rho.dA;
    r.trace_norm_P = trace_norm(realign(rho.mat, rho.dA, rho.dB));
    r.threshold = 1.0;
    r.bound_raw = std::sqrt(2.0 / (dd * (dd - 1))) * (r.trace_norm_P - 1);
    r.bound = std::max(0.0, r.bound_raw);
    return r;
}

// ---------------------------------------------------------------------------
// Exact concurrence references
// ---------------------------------------------------------------------------

/// C(|psi>) = sqrt(2 (1 - tr(rho_1^2))).
inline double exact_concurrence_pure(const PureState& psi) {
    psi.validate();
    ComplexMatrix rho1 =
        partial_trace(psi.amplitudes * psi.amplitudes.adjoint(), Subsystem::first, psi.dA, psi.dB);
    const double purity = (rho1 * rho1).trace().real();
    return std::sqrt(std::max(0.0, 2 * (1 - purity)));
}

/// Closed-form isotropic concurrence: sqrt(2/(d(d-1))) (df - 1) for f > 1/d, else 0.
inline double exact_concurrence_isotropic(Eigen::Index d, double f) {
    if (f < 0 || f > 1) throw std::invalid_argument("exact_concurrence_isotropic: f in [0,1]");
    return std::max(0.0, std::sqrt(2.0 / double(d * (d - 1))) * (double(d) * f - 1));
}

/// Signed gap between the POVM-side and realignment-side of the conjectured
/// inequality M(M-1)/(xM^2-d) (||P||_tr - threshold) >= ||R||_tr - 1.
/// Positive values support the conjecture; reporting only.
inline double conjecture_gap(const DensityMatrix& rho, const SymmetricPovm& povm) {
    BoundReport nm = nm_bound(rho, povm);
    const double povm_side = double(povm.M * (povm.M - 1)) /
                             (povm.x * double(povm.M * povm.M) - double(povm.dim)) *
                             (nm.trace_norm_P - nm.threshold);
    const double realign_side = trace_norm(realign(rho.mat, rho.dA, rho.dB)) - 1;
    return povm_side - realign_side;
}

}  // namespace symmeas
