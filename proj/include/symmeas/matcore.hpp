#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace symmeas {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-10;

inline void require_square(const ComplexMatrix& m, const char* who) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(who) + ": matrix must be square, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

inline void require_bipartite(const ComplexMatrix& rho, Eigen::Index dA, Eigen::Index dB,
                              const char* who) {
    require_square(rho, who);
    if (rho.rows() != dA * dB) {
        throw std::invalid_argument(std::string(who) + ": expected " + std::to_string(dA * dB) +
                                    "-dimensional matrix for " + std::to_string(dA) + "x" +
                                    std::to_string(dB) + " bipartition, got " +
                                    std::to_string(rho.rows()));
    }
}

inline double hermiticity_deviation(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol) {
    return m.rows() == m.cols() && hermiticity_deviation(m) <= tol;
}

/// (M + M†)/2, used before every eigensolve to suppress roundoff.
inline ComplexMatrix symmetrize(const ComplexMatrix& m) {
    return 0.5 * (m + m.adjoint());
}

/// Trace norm (nuclear norm): sum of singular values, via full SVD.
inline double trace_norm(const ComplexMatrix& m) {
    require_square(m, "trace_norm");
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues().sum();
}

/// Kronecker product with a's indices major.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

enum class Subsystem { first, second };

/// Partial trace of a (dA*dB)x(dA*dB) operator over the discarded subsystem.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem keep, Eigen::Index dA,
                                   Eigen::Index dB) {
    require_bipartite(rho, dA, dB, "partial_trace");
    if (keep == Subsystem::first) {
        ComplexMatrix out = ComplexMatrix::Zero(dA, dA);
        for (Eigen::Index i = 0; i < dA; ++i)
            for (Eigen::Index j = 0; j < dA; ++j)
                for (Eigen::Index k = 0; k < dB; ++k)
                    out(i, j) += rho(i * dB + k, j * dB + k);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(dB, dB);
    for (Eigen::Index k = 0; k < dB; ++k)
        for (Eigen::Index l = 0; l < dB; ++l)
            for (Eigen::Index i = 0; i < dA; ++i)
                out(k, l) += rho(i * dB + k, i * dB + l);
    return out;
}

/// Realignment map: R(rho)(i*dA+j, k*dB+l) = <i|<k| rho |j>|l>.
inline ComplexMatrix realign(const ComplexMatrix& rho, Eigen::Index dA, Eigen::Index dB) {
    require_bipartite(rho, dA, dB, "realign");
    ComplexMatrix out(dA * dA, dB * dB);
    for (Eigen::Index i = 0; i < dA; ++i)
        for (Eigen::Index j = 0; j < dA; ++j)
            for (Eigen::Index k = 0; k < dB; ++k)
                for (Eigen::Index l = 0; l < dB; ++l)
                    out(i * dA + j, k * dB + l) = rho(i * dB + k, j * dB + l);
    return out;
}

/// Partial transpose on the second subsystem.
inline ComplexMatrix partial_transpose(const ComplexMatrix& rho, Eigen::Index dA,
                                       Eigen::Index dB) {
    require_bipartite(rho, dA, dB, "partial_transpose");
    ComplexMatrix out(dA * dB, dA * dB);
    for (Eigen::Index i = 0; i < dA; ++i)
        for (Eigen::Index j = 0; j < dA; ++j)
            for (Eigen::Index k = 0; k < dB; ++k)
                for (Eigen::Index l = 0; l < dB; ++l)
                    out(i * dB + l, j * dB + k) = rho(i * dB + k, j * dB + l);
    return out;
}

inline Eigen::VectorXd eigenvalues_hermitian(const ComplexMatrix& h) {
    require_square(h, "eigenvalues_hermitian");
    if (!is_hermitian(h)) {
        throw std::invalid_argument("eigenvalues_hermitian: input deviates from Hermitian by " +
                                    std::to_string(hermiticity_deviation(h)));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(symmetrize(h),
                                                    Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

/// (algebraic-min, algebraic-max) eigenvalue of a Hermitian operator.
inline std::pair<double, double> eig_range_hermitian(const ComplexMatrix& h) {
    Eigen::VectorXd ev = eigenvalues_hermitian(h);
    return {ev.minCoeff(), ev.maxCoeff()};
}

inline double min_eigenvalue(const ComplexMatrix& h) {
    return eigenvalues_hermitian(h).minCoeff();
}

}  // namespace symmeas
