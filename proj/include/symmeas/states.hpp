#pragma once

#include "symmeas/matcore.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace symmeas {

struct PureState {
    Eigen::Index dA = 0;
    Eigen::Index dB = 0;
    ComplexVector amplitudes;

    void validate() const {
        if (amplitudes.size() != dA * dB)
            throw std::invalid_argument("PureState: amplitude count != dA*dB");
        if (std::abs(amplitudes.norm() - 1.0) > 1e-12)
            throw std::invalid_argument("PureState: not unit norm");
    }
};

struct DensityMatrix {
    Eigen::Index dA = 0;
    Eigen::Index dB = 0;
    ComplexMatrix mat;

    void validate() const {
        require_bipartite(mat, dA, dB, "DensityMatrix");
        if (hermiticity_deviation(mat) > kHermitianTol)
            throw std::invalid_argument("DensityMatrix: not Hermitian");
        if (std::abs(mat.trace() - Complex(1.0)) > kHermitianTol)
            throw std::invalid_argument("DensityMatrix: trace != 1");
        if (min_eigenvalue(mat) < -kHermitianTol)
            throw std::invalid_argument("DensityMatrix: negative eigenvalue");
    }
};

inline ComplexVector max_entangled_ket(Eigen::Index d) {
    ComplexVector psi = ComplexVector::Zero(d * d);
    for (Eigen::Index i = 0; i < d; ++i) psi(i * d + i) = 1.0 / std::sqrt(double(d));
    return psi;
}

/// Isotropic state rho_f = v |Psi+><Psi+| + (1-v) I/d^2, v = (d^2 f - 1)/(d^2 - 1).
inline DensityMatrix isotropic(Eigen::Index d, double f) {
    if (f < 0 || f > 1) throw std::invalid_argument("isotropic: f must lie in [0,1]");
    const double v = (double(d * d) * f - 1) / double(d * d - 1);
    ComplexVector psi = max_entangled_ket(d);
    DensityMatrix rho{d, d,
                      v * (psi * psi.adjoint()) +
                          (1 - v) / double(d * d) * ComplexMatrix::Identity(d * d, d * d)};
    rho.validate();
    return rho;
}

/// The 3x3 Tiles UPB state: rho = (I - sum_i |psi_i><psi_i|)/4, rank 4, PPT entangled.
/// The stopper vector is (|0>+|1>+|2>)(|0>+|1>+|2>)/3.
inline DensityMatrix tiles_state() {
    auto e = [](int i) {
        ComplexVector v = ComplexVector::Zero(3);
        v(i) = 1;
        return v;
    };
    auto prod = [](const ComplexVector& a, const ComplexVector& b) {
        ComplexVector out(9);
        for (Eigen::Index i = 0; i < 3; ++i)
            for (Eigen::Index j = 0; j < 3; ++j) out(i * 3 + j) = a(i) * b(j);
        return ComplexVector(out / out.norm());
    };
    const ComplexVector all = e(0) + e(1) + e(2);
    const std::array<ComplexVector, 5> upb = {
        prod(e(0), e(0) - e(1)), prod(e(0) - e(1), e(2)), prod(e(2), e(1) - e(2)),
        prod(e(1) - e(2), e(0)), prod(all, all)};
    ComplexMatrix m = ComplexMatrix::Identity(9, 9);
    for (const auto& v : upb) m -= v * v.adjoint();
    DensityMatrix rho{3, 3, m / 4.0};
    rho.validate();
    return rho;
}

/// The 3x3 Horodecki bound entangled family, normalized by 1/(1+8 tau).
/// The (8,8) diagonal entry is tau/(1+8 tau), restoring unit trace.
inline DensityMatrix horodecki_state(double tau) {
    if (tau <= 0 || tau >= 1) throw std::invalid_argument("horodecki_state: tau must lie in (0,1)");
    ComplexMatrix m = ComplexMatrix::Zero(9, 9);
    for (Eigen::Index i : {0, 1, 2, 3, 4, 5, 7}) m(i, i) = tau;
    for (Eigen::Index i : {0, 4, 8})
        for (Eigen::Index j : {0, 4, 8}) m(i, j) = tau;
    m(6, 6) = m(8, 8) = (1 + tau) / 2;
    m(6, 8) = m(8, 6) = std::sqrt(1 - tau * tau) / 2;
    DensityMatrix rho{3, 3, m / (1 + 8 * tau)};
    rho.validate();
    return rho;
}

/// 4x4 diagonal-pattern family with corner coherences q1/4 on the
/// {|00>,|11>,|22>,|33>} block.
inline DensityMatrix corners_state(const std::array<double, 4>& q) {
    double sum = 0;
    for (double qi : q) {
        if (qi < 0) throw std::invalid_argument("corners_state: q components must be >= 0");
        sum += qi;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("corners_state: q must sum to 1");
    // Diagonal runs q1,q4,q3,q2 cyclically shifted per 4-row band.
    const std::array<int, 16> pattern = {0, 3, 2, 1, 1, 0, 3, 2, 2, 1, 0, 3, 3, 2, 1, 0};
    ComplexMatrix m = ComplexMatrix::Zero(16, 16);
    for (Eigen::Index i = 0; i < 16; ++i) m(i, i) = q[std::size_t(pattern[std::size_t(i)])] / 4;
    for (Eigen::Index i : {0, 5, 10, 15})
        for (Eigen::Index j : {0, 5, 10, 15})
            if (i != j) m(i, j) += q[0] / 4;
    DensityMatrix rho{4, 4, m};
    rho.validate();
    return rho;
}

/// rho_p = (1-p) I/(dA dB) + p rho.
inline DensityMatrix mix_white_noise(const DensityMatrix& rho, double p) {
    if (p < 0 || p > 1) throw std::invalid_argument("mix_white_noise: p must lie in [0,1]");
    const Eigen::Index dim = rho.dA * rho.dB;
    return DensityMatrix{rho.dA, rho.dB,
                         (1 - p) / double(dim) * ComplexMatrix::Identity(dim, dim) + p * rho.mat};
}

/// Haar-ish pure state from a normalized complex Gaussian vector; deterministic per seed.
inline PureState random_pure(Eigen::Index dA, Eigen::Index dB, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector v(dA * dB);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(gauss(rng), gauss(rng));
    PureState psi{dA, dB, v / v.norm()};
    psi.validate();
    return psi;
}

inline DensityMatrix density_of(const PureState& psi) {
    return DensityMatrix{psi.dA, psi.dB, psi.amplitudes * psi.amplitudes.adjoint()};
}

/// Product of two random single-system pure density matrices.
inline DensityMatrix random_product(Eigen::Index dA, Eigen::Index dB, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto pure = [&](Eigen::Index d) {
        ComplexVector v(d);
        for (Eigen::Index i = 0; i < d; ++i) v(i) = Complex(gauss(rng), gauss(rng));
        v /= v.norm();
        return ComplexMatrix(v * v.adjoint());
    };
    ComplexMatrix a = pure(dA);
    ComplexMatrix b = pure(dB);
    return DensityMatrix{dA, dB, kron(a, b)};
}

}  // namespace symmeas
