#pragma once

#include "symmeas/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace symmeas {

// ---------------------------------------------------------------------------
// Hermitian operator basis
// ---------------------------------------------------------------------------

/// Orthonormal Hermitian basis of d x d operators: identity component
/// I/sqrt(d) plus d^2-1 traceless operators.
struct HermitianBasis {
    Eigen::Index dim = 0;
    ComplexMatrix identity_component;
    std::vector<ComplexMatrix> traceless_ops;
};

/// Generalized Gell-Mann basis in canonical order: for each pair i<j
/// (lexicographic) the symmetric then antisymmetric operator, then the
/// d-1 diagonal operators diag(1,..,1,-k,0,..)/sqrt(k(k+1)).
inline HermitianBasis gell_mann_basis(Eigen::Index d) {
    if (d < 2) throw std::invalid_argument("gell_mann_basis: d must be >= 2");
    HermitianBasis basis;
    basis.dim = d;
    basis.identity_component = ComplexMatrix::Identity(d, d) / std::sqrt(double(d));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j) {
            ComplexMatrix sym = ComplexMatrix::Zero(d, d);
            sym(i, j) = sym(j, i) = inv_sqrt2;
            basis.traceless_ops.push_back(sym);
            ComplexMatrix anti = ComplexMatrix::Zero(d, d);
            anti(i, j) = Complex(0, -inv_sqrt2);
            anti(j, i) = Complex(0, inv_sqrt2);
            basis.traceless_ops.push_back(anti);
        }
    }
    for (Eigen::Index k = 1; k < d; ++k) {
        ComplexMatrix diag = ComplexMatrix::Zero(d, d);
        const double norm = 1.0 / std::sqrt(double(k) * double(k + 1));
        for (Eigen::Index m = 0; m < k; ++m) diag(m, m) = norm;
        diag(k, k) = -double(k) * norm;
        basis.traceless_ops.push_back(diag);
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Grouping of basis operators into N groups of M-1
// ---------------------------------------------------------------------------

struct Grouping {
    Eigen::Index dim = 0;
    Eigen::Index N = 0;
    Eigen::Index M = 0;
    std::vector<std::vector<std::size_t>> assignment;  // N groups of M-1 indices

    void validate() const {
        if (N * (M - 1) != dim * dim - 1) {
            throw std::invalid_argument("Grouping: N(M-1) = " + std::to_string(N * (M - 1)) +
                                        " != d^2-1 = " + std::to_string(dim * dim - 1) +
                                        " (not informationally complete)");
        }
        if (Eigen::Index(assignment.size()) != N)
            throw std::invalid_argument("Grouping: wrong number of groups");
        std::vector<bool> seen(std::size_t(dim * dim - 1), false);
        for (const auto& g : assignment) {
            if (Eigen::Index(g.size()) != M - 1)
                throw std::invalid_argument("Grouping: group size must be M-1");
            for (std::size_t idx : g) {
                if (idx >= seen.size() || seen[idx])
                    throw std::invalid_argument("Grouping: index " + std::to_string(idx) +
                                                " out of range or repeated");
                seen[idx] = true;
            }
        }
    }
};

/// Groups filled sequentially from the canonical basis order.
inline Grouping canonical_grouping(Eigen::Index d, Eigen::Index N, Eigen::Index M) {
    Grouping g{d, N, M, {}};
    std::size_t idx = 0;
    for (Eigen::Index a = 0; a < N; ++a) {
        std::vector<std::size_t> group;
        for (Eigen::Index k = 0; k + 1 < M; ++k) group.push_back(idx++);
        g.assignment.push_back(std::move(group));
    }
    g.validate();
    return g;
}

/// Named presets: "canonical" (requires N, M), "paper-ex1" = d=3 (8,2) in the
/// listing order of the 3x3 Gell-Mann matrices, "paper-ex4" = d=4 (5,4) with
/// the five explicitly listed groups.
inline Grouping grouping_preset(const std::string& name, Eigen::Index d, Eigen::Index N = 0,
                                Eigen::Index M = 0) {
    if (name == "paper-ex1") {
        if (d != 0 && d != 3) throw std::invalid_argument("preset paper-ex1 requires d=3");
        return canonical_grouping(3, 8, 2);  // listing order equals canonical order
    }
    if (name == "paper-ex4") {
        if (d != 0 && d != 4) throw std::invalid_argument("preset paper-ex4 requires d=4");
        Grouping g{4, 5, 4,
                   {{1, 3, 5}, {0, 7, 9}, {2, 6, 11}, {4, 8, 10}, {12, 13, 14}}};
        g.validate();
        return g;
    }
    if (name == "canonical") {
        if (N <= 0 || M <= 1)
            throw std::invalid_argument("preset canonical requires N and M");
        return canonical_grouping(d, N, M);
    }
    throw std::invalid_argument("unknown grouping preset: " + name);
}

// ---------------------------------------------------------------------------
// (N,M)-POVM
// ---------------------------------------------------------------------------

struct SymmetricPovm {
    Eigen::Index dim = 0;
    Eigen::Index N = 0;
    Eigen::Index M = 0;
    double t = std::numeric_limits<double>::quiet_NaN();  // NaN for SIC projectors
    double x = 0;
    std::vector<std::vector<ComplexMatrix>> effects;  // [alpha][k]
    Grouping grouping;

    const ComplexMatrix& effect(Eigen::Index alpha, Eigen::Index k) const {
        return effects[std::size_t(alpha)][std::size_t(k)];
    }
};

/// Purity parameter x as a function of t: x = d/M^2 + t^2 (M-1)(sqrt(M)+1)^2.
inline double x_of_t(Eigen::Index d, Eigen::Index M, double t) {
    const double sm = std::sqrt(double(M));
    return double(d) / double(M * M) + t * t * double(M - 1) * (sm + 1) * (sm + 1);
}

namespace detail {

/// The H operators of one group: H_k = G - sqrt(M)(sqrt(M)+1) G_k for k<M,
/// H_M = (sqrt(M)+1) G, with G the group sum.
inline std::vector<ComplexMatrix> group_generators(const HermitianBasis& basis,
                                                   const std::vector<std::size_t>& group,
                                                   Eigen::Index M) {
    const Eigen::Index d = basis.dim;
    ComplexMatrix G = ComplexMatrix::Zero(d, d);
    for (std::size_t idx : group) G += basis.traceless_ops[idx];
    const double sm = std::sqrt(double(M));
    std::vector<ComplexMatrix> hs;
    hs.reserve(std::size_t(M));
    for (std::size_t idx : group) hs.push_back(G - sm * (sm + 1) * basis.traceless_ops[idx]);
    hs.push_back((sm + 1) * G);
    return hs;
}

}  // namespace detail

/// Admissible t interval [-1/(M lambda_max), 1/(M |lambda_min|)], extrema
/// taken over the H operators of every group.
inline std::pair<double, double> t_range(const HermitianBasis& basis, const Grouping& grouping) {
    grouping.validate();
    double lmax = -std::numeric_limits<double>::infinity();
    double lmin = std::numeric_limits<double>::infinity();
    for (const auto& group : grouping.assignment) {
        for (const auto& h : detail::group_generators(basis, group, grouping.M)) {
            auto [lo, hi] = eig_range_hermitian(h);
            lmin = std::min(lmin, lo);
            lmax = std::max(lmax, hi);
        }
    }
    return {-1.0 / (double(grouping.M) * lmax), 1.0 / (double(grouping.M) * std::abs(lmin))};
}

/// E_{alpha,k} = I/M + t H_{alpha,k}. Throws if any effect fails positivity.
inline SymmetricPovm build_nm_povm(const HermitianBasis& basis, const Grouping& grouping,
                                   double t) {
    grouping.validate();
    if (basis.dim != grouping.dim)
        throw std::invalid_argument("build_nm_povm: basis/grouping dimension mismatch");
    const Eigen::Index d = basis.dim, M = grouping.M;
    SymmetricPovm povm;
    povm.dim = d;
    povm.N = grouping.N;
    povm.M = M;
    povm.t = t;
    povm.x = x_of_t(d, M, t);
    povm.grouping = grouping;
    const ComplexMatrix id_over_M = ComplexMatrix::Identity(d, d) / double(M);
    for (Eigen::Index a = 0; a < grouping.N; ++a) {
        std::vector<ComplexMatrix> row;
        auto hs = detail::group_generators(basis, grouping.assignment[std::size_t(a)], M);
        for (Eigen::Index k = 0; k < M; ++k) {
            ComplexMatrix e = id_over_M + t * hs[std::size_t(k)];
            if (min_eigenvalue(e) < -kHermitianTol) {
                auto [lo, hi] = t_range(basis, grouping);
                throw std::domain_error(
                    "build_nm_povm: effect (alpha=" + std::to_string(a + 1) +
                    ", k=" + std::to_string(k + 1) + ") not positive at t=" + std::to_string(t) +
                    "; admissible t in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
            }
            row.push_back(std::move(e));
        }
        povm.effects.push_back(std::move(row));
    }
    return povm;
}

/// GSIC POVM (N=1, M=d^2) with purity x, via the canonical Gell-Mann basis.
inline SymmetricPovm gsic_from_x(Eigen::Index d, double x) {
    const Eigen::Index M = d * d;
    const double x_lo = double(d) / double(M * M);
    const double x_hi = 1.0 / double(d * d);
    if (x <= x_lo + 1e-12 || x > x_hi + 1e-12) {
        throw std::domain_error("gsic_from_x: x=" + std::to_string(x) + " outside (" +
                                std::to_string(x_lo) + ", " + std::to_string(x_hi) + "]");
    }
    const double sm = std::sqrt(double(M));
    const double t = std::sqrt((x - x_lo) / (double(M - 1) * (sm + 1) * (sm + 1)));
    return build_nm_povm(gell_mann_basis(d), canonical_grouping(d, 1, M), t);
}

// ---------------------------------------------------------------------------
// SIC projectors (Weyl-Heisenberg orbit, d in {2,3})
// ---------------------------------------------------------------------------

/// d^2 rank-1 projectors with tr(Pi_k Pi_l) = (d delta_kl + 1)/(d+1).
inline std::vector<ComplexMatrix> sic_projectors(Eigen::Index d) {
    ComplexVector fiducial(d);
    if (d == 2) {
        // Bloch vector (1,1,1)/sqrt(3)
        const double r3 = 1.0 / std::sqrt(3.0);
        const double c = std::sqrt((1 + r3) / 2);
        fiducial << Complex(c, 0), Complex(r3, r3) / (2 * c);
    } else if (d == 3) {
        fiducial << Complex(0, 0), Complex(1, 0) / std::sqrt(2.0),
            Complex(-1, 0) / std::sqrt(2.0);
    } else {
        throw std::invalid_argument("sic_projectors: only d in {2,3} supported");
    }
    ComplexMatrix shift = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) shift((i + 1) % d, i) = 1;
    ComplexMatrix clock = ComplexMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k)
        clock(k, k) = std::polar(1.0, 2 * std::numbers::pi * double(k) / double(d));
    std::vector<ComplexMatrix> projectors;
    ComplexMatrix xa = ComplexMatrix::Identity(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        ComplexMatrix disp = xa;
        for (Eigen::Index b = 0; b < d; ++b) {
            ComplexVector v = disp * fiducial;
            projectors.push_back(v * v.adjoint());
            disp = disp * clock;
        }
        xa = shift * xa;
    }
    return projectors;
}

/// The SIC POVM {Pi_k/d} packaged as an N=1, M=d^2 symmetric POVM (x=1/d^2).
inline SymmetricPovm sic_povm(Eigen::Index d) {
    auto projectors = sic_projectors(d);
    SymmetricPovm povm;
    povm.dim = d;
    povm.N = 1;
    povm.M = d * d;
    povm.x = 1.0 / double(d * d);
    povm.grouping = Grouping{d, 1, d * d, {}};
    povm.effects.emplace_back();
    for (auto& p : projectors) povm.effects[0].push_back(p / double(d));
    return povm;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// Max absolute deviations from each defining condition; never throws.
struct PovmReport {
    double dev_single_trace = 0;   // tr(E) = d/M
    double dev_purity = 0;         // tr(E^2) = x
    double dev_intra_overlap = 0;  // tr(E_ak E_al) = (d-Mx)/(M(M-1))
    double dev_cross_overlap = 0;  // tr(E_ak E_bl) = d/M^2
    double dev_completeness = 0;   // sum_k E_ak = I
    double positivity_margin = 0;  // min eigenvalue over all effects
    double dev_design = 0;         // conical 2-design identity residual

    double max_deviation() const {
        return std::max({dev_single_trace, dev_purity, dev_intra_overlap, dev_cross_overlap,
                         dev_completeness, std::max(0.0, -positivity_margin), dev_design});
    }
    bool passes(double tol = kHermitianTol) const { return max_deviation() <= tol; }
};

inline PovmReport validate_povm(const SymmetricPovm& p) {
    const Eigen::Index d = p.dim, N = p.N, M = p.M;
    PovmReport r;
    r.positivity_margin = std::numeric_limits<double>::infinity();
    const double intra = M > 1 ? (double(d) - double(M) * p.x) / double(M * (M - 1)) : 0.0;
    const double cross = double(d) / double(M * M);
    for (Eigen::Index a = 0; a < N; ++a) {
        ComplexMatrix sum = ComplexMatrix::Zero(d, d);
        for (Eigen::Index k = 0; k < M; ++k) {
            const ComplexMatrix& e = p.effect(a, k);
            sum += e;
            r.dev_single_trace =
                std::max(r.dev_single_trace, std::abs(e.trace() - Complex(double(d) / double(M))));
            r.positivity_margin = std::min(r.positivity_margin, min_eigenvalue(e));
            for (Eigen::Index b = a; b < N; ++b) {
                for (Eigen::Index l = (b == a ? k : Eigen::Index(0)); l < M; ++l) {
                    const double overlap = (e * p.effect(b, l)).trace().real();
                    if (b == a && l == k)
                        r.dev_purity = std::max(r.dev_purity, std::abs(overlap - p.x));
                    else if (b == a)
                        r.dev_intra_overlap = std::max(r.dev_intra_overlap, std::abs(overlap - intra));
                    else
                        r.dev_cross_overlap = std::max(r.dev_cross_overlap, std::abs(overlap - cross));
                }
            }
        }
        r.dev_completeness = std::max(
            r.dev_completeness, (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
    }
    // sum_{a,k} E (x) E = (xM^2-d)/(M(M-1)) F + (d^3-xM^2)/(dM(M-1)) I
    ComplexMatrix second_moment = ComplexMatrix::Zero(d * d, d * d);
    for (Eigen::Index a = 0; a < N; ++a)
        for (Eigen::Index k = 0; k < M; ++k)
            second_moment += kron(p.effect(a, k), p.effect(a, k));
    ComplexMatrix swap = ComplexMatrix::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1;
    const double cf = (p.x * double(M * M) - double(d)) / double(M * (M - 1));
    const double ci = (double(d * d * d) - p.x * double(M * M)) / double(d * M * (M - 1));
    r.dev_design = (second_moment - cf * swap -
                    ci * ComplexMatrix::Identity(d * d, d * d))
                       .cwiseAbs()
                       .maxCoeff();
    return r;
}

}  // namespace symmeas
