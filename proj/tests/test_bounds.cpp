#include "symmeas/bounds.hpp"
#include "symmeas/sweep.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>

using namespace symmeas;

namespace {

SymmetricPovm paper_ex1_povm(double t = 0.01) {
    return build_nm_povm(gell_mann_basis(3), grouping_preset("paper-ex1", 3), t);
}

/// Mixed state from a few random pure components.
DensityMatrix random_mixed(Eigen::Index d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
    double total = 0;
    for (int i = 0; i < 4; ++i) {
        const double w = unif(rng);
        auto psi = random_pure(d, d, seed * 131 + std::uint64_t(i));
        m += w * (psi.amplitudes * psi.amplitudes.adjoint());
        total += w;
    }
    return DensityMatrix{d, d, m / total};
}

}  // namespace

TEST_CASE("probability_matrix agrees with the direct Kronecker oracle") {
    auto povm = paper_ex1_povm();
    auto rho = random_mixed(3, 5);
    auto P = probability_matrix(rho, povm, povm);
    REQUIRE(P.entries.rows() == 16);
    for (Eigen::Index a = 0; a < 8; ++a)
        for (Eigen::Index k = 0; k < 2; ++k)
            for (Eigen::Index b = 0; b < 8; ++b)
                for (Eigen::Index l = 0; l < 2; ++l) {
                    const Complex direct =
                        (rho.mat * kron(povm.effect(a, k), povm.effect(b, l))).trace();
                    CHECK(std::abs(P.entries(a * 2 + k, b * 2 + l) - direct.real()) < 1e-13);
                    CHECK(std::abs(direct.imag()) < 1e-13);
                }
}

TEST_CASE("probability_matrix of the maximally mixed state is constant 1/M^2") {
    auto povm = paper_ex1_povm();
    auto rho = isotropic(3, 1.0 / 9.0);
    auto P = probability_matrix(rho, povm, povm);
    CHECK((P.entries.array() - 0.25).abs().maxCoeff() < 1e-14);
}

TEST_CASE("probability entries are nonnegative and blocks sum to one") {
    auto povm = paper_ex1_povm();
    for (std::uint64_t seed : {1, 2, 3}) {
        auto P = probability_matrix(random_mixed(3, seed), povm, povm);
        CHECK(P.entries.minCoeff() > -1e-12);
        CHECK(std::abs(P.entries.sum() - double(povm.N * povm.N)) < 1e-9);
        for (Eigen::Index a = 0; a < povm.N; ++a)
            for (Eigen::Index b = 0; b < povm.N; ++b)
                CHECK(std::abs(P.entries.block(a * povm.M, b * povm.M, povm.M, povm.M).sum() -
                               1.0) < 1e-10);
    }
}

TEST_CASE("isotropic trace norm matches the closed form for v >= 0") {
    auto povm = paper_ex1_povm();
    const Eigen::Index N = povm.N, M = povm.M, d = 3;
    for (double f : {1.0 / 9.0, 0.2, 0.5, 0.8, 1.0}) {
        const double v = (double(d * d) * f - 1) / double(d * d - 1);
        auto P = probability_matrix(isotropic(d, f), povm, povm);
        const double expected = double(N) / double(M) +
                                v * double(N) * (povm.x * double(M * M) - d) / double(d * M);
        CHECK(P.trace_norm() == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("nm_bound reproduces the tiles headline value") {
    auto report = nm_bound(tiles_state(), paper_ex1_povm());
    CHECK(report.bound_raw == doctest::Approx(0.05554695656587213).epsilon(1e-9));
    CHECK(report.bound == report.bound_raw);
    CHECK(report.method == "nm");
}

TEST_CASE("nm_bound is non-positive on the maximally mixed state") {
    auto report = nm_bound(isotropic(3, 1.0 / 9.0), paper_ex1_povm());
    CHECK(report.bound_raw <= 0.0);
    CHECK(report.bound == 0.0);
}

TEST_CASE("nm_bound rejects degenerate and mismatched inputs") {
    SymmetricPovm degenerate = build_nm_povm(gell_mann_basis(3), grouping_preset("paper-ex1", 3),
                                             0.0);
    CHECK_THROWS_AS(nm_bound(isotropic(3, 0.5), degenerate), std::domain_error);
    CHECK_THROWS_AS(nm_bound(isotropic(2, 0.5), paper_ex1_povm()), std::invalid_argument);
}

TEST_CASE("isotropic exactness above the maximally mixed fidelity") {
    struct Config {
        Eigen::Index d, N, M;
        double frac;
    };
    const Config configs[] = {{2, 3, 2, 0.5},  {2, 1, 4, 0.4},  {3, 8, 2, 0.3}, {3, 4, 3, 0.5},
                              {4, 5, 4, 0.45}, {4, 3, 6, 0.5}};
    for (const auto& c : configs) {
        auto basis = gell_mann_basis(c.d);
        auto grouping = canonical_grouping(c.d, c.N, c.M);
        auto povm = build_nm_povm(basis, grouping, c.frac * t_range(basis, grouping).second);
        for (double f = 1.0 / double(c.d * c.d) + 0.02; f <= 1.0; f += 0.1) {
            const double expected =
                std::sqrt(2.0 / double(c.d * (c.d - 1))) * (double(c.d) * f - 1);
            CAPTURE(c.d);
            CAPTURE(f);
            CHECK(std::abs(nm_bound(isotropic(c.d, f), povm).bound_raw - expected) < 1e-10);
        }
    }
}

TEST_CASE("gsic_bound") {
    SUBCASE("maximally entangled state saturates the exact concurrence") {
        auto report = gsic_bound(isotropic(3, 1.0), 3, 0.04984);
        CHECK(report.bound_raw == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-10));
    }
    SUBCASE("non-positive on product states") {
        for (std::uint64_t seed : {1, 2, 3, 4, 5})
            CHECK(gsic_bound(random_product(3, 3, seed), 3, 0.04984).bound_raw <= 1e-12);
    }
    SUBCASE("infeasible x rejected") {
        CHECK_THROWS_AS(gsic_bound(isotropic(3, 0.5), 3, 0.3), std::domain_error);
    }
}

TEST_CASE("sic_bound") {
    auto report = sic_bound(isotropic(3, 1.0), 3);
    CHECK(report.bound_raw == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-10));
    CHECK(report.threshold == 1.0);
    CHECK(sic_bound(isotropic(3, 1.0 / 9.0), 3).bound_raw <= 0.0);
}

TEST_CASE("sic_bound coincides with gsic_bound at x = 1/d^2") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto rho = random_mixed(3, seed);
        const double diff =
            std::abs(sic_bound(rho, 3).bound_raw - gsic_bound(rho, 3, 1.0 / 9.0).bound_raw);
        CHECK(diff < 1e-10);
    }
}

TEST_CASE("realignment_bound") {
    CHECK(std::abs(realignment_bound(random_product(3, 3, 9)).bound_raw) < 1e-10);
    CHECK(realignment_bound(isotropic(3, 1.0)).bound_raw ==
          doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
    for (double tau = 0.1; tau < 0.95; tau += 0.1) {
        auto rho = mix_white_noise(horodecki_state(tau), 0.995);
        CHECK(realignment_bound(rho).bound_raw <= 1e-12);
    }
}

TEST_CASE("separability_threshold") {
    // SIC parameters: the raw ceiling is 1/6; Corollary 2's rescaling
    // c^2 = d(d+1)/(xd^2+1) = 6 maps it to the threshold of 1.
    const double sic_threshold = separability_threshold(3, 1, 9, 1.0 / 9.0);
    CHECK(sic_threshold == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(sic_threshold * 6.0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(separability_threshold(3, 8, 2, 0.7505828) ==
          doctest::Approx((2 * (4 * 0.7505828 + 9)) / 6.0).epsilon(1e-14));
}

TEST_CASE("exact_concurrence_pure") {
    PureState prod{2, 2, ComplexVector::Zero(4)};
    prod.amplitudes(0) = 1;
    CHECK(exact_concurrence_pure(prod) == doctest::Approx(0.0));

    PureState bell{3, 3, max_entangled_ket(3)};
    CHECK(exact_concurrence_pure(bell) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));

    PureState schmidt{2, 2, ComplexVector::Zero(4)};
    schmidt.amplitudes(0) = std::sqrt(0.8);
    schmidt.amplitudes(3) = std::sqrt(0.2);
    CHECK(exact_concurrence_pure(schmidt) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("exact_concurrence_isotropic") {
    CHECK(exact_concurrence_isotropic(3, 1.0 / 3.0) == doctest::Approx(0.0));
    CHECK(exact_concurrence_isotropic(3, 1.0) ==
          doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(exact_concurrence_isotropic(3, 0.7) ==
          doctest::Approx(1.1 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("conjecture_gap") {
    auto povm = paper_ex1_povm();
    CHECK(conjecture_gap(tiles_state(), povm) > 0.0);
    CHECK(std::isfinite(conjecture_gap(isotropic(3, 1.0 / 9.0), povm)));
    CHECK(std::isfinite(conjecture_gap(isotropic(3, 1.0), povm)));
}

TEST_CASE("lower-bound soundness on random pure states") {
    auto povm = paper_ex1_povm();
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto psi = random_pure(3, 3, seed);
        CHECK(nm_bound(density_of(psi), povm).bound_raw <=
              exact_concurrence_pure(psi) + 1e-9);
    }
}

TEST_CASE("separability soundness on random product states") {
    auto povm = paper_ex1_povm();
    const double thr = separability_threshold(3, povm.N, povm.M, povm.x);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto P = probability_matrix(random_product(3, 3, seed), povm, povm);
        CHECK(P.trace_norm() <= thr + 1e-10);
    }
}

TEST_CASE("trace norm is invariant under (alpha,k) permutations") {
    auto povm = paper_ex1_povm();
    auto P = probability_matrix(random_mixed(3, 77), povm, povm);
    const double base = P.trace_norm();
    std::mt19937_64 rng(78);
    std::vector<Eigen::Index> perm(std::size_t(P.entries.rows()));
    std::iota(perm.begin(), perm.end(), 0);
    for (int rep = 0; rep < 20; ++rep) {
        std::shuffle(perm.begin(), perm.end(), rng);
        Eigen::MatrixXd shuffled(P.entries.rows(), P.entries.cols());
        for (Eigen::Index i = 0; i < P.entries.rows(); ++i)
            for (Eigen::Index j = 0; j < P.entries.cols(); ++j)
                shuffled(i, j) = P.entries(perm[std::size_t(i)], perm[std::size_t(j)]);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(shuffled);
        CHECK(std::abs(svd.singularValues().sum() - base) < 1e-12);
    }
}

TEST_CASE("sweep CSV output is deterministic and well-formed") {
    auto spec = figure_preset("fig1", 11);
    std::ostringstream a, b;
    run_sweep(spec, a);
    run_sweep(spec, b);
    CHECK(a.str() == b.str());
    CHECK(a.str().substr(0, a.str().find('\n')) == "p,nm_8_2,gsic_x0.04984,sic,realignment");

    SweepSpec bad = spec;
    bad.steps = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("fig1 threshold crossing near p = 0.88218") {
    auto spec = figure_preset("fig1", 11);
    auto crossing = find_threshold_crossing(spec, spec.methods.front());
    REQUIRE(crossing.has_value());
    CHECK(*crossing == doctest::Approx(0.8821780268504262).epsilon(1e-4));
}
