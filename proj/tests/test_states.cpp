#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qcorr/linalg.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace qcorr;
using linalg::ComplexMatrix;
using states::CorrelationVector;

TEST_CASE("bd eigenvalues") {
    auto lam = states::bd_eigenvalues({1, 1, -1});
    CHECK(lam[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(lam[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lam[2] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(lam[3] == doctest::Approx(0.0).epsilon(1e-15));

    lam = states::bd_eigenvalues({0, 0, 0});
    for (double l : lam) CHECK(l == doctest::Approx(0.25));

    lam = states::bd_eigenvalues({1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(lam[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(lam[1] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(lam[2] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(lam[3] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("eigenvalues sum to one for arbitrary c") {
    RngStream rng(31);
    for (int rep = 0; rep < 1000; ++rep) {
        const CorrelationVector c{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const auto lam = states::bd_eigenvalues(c);
        CHECK(lam[0] + lam[1] + lam[2] + lam[3] == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("physicality check") {
    CHECK(states::is_physical({1, 1, -1}));
    CHECK_FALSE(states::is_physical({1, 1, 1})); // lambda_11 = -1/2
    CHECK(states::is_physical({0, 0, 0.5}));
    CHECK_THROWS_AS(states::require_physical({1, 1, 1}), std::invalid_argument);
}

TEST_CASE("bd density matrix") {
    auto rho = states::bd_density_matrix({0, 0, 0});
    rho -= 0.25 * ComplexMatrix::identity(4);
    CHECK(rho.frobenius_norm() < 1e-15);

    // Bell vertex is a rank-1 projector
    const auto bell = states::bd_density_matrix({1, 1, -1});
    const auto eig = linalg::hermitian_eigenvalues(bell);
    CHECK(eig[3] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(eig[0]) + std::abs(eig[1]) + std::abs(eig[2]) < 1e-12);

    CHECK_THROWS_AS((void)states::bd_density_matrix({1, 1, 1}), std::invalid_argument);
}

TEST_CASE("matrix spectrum equals bd_eigenvalues") {
    RngStream rng(32);
    for (int rep = 0; rep < 200; ++rep) {
        const auto c = states::sample_bd_uniform(rng);
        auto lam = states::bd_eigenvalues(c);
        std::sort(lam.begin(), lam.end());
        const auto eig = linalg::hermitian_eigenvalues(states::bd_density_matrix(c));
        for (int k = 0; k < 4; ++k) CHECK(std::abs(eig[k] - lam[k]) < 1e-12);
    }
}

TEST_CASE("from_density_matrix round trip") {
    RngStream rng(33);
    for (const CorrelationVector c :
         {CorrelationVector{1, 1, -1}, CorrelationVector{0, 0, 0},
          states::sample_bd_uniform(rng)}) {
        const auto back = states::from_density_matrix(states::bd_density_matrix(c));
        CHECK(std::abs(back.c1 - c.c1) < 1e-12);
        CHECK(std::abs(back.c2 - c.c2) < 1e-12);
        CHECK(std::abs(back.c3 - c.c3) < 1e-12);
    }

    // biased marginal -> rejected
    ComplexMatrix rho(4, 4);
    rho(0, 0) = 0.7;
    rho(3, 3) = 0.3;
    CHECK_THROWS_AS((void)states::from_density_matrix(rho), std::invalid_argument);
}

TEST_CASE("cq density matrix") {
    states::ClassicalQuantumState s;
    s.p1 = 1.0;
    auto rho = states::cq_density_matrix(s); // p=(1,0), axis z, r1=0
    const double d1[4] = {0.5, 0.5, 0.0, 0.0};
    for (int i = 0; i < 4; ++i) CHECK(rho(i, i).real() == doctest::Approx(d1[i]));

    s.p1 = 0.5;
    rho = states::cq_density_matrix(s);
    rho -= 0.25 * ComplexMatrix::identity(4);
    CHECK(rho.frobenius_norm() < 1e-15);

    s.bloch1 = {0, 0, 1};
    s.bloch2 = {0, 0, -1};
    rho = states::cq_density_matrix(s);
    const auto target = states::bd_classical_density_matrix({3, 1.0});
    CHECK((rho - target).frobenius_norm() < 1e-15);
}

TEST_CASE("bd classical density matrix") {
    auto rho = states::bd_classical_density_matrix({3, 1.0});
    CHECK(rho(0, 0).real() == doctest::Approx(0.5));
    CHECK(rho(3, 3).real() == doctest::Approx(0.5));
    CHECK(std::abs(rho(1, 1)) + std::abs(rho(2, 2)) < 1e-15);

    rho = states::bd_classical_density_matrix({2, 0.0});
    rho -= 0.25 * ComplexMatrix::identity(4);
    CHECK(rho.frobenius_norm() < 1e-15);

    const auto back =
        states::from_density_matrix(states::bd_classical_density_matrix({1, -1.0}));
    CHECK(back.c1 == doctest::Approx(-1.0));
    CHECK(std::abs(back.c2) + std::abs(back.c3) < 1e-12);

    CHECK_THROWS_AS((void)states::bd_classical_density_matrix({1, 1.5}),
                    std::invalid_argument);
}

TEST_CASE("correlation stats") {
    auto t = states::correlation_stats({0.5, -0.3, 0.1});
    CHECK(t.c_plus == doctest::Approx(0.5));
    CHECK(t.c_zero == doctest::Approx(0.3));
    CHECK(t.c_minus == doctest::Approx(0.1));

    t = states::correlation_stats({1, 1, -1});
    CHECK(t.c_plus == doctest::Approx(1.0));
    CHECK(t.c_zero == doctest::Approx(1.0));
    CHECK(t.c_minus == doctest::Approx(1.0));

    // ties: the duplicated value is the median whatever the third entry is
    for (double b : {0.0, 0.2, 0.9}) {
        t = states::correlation_stats({0.4, 0.4, b});
        CHECK(t.c_zero == doctest::Approx(0.4));
    }
}

TEST_CASE("uniform tetrahedron sampling") {
    RngStream rng(34);
    const int n = 10000;
    double sum[3] = {0, 0, 0}, sumsq[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) {
        const auto c = states::sample_bd_uniform(rng);
        REQUIRE(states::is_physical(c));
        const double v[3] = {c.c1, c.c2, c.c3};
        for (int k = 0; k < 3; ++k) {
            sum[k] += v[k];
            sumsq[k] += v[k] * v[k];
        }
    }
    // tetrahedron is symmetric under ci -> -ci (pairwise), so means vanish
    for (int k = 0; k < 3; ++k) {
        const double mean = sum[k] / n;
        const double sd = std::sqrt(sumsq[k] / n - mean * mean);
        CHECK(std::abs(mean) < 3.0 * sd / std::sqrt(double(n)));
    }
}

TEST_CASE("tetrahedron acceptance fraction is 1/3") {
    // direct volume estimate: is_physical over uniform cube points
    RngStream rng(35);
    const int n = 30000;
    int inside = 0;
    for (int i = 0; i < n; ++i) {
        const CorrelationVector c{rng.uniform(-1, 1), rng.uniform(-1, 1),
                                  rng.uniform(-1, 1)};
        if (states::is_physical(c)) ++inside;
    }
    const double frac = double(inside) / n;
    const double sigma = std::sqrt((1.0 / 3) * (2.0 / 3) / n);
    CHECK(std::abs(frac - 1.0 / 3) < 3.0 * sigma);
}

TEST_CASE("classical-quantum sampling") {
    RngStream rng(36);
    for (int i = 0; i < 2000; ++i) {
        const auto s = states::sample_classical(rng);
        REQUIRE_NOTHROW(s.validate());
        if (i < 100) {
            const auto rho = states::cq_density_matrix(s);
            REQUIRE_NOTHROW(states::require_density_matrix(rho));
        }
    }
}

TEST_CASE("classical states are invariant under their own measurement") {
    RngStream rng(37);
    for (int rep = 0; rep < 100; ++rep) {
        const auto s = states::sample_classical(rng);
        const auto rho = states::cq_density_matrix(s);

        ComplexMatrix n_sigma(2, 2);
        for (int i = 1; i <= 3; ++i) {
            auto t = linalg::pauli(i);
            t *= s.axis[i - 1];
            n_sigma += t;
        }
        const auto pi_p = 0.5 * (linalg::identity2() + n_sigma);
        const auto pi_m = 0.5 * (linalg::identity2() - n_sigma);
        const auto pp = linalg::kron(pi_p, linalg::identity2());
        const auto pm = linalg::kron(pi_m, linalg::identity2());
        const auto measured = pp * rho * pp + pm * rho * pm;
        CHECK(linalg::trace_distance(rho, measured) < 1e-12);
    }
}

TEST_CASE("sampling is reproducible") {
    RngStream a(42, 7), b(42, 7), c(42, 8);
    bool all_equal = true, any_differ = false;
    for (int i = 0; i < 100; ++i) {
        const auto ca = states::sample_bd_uniform(a);
        const auto cb = states::sample_bd_uniform(b);
        const auto cc = states::sample_bd_uniform(c);
        all_equal = all_equal && ca.c1 == cb.c1 && ca.c2 == cb.c2 && ca.c3 == cb.c3;
        any_differ = any_differ || ca.c1 != cc.c1;
    }
    CHECK(all_equal);
    CHECK(any_differ);
}
