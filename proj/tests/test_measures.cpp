#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qcorr/measures.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/states.hpp"

#include <algorithm>
#include <array>
#include <cmath>

using namespace qcorr;
using states::CorrelationVector;
using states::MeasurementDirection;

TEST_CASE("entropic discord, closed form") {
    CHECK(std::abs(measures::entropic_discord_bd({1, 1, -1}) - 1.0) < 1e-12);
    for (double c3 : {0.0, 0.3, -0.8, 1.0})
        CHECK(std::abs(measures::entropic_discord_bd({0, 0, c3})) < 1e-12);
    // rank-deficient symmetric point evaluates exactly to 1/3
    CHECK(std::abs(measures::entropic_discord_bd({1.0 / 3, 1.0 / 3, 1.0 / 3}) - 1.0 / 3) <
          1e-12);
    CHECK_THROWS_AS((void)measures::entropic_discord_bd({1, 1, 1}), std::invalid_argument);
}

TEST_CASE("entropic discord, numeric minimization") {
    CHECK(std::abs(measures::entropic_discord_numeric({1, 1, -1}) - 1.0) < 1e-6);

    const CorrelationVector c{0.4, 0.2, 0.1};
    CHECK(std::abs(measures::entropic_discord_numeric(c) -
                   measures::entropic_discord_bd(c)) < 1e-6);

    // the optimal axis aligns with the largest |c_i| component (axis 1 here)
    std::array<double, 3> axis{};
    (void)measures::entropic_discord_numeric(c, 64, axis);
    CHECK(std::abs(axis[0]) > 0.999);
}

TEST_CASE("numeric discord never drops below the closed form") {
    RngStream rng(41);
    for (int rep = 0; rep < 30; ++rep) {
        const auto c = states::sample_bd_uniform(rng);
        CHECK(measures::entropic_discord_numeric(c, 32) >=
              measures::entropic_discord_bd(c) - 1e-9);
    }
}

TEST_CASE("geometric discord, 2-norm") {
    CHECK(measures::geometric_discord_2norm({1, 1, -1}) == doctest::Approx(0.5));
    CHECK(measures::geometric_discord_2norm({1.0 / 3, 1.0 / 3, 1.0 / 3}) ==
          doctest::Approx(1.0 / 18).epsilon(1e-12));
    CHECK(measures::geometric_discord_2norm({0, 0, 0.9}) == doctest::Approx(0.0));
}

TEST_CASE("geometric discord, 1-norm") {
    CHECK(measures::geometric_discord_1norm({0.5, -0.3, 0.1}) == doctest::Approx(0.3));
    CHECK(measures::geometric_discord_1norm({1, 1, -1}) == doctest::Approx(1.0));
    RngStream rng(42);
    for (int rep = 0; rep < 100; ++rep) {
        const double c1 = rng.uniform(-1.0 / 3, 1.0 / 3);
        const double c3 = rng.uniform(-1.0 / 3, 1.0 / 3);
        const CorrelationVector c{c1, c1, c3};
        if (!states::is_physical(c)) continue;
        CHECK(measures::geometric_discord_1norm(c) == doctest::Approx(std::abs(c1)));
    }
}

TEST_CASE("negativity") {
    CHECK(measures::negativity(states::bd_density_matrix({1, 1, -1}), 2, 2) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(measures::negativity(0.25 * linalg::ComplexMatrix::identity(4), 2, 2) ==
          doctest::Approx(0.0));

    // partial transpose flips the sign of c2; N = 2 max(0, -min lambda')
    RngStream rng(43);
    for (int rep = 0; rep < 200; ++rep) {
        const auto c = states::sample_bd_uniform(rng);
        const auto lam = states::bd_eigenvalues({c.c1, -c.c2, c.c3});
        const double expect =
            2.0 * std::max(0.0, -*std::min_element(lam.begin(), lam.end()));
        CHECK(std::abs(measures::negativity(states::bd_density_matrix(c), 2, 2) - expect) <
              1e-10);
    }
}

TEST_CASE("on-axis classical distance f_i") {
    const CorrelationVector c{0.5, -0.3, 0.1};
    CHECK(measures::appendixA_f(c, 1, 0.5) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(measures::appendixA_f(c, 1, 0.9) == doctest::Approx(0.4).epsilon(1e-14));
    // state on its own classical axis: zero distance at l = c_i
    CHECK(measures::appendixA_f({0, 0.7, 0}, 2, 0.7) == doctest::Approx(0.0));
    CHECK_THROWS_AS((void)measures::appendixA_f(c, 4, 0.0), std::invalid_argument);
}

TEST_CASE("per-axis minimum and its 1-D scan oracle") {
    const CorrelationVector c{0.5, -0.3, 0.1};
    CHECK(measures::appendixA_axis_min(c, 1) == doctest::Approx(0.3));
    CHECK(measures::appendixA_axis_min(c, 2) == doctest::Approx(0.5));
    CHECK(measures::appendixA_axis_min(c, 3) == doctest::Approx(0.5));
    for (int axis : {1, 2, 3}) {
        CHECK(measures::appendixA_axis_min({1, 1, -1}, axis) == doctest::Approx(1.0));
        CHECK(measures::appendixA_axis_min({0, 0, 0}, axis) == doctest::Approx(0.0));
    }

    RngStream rng(44);
    for (int rep = 0; rep < 20; ++rep) {
        const auto cr = states::sample_bd_uniform(rng);
        for (int axis : {1, 2, 3}) {
            double scan = 1e300;
            for (int k = 0; k <= 4000; ++k)
                scan = std::min(scan, measures::appendixA_f(cr, axis, -1.0 + k * 5e-4));
            CHECK(std::abs(scan - measures::appendixA_axis_min(cr, axis)) < 1e-3);
            CHECK(scan >= measures::appendixA_axis_min(cr, axis) - 1e-12);
        }
    }
}

TEST_CASE("min over the three axis minima is the median") {
    RngStream rng(45);
    for (int rep = 0; rep < 1000; ++rep) {
        const auto c = states::sample_bd_uniform(rng);
        double m = 1e300;
        for (int axis : {1, 2, 3}) m = std::min(m, measures::appendixA_axis_min(c, axis));
        CHECK(std::abs(m - states::correlation_stats(c).c_zero) < 1e-14);
    }
}

TEST_CASE("gamma pair") {
    const CorrelationVector c{0.5, -0.3, 0.1};
    const auto g = measures::gamma_pm(c, MeasurementDirection{{1, 0, 0}});
    CHECK(g.gamma_plus == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(g.gamma_minus == doctest::Approx(0.05).epsilon(1e-13));

    // u = e1 reduces to {(|c2|+|c3|)/4, ||c2|-|c3||/4}
    RngStream rng(46);
    for (int rep = 0; rep < 200; ++rep) {
        const auto cr = states::sample_bd_uniform(rng);
        const auto gr = measures::gamma_pm(cr, MeasurementDirection{{1, 0, 0}});
        CHECK(gr.gamma_plus ==
              doctest::Approx((std::abs(cr.c2) + std::abs(cr.c3)) / 4).epsilon(1e-11));
        CHECK(gr.gamma_minus ==
              doctest::Approx(std::abs(std::abs(cr.c2) - std::abs(cr.c3)) / 4)
                  .epsilon(1e-11));
        CHECK(gr.gamma_plus >= gr.gamma_minus);
        CHECK(gr.gamma_minus >= 0.0);
    }

    const auto g0 = measures::gamma_pm({0, 0, 0}, MeasurementDirection{{0.2, 0.3, 0.5}});
    CHECK(g0.gamma_plus == doctest::Approx(0.0));
    CHECK(g0.gamma_minus == doctest::Approx(0.0));
}

TEST_CASE("simplex minimization of 2(gamma- + gamma+)") {
    const auto m = measures::noq_minimize({0.5, -0.3, 0.1});
    CHECK(m.value == doctest::Approx(0.3).epsilon(1e-12));
    // the argmin realizes the reported value (ties along flat edges are fine)
    const auto gm = measures::gamma_pm({0.5, -0.3, 0.1}, m.argmin);
    CHECK(2.0 * (gm.gamma_minus + gm.gamma_plus) == doctest::Approx(m.value).epsilon(1e-12));

    CHECK(measures::noq_minimize({1, 1, -1}).value == doctest::Approx(1.0).epsilon(1e-12));

    // fully symmetric alpha: objective is constant over the simplex
    const CorrelationVector sym{0.3, 0.3, 0.3};
    const auto vert = 2.0 * (measures::gamma_pm(sym, MeasurementDirection{{1, 0, 0}}).gamma_minus +
                             measures::gamma_pm(sym, MeasurementDirection{{1, 0, 0}}).gamma_plus);
    RngStream rng(47);
    for (int rep = 0; rep < 50; ++rep) {
        const double u1 = rng.uniform();
        const double u2 = rng.uniform(0.0, 1.0 - u1);
        const auto g = measures::gamma_pm(sym, MeasurementDirection{{u1, u2, 1.0 - u1 - u2}});
        // gamma- has a vanishing radicand here, so roundoff is sqrt-amplified
        CHECK(std::abs(2.0 * (g.gamma_minus + g.gamma_plus) - vert) < 1e-8);
    }
}

TEST_CASE("vertex optimality and three-way agreement on random states") {
    RngStream rng(48);
    for (int rep = 0; rep < 500; ++rep) {
        const auto c = states::sample_bd_uniform(rng);
        const double c0 = states::correlation_stats(c).c_zero;
        const auto m = measures::noq_minimize(c, 60);
        double vert_min = 1e300;
        for (int v = 0; v < 3; ++v) {
            MeasurementDirection u{{0, 0, 0}};
            u.u[v] = 1.0;
            const auto g = measures::gamma_pm(c, u);
            vert_min = std::min(vert_min, 2.0 * (g.gamma_minus + g.gamma_plus));
        }
        CHECK(std::abs(m.value - vert_min) < 1e-12);
        CHECK(std::abs(m.value - c0) < 1e-12);
        CHECK(std::abs(measures::geometric_discord_1norm(c) - c0) < 1e-15);
    }
}

TEST_CASE("hierarchy") {
    // SU(2) line saturates D1^2 = 2 D_G
    for (double t : {0.1, 0.25, 1.0 / 3}) {
        const auto h = measures::hierarchy_check({t, t, t});
        CHECK(h.d1_sq == doctest::Approx(h.two_dg).epsilon(1e-14));
        CHECK(h.all_ok());
    }

    const auto hb = measures::hierarchy_check({1, 1, -1});
    CHECK(hb.d1_sq == doctest::Approx(1.0));
    CHECK(hb.two_dg == doctest::Approx(1.0));
    CHECK(hb.q_sq == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hb.n_sq == doctest::Approx(1.0).epsilon(1e-10));

    RngStream rng(49);
    for (int rep = 0; rep < 1000; ++rep)
        CHECK(measures::hierarchy_check(states::sample_bd_uniform(rng)).all_ok());
}

TEST_CASE("measures are invariant under permutations and even sign flips") {
    RngStream rng(50);
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (int rep = 0; rep < 50; ++rep) {
        const auto c = states::sample_bd_uniform(rng);
        const auto base = measures::measure_set(c);
        const double v[3] = {c.c1, c.c2, c.c3};
        for (const auto& p : perms) {
            for (int flips = 0; flips < 3; ++flips) {
                double w[3] = {v[p[0]], v[p[1]], v[p[2]]};
                if (flips == 1) {
                    w[0] = -w[0];
                    w[1] = -w[1];
                } else if (flips == 2) {
                    w[1] = -w[1];
                    w[2] = -w[2];
                }
                const CorrelationVector cp{w[0], w[1], w[2]};
                REQUIRE(states::is_physical(cp));
                const auto ms = measures::measure_set(cp);
                CHECK(std::abs(ms.entropic_q - base.entropic_q) < 1e-12);
                CHECK(std::abs(ms.geometric_2norm - base.geometric_2norm) < 1e-12);
                CHECK(std::abs(ms.geometric_1norm - base.geometric_1norm) < 1e-12);
                CHECK(std::abs(ms.negativity - base.negativity) < 1e-12);
            }
        }
    }
}

TEST_CASE("monotonicity map") {
    const auto map = measures::monotonicity_map(40, 1e-4);
    REQUIRE(!map.empty());
    bool any_unrelated_q_dg = false;
    for (const auto& pt : map) {
        // D1 = |c1| on the U(1) triangle: flat along c3
        CHECK(std::abs(pt.dd1_dc3) < 1e-12);
        CHECK(pt.related_q_d1); // zero derivative product is always related
        any_unrelated_q_dg = any_unrelated_q_dg || !pt.related_q_dg;
        CHECK(pt.c1 >= 0.0);
        CHECK(pt.c3 <= 1.0 - 2.0 * pt.c1 + 1e-12);
    }
    // Q and D_G disagree in sign somewhere inside the triangle
    CHECK(any_unrelated_q_dg);
}

TEST_CASE("SU(2) line: all measures nondecreasing in t") {
    double prev_q = -1, prev_dg = -1, prev_d1 = -1;
    for (int k = 0; k <= 60; ++k) {
        const double t = k * (1.0 / 3) / 60;
        const CorrelationVector c{t, t, t};
        const double q = measures::entropic_discord_bd(c);
        const double dg = measures::geometric_discord_2norm(c);
        const double d1 = measures::geometric_discord_1norm(c);
        CHECK(q >= prev_q - 1e-12);
        CHECK(dg >= prev_dg - 1e-12);
        CHECK(d1 >= prev_d1 - 1e-12);
        prev_q = q;
        prev_dg = dg;
        prev_d1 = d1;
    }
}
