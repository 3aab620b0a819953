#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qcorr/channels.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/states.hpp"

#include <cmath>

using namespace qcorr;
using states::CorrelationVector;

namespace {

channels::PauliChannel random_channel(RngStream& rng) {
    double q[4];
    double s = 0.0;
    for (double& qi : q) {
        qi = -std::log(1.0 - rng.uniform());
        s += qi;
    }
    return {q[0] / s, q[1] / s, q[2] / s, q[3] / s};
}

} // namespace

TEST_CASE("ancilla attachment") {
    const auto rho = states::bd_density_matrix({0.3, -0.2, 0.1});

    channels::AncillaState pure{{0, 0, 1}};
    CHECK(pure.purity() == doctest::Approx(1.0));
    auto ext = channels::attach_ancilla(rho, pure);
    CHECK(std::abs(ext.trace() - 1.0) < 1e-14);

    channels::AncillaState mixed;
    CHECK(mixed.purity() == doctest::Approx(0.5));

    // reversible removal: tracing out the ancilla recovers rho exactly
    ext = channels::attach_ancilla(rho, mixed);
    const auto back = linalg::partial_trace(ext, 4, 2, linalg::Subsystem::B);
    CHECK((back - rho).frobenius_norm() < 1e-14);

    const channels::AncillaState too_long{{1.0, 1.0, 0.0}};
    CHECK_THROWS_AS(too_long.validate(), std::invalid_argument);
}

TEST_CASE("restricted D_p agrees with the closed forms") {
    RngStream rng(81);
    for (int rep = 0; rep < 500; ++rep) {
        const auto c = states::sample_bd_uniform(rng);
        CHECK(std::abs(channels::dp_bd(c, 1) - measures::geometric_discord_1norm(c)) <
              1e-13);
        CHECK(std::abs(channels::dp_bd(c, 2) - measures::geometric_discord_2norm(c)) <
              1e-13);
    }
}

TEST_CASE("closest restricted classical state realizes D_p") {
    RngStream rng(82);
    for (int rep = 0; rep < 50; ++rep) {
        const auto c = states::sample_bd_uniform(rng);
        const auto rho = states::bd_density_matrix(c);
        const auto rc1 = channels::closest_bd_classical(c, 1);
        CHECK(std::abs(linalg::trace_distance(rho, rc1) -
                       measures::geometric_discord_1norm(c)) < 1e-12);
        const auto rc2 = channels::closest_bd_classical(c, 2);
        auto diff = rho;
        diff -= rc2;
        const double d2 = std::pow(linalg::schatten_norm(diff, 2), 2);
        CHECK(std::abs(d2 - measures::geometric_discord_2norm(c)) < 1e-12);
    }
}

TEST_CASE("p-norm scaling law") {
    RngStream rng(83);

    // p = 1: ||sigma||_1 = 1, predicted value unchanged
    const CorrelationVector c{0.5, -0.3, 0.1};
    auto rep1 = channels::dp_scaling_check(c, channels::AncillaState{{0.3, 0.1, -0.4}}, 1);
    CHECK(rep1.sigma_norm_p_pow == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rep1.predicted_scaled == doctest::Approx(rep1.dp_value).epsilon(1e-13));
    CHECK(rep1.norm_identity_ok);
    CHECK(rep1.bound_ok);
    CHECK(rep1.floor_ok);

    // p = 2, maximally mixed ancilla: factor tr sigma^2 = 1/2
    auto rep2 = channels::dp_scaling_check(c, channels::AncillaState{}, 2);
    CHECK(rep2.sigma_norm_p_pow == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(rep2.norm_identity_ok);
    CHECK(rep2.bound_ok);
    CHECK(rep2.floor_ok);

    // Bell vertex, p = 2, r = 0: predicted extended D_G = 1/2 * 1/2 = 1/4
    auto repb = channels::dp_scaling_check({1, 1, -1}, channels::AncillaState{}, 2);
    CHECK(repb.predicted_scaled == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(repb.extended_candidate == doctest::Approx(0.25).epsilon(1e-10));

    // norm identity holds on random (c, sigma, p) triples
    for (int rep = 0; rep < 100; ++rep) {
        const auto cr = states::sample_bd_uniform(rng);
        const auto r = rng.ball_point();
        const channels::AncillaState sigma{{r[0], r[1], r[2]}};
        for (int p : {1, 2, 3}) {
            const auto rec = channels::dp_scaling_check(cr, sigma, p, 50, 83);
            CHECK(rec.norm_identity_gap < 1e-10);
            CHECK(rec.bound_ok);
            CHECK(rec.floor_ok);
        }
    }

    CHECK_THROWS_AS(
        (void)channels::dp_scaling_check(c, channels::AncillaState{}, 4),
        std::invalid_argument);
}

TEST_CASE("pauli channel on side b") {
    // phase flip with qz = 1/4
    const channels::PauliChannel phase{0.75, 0, 0, 0.25};
    auto out = channels::apply_pauli_channel_b({1, 1, -1}, phase);
    CHECK(out.c1 == doctest::Approx(0.5));
    CHECK(out.c2 == doctest::Approx(0.5));
    CHECK(out.c3 == doctest::Approx(-1.0));

    const CorrelationVector c{0.4, -0.3, 0.2};
    out = channels::apply_pauli_channel_b(c, channels::PauliChannel{});
    CHECK(out.c1 == doctest::Approx(c.c1));
    CHECK(out.c2 == doctest::Approx(c.c2));
    CHECK(out.c3 == doctest::Approx(c.c3));

    out = channels::apply_pauli_channel_b(c, {0.25, 0.25, 0.25, 0.25});
    CHECK(std::abs(out.c1) + std::abs(out.c2) + std::abs(out.c3) < 1e-15);

    CHECK_THROWS_AS(
        (void)channels::apply_pauli_channel_b(c, {0.5, 0.5, 0.5, -0.5}),
        std::invalid_argument);
}

TEST_CASE("channel output stays in the tetrahedron") {
    RngStream rng(84);
    for (int rep = 0; rep < 2000; ++rep) {
        const auto c = states::sample_bd_uniform(rng);
        CHECK(states::is_physical(channels::apply_pauli_channel_b(c, random_channel(rng))));
    }
}

TEST_CASE("trace-norm contractivity") {
    const auto rep = channels::contractivity_check({1, 1, -1},
                                                   channels::PauliChannel{0.75, 0, 0, 0.25});
    CHECK(rep.d1_before == doctest::Approx(1.0));
    CHECK(rep.d1_after == doctest::Approx(0.5));
    CHECK(rep.d1_ok);
    CHECK(rep.contraction_ok);

    const auto id = channels::contractivity_check({0.4, -0.3, 0.2}, channels::PauliChannel{});
    CHECK(id.d1_after == doctest::Approx(id.d1_before));
    CHECK(id.dist_after == doctest::Approx(id.dist_before).epsilon(1e-12));

    RngStream rng(85);
    for (int rep_i = 0; rep_i < 1000; ++rep_i) {
        const auto c = states::sample_bd_uniform(rng);
        const auto r = channels::contractivity_check(c, random_channel(rng));
        CHECK(r.d1_ok);
        CHECK(r.contraction_ok);
    }
}

TEST_CASE("D_G noncontractivity witness") {
    const auto w = channels::dg_noncontractivity_witness();
    CHECK(w.purity_factor == doctest::Approx(0.5));
    CHECK(w.dg_base == doctest::Approx(0.5));
    CHECK(w.dg_extended == doctest::Approx(0.25));
    CHECK(w.dg_increases_on_removal);
    CHECK(w.d1_invariant);
    CHECK(w.d1_base == doctest::Approx(w.d1_extended));

    const auto wp = channels::dg_noncontractivity_witness({{0, 0, 1}});
    CHECK(wp.purity_factor == doctest::Approx(1.0));
    CHECK_FALSE(wp.dg_increases_on_removal);
    CHECK(wp.d1_invariant);
}
