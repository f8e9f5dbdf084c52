#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scarf2/closed_forms.hpp"
#include "scarf2/schrodinger_oracle.hpp"

using namespace scarf2;

namespace {
const OracleConfig kTightOracle{24.0, 60000};
}

TEST_CASE("config and argument validation") {
    CHECK_THROWS_AS((OracleConfig{10.0, 40000}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((OracleConfig{16.0, 500}.validate()), std::invalid_argument);
    const ScarfParams p{{1.0, 0.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(numerical_scatter(p, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(verify_bound_state(p, 0.5), std::invalid_argument);
}

TEST_CASE("asymptotics guard rejects a strong potential on a short domain") {
    const auto sp = to_scarf_params(Parameterization::p4(2.0, 5.0));
    CHECK_THROWS_AS(numerical_scatter(sp, 1.0, OracleConfig{12.0, 40000}), AsymptoticsInvalid);
    CHECK_NOTHROW(numerical_scatter(sp, 1.0, OracleConfig{16.0, 40000}));
}

TEST_CASE("reflectionless -2 sech^2: |t|^2 = 1, r = 0") {
    const ScarfParams p{{1.0, 0.0}, {0.0, 0.0}};
    for (double k : {0.3, 1.0, 2.5}) {
        const auto r = numerical_scatter(p, k);
        CHECK(std::norm(r.t) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(std::abs(r.r_left) < 1e-8);
        CHECK(std::abs(r.r_right) < 1e-8);
    }
}

TEST_CASE("Hermitian unitarity from direct integration") {
    const ScarfParams p{{2.0, 0.0}, {1.0, 0.0}};
    for (double k : {0.4, 1.0, 2.2}) {
        const auto r = numerical_scatter(p, k);
        CHECK(std::norm(r.t) + std::norm(r.r_left) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(std::norm(r.t) + std::norm(r.r_right) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("oracle matches the Gamma-function amplitudes at 1e-6") {
    const auto sp = to_scarf_params(Parameterization::p4(2.0, 5.0));
    for (double k : {1.0, 3.0}) {
        const auto o = numerical_scatter(sp, k, kTightOracle);
        const auto a = scattering_coefficients(sp, k);
        CHECK(std::abs(o.t - a.t) < 1e-6 * std::max(1e-3, std::abs(a.t)));
        CHECK(std::abs(o.r_left - a.r_left) < 1e-6 * std::max(1e-3, std::abs(a.r_left)));
        CHECK(std::abs(o.r_right - a.r_right) < 1e-6 * std::max(1e-3, std::abs(a.r_right)));
        CHECK(std::norm(o.t) == doctest::Approx(closed_T(Parameterization::p4(2.0, 5.0), k).value)
                                    .epsilon(1e-6));
    }
}

TEST_CASE("fixed-step integrator converges at fourth order") {
    const auto sp = to_scarf_params(Parameterization::p1(1.0, 0.5));
    const OracleConfig cfg{16.0, 40000};
    const double k = 0.8;
    // Reference at the same L so domain truncation cancels exactly.
    const auto ref = detail::scatter_once(sp, k, cfg, Side::Left, 64000);
    double prev_err = 0.0;
    for (int n : {2000, 4000, 8000}) {
        const auto got = detail::scatter_once(sp, k, cfg, Side::Left, n);
        const double err = std::abs(got.t - ref.t) + std::abs(got.r - ref.r);
        if (n > 2000) {
            const double ratio = prev_err / err;
            CHECK(ratio > 12.8); // 16 +- 20%
            CHECK(ratio < 19.2);
        }
        prev_err = err;
    }
}

TEST_CASE("results are insensitive to the domain size for even potentials") {
    // B = 0 removes the odd sech*tanh term, whose slowly decaying tail is
    // the only O(e^-L) contribution; what remains truncates at O(e^-2L).
    const ScarfParams p{{1.7, 0.3}, {0.0, 0.0}};
    const auto a = numerical_scatter(p, 0.9, OracleConfig{14.0, 40000});
    const auto b = numerical_scatter(p, 0.9, OracleConfig{18.0, 40000});
    CHECK(std::abs(a.t - b.t) < 1e-8);
    CHECK(std::abs(a.r_left - b.r_left) < 1e-8);
    CHECK(std::abs(a.r_right - b.r_right) < 1e-8);
}

TEST_CASE("odd-tail truncation hits r first, t barely at all") {
    const auto sp = to_scarf_params(Parameterization::p4(2.0, 5.0));
    const auto a = numerical_scatter(sp, 1.0, OracleConfig{16.0, 40000});
    const auto b = numerical_scatter(sp, 1.0, kTightOracle);
    CHECK(std::abs(a.t - b.t) < 1e-9);
    CHECK(std::abs(a.r_left - b.r_left) < 1e-5);
    CHECK(std::abs(a.r_right - b.r_right) < 1e-5);
}

TEST_CASE("transmission is independent of the incidence side") {
    const auto sp = to_scarf_params(Parameterization::p2(1.2));
    const OracleConfig cfg{16.0, 40000};
    for (double k : {0.6, 1.8}) {
        const auto l = detail::scatter_once(sp, k, cfg, Side::Left, cfg.n_steps);
        const auto r = detail::scatter_once(sp, k, cfg, Side::Right, cfg.n_steps);
        CHECK(std::abs(l.t - r.t) < 1e-8 * std::abs(l.t));
    }
}

TEST_CASE("adaptive integrator agrees with the fixed-step one") {
    const auto sp = to_scarf_params(Parameterization::p1(1.0, 0.5));
    OracleConfig adaptive{16.0, 40000};
    adaptive.method = OracleConfig::Method::RK45;
    const auto a = numerical_scatter(sp, 1.3, adaptive);
    const auto b = numerical_scatter(sp, 1.3, OracleConfig{16.0, 40000});
    CHECK(std::abs(a.t - b.t) < 1e-8);
    CHECK(std::abs(a.r_left - b.r_left) < 1e-8);
    CHECK(std::abs(a.r_right - b.r_right) < 1e-8);
}

TEST_CASE("|det S| profile: unimodular for Hermitian, CPA dip for conj V") {
    const ScarfParams h{{2.0, 0.0}, {1.0, 0.0}};
    for (const auto& [k, d] : detS_profile(h, {0.5, 1.0, 2.0}))
        CHECK(d == doctest::Approx(1.0).epsilon(1e-8));
    // Time reversal of a potential with an SS at k = 2 absorbs there:
    // |det S| for conj V drops to zero at the same k.
    const auto sp = time_reversed(to_scarf_params(Parameterization::p4(2.0, 5.0)));
    const auto prof = detS_profile(sp, {1.5, 2.0, 2.5}, kTightOracle);
    CHECK(prof[0].second > 0.1);
    CHECK(prof[1].second < 1e-4);
    CHECK(prof[2].second > 0.1);
}

TEST_CASE("bound-state verification by Wronskian matching") {
    const auto sp = to_scarf_params(Parameterization::p4(2.0, 1.5));
    CHECK(verify_bound_state(sp, -1.0) < 1e-9);
    CHECK(verify_bound_state(sp, -0.8) > 1e-2);
    const auto sp5 = to_scarf_params(Parameterization::p4(2.0, 5.0));
    for (double E : p4_bound_states(2.0, 5.0))
        CHECK(verify_bound_state(sp5, E, OracleConfig{16.0, 40000}) < 1e-8);
    CHECK(verify_bound_state(sp5, -3.7, OracleConfig{16.0, 40000}) > 1e-2);
}
