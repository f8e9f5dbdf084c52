#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scarf2/closed_forms.hpp"

using namespace scarf2;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.4142135623730951;

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }
} // namespace

TEST_CASE("parameter maps reproduce the family potentials") {
    // P1(c, d): coefficients (c^2 + d^2 + i(c+d) - 1/4, c + d - 2icd + i/2)
    const double c = 0.8, d = 0.5;
    const auto sp = to_scarf_params(Parameterization::p1(c, d));
    const Complex P = sp.B * sp.B - sp.A * sp.A - sp.A;
    const Complex Q = sp.B * (2.0 * sp.A + 1.0);
    CHECK(std::abs(P - Complex(c * c + d * d - 0.25, c + d)) < 1e-14);
    CHECK(std::abs(Q - Complex(c + d, -2.0 * c * d + 0.5)) < 1e-14);

    // P2(sqrt 2): coefficients (2c^2 + 2ic - 9/4, 2c - 2ic^2 - 3i/2)
    const auto sp2 = to_scarf_params(Parameterization::p2(kSqrt2));
    const Complex P2 = sp2.B * sp2.B - sp2.A * sp2.A - sp2.A;
    const Complex Q2 = sp2.B * (2.0 * sp2.A + 1.0);
    CHECK(std::abs(P2 - Complex(2.0 * 2.0 - 2.25, 2.0 * kSqrt2)) < 1e-13);
    CHECK(std::abs(Q2 - Complex(2.0 * kSqrt2, -2.0 * 2.0 - 1.5)) < 1e-13);
}

TEST_CASE("P1(c, -c) is PT-symmetric: V(-x) = conj V(x)") {
    const auto sp = to_scarf_params(Parameterization::p1(0.7, -0.7));
    for (double x = -3.0; x <= 3.0; x += 0.37)
        CHECK(std::abs(potential(sp, -x) - std::conj(potential(sp, x))) < 1e-13);
}

TEST_CASE("constraint violations") {
    CHECK_THROWS_AS(to_scarf_params(Parameterization::p4(-1.0, 2.0)), ConstraintViolation);
    CHECK_THROWS_AS(to_scarf_params(Parameterization::p4(1.0, 0.0)), ConstraintViolation);
    CHECK_THROWS_AS(to_scarf_params(Parameterization::p3(0.0, 1.0)), ConstraintViolation);
    CHECK_THROWS_AS(p3_analytic_poles(1.0, 0.3), ConstraintViolation);
    CHECK_THROWS_AS(p4_bound_states(-1.0, 5.0), ConstraintViolation);
}

TEST_CASE("unsupported tags") {
    const auto p3 = Parameterization::p3(1.0, 1.0);
    const auto raw = Parameterization::raw({1.0, 0.0}, {0.0, 0.0});
    CHECK_THROWS_AS(closed_T(p3, 1.0), UnsupportedTag);
    CHECK_THROWS_AS(closed_F(raw, 1.0, Side::Left), UnsupportedTag);
    CHECK_THROWS_AS(closed_detS(p3, 1.0), UnsupportedTag);
    CHECK_THROWS_AS(closed_kz(raw), UnsupportedTag);
}

TEST_CASE("closed_T poles sit at the spectral singularities") {
    CHECK(closed_T(Parameterization::p1(0.8, 0.5), 0.8).infinite);
    CHECK(closed_T(Parameterization::p1(0.8, 0.5), 0.5).infinite);
    CHECK(closed_T(Parameterization::p2(kSqrt2), kSqrt2).infinite);
    CHECK(closed_T(Parameterization::p2(kSqrt2), -kSqrt2).infinite); // self-dual
    CHECK(closed_T(Parameterization::p4(2.0, 5.0), 2.0).infinite);
    CHECK(!closed_T(Parameterization::p4(2.0, 5.0), -2.0).infinite); // non-self-dual
}

TEST_CASE("P2: T(k) != T(-k) away from the SS, both infinite at |k| = c") {
    const auto p = Parameterization::p2(kSqrt2);
    for (double k : {0.5, 1.0, 2.0}) {
        const auto a = closed_T(p, k), b = closed_T(p, -k);
        REQUIRE(!a.infinite);
        REQUIRE(!b.infinite);
        CHECK(std::abs(a.value - b.value) > 1e-6 * a.value);
    }
}

TEST_CASE("Gamma-elimination consistency: closed_T = |t|^2 and closed_F = f") {
    const Parameterization fams[] = {Parameterization::p1(1.0, 0.5), Parameterization::p2(kSqrt2),
                                     Parameterization::p4(2.0, 5.0)};
    for (const auto& p : fams) {
        const auto sp = to_scarf_params(p);
        for (double k = 0.1; k <= 4.0; k += 0.07) {
            const auto ct = closed_T(p, k);
            if (ct.infinite) continue;
            bool skip = false;
            for (double pole : {p.c, p.d, -p.c, -p.d})
                if (std::abs(k - pole) < 0.05) skip = true;
            if (skip) continue;
            const Complex t = transmission_amplitude(sp, k);
            CHECK(rel(ct.value, std::norm(t)) < 1e-9);
            for (Side s : {Side::Left, Side::Right}) {
                const Complex cf = closed_F(p, k, s);
                const Complex f = f_factor(sp, k, s);
                CHECK(std::abs(cf - f) < 1e-9 * std::max(1.0, std::abs(f)));
            }
        }
    }
}

TEST_CASE("closed_detS matches |t^2 - r_l r_r| from the engine") {
    const Parameterization fams[] = {Parameterization::p1(1.0, 0.5), Parameterization::p2(kSqrt2),
                                     Parameterization::p4(2.0, 5.0)};
    for (const auto& p : fams) {
        const auto sp = to_scarf_params(p);
        for (double k = 0.15; k <= 4.0; k += 0.11) {
            bool skip = false;
            for (double pole : {p.c, p.d})
                if (std::abs(k - pole) < 0.08) skip = true;
            if (skip) continue;
            const auto cd = closed_detS(p, k);
            REQUIRE(!cd.infinite);
            const auto res = scattering_coefficients(sp, k);
            CHECK(std::abs(cd.value - res.det_S_abs) < 1e-8 * std::max(1.0, cd.value));
        }
    }
}

TEST_CASE("closed_detS special values") {
    CHECK(closed_detS(Parameterization::p1(0.8, 0.5), 0.0).value == doctest::Approx(1.0));
    const auto p2 = Parameterization::p2(1.1);
    for (double k = -3.0; k <= 3.0; k += 0.2) {
        const auto v = closed_detS(p2, k);
        REQUIRE(!v.infinite);
        CHECK(v.value > 0.0);
        if (std::abs(k) > 1e-9) CHECK(std::abs(v.value - 1.0) > 1e-12);
    }
    CHECK(closed_detS(Parameterization::p2(1.1), 0.0).value == doctest::Approx(1.0));
    CHECK(closed_detS(Parameterization::p4(2.0, 5.0), -2.0).value == doctest::Approx(0.0));
    CHECK(closed_detS(Parameterization::p4(2.0, 5.0), 2.0 + 1e-10).infinite);
}

TEST_CASE("PT reduction: P1(c, -c) has |det S| = 1 near +-c") {
    const auto p = Parameterization::p1(1.0, -1.0);
    for (double k : {1.0 - 1e-6, 1.0 + 1e-6, -1.0 - 1e-6, -1.0 + 1e-6})
        CHECK(std::abs(closed_detS(p, k).value - 1.0) < 1e-8);
}

TEST_CASE("reflectivity zero closed forms") {
    // large c: k_z ~ d
    CHECK(*closed_kz(Parameterization::p1(5.0, 0.5)) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(*closed_kz(Parameterization::p2(kSqrt2)) ==
          doctest::Approx(std::atanh(std::pow(std::tanh(kPi * kSqrt2), 2)) / kPi).epsilon(1e-14));
    CHECK(!closed_kz(Parameterization::p4(2.0, 5.0)).has_value());
    // P2 at k_z: one side of F vanishes
    const auto p2 = Parameterization::p2(1.0);
    const double kz = *closed_kz(p2);
    const double fl = std::abs(closed_F(p2, kz, Side::Left));
    const double fr = std::abs(closed_F(p2, kz, Side::Right));
    CHECK(std::min(fl, fr) < 1e-9 * std::max(fl, fr));
    // P1 F decays at large k
    CHECK(std::abs(closed_F(Parameterization::p1(1.0, 0.5), 20.0, Side::Left)) < 1e-20);
}

TEST_CASE("P3 analytic pole lattice") {
    const double c = kSqrt2;
    {
        const auto poles = p3_analytic_poles(c, 0.5);
        REQUIRE(poles.size() == 3);
        CHECK(std::abs(poles[0] - Complex(-c, 0.0)) < 1e-12);
        CHECK(std::abs(poles[1] - Complex(c, 0.0)) < 1e-12);
        CHECK(std::abs(poles[2] - Complex(c, 1.0)) < 1e-12);
    }
    {
        const auto poles = p3_analytic_poles(c, 0.6);
        REQUIRE(poles.size() == 3);
        CHECK(std::abs(poles[0] - Complex(-c, 0.1)) < 1e-12);
        CHECK(std::abs(poles[1] - Complex(c, 0.1)) < 1e-12);
        CHECK(std::abs(poles[2] - Complex(c, 1.1)) < 1e-12);
    }
    {
        const auto poles = p3_analytic_poles(c, 5.0);
        REQUIRE(poles.size() == 11); // five pairs + one unpaired
        CHECK(std::abs(poles.back() - Complex(c, 5.5)) < 1e-12);
        int pairs = 0;
        for (const auto& p : poles)
            if (p.real() < 0.0) ++pairs;
        CHECK(pairs == 5);
    }
}

TEST_CASE("P3 splitting is continuous in q") {
    const double eps = 1e-5;
    const auto poles = p3_analytic_poles(1.0, 0.5 + eps);
    double lowest = 1e9;
    for (const auto& p : poles) lowest = std::min(lowest, p.imag());
    CHECK(lowest <= eps + 1e-9);
    CHECK(lowest >= 0.0);
}

TEST_CASE("P4 bound-state ladder") {
    const auto e5 = p4_bound_states(2.0, 5.0);
    REQUIRE(e5.size() == 5);
    const double want[] = {-20.25, -12.25, -6.25, -2.25, -0.25};
    for (int i = 0; i < 5; ++i) CHECK(e5[i] == doctest::Approx(want[i]).epsilon(1e-14));
    CHECK(p4_bound_states(2.0, 0.4).empty());
    const auto e1 = p4_bound_states(2.0, 1.5);
    REQUIRE(e1.size() == 1);
    CHECK(e1[0] == doctest::Approx(-1.0));
}
