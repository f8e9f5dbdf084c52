#ifndef SCARF2_CLOSED_FORMS_HPP
#define SCARF2_CLOSED_FORMS_HPP

/**
 * Gamma-free closed forms for four special parameterizations of the
 * complex Scarf II potential:
 *
 *   P1: A = -ic,          B = d + i/2          (two NSDSS at k = c, d)
 *   P2: A = 1 - ic,       B = c - i/2          (one self-dual SS at |k| = c)
 *   P3: A = q + 1/2 - ic, B = c - iq           (SDSS splitting into CCPEs)
 *   P4: A = -ic,          B = id               (bound states + one NSDSS)
 *
 * Each closed form is an algebraic elimination of the Gamma functions in
 * the exact amplitudes; the test suite checks them against the raw
 * Gamma evaluation. Hyperbolic differences are rewritten via
 * cosh^2 a - cosh^2 b = sinh(a+b) sinh(a-b) so removable 0/0 points
 * (e.g. T at k = -c) evaluate cleanly; genuine poles are detected
 * symbolically and reported, never evaluated.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "scarf2/analytic_engine.hpp"

namespace scarf2 {

struct ConstraintViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UnsupportedTag : std::logic_error {
    using std::logic_error::logic_error;
};

struct Parameterization {
    enum class Tag { P1, P2, P3, P4, Raw };
    Tag tag;
    double c = 0.0, d = 0.0, q = 0.0;
    Complex A, B; // Raw only

    static Parameterization p1(double c, double d) { return {Tag::P1, c, d}; }
    static Parameterization p2(double c) { return {Tag::P2, c}; }
    static Parameterization p3(double c, double q) {
        Parameterization p{Tag::P3, c};
        p.q = q;
        return p;
    }
    static Parameterization p4(double c, double d) { return {Tag::P4, c, d}; }
    static Parameterization raw(Complex A, Complex B) {
        Parameterization p{Tag::Raw};
        p.A = A;
        p.B = B;
        return p;
    }
};

/// The (A, B) pair of the family member. P3 admits q >= -1/2 so the
/// q -> 1/2 splitting limit can be probed from both sides.
inline ScarfParams to_scarf_params(const Parameterization& p) {
    using Tag = Parameterization::Tag;
    const Complex i(0.0, 1.0);
    switch (p.tag) {
    case Tag::P1:
        return {-i * p.c, p.d + 0.5 * i};
    case Tag::P2:
        return {1.0 - i * p.c, p.c - 0.5 * i};
    case Tag::P3:
        if (!(p.c > 0.0)) throw ConstraintViolation("P3 requires c > 0");
        if (!(p.q >= -0.5)) throw ConstraintViolation("P3 requires q >= -1/2");
        return {p.q + 0.5 - i * p.c, p.c - i * p.q};
    case Tag::P4:
        if (!(p.c > 0.0 && p.d > 0.0)) throw ConstraintViolation("P4 requires c, d > 0");
        return {-i * p.c, i * p.d};
    case Tag::Raw:
        return {p.A, p.B};
    }
    throw std::logic_error("unreachable");
}

/// A real quantity that may be flagged infinite at a pole of t(k);
/// pole_k records which pole was hit.
struct MaybeInfinite {
    double value = 0.0;
    bool infinite = false;
    std::optional<double> pole_k;

    static MaybeInfinite finite(double v) { return {v, false, std::nullopt}; }
    static MaybeInfinite pole(double k) { return {0.0, true, k}; }
};

namespace detail {

inline constexpr double kPoleGuard = 1e-8;

// x / sinh(pi x), continued through x = 0 with value 1/pi.
inline double x_over_sinh_pi(double x) {
    if (std::abs(x) < 1e-12) return 1.0 / kPi;
    return x / std::sinh(kPi * x);
}

inline bool near(double k, double pole) { return std::abs(k - pole) < kPoleGuard; }

} // namespace detail

/// T(k) = |t|^2 from the tag's closed form. Infinite exactly at the
/// spectral-singularity positions (P1: k = c, d; P2: k = +-c; P4: k = c).
/// Negative k is the analytic continuation T(-k) used in the
/// time-reversed reading.
inline MaybeInfinite closed_T(const Parameterization& p, double k) {
    using Tag = Parameterization::Tag;
    using detail::kPi;
    const double sh = std::sinh(kPi * k), ch = std::cosh(kPi * k);
    switch (p.tag) {
    case Tag::P1: {
        const double c = p.c, d = p.d;
        if (detail::near(k, c)) return MaybeInfinite::pole(c);
        if (detail::near(k, d)) return MaybeInfinite::pole(d);
        const double v = detail::x_over_sinh_pi(k + c) * detail::x_over_sinh_pi(k + d) /
                         ((k - c) * std::sinh(kPi * (k - c)) * (k - d) * std::sinh(kPi * (k - d)));
        return MaybeInfinite::finite(std::abs(v) * sh * sh * ch * ch);
    }
    case Tag::P2: {
        const double c = p.c;
        if (detail::near(k, c)) return MaybeInfinite::pole(c);
        if (detail::near(k, -c)) return MaybeInfinite::pole(-c);
        const double sm = std::sinh(kPi * (k - c)), sp = std::sinh(kPi * (k + c));
        const double v = (1.0 + (k + c) * (k + c)) / (1.0 + (k - c) * (k - c));
        return MaybeInfinite::finite(std::abs(v) * sh * sh * ch * ch / (sm * sm * sp * sp));
    }
    case Tag::P4: {
        const double c = p.c, d = p.d;
        if (detail::near(k, c)) return MaybeInfinite::pole(c);
        const double cd = std::cos(kPi * d);
        const double v = detail::x_over_sinh_pi(k + c) /
                         ((k - c) * std::sinh(kPi * (k - c)) * (sh * sh + cd * cd));
        return MaybeInfinite::finite(std::abs(v) * sh * sh * ch * ch);
    }
    default:
        throw UnsupportedTag("closed_T: no closed form for this tag");
    }
}

/// F(k) of r = t F, matching f_factor exactly in the project side
/// convention (Left <-> (A, B)).
inline Complex closed_F(const Parameterization& p, double k, Side side) {
    using Tag = Parameterization::Tag;
    using detail::kPi;
    const double s = (side == Side::Left) ? 1.0 : -1.0;
    const double sh = std::sinh(kPi * k), ch = std::cosh(kPi * k);
    const Complex i(0.0, 1.0);
    switch (p.tag) {
    case Tag::P1:
        return i * (s * std::cosh(kPi * p.c) * std::cosh(kPi * p.d) / ch +
                    std::sinh(kPi * p.c) * std::sinh(kPi * p.d) / sh);
    case Tag::P2: {
        const double cc = std::cosh(kPi * p.c), sc = std::sinh(kPi * p.c);
        return i * (s * cc * cc / ch + sc * sc / sh);
    }
    case Tag::P4:
        // The sign flip sits on the imaginary term here (F_right = conj F_left),
        // so |F_left| = |F_right|: reciprocal reflection.
        return std::sinh(kPi * p.c) * std::cos(kPi * p.d) / sh +
               s * i * std::cosh(kPi * p.c) * std::sin(kPi * p.d) / ch;
    default:
        throw UnsupportedTag("closed_F: no closed form for this tag");
    }
}

/// |det S(k)| = |t^2 - r_l r_r| in closed form. Negative k is allowed
/// (time-reversed reading); poles are flagged, zeros are honest zeros.
inline MaybeInfinite closed_detS(const Parameterization& p, double k) {
    using Tag = Parameterization::Tag;
    switch (p.tag) {
    case Tag::P1: {
        if (detail::near(k, p.c)) return MaybeInfinite::pole(p.c);
        if (detail::near(k, p.d)) return MaybeInfinite::pole(p.d);
        return MaybeInfinite::finite(
            std::abs((k + p.c) * (k + p.d) / ((k - p.c) * (k - p.d))));
    }
    case Tag::P2:
        return MaybeInfinite::finite((1.0 + (k + p.c) * (k + p.c)) /
                                     (1.0 + (k - p.c) * (k - p.c)));
    case Tag::P4:
        if (detail::near(k, p.c)) return MaybeInfinite::pole(p.c);
        return MaybeInfinite::finite(std::abs((k + p.c) / (k - p.c)));
    default:
        throw UnsupportedTag("closed_detS: no closed form for this tag");
    }
}

/// The single real reflectivity zero, when the family has one.
/// P1: k_z = atanh(tanh(pi c) tanh(pi d))/pi; P2: atanh(tanh^2(pi c))/pi;
/// P4: none (F never vanishes at real k).
inline std::optional<double> closed_kz(const Parameterization& p) {
    using Tag = Parameterization::Tag;
    using detail::kPi;
    switch (p.tag) {
    case Tag::P1:
        return std::atanh(std::tanh(kPi * p.c) * std::tanh(kPi * p.d)) / kPi;
    case Tag::P2: {
        const double t = std::tanh(kPi * p.c);
        return std::atanh(t * t) / kPi;
    }
    case Tag::P4:
        return std::nullopt;
    default:
        throw UnsupportedTag("closed_kz: no closed form for this tag");
    }
}

/// Physical (Im k >= 0) pole lattice of t(k) for P3(c, q):
/// pairs k_n = +-c + (q - 1/2 - n) i for n = 0, 1, ..., floor(q - 1/2),
/// plus the single unpaired k_up = c + (q + 1/2) i. At q = 1/2 the n = 0
/// pair degenerates to the real pair +-c (the unsplit self-dual SS).
/// Sorted by (Re, Im).
inline std::vector<Complex> p3_analytic_poles(double c, double q) {
    if (!(c > 0.0)) throw ConstraintViolation("p3_analytic_poles: c > 0 required");
    if (!(q >= 0.5 - 1e-12)) throw ConstraintViolation("p3_analytic_poles: q >= 1/2 required");
    std::vector<Complex> poles;
    for (int n = 0;; ++n) {
        const double y = q - 0.5 - n;
        if (y < -1e-12) break;
        const double yy = (std::abs(y) < 1e-12) ? 0.0 : y;
        poles.emplace_back(-c, yy);
        poles.emplace_back(c, yy);
    }
    poles.emplace_back(c, q + 0.5);
    std::sort(poles.begin(), poles.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return poles;
}

/// Negative-energy spectrum of P4(c, d): E_n = -(d - 1/2 - n)^2 for
/// n = 0, 1, ..., while kappa_n = d - 1/2 - n stays positive. Empty for
/// d <= 1/2. Ascending in E.
inline std::vector<double> p4_bound_states(double c, double d) {
    if (!(c > 0.0)) throw ConstraintViolation("p4_bound_states: c > 0 required");
    std::vector<double> E;
    for (int n = 0;; ++n) {
        const double kappa = d - 0.5 - n;
        if (kappa <= 1e-12) break;
        E.push_back(-kappa * kappa);
    }
    return E;
}

} // namespace scarf2

#endif // SCARF2_CLOSED_FORMS_HPP
