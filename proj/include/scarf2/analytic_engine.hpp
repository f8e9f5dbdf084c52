#ifndef SCARF2_ANALYTIC_ENGINE_HPP
#define SCARF2_ANALYTIC_ENGINE_HPP

/**
 * Exact scattering amplitudes of the complex Scarf II potential
 *
 *   V(x) = P sech^2(x) + Q sech(x) tanh(x),
 *   P = B^2 - A^2 - A,   Q = B (2A + 1),
 *
 * from the Khare-Sukhatme Gamma-function formulas. The transmission
 * amplitude is
 *
 *   t(k) = G(-A-ik) G(1+A-ik) G(1/2+iB-ik) G(1/2-iB-ik)
 *          / [ G(-ik) G(1-ik) G^2(1/2-ik) ],
 *
 * evaluated in log space so the Gamma ratios never overflow. Reflection
 * amplitudes are r = t * f with the side convention fixed project-wide:
 * Left <-> (A, B), Right <-> (A, -B).
 */

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>

#include "scarf2/special_functions.hpp"

namespace scarf2 {

struct ScarfParams {
    Complex A;
    Complex B;
};

enum class Side { Left, Right };

/// Pole of t(k): one of the four numerator Gamma factors diverged.
/// which_gamma indexes the factors of the numerator in the order written
/// above (0: -A-ik, 1: 1+A-ik, 2: 1/2+iB-ik, 3: 1/2-iB-ik).
struct PoleOfT : std::runtime_error {
    Complex k;
    int which_gamma;
    PoleOfT(Complex k_, int which)
        : std::runtime_error("pole of t(k)"), k(k_), which_gamma(which) {}
};

/// V(x) for the given (A, B).
inline Complex potential(const ScarfParams& p, double x) {
    const Complex P = p.B * p.B - p.A * p.A - p.A;
    const Complex Q = p.B * (2.0 * p.A + 1.0);
    const double sech = 1.0 / std::cosh(x);
    return P * sech * sech + Q * sech * std::tanh(x);
}

/// V(x) of the time-reversed problem, conj(V(x)).
inline ScarfParams time_reversed(const ScarfParams& p) {
    return {std::conj(p.A), std::conj(p.B)};
}

namespace detail {

inline std::array<Complex, 4> t_numerator_args(const ScarfParams& p, Complex k) {
    const Complex ik(-k.imag(), k.real());
    const Complex iB(-p.B.imag(), p.B.real());
    return {-p.A - ik, 1.0 + p.A - ik, 0.5 + iB - ik, 0.5 - iB - ik};
}

inline std::array<Complex, 3> t_denominator_args(Complex k) {
    const Complex ik(-k.imag(), k.real());
    return {-ik, 1.0 - ik, 0.5 - ik}; // last one enters squared
}

} // namespace detail

/// t(k) for complex k (analytic continuation off the real axis is used by
/// the pole scan). Throws PoleOfT when a numerator Gamma argument sits on
/// the pole lattice; returns 0 when only a denominator factor does (the
/// generic t(0) = 0 low-energy limit).
inline Complex transmission_amplitude(const ScarfParams& p, Complex k) {
    const auto num = detail::t_numerator_args(p, k);
    for (int i = 0; i < 4; ++i)
        if (nearest_gamma_pole(num[i]) >= 0) throw PoleOfT(k, i);
    const auto den = detail::t_denominator_args(k);
    for (const Complex& d : den)
        if (nearest_gamma_pole(d) >= 0) return 0.0;
    Complex lt = 0.0;
    for (const Complex& a : num) lt += log_gamma(a);
    lt -= log_gamma(den[0]) + log_gamma(den[1]) + 2.0 * log_gamma(den[2]);
    return std::exp(lt);
}

/// 1/t(k): zero exactly where t has a pole, which is what the complex
/// k-plane scan hunts for. Finite in the closed upper half plane away
/// from k = 0.
inline Complex inverse_transmission(const ScarfParams& p, Complex k) {
    const auto num = detail::t_numerator_args(p, k);
    for (const Complex& a : num)
        if (nearest_gamma_pole(a) >= 0) return 0.0;
    const auto den = detail::t_denominator_args(k);
    for (const Complex& d : den)
        if (nearest_gamma_pole(d) >= 0)
            return Complex(std::numeric_limits<double>::infinity(), 0.0);
    Complex lg = log_gamma(den[0]) + log_gamma(den[1]) + 2.0 * log_gamma(den[2]);
    for (const Complex& a : num) lg -= log_gamma(a);
    return std::exp(lg);
}

/// f_{A,B}(k) of the reflection formula r = t f, for k > 0.
/// Left uses (A, B), Right uses (A, -B).
inline Complex f_factor(const ScarfParams& p, double k, Side side) {
    constexpr double pi = detail::kPi;
    const Complex B = (side == Side::Left) ? p.B : -p.B;
    return std::cos(pi * p.A) * std::sinh(pi * B) / std::cosh(pi * k) +
           Complex(0.0, 1.0) * std::sin(pi * p.A) * std::cosh(pi * B) / std::sinh(pi * k);
}

struct ScatteringResult {
    double k = 0.0;
    Complex t, r_left, r_right; // meaningful only when !infinite
    double T = 0.0, R_left = 0.0, R_right = 0.0, det_S_abs = 0.0;
    bool infinite = false; // k sits on a pole of t: T, R, |det S| all diverge
};

/// Assembles t, r = t f, probabilities and |det S| = |t^2 - r_l r_r| at one
/// real k > 0. A pole of t is reported through the `infinite` flag, never
/// as floating-point infinity.
inline ScatteringResult scattering_coefficients(const ScarfParams& p, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("scattering_coefficients: k must be > 0");
    ScatteringResult res;
    res.k = k;
    Complex t;
    try {
        t = transmission_amplitude(p, k);
    } catch (const PoleOfT&) {
        res.infinite = true;
        return res;
    }
    const Complex fl = f_factor(p, k, Side::Left);
    const Complex fr = f_factor(p, k, Side::Right);
    res.t = t;
    res.r_left = t * fl;
    res.r_right = t * fr;
    res.T = std::norm(t);
    res.R_left = std::norm(res.r_left);
    res.R_right = std::norm(res.r_right);
    res.det_S_abs = std::abs(t * t - res.r_left * res.r_right);
    return res;
}

struct ReflectionZeros {
    std::optional<double> left;  // k_z > 0 with r_left(k_z) = 0
    std::optional<double> right; // k_z > 0 with r_right(k_z) = 0
};

/// Real reflectivity zeros of f on either side. The zero condition
/// f = 0 reads tanh(pi k) = -i tan(pi A) coth(pi B_side); a real k_z
/// exists when that quantity is real and inside (-1, 1). Sectors with A
/// or B purely imaginary (the regime of interest) satisfy the reality
/// condition identically.
inline ReflectionZeros reflection_zero_general(const ScarfParams& p) {
    constexpr double pi = detail::kPi;
    ReflectionZeros out;
    for (Side side : {Side::Left, Side::Right}) {
        const Complex B = (side == Side::Left) ? p.B : -p.B;
        const Complex w = -Complex(0.0, 1.0) * std::tan(pi * p.A) / std::tanh(pi * B);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
        if (std::abs(w.imag()) > 1e-9 * std::max(1.0, std::abs(w.real()))) continue;
        if (!(std::abs(w.real()) < 1.0)) continue;
        const double kz = std::atanh(w.real()) / pi;
        if (kz <= 0.0) continue;
        (side == Side::Left ? out.left : out.right) = kz;
    }
    return out;
}

} // namespace scarf2

#endif // SCARF2_ANALYTIC_ENGINE_HPP
