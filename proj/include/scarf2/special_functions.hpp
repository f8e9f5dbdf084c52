#ifndef SCARF2_SPECIAL_FUNCTIONS_HPP
#define SCARF2_SPECIAL_FUNCTIONS_HPP

/**
 * Complex-argument Gamma and log-Gamma.
 *
 * Lanczos approximation (g = 7, 9 coefficients) for Re(z) >= 1/2,
 * reflection formula Gamma(z) Gamma(1-z) = pi / sin(pi z) otherwise.
 * log_gamma returns the branch that is continuous on C \ (-inf, 0]
 * and real on the positive real axis; on the cut itself the value is
 * the limit from Im(z) -> 0+.
 *
 * Arguments within 1e-9 of a non-positive integer raise
 * PoleAtNonPositiveInteger instead of returning a non-finite value;
 * callers that want "Gamma = infinity" semantics must catch it.
 */

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace scarf2 {

using Complex = std::complex<double>;

struct PoleAtNonPositiveInteger : std::domain_error {
    Complex z;
    long n; // z ~ -n, n >= 0
    PoleAtNonPositiveInteger(Complex z_, long n_)
        : std::domain_error("Gamma pole at z = -" + std::to_string(n_)), z(z_), n(n_) {}
};

inline constexpr double kGammaPoleTol = 1e-9;

/// Distance check against the pole lattice {0, -1, -2, ...}.
/// Returns the pole index n >= 0, or -1 when z is not within tol of a pole.
inline long nearest_gamma_pole(Complex z, double tol = kGammaPoleTol) {
    if (z.real() > 0.5 || std::abs(z.imag()) > tol) return -1;
    const double r = std::round(z.real());
    if (r > 0.5) return -1;
    if (std::hypot(z.real() - r, z.imag()) >= tol) return -1;
    return static_cast<long>(-r);
}

namespace detail {

inline constexpr double kPi = 3.14159265358979323846;

// Lanczos g = 7, n = 9 (Godfrey's coefficients).
inline constexpr double kLanczosCoef[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// log Gamma for Re(z) >= 1/2; continuous, real on the positive real axis.
inline Complex log_gamma_lanczos(Complex z) {
    Complex sum = kLanczosCoef[0];
    for (int i = 1; i < 9; ++i) sum += kLanczosCoef[i] / (z - 1.0 + static_cast<double>(i));
    const Complex base = z + 6.5; // z + g - 1/2
    constexpr double half_log_two_pi = 0.91893853320467274178; // log(2 pi)/2
    return half_log_two_pi + (z - 0.5) * std::log(base) - base + std::log(sum);
}

// log sin(pi z) for Im(z) >= 0 on the branch that makes the reflection
// formula agree with the continuous log Gamma. Overflow-free: the
// dominant exponential exp(-i pi z) is factored out analytically.
inline Complex log_sin_pi(Complex z) {
    if (z.imag() == 0.0) {
        // Limit from Im -> 0+: log|sin(pi x)| - i pi floor(x).
        const double x = z.real();
        return Complex(std::log(std::abs(std::sin(kPi * x))), -kPi * std::floor(x));
    }
    // sin(pi z) = -2i sin(pi z/...)  ->  exp(-i pi z) (exp(2 i pi z) - 1)/(2i)
    const Complex w = std::exp(Complex(0.0, 2.0 * kPi) * z); // |w| < 1 for Im z > 0
    constexpr double log_half = -0.69314718055994530942;
    // log(1/(2i)) = log(1/2) - i pi/2; the extra i pi comes from log(-(1-w)).
    return Complex(0.0, -kPi) * z + std::log(1.0 - w) + Complex(log_half, kPi / 2.0);
}

} // namespace detail

/// log Gamma(z), continuous on the cut plane C \ (-inf, 0].
inline Complex log_gamma(Complex z) {
    const long n = nearest_gamma_pole(z);
    if (n >= 0) throw PoleAtNonPositiveInteger(z, n);
    if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
    if (z.real() >= 0.5) return detail::log_gamma_lanczos(z);
    constexpr double log_pi = 1.1447298858494001741;
    return log_pi - detail::log_sin_pi(z) - detail::log_gamma_lanczos(1.0 - z);
}

/// Gamma(z) = exp(log_gamma(z)), same pole signaling.
inline Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

} // namespace scarf2

#endif // SCARF2_SPECIAL_FUNCTIONS_HPP
