#ifndef SCARF2_SPECTRAL_ANALYSIS_HPP
#define SCARF2_SPECTRAL_ANALYSIS_HPP

/**
 * Numerical discovery and classification of complex k-plane poles of
 * t(k), i.e. zeros of g(k) = 1/t(k).
 *
 * The scan mirrors the contour-intersection picture: on a rectangular
 * grid, cells where both Re g and Im g change sign seed a Newton
 * iteration (derivative by central difference). Refined roots are
 * deduplicated and classified into spectral singularities, bound
 * states, complex-conjugate pair members, unpaired complex poles, and
 * unphysical (Im k < 0) poles.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "scarf2/analytic_engine.hpp"

namespace scarf2 {

struct ScanRegion {
    double kx_min, kx_max, ky_min, ky_max;
    int nx = 200, ny = 200;

    void validate() const {
        if (!(kx_max > kx_min) || !(ky_max > ky_min))
            throw std::invalid_argument("ScanRegion: max must exceed min");
        if (nx < 8 || ny < 8)
            throw std::invalid_argument("ScanRegion: resolution must be >= 8 per axis");
    }
    bool contains(Complex k, double pad = 0.0) const {
        return k.real() >= kx_min - pad && k.real() <= kx_max + pad &&
               k.imag() >= ky_min - pad && k.imag() <= ky_max + pad;
    }
};

enum class PoleClass { SS, SelfDualSSPair, BoundState, CCPEMember, UnpairedComplex, Unphysical };

inline const char* to_string(PoleClass c) {
    switch (c) {
    case PoleClass::SS: return "SS";
    case PoleClass::SelfDualSSPair: return "SelfDualSSPair";
    case PoleClass::BoundState: return "BoundState";
    case PoleClass::CCPEMember: return "CCPEMember";
    case PoleClass::UnpairedComplex: return "UnpairedComplex";
    case PoleClass::Unphysical: return "Unphysical";
    }
    return "?";
}

struct PoleRecord {
    Complex k;
    Complex E; // k^2
    PoleClass cls = PoleClass::UnpairedComplex;
    double residual = 0.0; // |1/t| at the refined root
    std::optional<std::size_t> partner; // index into the same list, for pairs
};

struct AmbiguousClassification : std::runtime_error {
    Complex k;
    explicit AmbiguousClassification(Complex k_)
        : std::runtime_error("root within tolerance of two pole classes"), k(k_) {}
};

struct PoleScan {
    std::vector<PoleRecord> poles;          // sorted by (Re k, Im k)
    std::vector<Complex> nonconverged;      // Newton seeds that failed
};

/// g(k) = 1/t(k) sampled on the region grid, row-major with iy slowest:
/// grid[iy * nx + ix] for k = kx_min + ix dx + i (ky_min + iy dy).
inline std::vector<Complex> inverse_t_grid(const ScarfParams& p, const ScanRegion& r) {
    r.validate();
    const double dx = (r.kx_max - r.kx_min) / (r.nx - 1);
    const double dy = (r.ky_max - r.ky_min) / (r.ny - 1);
    std::vector<Complex> grid(static_cast<std::size_t>(r.nx) * r.ny);
    for (int iy = 0; iy < r.ny; ++iy)
        for (int ix = 0; ix < r.nx; ++ix)
            grid[static_cast<std::size_t>(iy) * r.nx + ix] =
                inverse_transmission(p, {r.kx_min + ix * dx, r.ky_min + iy * dy});
    return grid;
}

namespace detail {

inline constexpr int kNewtonMaxIter = 100;
inline constexpr double kRootResidualTol = 1e-10;
inline constexpr double kRootDedupTol = 1e-6;

inline std::optional<Complex> newton_refine(const ScarfParams& p, Complex k0) {
    Complex k = k0;
    for (int it = 0; it < kNewtonMaxIter; ++it) {
        const Complex g = inverse_transmission(p, k);
        // Convergence is judged on the Newton step, not on |g| alone: deep
        // in the upper half plane 1/t is uniformly tiny, so a small
        // residual can occur far from the actual root.
        if (g == 0.0) return k;
        const double h = 1e-6 * std::max(1.0, std::abs(k));
        const Complex gp = inverse_transmission(p, k + h);
        const Complex gm = inverse_transmission(p, k - h);
        const Complex dg = (gp - gm) / (2.0 * h);
        if (!std::isfinite(dg.real()) || !std::isfinite(dg.imag()) || dg == 0.0)
            return std::nullopt;
        const Complex step = g / dg;
        k -= step;
        if (!std::isfinite(k.real()) || !std::isfinite(k.imag())) return std::nullopt;
        if (std::abs(step) < 1e-11 * std::max(1.0, std::abs(k))) {
            if (std::abs(inverse_transmission(p, k)) < kRootResidualTol) return k;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

inline bool sign_change(double a, double b, double c, double d) {
    const double mn = std::min(std::min(a, b), std::min(c, d));
    const double mx = std::max(std::max(a, b), std::max(c, d));
    return mn <= 0.0 && mx >= 0.0;
}

} // namespace detail

/// Classifies refined roots. Tolerances: |Im k| < 1e-7 counts as real,
/// |Re k| < 1e-7 as imaginary; pairs are matched by k2 ~ -conj(k1)
/// within 1e-6 (in energy: E2 = conj E1).
inline std::vector<PoleRecord> classify(const std::vector<Complex>& roots, const ScarfParams& p) {
    constexpr double axis_tol = 1e-7;
    constexpr double pair_tol = 1e-6;
    std::vector<PoleRecord> recs;
    recs.reserve(roots.size());
    for (Complex k : roots) {
        PoleRecord r;
        r.k = k;
        r.E = k * k;
        r.residual = std::abs(inverse_transmission(p, k));
        recs.push_back(r);
    }
    auto find_partner = [&](Complex target, std::size_t self) -> std::optional<std::size_t> {
        for (std::size_t j = 0; j < recs.size(); ++j)
            if (j != self && std::abs(recs[j].k - target) < pair_tol) return j;
        return std::nullopt;
    };
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const Complex k = recs[i].k;
        const bool on_real = std::abs(k.imag()) < axis_tol;
        const bool on_imag = std::abs(k.real()) < axis_tol;
        if (on_real && on_imag) throw AmbiguousClassification(k);
        if (k.imag() < -axis_tol) {
            recs[i].cls = PoleClass::Unphysical;
        } else if (on_real) {
            const auto partner = find_partner({-k.real(), k.imag()}, i);
            recs[i].cls = partner ? PoleClass::SelfDualSSPair : PoleClass::SS;
            recs[i].partner = partner;
        } else if (on_imag) {
            recs[i].cls = PoleClass::BoundState;
        } else {
            const auto partner = find_partner(-std::conj(k), i);
            recs[i].cls = partner ? PoleClass::CCPEMember : PoleClass::UnpairedComplex;
            recs[i].partner = partner;
        }
    }
    return recs;
}

/// Grid scan + Newton refinement over the region. Every returned root has
/// |1/t| < 1e-10; roots closer than 1e-6 are merged; seeds that fail to
/// converge are reported, never dropped silently.
inline PoleScan find_poles(const ScarfParams& p, const ScanRegion& r) {
    r.validate();
    const auto grid = inverse_t_grid(p, r);
    const double dx = (r.kx_max - r.kx_min) / (r.nx - 1);
    const double dy = (r.ky_max - r.ky_min) / (r.ny - 1);
    std::vector<Complex> roots;
    std::vector<Complex> failed;
    auto at = [&](int ix, int iy) { return grid[static_cast<std::size_t>(iy) * r.nx + ix]; };
    for (int iy = 0; iy + 1 < r.ny; ++iy) {
        for (int ix = 0; ix + 1 < r.nx; ++ix) {
            const Complex g00 = at(ix, iy), g10 = at(ix + 1, iy);
            const Complex g01 = at(ix, iy + 1), g11 = at(ix + 1, iy + 1);
            if (!detail::sign_change(g00.real(), g10.real(), g01.real(), g11.real())) continue;
            if (!detail::sign_change(g00.imag(), g10.imag(), g01.imag(), g11.imag())) continue;
            const Complex seed(r.kx_min + (ix + 0.5) * dx, r.ky_min + (iy + 0.5) * dy);
            const auto root = detail::newton_refine(p, seed);
            if (!root) {
                failed.push_back(seed);
                continue;
            }
            if (!r.contains(*root, std::max(dx, dy))) continue; // wandered out of the window
            bool dup = false;
            for (Complex q : roots)
                if (std::abs(q - *root) < detail::kRootDedupTol) { dup = true; break; }
            if (!dup) roots.push_back(*root);
        }
    }
    // Order by (Re, Im); Re values within the dedup tolerance count as a
    // tie so refinement noise cannot scramble a column of roots.
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        if (std::abs(a.real() - b.real()) > detail::kRootDedupTol) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    PoleScan scan;
    scan.poles = classify(roots, p);
    scan.nonconverged = std::move(failed);
    return scan;
}

struct EnergySpectrum {
    std::vector<Complex> energies;        // E = k^2, ordered by Re E
    std::optional<double> ss_energy;      // E* of an SS, when present
    std::optional<double> max_ccpe_re;    // max Re E over CCPE members
};

/// Maps poles to energies E = k^2 ordered by Re E, and reports (but
/// never enforces) the bound comparison E* vs max Re(E_CCPE).
inline EnergySpectrum energy_spectrum(const std::vector<PoleRecord>& recs) {
    EnergySpectrum out;
    for (const auto& r : recs) {
        out.energies.push_back(r.E);
        if (r.cls == PoleClass::SS || r.cls == PoleClass::SelfDualSSPair) {
            if (r.k.real() > 0.0) out.ss_energy = r.E.real();
        } else if (r.cls == PoleClass::CCPEMember) {
            if (!out.max_ccpe_re || r.E.real() > *out.max_ccpe_re)
                out.max_ccpe_re = r.E.real();
        }
    }
    std::sort(out.energies.begin(), out.energies.end(), [](Complex a, Complex b) {
        if (std::abs(a.real() - b.real()) > detail::kRootDedupTol) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

} // namespace scarf2

#endif // SCARF2_SPECTRAL_ANALYSIS_HPP
