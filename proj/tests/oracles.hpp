#pragma once

// Test-only reference computations, written independently of the library's
// closed-form slab kernel and characteristic-matrix stack.

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

namespace oracle {

using lcplx = std::complex<long double>;

/// One homogeneous region of a piecewise-constant 1-D medium.
struct Region {
    lcplx q;        ///< wavenumber along x (imaginary part > 0 for evanescent)
    long double g;  ///< matching weight: psi and psi'/g are continuous
};

struct Amplitudes {
    lcplx t;  ///< exit-face field / entry-face incident field
    lcplx r;  ///< entry-face reflected / incident
};

/// Plane-wave (forward/backward amplitude) transfer through regions
/// 0 .. N with interfaces at x[0] = 0 < x[1] < ... < x[N-1].
inline Amplitudes wave_matrix(const std::vector<Region>& regions, const std::vector<long double>& x) {
    const std::size_t n = regions.size() - 1;
    lcplx a = 1.0L;  // A_N
    lcplx b = 0.0L;  // B_N
    const lcplx i{0.0L, 1.0L};
    for (std::size_t j = n; j-- > 0;) {
        const auto& lo = regions[j];
        const auto& hi = regions[j + 1];
        const long double xb = x[j];
        const lcplx ea = a * std::exp(i * hi.q * xb);
        const lcplx eb = b * std::exp(-i * hi.q * xb);
        const lcplx rho = (hi.q / hi.g) / (lo.q / lo.g);
        const lcplx fa = 0.5L * ((1.0L + rho) * ea + (1.0L - rho) * eb);
        const lcplx fb = 0.5L * ((1.0L - rho) * ea + (1.0L + rho) * eb);
        a = fa * std::exp(-i * lo.q * xb);
        b = fb * std::exp(i * lo.q * xb);
    }
    const long double x_exit = x.back();
    const lcplx out = std::exp(i * regions.back().q * x_exit);
    return {out / a, b / a};
}

inline lcplx evanescent(long double kappa) {
    return {0.0L, kappa};
}

/// Square barrier of height V0 and width d for a particle of energy E and mass m.
inline Amplitudes quantum_barrier(long double E, long double V0, long double d, long double m,
                                  long double hbar) {
    const long double k = std::sqrt(2.0L * m * E) / hbar;
    const long double kappa = std::sqrt(2.0L * m * (V0 - E)) / hbar;
    return wave_matrix({{k, 1.0L}, {evanescent(kappa), 1.0L}, {k, 1.0L}}, {0.0L, d});
}

/// Normal-incidence dielectric stack.
inline Amplitudes stack(const std::vector<std::pair<long double, long double>>& layers, long double n_in,
                        long double n_out, long double omega, long double c) {
    std::vector<Region> regions{{n_in * omega / c, 1.0L}};
    std::vector<long double> x{0.0L};
    for (const auto& [n, d] : layers) {
        regions.push_back({n * omega / c, 1.0L});
        x.push_back(x.back() + d);
    }
    regions.push_back({n_out * omega / c, 1.0L});
    return wave_matrix(regions, x);
}

/// |t|^2 of an opaque symmetric barrier: 16 k^2 kappa^2 / (k^2 + kappa^2)^2 e^{-2 kappa d}.
inline double opaque_transmission(double k, double kappa, double d) {
    const double s = k * k + kappa * kappa;
    return 16.0 * k * k * kappa * kappa / (s * s) * std::exp(-2.0 * kappa * d);
}

/// 64-bit FNV-1a of a file's bytes.
inline std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

/// Finite-difference derivative of a scalar function by a wide symmetric
/// 7-point stencil, for checking the library's own differentiation.
template <class F>
double derivative7(F&& f, double x, double h) {
    return (-f(x - 3 * h) + 9 * f(x - 2 * h) - 45 * f(x - h) + 45 * f(x + h) - 9 * f(x + 2 * h) +
            f(x + 3 * h)) /
           (60.0 * h);
}

} // namespace oracle
