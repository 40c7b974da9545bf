#include "hartmankit/universal.hpp"

#include "hartmankit/errors.hpp"
#include "hartmankit/units.hpp"

#include <cmath>
#include <numbers>

namespace hartmankit::universal {

UniversalTime universal_time(double nu) {
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw DomainError("carrier frequency must be positive");
    return {1.0 / nu, nu};
}

double particle_universal_time(double energy) {
    // Composed rather than h / E so that it agrees bit-for-bit with T(E / h).
    return universal_time(units::energy_to_frequency(energy)).T;
}

EspositoQuantumResult esposito_quantum(double energy, double height) {
    if (!(energy > 0.0) || !(energy < height))
        throw DomainError("Esposito quantum factor needs 0 < E < V0");
    constexpr double pi = std::numbers::pi;
    const double below = height - energy;
    const double nu = units::energy_to_frequency(energy);
    EspositoQuantumResult out{};
    out.tau_form_sqrt = units::hbar / std::sqrt(energy * below);
    out.tau_form_ratio = (1.0 / nu) * energy / (4.0 * pi * pi * below);
    out.consistent =
        std::abs(out.tau_form_sqrt - out.tau_form_ratio) <= 0.01 * out.tau_form_sqrt;
    return out;
}

EspositoFtirResult esposito_ftir(double n1, double n2, double theta, double nu) {
    if (!(n2 > 0.0) || !(n1 > n2))
        throw DomainError("Esposito FTIR factor needs n1 > n2 > 0");
    if (!(nu > 0.0))
        throw DomainError("carrier frequency must be positive");
    if (!(theta < std::numbers::pi / 2))
        throw DomainError("angle must be below pi/2");
    const double crit = std::asin(n2 / n1);
    if (std::abs(theta - crit) <= 1e-12 * crit)
        throw SingularityError("angle at the critical angle: factor diverges");
    const double s = std::sin(theta);
    const double root2 = n1 * n1 * s * s - n2 * n2;
    if (!(theta > 0.0) || !(root2 > 0.0))
        throw SingularityError("angle at or below the critical angle: factor diverges");
    const double A = n1 * s * s / (std::numbers::pi * std::cos(theta) * std::sqrt(root2));
    return {A / nu, A, A > 100.0};
}

TimeRatios compare_times(double tau_phase, double nu, std::optional<double> tau_A) {
    if (!(tau_phase > 0.0) || !(nu > 0.0))
        throw DomainError("times and frequencies must be positive");
    TimeRatios out{tau_phase * nu, std::nullopt};
    if (tau_A) {
        if (!(*tau_A > 0.0))
            throw DomainError("tau_A must be positive");
        out.tau_over_tau_A = tau_phase / *tau_A;
    }
    return out;
}

} // namespace hartmankit::universal
