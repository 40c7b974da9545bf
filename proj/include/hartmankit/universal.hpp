#pragma once

#include <optional>

namespace hartmankit::universal {

/// T = 1 / nu.
struct UniversalTime {
    double T;   ///< s
    double nu;  ///< Hz
};

UniversalTime universal_time(double nu);

/// tau = h / E for a particle of energy E (J).
double particle_universal_time(double energy);

/// The Schroedinger square-barrier factor in its sqrt and ratio forms, side by side.
struct EspositoQuantumResult {
    double tau_form_sqrt;   ///< hbar / sqrt(E (V0 - E)), s
    double tau_form_ratio;  ///< (1/nu) E / (4 pi^2 (V0 - E)), nu = E/h, s
    bool consistent;        ///< the two agree within 1 %
};

EspositoQuantumResult esposito_quantum(double energy, double height);

struct EspositoFtirResult {
    double tau_A;      ///< s
    double A;          ///< dimensionless geometry factor
    bool near_critical;  ///< A > 100: approaching the critical-angle divergence
};

/// tau_A = (1/nu) n1 sin^2(theta) / (pi cos(theta) sqrt(n1^2 sin^2(theta) - n2^2)).
EspositoFtirResult esposito_ftir(double n1, double n2, double theta, double nu);

struct TimeRatios {
    double tau_over_T;
    std::optional<double> tau_over_tau_A;
};

TimeRatios compare_times(double tau_phase, double nu, std::optional<double> tau_A = std::nullopt);

} // namespace hartmankit::universal
