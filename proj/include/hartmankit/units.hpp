#pragma once

#include <numbers>
#include <string>
#include <string_view>

namespace hartmankit::units {

/// CODATA 2018. h, c and eV are exact by SI definition; hbar is derived from h.
struct PhysicalConstants {
    double h;     ///< Planck constant, J s
    double hbar;  ///< reduced Planck constant, J s
    double c;     ///< speed of light in vacuum, m/s
    double m_e;   ///< electron mass, kg
    double eV;    ///< electron-volt, J
};

inline constexpr PhysicalConstants codata2018{
    6.62607015e-34,
    6.62607015e-34 / (2.0 * std::numbers::pi),
    299792458.0,
    9.1093837015e-31,
    1.602176634e-19,
};

inline constexpr double h = codata2018.h;
inline constexpr double hbar = codata2018.hbar;
inline constexpr double c = codata2018.c;
inline constexpr double m_e = codata2018.m_e;
inline constexpr double eV = codata2018.eV;

enum class Dimension { energy, frequency, time, length, angle, mass, dimensionless };

std::string_view to_string(Dimension d);

/// A value in SI units tagged with its dimension. Frequencies are stored in Hz
/// (cycles per second), angles in radians.
class Quantity {
public:
    constexpr Quantity(double value, Dimension dim) : value_(value), dim_(dim) {}

    constexpr double si() const noexcept { return value_; }
    constexpr Dimension dimension() const noexcept { return dim_; }

    /// SI value, or DomainError if the dimension differs.
    double as(Dimension expected) const;

    Quantity operator+(const Quantity& other) const;
    Quantity operator-(const Quantity& other) const;
    constexpr Quantity operator*(double s) const { return {value_ * s, dim_}; }

private:
    double value_;
    Dimension dim_;
};

/// Parses "54.39 eV", "120ps", "45 deg", "8.7 GHz". Throws DomainError on an
/// unknown unit or missing number. A bare number parses as dimensionless.
Quantity parse_quantity(std::string_view text);

/// Looks up a unit symbol; returns false if unknown.
bool lookup_unit(std::string_view symbol, double& scale, Dimension& dim);

/// nu = E / h.
double energy_to_frequency(double energy);

struct Wavenumbers {
    double k;      ///< propagating wavenumber outside the barrier, 1/m
    double kappa;  ///< decay constant under the barrier, 1/m
};

/// k = sqrt(2 m E)/hbar and kappa = sqrt(2 m (V0 - E))/hbar for 0 < E < V0.
Wavenumbers quantum_wavenumbers(double energy, double height, double mass);

} // namespace hartmankit::units
