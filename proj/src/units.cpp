#include "hartmankit/units.hpp"

#include "hartmankit/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace hartmankit::units {

namespace {

struct UnitEntry {
    std::string_view symbol;
    double scale;
    Dimension dim;
};

constexpr double kPi = std::numbers::pi;

const std::array kUnits = {
    UnitEntry{"J", 1.0, Dimension::energy},
    UnitEntry{"eV", eV, Dimension::energy},
    UnitEntry{"meV", 1e-3 * eV, Dimension::energy},
    UnitEntry{"keV", 1e3 * eV, Dimension::energy},
    UnitEntry{"Hz", 1.0, Dimension::frequency},
    UnitEntry{"kHz", 1e3, Dimension::frequency},
    UnitEntry{"MHz", 1e6, Dimension::frequency},
    UnitEntry{"GHz", 1e9, Dimension::frequency},
    UnitEntry{"THz", 1e12, Dimension::frequency},
    UnitEntry{"PHz", 1e15, Dimension::frequency},
    UnitEntry{"rad/s", 1.0 / (2.0 * kPi), Dimension::frequency},
    UnitEntry{"s", 1.0, Dimension::time},
    UnitEntry{"ms", 1e-3, Dimension::time},
    UnitEntry{"us", 1e-6, Dimension::time},
    UnitEntry{"\xC2\xB5s", 1e-6, Dimension::time},
    UnitEntry{"ns", 1e-9, Dimension::time},
    UnitEntry{"ps", 1e-12, Dimension::time},
    UnitEntry{"fs", 1e-15, Dimension::time},
    UnitEntry{"as", 1e-18, Dimension::time},
    UnitEntry{"m", 1.0, Dimension::length},
    UnitEntry{"cm", 1e-2, Dimension::length},
    UnitEntry{"mm", 1e-3, Dimension::length},
    UnitEntry{"um", 1e-6, Dimension::length},
    UnitEntry{"\xC2\xB5m", 1e-6, Dimension::length},
    UnitEntry{"nm", 1e-9, Dimension::length},
    UnitEntry{"rad", 1.0, Dimension::angle},
    UnitEntry{"deg", kPi / 180.0, Dimension::angle},
    UnitEntry{"kg", 1.0, Dimension::mass},
    UnitEntry{"m_e", m_e, Dimension::mass},
    UnitEntry{"%", 1e-2, Dimension::dimensionless},
    UnitEntry{"1", 1.0, Dimension::dimensionless},
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

std::string_view to_string(Dimension d) {
    switch (d) {
    case Dimension::energy: return "energy";
    case Dimension::frequency: return "frequency";
    case Dimension::time: return "time";
    case Dimension::length: return "length";
    case Dimension::angle: return "angle";
    case Dimension::mass: return "mass";
    case Dimension::dimensionless: return "dimensionless";
    }
    return "?";
}

double Quantity::as(Dimension expected) const {
    if (dim_ != expected)
        throw DomainError("expected " + std::string(to_string(expected)) + ", got " +
                          std::string(to_string(dim_)));
    return value_;
}

Quantity Quantity::operator+(const Quantity& other) const {
    return {value_ + other.as(dim_), dim_};
}

Quantity Quantity::operator-(const Quantity& other) const {
    return {value_ - other.as(dim_), dim_};
}

bool lookup_unit(std::string_view symbol, double& scale, Dimension& dim) {
    for (const auto& u : kUnits) {
        if (u.symbol == symbol) {
            scale = u.scale;
            dim = u.dim;
            return true;
        }
    }
    return false;
}

Quantity parse_quantity(std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first)
        throw DomainError("not a number: '" + std::string(text) + "'");
    const auto unit = trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));
    if (unit.empty())
        return {value, Dimension::dimensionless};
    double scale = 1.0;
    Dimension dim = Dimension::dimensionless;
    if (!lookup_unit(unit, scale, dim))
        throw DomainError("unknown unit '" + std::string(unit) + "'");
    return {value * scale, dim};
}

double energy_to_frequency(double energy) {
    if (!(energy > 0.0))
        throw DomainError("energy must be positive");
    return energy / h;
}

Wavenumbers quantum_wavenumbers(double energy, double height, double mass) {
    if (!(energy > 0.0) || !(height > 0.0) || !(mass > 0.0))
        throw DomainError("energy, barrier height and mass must be positive");
    if (energy >= height)
        throw AboveBarrierError("above-barrier: E >= V0, no tunneling");
    return {std::sqrt(2.0 * mass * energy) / hbar,
            std::sqrt(2.0 * mass * (height - energy)) / hbar};
}

} // namespace hartmankit::units
