#include "hartmankit/barriers.hpp"

#include "hartmankit/detail/parallel.hpp"
#include "hartmankit/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>

namespace hartmankit::barriers {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_non_negative(double v, const char* what) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw DomainError(std::string(what) + " must be finite and non-negative");
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(what) + " must be finite and positive");
}

bool is_symmetric(const DielectricStack& s) {
    if (s.n_in != s.n_out)
        return false;
    const auto n = s.layers.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        const auto& a = s.layers[i];
        const auto& b = s.layers[n - 1 - i];
        if (a.index != b.index || a.thickness != b.thickness)
            return false;
    }
    return true;
}

bool is_symmetric(const BarrierModel& model) {
    if (const auto* s = std::get_if<DielectricStack>(&model))
        return is_symmetric(*s);
    return true;
}

double port_ratio(const BarrierModel& model) {
    if (const auto* s = std::get_if<DielectricStack>(&model))
        return s->n_out / s->n_in;
    return 1.0;
}

struct FtirWavenumbers {
    double k_normal;  // in the prisms
    double kappa;     // in the gap
};

FtirWavenumbers ftir_wavenumbers(const FtirGap& g, double omega) {
    const double k_par = g.tangential_wavenumber();
    const double k1 = g.n1 * omega / units::c;
    const double k2 = g.n2 * omega / units::c;
    const double kz2 = k1 * k1 - k_par * k_par;
    const double kappa2 = k_par * k_par - k2 * k2;
    if (!(kz2 > 0.0))
        throw NotEvanescentError("FTIR: no propagating wave in the prism at this frequency");
    if (kappa2 == 0.0)
        throw SingularityError("FTIR: critical angle, gap decay constant is zero");
    if (kappa2 < 0.0)
        throw NotEvanescentError("FTIR: below the critical angle, gap is not evanescent");
    return {std::sqrt(kz2), std::sqrt(kappa2)};
}

struct GuideWavenumbers {
    double beta;
    double kappa;
};

GuideWavenumbers guide_wavenumbers(const UndersizedWaveguideBarrier& w, double omega) {
    const double nu = omega / kTwoPi;
    if (!(nu > w.cutoff_wide) || !(nu < w.cutoff_narrow))
        throw DomainError("waveguide: frequency " + std::to_string(nu) +
                          " Hz outside (cutoff_wide, cutoff_narrow)");
    const double scale = kTwoPi / units::c;
    return {scale * std::sqrt(nu * nu - w.cutoff_wide * w.cutoff_wide),
            scale * std::sqrt(w.cutoff_narrow * w.cutoff_narrow - nu * nu)};
}

ScatteringResponse evaluate_impl(const BarrierModel& model, const FrequencyGrid& grid,
                                 bool parallel) {
    validate(model);
    std::vector<cplx> t(grid.size());
    std::vector<cplx> r(grid.size());
    auto body = [&](std::size_t i) {
        const auto a = evaluate_at(model, grid[i]);
        t[i] = a.t;
        r[i] = a.r;
    };
    if (parallel)
        detail::parallel_for(grid.size(), body);
    else
        detail::serial_for(grid.size(), body);
    return ScatteringResponse{grid, std::move(t), std::move(r), port_ratio(model),
                              is_symmetric(model)};
}

} // namespace
FrequencyGrid::FrequencyGrid(std::vector<double> omega) : omega_(std::move(omega)) {
    if (omega_.size() < 3)
        throw DomainError("frequency grid needs at least 3 samples");
    for (std::size_t i = 0; i < omega_.size(); ++i) {
        if (!(omega_[i] > 0.0) || !std::isfinite(omega_[i]))
            throw DomainError("frequency grid samples must be finite and positive");
        if (i > 0 && !(omega_[i] > omega_[i - 1]))
            throw DomainError("frequency grid must be strictly increasing");
    }
}

FrequencyGrid FrequencyGrid::linspace(double start, double stop, std::size_t samples) {
    if (samples < 3)
        throw DomainError("frequency grid needs at least 3 samples");
    std::vector<double> w(samples);
    const double step = (stop - start) / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i)
        w[i] = start + step * static_cast<double>(i);
    w.back() = stop;
    return FrequencyGrid(std::move(w));
}

DielectricStack quarter_wave_stack(double n_high, double n_low, int periods,
                                   double design_frequency, double n_ambient) {
    require_positive(n_high, "n_high");
    require_positive(n_low, "n_low");
    require_positive(design_frequency, "design frequency");
    if (periods < 0)
        throw DomainError("periods must be non-negative");
    const double lambda0 = units::c / design_frequency;
    DielectricStack s;
    s.n_in = s.n_out = n_ambient;
    for (int p = 0; p < periods; ++p) {
        s.layers.push_back({n_high, lambda0 / (4.0 * n_high)});
        s.layers.push_back({n_low, lambda0 / (4.0 * n_low)});
    }
    return s;
}

double FtirGap::tangential_wavenumber() const {
    return kTwoPi * reference_frequency * n1 * std::sin(theta) / units::c;
}

double FtirGap::critical_angle() const {
    return std::asin(n2 / n1);
}

TransferMatrix TransferMatrix::layer(double n, double thickness, double omega) {
    const double phase = omega * n * thickness / units::c;
    const double cs = std::cos(phase);
    const double sn = std::sin(phase);
    return {cplx{cs}, -kI * sn / n, -kI * n * sn, cplx{cs}};
}

TransferMatrix TransferMatrix::operator*(const TransferMatrix& o) const {
    const auto& a = m_;
    const auto& b = o.m_;
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Amplitudes symmetric_slab(double outer, double inner, double kappa_d) {
    const double ratio = inner / outer;
    const double delta = 0.5 * (ratio - 1.0 / ratio);
    const double gamma = 0.5 * (ratio + 1.0 / ratio);
    // Scaled by 2 e^{-kappa d} so that opaque slabs neither overflow nor lose digits.
    const double q = std::exp(-2.0 * kappa_d);
    const cplx denom{1.0 + q, delta * (1.0 - q)};
    const cplx t = 2.0 * std::exp(-kappa_d) / denom;
    const cplx r = -kI * gamma * (1.0 - q) / denom;
    return {t, r};
}

Amplitudes quantum_sample(const RectangularQuantumBarrier& b, double energy) {
    const auto [k, kappa] = units::quantum_wavenumbers(energy, b.height, b.mass);
    return symmetric_slab(k, kappa, kappa * b.width);
}

Amplitudes stack_sample(const DielectricStack& s, double omega) {
    TransferMatrix m;
    for (const auto& layer : s.layers)
        m = m * TransferMatrix::layer(layer.index, layer.thickness, omega);
    const double a = s.n_in;
    const double b = s.n_out;
    const cplx common = a * m(0, 0) + a * b * m(0, 1);
    const cplx rest = m(1, 0) + b * m(1, 1);
    const cplx denom = common + rest;
    return {2.0 * a / denom, (common - rest) / denom};
}

Amplitudes ftir_sample(const FtirGap& g, double omega) {
    const auto [kz, kappa] = ftir_wavenumbers(g, omega);
    if (g.polarization == Polarization::s)
        return symmetric_slab(kz, kappa, kappa * g.gap);
    return symmetric_slab(kz / (g.n1 * g.n1), kappa / (g.n2 * g.n2), kappa * g.gap);
}

Amplitudes waveguide_sample(const UndersizedWaveguideBarrier& w, double omega) {
    const auto [beta, kappa] = guide_wavenumbers(w, omega);
    return symmetric_slab(beta, kappa, kappa * w.length);
}

std::optional<double> decay_constant(const BarrierModel& model, double omega) {
    return std::visit(
        Overloaded{
            [&](const RectangularQuantumBarrier& b) -> std::optional<double> {
                return units::quantum_wavenumbers(units::hbar * omega, b.height, b.mass).kappa;
            },
            [](const DielectricStack&) -> std::optional<double> { return std::nullopt; },
            [&](const FtirGap& g) -> std::optional<double> {
                return ftir_wavenumbers(g, omega).kappa;
            },
            [&](const UndersizedWaveguideBarrier& w) -> std::optional<double> {
                return guide_wavenumbers(w, omega).kappa;
            },
        },
        model);
}

std::optional<double> width_of(const BarrierModel& model) {
    return std::visit(
        Overloaded{
            [](const RectangularQuantumBarrier& b) -> std::optional<double> { return b.width; },
            [](const DielectricStack&) -> std::optional<double> { return std::nullopt; },
            [](const FtirGap& g) -> std::optional<double> { return g.gap; },
            [](const UndersizedWaveguideBarrier& w) -> std::optional<double> { return w.length; },
        },
        model);
}

BarrierModel with_width(const BarrierModel& model, double width) {
    require_non_negative(width, "barrier width");
    return std::visit(
        Overloaded{
            [&](RectangularQuantumBarrier b) -> BarrierModel {
                b.width = width;
                return b;
            },
            [](const DielectricStack&) -> BarrierModel {
                throw UnsupportedConfigurationError(
                    "a layer stack has no single barrier width to vary");
            },
            [&](FtirGap g) -> BarrierModel {
                g.gap = width;
                return g;
            },
            [&](UndersizedWaveguideBarrier w) -> BarrierModel {
                w.length = width;
                return w;
            },
        },
        model);
}

void validate(const BarrierModel& model) {
    std::visit(Overloaded{
                   [](const RectangularQuantumBarrier& b) {
                       require_positive(b.height, "barrier height");
                       require_non_negative(b.width, "barrier width");
                       require_positive(b.mass, "mass");
                   },
                   [](const DielectricStack& s) {
                       require_positive(s.n_in, "n_in");
                       require_positive(s.n_out, "n_out");
                       for (const auto& l : s.layers) {
                           require_positive(l.index, "layer index");
                           require_non_negative(l.thickness, "layer thickness");
                       }
                   },
                   [](const FtirGap& g) {
                       require_positive(g.n2, "gap index n2");
                       require_positive(g.reference_frequency, "reference frequency");
                       require_non_negative(g.gap, "gap width");
                       if (!(g.n1 > g.n2))
                           throw DomainError("FTIR needs n1 > n2");
                       if (!(g.theta > 0.0) || !(g.theta < std::numbers::pi / 2))
                           throw DomainError("FTIR angle must lie in (0, pi/2)");
                       const double crit = g.critical_angle();
                       if (std::abs(g.theta - crit) <= 1e-12 * crit)
                           throw SingularityError("FTIR: incidence exactly at the critical angle");
                       if (g.theta < crit)
                           throw NotEvanescentError(
                               "FTIR: incidence below the critical angle, gap is not evanescent");
                   },
                   [](const UndersizedWaveguideBarrier& w) {
                       require_positive(w.cutoff_wide, "cutoff_wide");
                       require_non_negative(w.length, "guide length");
                       if (!(w.cutoff_narrow > w.cutoff_wide))
                           throw DomainError("waveguide needs cutoff_narrow > cutoff_wide");
                   },
               },
               model);
}

Amplitudes evaluate_at(const BarrierModel& model, double omega) {
    return std::visit(
        Overloaded{
            [&](const RectangularQuantumBarrier& b) { return quantum_sample(b, units::hbar * omega); },
            [&](const DielectricStack& s) { return stack_sample(s, omega); },
            [&](const FtirGap& g) { return ftir_sample(g, omega); },
            [&](const UndersizedWaveguideBarrier& w) { return waveguide_sample(w, omega); },
        },
        model);
}

ScatteringResponse evaluate(const BarrierModel& model, const FrequencyGrid& grid) {
    return evaluate_impl(model, grid, true);
}

namespace serial {
ScatteringResponse evaluate(const BarrierModel& model, const FrequencyGrid& grid) {
    return evaluate_impl(model, grid, false);
}
} // namespace serial

ScatteringResponse quantum_amplitudes(const RectangularQuantumBarrier& b,
                                      std::span<const double> energies) {
    if (energies.empty())
        throw DomainError("empty energy grid");
    std::vector<double> omega(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i)
        omega[i] = energies[i] / units::hbar;
    return evaluate(b, FrequencyGrid(std::move(omega)));
}

ScatteringResponse stack_amplitudes(const DielectricStack& s, const FrequencyGrid& grid) {
    return evaluate(s, grid);
}

ScatteringResponse ftir_amplitudes(const FtirGap& g, const FrequencyGrid& grid) {
    return evaluate(g, grid);
}

ScatteringResponse waveguide_amplitudes(const UndersizedWaveguideBarrier& w,
                                        const FrequencyGrid& grid) {
    return evaluate(w, grid);
}

} // namespace hartmankit::barriers
