#include "hartmankit/phasetime.hpp"

#include "hartmankit/detail/parallel.hpp"
#include "hartmankit/errors.hpp"
#include "hartmankit/universal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace hartmankit::phasetime {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

std::vector<double> local_nodes(double center, double step) {
    std::vector<double> nodes(9);
    for (int j = -4; j <= 4; ++j)
        nodes[static_cast<std::size_t>(j + 4)] = center + step * j;
    nodes[4] = center;
    return nodes;
}

HartmanPoint scan_point(const BarrierModel& model, double width, double omega) {
    const auto m = barriers::with_width(model, width);
    const auto kappa = barriers::decay_constant(m, omega);
    const auto d = phase_time(m, omega);
    return {width, d.tau, d.error_estimate, kappa.value_or(0.0) * width};
}

void check_widths(std::span<const double> widths) {
    if (widths.empty())
        throw DomainError("empty width list");
    for (std::size_t i = 0; i < widths.size(); ++i) {
        if (!(widths[i] >= 0.0))
            throw DomainError("widths must be non-negative");
        if (i > 0 && !(widths[i] > widths[i - 1]))
            throw DomainError("widths must be strictly increasing");
    }
}

template <class For>
std::vector<HartmanPoint> scan(const BarrierModel& model, std::span<const double> widths,
                               double omega, For&& loop) {
    check_widths(widths);
    std::vector<HartmanPoint> out(widths.size());
    loop(widths.size(), [&](std::size_t i) { out[i] = scan_point(model, widths[i], omega); });
    return out;
}

} // namespace

PhaseCurve unwrap_phase(const FrequencyGrid& grid, std::span<const barriers::cplx> amplitude) {
    if (amplitude.size() != grid.size())
        throw DomainError("amplitude and grid lengths differ");
    // A vanishing amplitude has no phase. Such samples keep the running value
    // so that signed zeros cannot fake a jump of pi.
    auto phase_of = [](barriers::cplx z) { return z == barriers::cplx{} ? 0.0 : std::arg(z); };
    std::vector<double> phi(grid.size());
    phi[0] = phase_of(amplitude[0]);
    for (std::size_t i = 1; i < phi.size(); ++i) {
        const auto prod = amplitude[i] * std::conj(amplitude[i - 1]);
        const double step = prod == barriers::cplx{} ? 0.0 : std::arg(prod);
        if (std::abs(step) > kHalfPi)
            throw UnderResolvedGridError(
                "phase step of " + std::to_string(step) + " rad between samples " +
                std::to_string(i - 1) + " and " + std::to_string(i) +
                " exceeds pi/2; refine the grid");
        phi[i] = phi[i - 1] + step;
    }
    return {grid, std::move(phi)};
}

PhaseCurve unwrap_phase(const ScatteringResponse& resp, Channel channel) {
    return unwrap_phase(resp.grid, channel == Channel::transmission
                                       ? std::span<const barriers::cplx>(resp.t)
                                       : std::span<const barriers::cplx>(resp.r));
}

Delay group_delay(const PhaseCurve& curve, double at) {
    const auto w = curve.grid.omega();
    const auto n = w.size();
    if (!(at > w.front()) || !(at < w.back()))
        throw DomainError("group delay requested on or outside the grid boundary");

    const auto it = std::lower_bound(w.begin(), w.end(), at);
    auto i = static_cast<std::size_t>(it - w.begin());
    if (i > 0 && std::abs(w[i - 1] - at) < std::abs(w[i] - at))
        --i;
    const double h_local = w[i + 1] - w[i];
    if (std::abs(w[i] - at) > 1e-9 * h_local)
        throw DomainError("group delay must be evaluated at a grid node");
    if (i < 4 || i + 4 >= n)
        throw DomainError("group delay needs four grid samples on each side of the node");

    const double h = (w[i + 4] - w[i - 4]) / 8.0;
    for (std::size_t j = i - 4; j < i + 4; ++j) {
        if (std::abs((w[j + 1] - w[j]) - h) > 1e-6 * h)
            throw DomainError("grid is not evenly spaced around the evaluation node");
    }

    const auto& p = curve.phi;
    const double d1 = (p[i - 2] - 8.0 * p[i - 1] + 8.0 * p[i + 1] - p[i + 2]) / (12.0 * h);
    const double d2 = (p[i - 4] - 8.0 * p[i - 2] + 8.0 * p[i + 2] - p[i + 4]) / (24.0 * h);
    double scale = 0.0;
    for (std::size_t j = i - 4; j <= i + 4; ++j)
        scale = std::max(scale, std::abs(p[j]));
    const double rounding = 20.0 * std::numeric_limits<double>::epsilon() * scale / h;
    return {d1 + (d1 - d2) / 15.0, std::abs(d1 - d2) / 15.0 + rounding};
}

Delay phase_time(const BarrierModel& model, double omega, Channel channel, double rel_step) {
    if (!(omega > 0.0))
        throw DomainError("angular frequency must be positive");
    if (!(rel_step > 0.0) || !(rel_step < 0.1))
        throw DomainError("relative step must lie in (0, 0.1)");
    const FrequencyGrid grid(local_nodes(omega, omega * rel_step));
    const auto resp = barriers::serial::evaluate(model, grid);
    return group_delay(unwrap_phase(resp, channel), omega);
}

std::vector<HartmanPoint> hartman_scan(const BarrierModel& model, std::span<const double> widths,
                                       double omega) {
    return scan(model, widths, omega,
                [](std::size_t n, auto&& body) { detail::parallel_for(n, body); });
}

namespace serial {
std::vector<HartmanPoint> hartman_scan(const BarrierModel& model, std::span<const double> widths,
                                       double omega) {
    return scan(model, widths, omega,
                [](std::size_t n, auto&& body) { detail::serial_for(n, body); });
}
} // namespace serial

DelayComparison reflection_delay_equals_transmission(const ScatteringResponse& resp, double at) {
    if (!resp.symmetric)
        throw UnsupportedConfigurationError(
            "reflection/transmission delay equality needs a spatially symmetric barrier");
    const auto tr = group_delay(unwrap_phase(resp, Channel::transmission), at);
    const auto rf = group_delay(unwrap_phase(resp, Channel::reflection), at);
    return {rf, tr, std::abs(rf.tau - tr.tau)};
}

double zero_time_proxy(const BarrierModel& model, double omega, double rel_width_step) {
    const auto width = barriers::width_of(model);
    if (!width)
        throw UnsupportedConfigurationError("model has no barrier width");
    if (*width > 0.0) {
        const double h = rel_width_step * *width;
        const double up = phase_time(barriers::with_width(model, *width + h), omega).tau;
        const double down = phase_time(barriers::with_width(model, *width - h), omega).tau;
        return (up - down) / (2.0 * h);
    }
    const double kappa = barriers::decay_constant(model, omega).value();
    const double h = rel_width_step / kappa;
    const double up = phase_time(barriers::with_width(model, h), omega).tau;
    const double here = phase_time(model, omega).tau;
    return (up - here) / h;
}

LateralShift goos_haenchen_shift(const barriers::FtirGap& gap, double omega) {
    if (!(omega > 0.0))
        throw DomainError("angular frequency must be positive");
    barriers::validate(gap);
    const double k_par = omega * gap.n1 * std::sin(gap.theta) / units::c;
    const double k1 = omega * gap.n1 / units::c;
    const double k2 = omega * gap.n2 / units::c;
    const double kappa = std::sqrt(k_par * k_par - k2 * k2);

    const auto nodes = local_nodes(k_par, 1e-4 * k_par);
    std::vector<barriers::cplx> r(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        auto g = gap;
        g.theta = std::asin(std::min(1.0, nodes[j] / k1));
        g.reference_frequency = omega / (2.0 * std::numbers::pi);
        r[j] = barriers::ftir_sample(g, omega).r;
    }
    const FrequencyGrid k_grid(nodes);
    const auto slope = group_delay(unwrap_phase(k_grid, r), k_par);

    LateralShift out{};
    out.shift = -slope.tau;
    out.error_estimate = slope.error_estimate;
    out.kappa_d = kappa * gap.gap;
    out.ill_conditioned = out.kappa_d < 2.0;
    out.tangential_wavenumber = k_par;
    out.trace_velocity = omega / k_par;
    out.interaction_time = out.shift / out.trace_velocity;
    out.beam_velocity_component = units::c * std::sin(gap.theta) / gap.n1;
    return out;
}

std::string family_name(const BarrierModel& model) {
    static constexpr const char* names[] = {"quantum", "stack", "ftir", "waveguide"};
    return names[model.index()];
}

TunnelingTimeReport tunneling_time_report(const BarrierModel& model, const FrequencyGrid& grid,
                                          double at) {
    const auto resp = barriers::evaluate(model, grid);
    TunnelingTimeReport rep{};
    rep.family = family_name(model);
    rep.omega = at;
    rep.nu = at / (2.0 * std::numbers::pi);
    rep.transmission = group_delay(unwrap_phase(resp, Channel::transmission), at);
    if (resp.symmetric)
        rep.reflection = group_delay(unwrap_phase(resp, Channel::reflection), at);
    rep.T_universal = universal::universal_time(rep.nu).T;
    rep.tau_over_T = rep.transmission.tau * rep.nu;
    rep.grid_samples = grid.size();
    rep.grid_start = grid.front();
    rep.grid_stop = grid.back();

    const double tau = rep.transmission.tau;
    if (const auto* q = std::get_if<barriers::RectangularQuantumBarrier>(&model)) {
        const auto esp = universal::esposito_quantum(units::hbar * at, q->height);
        rep.esposito.push_back({"quantum_sqrt_form", esp.tau_form_sqrt, tau / esp.tau_form_sqrt});
        rep.esposito.push_back({"quantum_ratio_form", esp.tau_form_ratio, tau / esp.tau_form_ratio});
        rep.esposito_consistent = esp.consistent;
        rep.mass = q->mass;
    } else if (const auto* g = std::get_if<barriers::FtirGap>(&model)) {
        // Angle actually met at this frequency for the fixed tangential wavenumber.
        const double sin_theta = g->tangential_wavenumber() * units::c / (g->n1 * at);
        const auto esp = universal::esposito_ftir(g->n1, g->n2, std::asin(sin_theta), rep.nu);
        rep.esposito.push_back({"ftir", esp.tau_A, tau / esp.tau_A});
    }
    if (const auto width = barriers::width_of(model)) {
        rep.kappa_d = barriers::decay_constant(model, at).value() * *width;
        rep.dtau_dwidth = zero_time_proxy(model, at);
    }
    return rep;
}

} // namespace hartmankit::phasetime
