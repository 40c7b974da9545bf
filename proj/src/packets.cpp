#include "hartmankit/packets.hpp"

#include "hartmankit/detail/parallel.hpp"
#include "hartmankit/errors.hpp"
#include "hartmankit/phasetime.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

namespace hartmankit::packets {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};

class ForwardDft {
public:
    explicit ForwardDft(std::size_t n)
        : n_(n),
          in_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))),
          out_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), in_.get(), out_.get(), FFTW_FORWARD,
                                 FFTW_ESTIMATE);
    }
    ~ForwardDft() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    ForwardDft(const ForwardDft&) = delete;
    ForwardDft& operator=(const ForwardDft&) = delete;

    cplx* input() { return reinterpret_cast<cplx*>(in_.get()); }
    const cplx* output() const { return reinterpret_cast<const cplx*>(out_.get()); }
    void execute() { fftw_execute(plan_); }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::unique_ptr<fftw_complex, FftwFree> in_;
    std::unique_ptr<fftw_complex, FftwFree> out_;
    fftw_plan plan_;
};

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

struct Interpolated {
    std::vector<cplx> t;
    std::vector<cplx> r;
};

bool same_nodes(const barriers::FrequencyGrid& a, const barriers::FrequencyGrid& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > 1e-12 * a[i])
            return false;
    return true;
}

std::vector<cplx> interpolate(const barriers::FrequencyGrid& src, const std::vector<cplx>& values,
                              const phasetime::PhaseCurve& phase,
                              const barriers::FrequencyGrid& dst) {
    const auto w = src.omega();
    std::vector<cplx> out(dst.size());
    for (std::size_t i = 0; i < dst.size(); ++i) {
        const double x = dst[i];
        auto it = std::lower_bound(w.begin(), w.end(), x);
        std::size_t hi = static_cast<std::size_t>(it - w.begin());
        if (hi < w.size() && std::abs(w[hi] - x) <= 1e-12 * x) {
            out[i] = values[hi];
            continue;
        }
        if (hi > 0 && std::abs(w[hi - 1] - x) <= 1e-12 * x) {
            out[i] = values[hi - 1];
            continue;
        }
        const std::size_t lo = hi - 1;
        const double f = (x - w[lo]) / (w[hi] - w[lo]);
        const double mag = (1.0 - f) * std::abs(values[lo]) + f * std::abs(values[hi]);
        const double phi = (1.0 - f) * phase.phi[lo] + f * phase.phi[hi];
        out[i] = std::polar(mag, phi);
    }
    return out;
}

} // namespace

double GaussianPacketSpec::sigma_t() const {
    return 1.0 / (kTwoPi * sigma_nu());
}

PacketSpectrum synthesize_spectrum(const GaussianPacketSpec& spec) {
    if (!(spec.carrier > 0.0))
        throw DomainError("carrier frequency must be positive");
    if (!(spec.relative_bandwidth > 0.0) || !(spec.relative_bandwidth <= 0.05))
        throw NarrowbandViolation("narrowband violation: relative bandwidth must lie in (0, 0.05]");
    if (!(spec.t_end > spec.t_start))
        throw DomainError("time window must have t_end > t_start");
    if (spec.samples < 1024 || !is_power_of_two(spec.samples))
        throw DomainError("sample count must be a power of two and at least 1024");

    const double sigma_nu = spec.sigma_nu();
    const double sigma_t = spec.sigma_t();
    const double t_center = spec.t_center.value_or(spec.t_start + 6.0 * sigma_t);
    const double slack = 1e-9 * sigma_t;
    if (t_center - 6.0 * sigma_t < spec.t_start - slack ||
        t_center + 6.0 * sigma_t > spec.t_end + slack)
        throw DomainError("time window does not contain +-6 sigma of the envelope");

    const double window = spec.t_end - spec.t_start;
    const double spacing = 1.0 / window;
    const int half = static_cast<int>(std::floor(6.0 * sigma_nu / spacing + 1e-9));
    const auto lines = static_cast<std::size_t>(2 * half + 1);
    if (lines < 3)
        throw DomainError("time window too short to resolve the spectrum");
    if (lines > spec.samples)
        throw DomainError("too few time samples for the spectral extent (aliasing)");

    std::vector<double> omega(lines);
    std::vector<cplx> amp(lines);
    const double norm = spacing / (sigma_nu * std::sqrt(kTwoPi));
    for (int m = -half; m <= half; ++m) {
        const auto idx = static_cast<std::size_t>(m + half);
        const double offset = m * spacing;
        omega[idx] = kTwoPi * (spec.carrier + offset);
        // Baseband phase only: the common carrier phase does not move the envelope.
        const double g = norm * std::exp(-0.5 * offset * offset / (sigma_nu * sigma_nu));
        amp[idx] = std::polar(g, kTwoPi * offset * t_center);
    }
    return PacketSpectrum{barriers::FrequencyGrid(std::move(omega)),
                          std::move(amp),
                          -half,
                          spec.carrier,
                          spacing,
                          spec.t_start,
                          spec.t_end,
                          spec.samples,
                          t_center};
}

PacketTrace to_trace(const PacketSpectrum& spectrum, std::span<const cplx> amplitude,
                     TraceChannel channel) {
    if (amplitude.size() != spectrum.grid.size())
        throw DomainError("spectral amplitude count does not match the packet spectrum");
    const std::size_t n = spectrum.samples;
    ForwardDft dft(n);
    std::fill(dft.input(), dft.input() + n, cplx{});
    for (std::size_t idx = 0; idx < amplitude.size(); ++idx) {
        const long m = spectrum.first_line + static_cast<long>(idx);
        const auto k = static_cast<std::size_t>((m % static_cast<long>(n) + static_cast<long>(n)) %
                                                static_cast<long>(n));
        const double shift = -kTwoPi * static_cast<double>(m) * spectrum.spacing * spectrum.t_start;
        dft.input()[k] = amplitude[idx] * std::polar(1.0, shift);
    }
    dft.execute();

    PacketTrace trace{std::vector<double>(n), std::vector<double>(n), channel};
    const double dt = spectrum.time_step();
    for (std::size_t j = 0; j < n; ++j) {
        trace.times[j] = spectrum.t_start + dt * static_cast<double>(j);
        trace.envelope[j] = std::abs(dft.output()[j]);
    }
    return trace;
}

PacketTrace incident_trace(const PacketSpectrum& spectrum) {
    return to_trace(spectrum, spectrum.amplitude, TraceChannel::incident);
}

PropagatedTraces propagate(const PacketSpectrum& spectrum,
                           const barriers::ScatteringResponse& resp) {
    const auto& g = spectrum.grid;
    const double lo = resp.grid.front() * (1.0 - 1e-12);
    const double hi = resp.grid.back() * (1.0 + 1e-12);
    if (g.front() < lo || g.back() > hi)
        throw CoverageError("packet spectrum extends outside the response grid");

    std::vector<cplx> t;
    std::vector<cplx> r;
    if (same_nodes(g, resp.grid)) {
        t = resp.t;
        r = resp.r;
    } else {
        t = interpolate(resp.grid, resp.t,
                        phasetime::unwrap_phase(resp, phasetime::Channel::transmission), g);
        r = interpolate(resp.grid, resp.r,
                        phasetime::unwrap_phase(resp, phasetime::Channel::reflection), g);
    }

    PropagatedTraces out;
    out.transmitted_spectrum.resize(g.size());
    out.reflected_spectrum.resize(g.size());
    detail::parallel_for(g.size(), [&](std::size_t i) {
        out.transmitted_spectrum[i] = spectrum.amplitude[i] * t[i];
        out.reflected_spectrum[i] = spectrum.amplitude[i] * r[i];
    });
    out.transmitted = to_trace(spectrum, out.transmitted_spectrum, TraceChannel::transmitted);
    out.reflected = to_trace(spectrum, out.reflected_spectrum, TraceChannel::reflected);
    return out;
}

double peak_arrival(const PacketTrace& trace) {
    const auto& y = trace.envelope;
    if (y.size() < 3 || y.size() != trace.times.size())
        throw DomainError("trace needs at least 3 samples");
    const auto imax = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    const double peak = y[imax];
    for (std::size_t j = 0; j < y.size(); ++j) {
        const auto gap = j > imax ? j - imax : imax - j;
        if (gap > 1 && y[j] >= peak * (1.0 - 1e-12))
            throw AmbiguousPeakError("ambiguous peak: several equal envelope maxima");
    }
    if (imax == 0 || imax + 1 == y.size())
        throw ClippedWindowError("envelope maximum at the window edge; widen the window");
    const double ym = y[imax - 1];
    const double y0 = y[imax];
    const double yp = y[imax + 1];
    const double curvature = ym - 2.0 * y0 + yp;
    const double offset = curvature != 0.0 ? 0.5 * (ym - yp) / curvature : 0.0;
    const double dt = trace.times[imax + 1] - trace.times[imax];
    return trace.times[imax] + offset * dt;
}

double trace_energy(const PacketTrace& trace) {
    if (trace.times.size() < 2)
        return 0.0;
    const double dt = trace.times[1] - trace.times[0];
    double sum = 0.0;
    for (double a : trace.envelope)
        sum += a * a;
    return sum * dt;
}

double spectral_energy(const PacketSpectrum& spectrum, std::span<const cplx> amplitude) {
    double sum = 0.0;
    for (const auto& a : amplitude)
        sum += std::norm(a);
    return sum / spectrum.spacing;
}

PacketRun measure_arrivals(const PacketSpectrum& spectrum,
                           const barriers::ScatteringResponse& resp) {
    PacketRun run{spectrum, incident_trace(spectrum), propagate(spectrum, resp), {}};
    auto& rep = run.report;

    rep.t_peak_incident_reference = peak_arrival(run.incident);
    rep.t_peak_transmitted = peak_arrival(run.output.transmitted);
    rep.delay_transmitted = rep.t_peak_transmitted - rep.t_peak_incident_reference;
    rep.energy_incident = trace_energy(run.incident);
    rep.energy_transmitted = resp.port_ratio * trace_energy(run.output.transmitted);
    rep.energy_reflected = trace_energy(run.output.reflected);

    if (rep.energy_reflected > 1e-30 * rep.energy_incident) {
        rep.t_peak_reflected = peak_arrival(run.output.reflected);
        rep.delay_reflected = *rep.t_peak_reflected - rep.t_peak_incident_reference;
        rep.t_perp = rep.delay_transmitted - *rep.delay_reflected;
        rep.coincidence = std::abs(*rep.t_perp);
    } else {
        rep.warnings.emplace_back("no reflected signal: reflection amplitude vanishes");
    }

    rep.period = 1.0 / spectrum.carrier;
    rep.samples = spectrum.samples;
    rep.time_step = spectrum.time_step();
    rep.spectral_spacing = spectrum.spacing;
    rep.spectral_lines = spectrum.grid.size();
    return run;
}

PacketRun simulate(const barriers::BarrierModel& model, const GaussianPacketSpec& spec) {
    const auto spectrum = synthesize_spectrum(spec);
    auto run = measure_arrivals(spectrum, barriers::evaluate(model, spectrum.grid));
    const auto width = barriers::width_of(model);
    if (width) {
        const auto kappa = barriers::decay_constant(model, kTwoPi * spec.carrier);
        if (kappa)
            run.report.kappa_d = *kappa * *width;
        if (!run.report.kappa_d || *run.report.kappa_d < 5.0)
            run.report.warnings.emplace_back(
                "non-opaque barrier (kappa d < 5): reflected/transmitted coincidence not expected");
    }
    return run;
}

ArrivalReport ftir_coincidence(const barriers::FtirGap& gap, const GaussianPacketSpec& spec) {
    return simulate(gap, spec).report;
}

} // namespace hartmankit::packets
