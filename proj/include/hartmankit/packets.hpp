#pragma once

#include "hartmankit/barriers.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hartmankit::packets {

using barriers::cplx;

/// Narrowband Gaussian packet on a uniform, power-of-two time grid.
struct GaussianPacketSpec {
    double carrier;             ///< nu0, Hz
    double relative_bandwidth;  ///< sigma_nu / nu0, in (0, 0.05]
    double t_start;             ///< s
    double t_end;               ///< s
    std::size_t samples;        ///< power of two, >= 1024
    /// Peak time of the incident envelope at the barrier front face.
    /// Defaults to t_start + 6 sigma_t.
    std::optional<double> t_center;

    double sigma_nu() const { return relative_bandwidth * carrier; }
    /// Envelope (amplitude) standard deviation, 1 / (2 pi sigma_nu).
    double sigma_t() const;
};

/// Discrete spectral lines nu0 + m / W, |m / W| <= 6 sigma_nu, W the window length.
struct PacketSpectrum {
    barriers::FrequencyGrid grid;  ///< angular frequencies of the lines
    std::vector<cplx> amplitude;   ///< incident amplitude per line
    int first_line;                ///< m of the first line (negative)
    double carrier;                ///< Hz
    double spacing;                ///< 1 / W, Hz
    double t_start;
    double t_end;
    std::size_t samples;
    double t_center;

    double time_step() const { return (t_end - t_start) / static_cast<double>(samples); }
};

enum class TraceChannel { incident, transmitted, reflected };

struct PacketTrace {
    std::vector<double> times;     ///< uniform, strictly increasing
    std::vector<double> envelope;  ///< |analytic signal|
    TraceChannel channel;
};

PacketSpectrum synthesize_spectrum(const GaussianPacketSpec& spec);

/// Envelope of the packet whose spectral lines are `amplitude` (same layout as `spectrum`).
PacketTrace to_trace(const PacketSpectrum& spectrum, std::span<const cplx> amplitude,
                     TraceChannel channel);

PacketTrace incident_trace(const PacketSpectrum& spectrum);

struct PropagatedTraces {
    PacketTrace transmitted;
    PacketTrace reflected;
    std::vector<cplx> transmitted_spectrum;
    std::vector<cplx> reflected_spectrum;
};

/// Multiplies the incident spectrum by t and r. Off-node lines interpolate |t|
/// and the unwrapped phase linearly; lines outside the response grid are a CoverageError.
PropagatedTraces propagate(const PacketSpectrum& spectrum,
                           const barriers::ScatteringResponse& resp);

/// Peak time by a parabola through the three samples around the discrete maximum.
double peak_arrival(const PacketTrace& trace);

/// sum |a|^2 dt over the trace.
double trace_energy(const PacketTrace& trace);

/// sum |S|^2 / spacing over the lines (equals trace_energy by Parseval).
double spectral_energy(const PacketSpectrum& spectrum, std::span<const cplx> amplitude);

struct ArrivalReport {
    double t_peak_incident_reference;
    double t_peak_transmitted;
    std::optional<double> t_peak_reflected;
    double delay_transmitted;
    std::optional<double> delay_reflected;
    std::optional<double> coincidence;  ///< |delay_t - delay_r|
    std::optional<double> t_perp;       ///< delay_t - delay_r
    double period;                      ///< 1 / nu0
    std::optional<double> kappa_d;      ///< attenuation exponent at the carrier
    double energy_incident;
    double energy_transmitted;          ///< flux-normalized
    double energy_reflected;
    std::size_t samples;
    double time_step;
    double spectral_spacing;
    std::size_t spectral_lines;
    std::vector<std::string> warnings;
};

struct PacketRun {
    PacketSpectrum spectrum;
    PacketTrace incident;
    PropagatedTraces output;
    ArrivalReport report;
};

/// Arrival analysis for a spectrum already pushed through `resp`.
PacketRun measure_arrivals(const PacketSpectrum& spectrum, const barriers::ScatteringResponse& resp);

/// Synthesizes the packet, evaluates `model` on its spectral lines and measures arrivals.
PacketRun simulate(const barriers::BarrierModel& model, const GaussianPacketSpec& spec);

/// Reflected versus transmitted arrival at a symmetric double prism.
/// Warns (does not fail) when the gap is not opaque (kappa d < 5).
ArrivalReport ftir_coincidence(const barriers::FtirGap& gap, const GaussianPacketSpec& spec);

} // namespace hartmankit::packets
