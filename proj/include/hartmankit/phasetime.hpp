#pragma once

#include "hartmankit/barriers.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hartmankit::phasetime {

using barriers::BarrierModel;
using barriers::FrequencyGrid;
using barriers::ScatteringResponse;

enum class Channel { transmission, reflection };

/// Continuous phase of one channel. phi[0] is the principal value at the first sample.
struct PhaseCurve {
    FrequencyGrid grid;
    std::vector<double> phi;
};

PhaseCurve unwrap_phase(const ScatteringResponse& resp, Channel channel);
PhaseCurve unwrap_phase(const FrequencyGrid& grid, std::span<const barriers::cplx> amplitude);

/// A delay with its numerical error estimate, both in seconds.
struct Delay {
    double tau;
    double error_estimate;
};

/// tau = d(phi)/d(omega) at a grid node.
///
/// Sign convention: with e^{-i omega t} time dependence and phi = arg(amplitude),
/// free forward propagation gives phi = omega L / v and tau = +L / v. This is
/// the usual tau = -d(phi)/d(omega) of the e^{+i omega t} convention.
///
/// `at` must be a node with four evenly spaced neighbours on each side: a
/// 5-point central difference at spacings h and 2h is combined by one
/// Richardson step, and |D(h) - D(2h)|/15 (plus a rounding floor) is the error estimate.
Delay group_delay(const PhaseCurve& curve, double at);

/// Builds a 9-point local grid omega (1 + j rel_step), j = -4..4, evaluates the
/// model and returns its group delay at omega.
Delay phase_time(const BarrierModel& model, double omega,
                 Channel channel = Channel::transmission, double rel_step = 1e-4);

struct HartmanPoint {
    double width;           ///< m
    double tau;             ///< s
    double error_estimate;  ///< s
    double kappa_d;         ///< attenuation exponent at omega
};

/// Phase time versus barrier length at fixed omega. Widths must be strictly
/// increasing and non-negative; the model must be evanescent at omega.
/// Widths are evaluated in parallel; output order follows `widths`.
std::vector<HartmanPoint> hartman_scan(const BarrierModel& model, std::span<const double> widths,
                                       double omega);

namespace serial {
std::vector<HartmanPoint> hartman_scan(const BarrierModel& model, std::span<const double> widths,
                                       double omega);
} // namespace serial

struct DelayComparison {
    Delay reflection;
    Delay transmission;
    double difference;  ///< |tau_r - tau_t|
};

/// Reflection and transmission group delays of a symmetric barrier at `at`.
DelayComparison reflection_delay_equals_transmission(const ScatteringResponse& resp, double at);

/// d(tau)/d(width) at the model's current width: the length dependence that
/// vanishes when no time is spent inside an opaque barrier.
double zero_time_proxy(const BarrierModel& model, double omega, double rel_width_step = 1e-2);

struct LateralShift {
    double shift;                   ///< D along the first interface, m
    double error_estimate;          ///< m
    double kappa_d;                 ///< gap attenuation exponent
    bool ill_conditioned;           ///< kappa d < 2 (near critical / thin gap)
    double tangential_wavenumber;   ///< k_par, 1/m
    double trace_velocity;          ///< omega / k_par, m/s
    double interaction_time;        ///< D / trace_velocity, s
    double beam_velocity_component; ///< c sin(theta) / n1, m/s
};

/// Goos-Haenchen shift D = -d(arg r)/d(k_par) at fixed omega, obtained by
/// varying the incidence angle. Uses the gap's theta as the angle at omega.
LateralShift goos_haenchen_shift(const barriers::FtirGap& gap, double omega);

struct EspositoForm {
    std::string name;
    double tau_A;       ///< s
    double tau_over_A;  ///< tau_phase / tau_A
};

/// Everything known about the traversal time of one configuration at one frequency.
struct TunnelingTimeReport {
    std::string family;
    double omega;        ///< rad/s
    double nu;           ///< Hz
    Delay transmission;  ///< tau_phase
    std::optional<Delay> reflection;
    double T_universal;  ///< 1 / nu (h / E for particles)
    double tau_over_T;
    std::vector<EspositoForm> esposito;
    std::optional<bool> esposito_consistent;
    std::optional<double> kappa_d;
    std::optional<double> dtau_dwidth;  ///< zero-time proxy
    std::optional<double> mass;         ///< kg, particle models only
    std::size_t grid_samples;
    double grid_start;
    double grid_stop;
};

std::string family_name(const BarrierModel& model);

/// Evaluates the model on `grid` and reports the delays at the node `at`.
TunnelingTimeReport tunneling_time_report(const BarrierModel& model, const FrequencyGrid& grid,
                                          double at);

} // namespace hartmankit::phasetime
