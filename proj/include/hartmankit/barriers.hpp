#pragma once

#include "hartmankit/units.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace hartmankit::barriers {

using cplx = std::complex<double>;

/// Strictly increasing positive angular frequencies (rad/s), at least 3 samples.
class FrequencyGrid {
public:
    explicit FrequencyGrid(std::vector<double> omega);

    /// `samples` evenly spaced points from `start` to `stop` inclusive.
    static FrequencyGrid linspace(double start, double stop, std::size_t samples);

    std::span<const double> omega() const noexcept { return omega_; }
    std::size_t size() const noexcept { return omega_.size(); }
    double operator[](std::size_t i) const { return omega_[i]; }
    double front() const { return omega_.front(); }
    double back() const { return omega_.back(); }

private:
    std::vector<double> omega_;
};

struct RectangularQuantumBarrier {
    double height;               ///< V0, J
    double width;                ///< d, m
    double mass = units::m_e;    ///< kg
};

struct Layer {
    double index;      ///< real refractive index, > 0
    double thickness;  ///< m
};

/// Lossless layered medium at normal incidence.
struct DielectricStack {
    std::vector<Layer> layers;
    double n_in = 1.0;
    double n_out = 1.0;
};

/// (H L)^periods quarter-wave mirror designed for `design_frequency` (Hz).
DielectricStack quarter_wave_stack(double n_high, double n_low, int periods,
                                   double design_frequency, double n_ambient = 1.0);

enum class Polarization { s, p };

/// Two identical prisms (index n1) separated by a gap of index n2.
///
/// The incidence angle `theta` is the angle met by the carrier at
/// `reference_frequency` (Hz). The tangential wavenumber that fixes the beam
/// geometry, k_par = 2 pi nu_ref n1 sin(theta) / c, is held constant over the
/// frequency grid, so the gap disperses like a below-cutoff guide.
struct FtirGap {
    double n1;
    double n2;
    double theta;  ///< rad
    double gap;    ///< m
    Polarization polarization;
    double reference_frequency;  ///< Hz

    double tangential_wavenumber() const;
    double critical_angle() const;
};

/// Feeding guide and an undersized section of the same kind, dominant mode only.
struct UndersizedWaveguideBarrier {
    double cutoff_wide;    ///< Hz
    double cutoff_narrow;  ///< Hz
    double length;         ///< m
};

using BarrierModel = std::variant<RectangularQuantumBarrier, DielectricStack, FtirGap,
                                  UndersizedWaveguideBarrier>;

/// Complex amplitudes on a frequency grid.
///
/// Reference planes: t is the field at the exit face over the incident field at
/// the entry face; r is referenced to the entry face. Time dependence e^{-i omega t},
/// so free forward propagation over L gives t = e^{+i omega L / v}.
struct ScatteringResponse {
    FrequencyGrid grid;
    std::vector<cplx> t;
    std::vector<cplx> r;
    /// Flux normalization of |t|^2 (output over input port admittance); 1 for equal media.
    double port_ratio = 1.0;
    /// Same external medium on both sides and mirror-symmetric structure.
    bool symmetric = true;

    double transmittance(std::size_t i) const { return port_ratio * std::norm(t[i]); }
    double reflectance(std::size_t i) const { return std::norm(r[i]); }
};

/// Characteristic (Abeles) matrix relating (E, H) at the two faces of a layer.
class TransferMatrix {
public:
    TransferMatrix() : m_{cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{1.0}} {}
    TransferMatrix(cplx m11, cplx m12, cplx m21, cplx m22) : m_{m11, m12, m21, m22} {}

    /// Homogeneous layer of index n and thickness d at angular frequency omega.
    static TransferMatrix layer(double n, double thickness, double omega);

    cplx operator()(int row, int col) const { return m_[static_cast<std::size_t>(2 * row + col)]; }
    TransferMatrix operator*(const TransferMatrix& o) const;
    cplx determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

private:
    std::array<cplx, 4> m_;
};

/// One-frequency result of any model.
struct Amplitudes {
    cplx t;
    cplx r;
};

/// Symmetric evanescent slab between two identical propagating media.
///
/// `outer` and `inner` are the matching admittances (k/g outside, kappa/g inside,
/// with g = 1 for scalar/TE matching and g = epsilon for TM). `kappa_d` is the
/// attenuation exponent across the slab.
/// t = 1/D, r = -i gamma sinh(kappa d)/D, D = cosh(kappa d) + i delta sinh(kappa d),
/// delta = (inner/outer - outer/inner)/2, gamma = (inner/outer + outer/inner)/2.
Amplitudes symmetric_slab(double outer, double inner, double kappa_d);

// Per-sample kernels. They validate their own preconditions.
Amplitudes quantum_sample(const RectangularQuantumBarrier& b, double energy);
Amplitudes stack_sample(const DielectricStack& s, double omega);
Amplitudes ftir_sample(const FtirGap& g, double omega);
Amplitudes waveguide_sample(const UndersizedWaveguideBarrier& w, double omega);

/// Evanescent decay constant of the barrier region at omega, 1/m (none for stacks).
std::optional<double> decay_constant(const BarrierModel& model, double omega);

/// Barrier length (quantum width, FTIR gap, guide length); none for stacks.
std::optional<double> width_of(const BarrierModel& model);

/// Copy of `model` with its barrier length replaced. Stacks are rejected.
BarrierModel with_width(const BarrierModel& model, double width);

/// Throws the appropriate DomainError if the model's static parameters are invalid.
void validate(const BarrierModel& model);

ScatteringResponse quantum_amplitudes(const RectangularQuantumBarrier& b,
                                      std::span<const double> energies);
ScatteringResponse stack_amplitudes(const DielectricStack& s, const FrequencyGrid& grid);
ScatteringResponse ftir_amplitudes(const FtirGap& g, const FrequencyGrid& grid);
ScatteringResponse waveguide_amplitudes(const UndersizedWaveguideBarrier& w,
                                        const FrequencyGrid& grid);

/// OpenMP-parallel evaluation of any model. For the quantum barrier the grid
/// holds omega = E / hbar. Sample order equals grid order.
ScatteringResponse evaluate(const BarrierModel& model, const FrequencyGrid& grid);

/// Single-sample evaluation at angular frequency omega.
Amplitudes evaluate_at(const BarrierModel& model, double omega);

namespace serial {
/// Sequential reference for `barriers::evaluate`; results are bit-identical.
ScatteringResponse evaluate(const BarrierModel& model, const FrequencyGrid& grid);
} // namespace serial

} // namespace hartmankit::barriers
