#include "hartmankit/errors.hpp"
#include "hartmankit/packets.hpp"
#include "hartmankit/phasetime.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hartmankit;
using namespace hartmankit::barriers;
using namespace hartmankit::packets;

namespace {

constexpr double kPi = std::numbers::pi;

GaussianPacketSpec packet(double nu, double bw, std::size_t samples = 4096, double span = 40.0) {
    const double sigma_t = 1.0 / (2 * kPi * bw * nu);
    return {nu, bw, 0.0, span * sigma_t, samples, std::nullopt};
}

ScatteringResponse constant_response(const PacketSpectrum& s, cplx t, cplx r) {
    return {s.grid, std::vector<cplx>(s.grid.size(), t), std::vector<cplx>(s.grid.size(), r), 1.0, true};
}

double relative_delay_error(const BarrierModel& m, double nu, double bw) {
    const auto run = simulate(m, packet(nu, bw));
    const double tg = phasetime::phase_time(m, 2 * kPi * nu).tau;
    return std::abs(run.report.delay_transmitted - tg) / tg;
}

} // namespace

TEST_CASE("spectrum synthesis") {
    const auto s = synthesize_spectrum(packet(10e9, 0.01));
    const std::size_t mid = s.grid.size() / 2;
    CHECK(s.grid[mid] == doctest::Approx(2 * kPi * 10e9).epsilon(1e-15));
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        CHECK(std::abs(s.amplitude[i]) == doctest::Approx(std::abs(s.amplitude[s.grid.size() - 1 - i])));
        CHECK(std::abs(s.amplitude[i]) <= std::abs(s.amplitude[mid]));
    }
    // Lines reach out to 6 sigma on each side.
    CHECK(std::abs(s.grid.back() / (2 * kPi) - 10e9) <= 6 * 0.01 * 10e9);
    CHECK(std::abs(s.grid.back() / (2 * kPi) - 10e9) > 5.9 * 0.01 * 10e9);

    CHECK_THROWS_AS(synthesize_spectrum(packet(10e9, 0.10)), NarrowbandViolation);
    CHECK_THROWS_AS(synthesize_spectrum(packet(10e9, 0.0)), NarrowbandViolation);
    CHECK_NOTHROW(synthesize_spectrum(packet(10e9, 0.05)));
    CHECK_THROWS_AS(synthesize_spectrum(packet(10e9, 0.01, 1000)), DomainError);
    CHECK_THROWS_AS(synthesize_spectrum(packet(10e9, 0.01, 512)), DomainError);
    CHECK_THROWS_AS(synthesize_spectrum(packet(10e9, 0.01, 4096, 8.0)), DomainError);
}

TEST_CASE("Parseval: spectral and time-domain energies agree") {
    for (double bw : {0.05, 0.01, 0.002}) {
        const auto s = synthesize_spectrum(packet(3e9, bw));
        const double es = spectral_energy(s, s.amplitude);
        const double et = trace_energy(incident_trace(s));
        CHECK(std::abs(es - et) / es < 1e-10);
    }
}

TEST_CASE("envelope width follows the Fourier relation") {
    for (double bw : {0.05, 0.01}) {
        const auto spec = packet(5e9, bw, 8192);
        const auto tr = incident_trace(synthesize_spectrum(spec));
        double w = 0, m1 = 0, m2 = 0;
        for (std::size_t j = 0; j < tr.times.size(); ++j) {
            w += tr.envelope[j];
            m1 += tr.envelope[j] * tr.times[j];
        }
        m1 /= w;
        for (std::size_t j = 0; j < tr.times.size(); ++j)
            m2 += tr.envelope[j] * (tr.times[j] - m1) * (tr.times[j] - m1);
        CHECK(std::sqrt(m2 / w) == doctest::Approx(spec.sigma_t()).epsilon(1e-3));
    }
}

TEST_CASE("peak finding") {
    SUBCASE("analytic Gaussian") {
        auto spec = packet(20e9, 0.01);
        spec.t_end = 20e-9;
        spec.t_center = 5e-9;
        const auto s = synthesize_spectrum(spec);
        CHECK(std::abs(peak_arrival(incident_trace(s)) - 5e-9) < s.time_step() / 100);
    }

    SUBCASE("bimodal trace is ambiguous") {
        PacketTrace tr{{}, {}, TraceChannel::incident};
        for (int j = 0; j < 200; ++j) {
            const double t = j;
            tr.times.push_back(t);
            tr.envelope.push_back(std::exp(-0.5 * (t - 60) * (t - 60) / 25) +
                                  std::exp(-0.5 * (t - 140) * (t - 140) / 25));
        }
        CHECK_THROWS_AS(peak_arrival(tr), AmbiguousPeakError);
    }

    SUBCASE("maximum at the window edge is clipped") {
        PacketTrace tr{{0, 1, 2, 3}, {0.1, 0.2, 0.3, 0.4}, TraceChannel::incident};
        CHECK_THROWS_AS(peak_arrival(tr), ClippedWindowError);
    }
}

TEST_CASE("propagation through trivial responses") {
    const auto s = synthesize_spectrum(packet(10e9, 0.01));

    SUBCASE("unit transmission leaves the trace unchanged") {
        const auto out = propagate(s, constant_response(s, 1.0, 0.0));
        const auto in = incident_trace(s);
        for (std::size_t j = 0; j < in.envelope.size(); ++j)
            CHECK(out.transmitted.envelope[j] == doctest::Approx(in.envelope[j]).epsilon(1e-12).scale(1e-3));
        const auto run = measure_arrivals(s, constant_response(s, 1.0, 0.0));
        CHECK(std::abs(run.report.delay_transmitted) < s.time_step() / 100);
        CHECK_FALSE(run.report.delay_reflected.has_value());
        CHECK(run.report.warnings.size() == 1);
    }

    SUBCASE("vacuum slab delays by L/c") {
        const double L = 0.05;
        const DielectricStack vac{{{1.0, L}}, 1.0, 1.0};
        const auto run = measure_arrivals(s, evaluate(vac, s.grid));
        CHECK(std::abs(run.report.delay_transmitted - L / units::c) < s.time_step() / 100);
    }

    SUBCASE("coverage is enforced") {
        const auto narrow = FrequencyGrid::linspace(s.grid[2], s.grid[s.grid.size() - 3], 101);
        const DielectricStack vac{{{1.0, 0.05}}, 1.0, 1.0};
        CHECK_THROWS_AS(propagate(s, evaluate(vac, narrow)), CoverageError);
    }

    SUBCASE("responses on a finer grid are interpolated") {
        const double L = 0.05;
        const DielectricStack vac{{{1.0, L}}, 1.0, 1.0};
        const auto fine = FrequencyGrid::linspace(s.grid.front() * 0.999, s.grid.back() * 1.001, 5001);
        const auto run = measure_arrivals(s, evaluate(vac, fine));
        CHECK(std::abs(run.report.delay_transmitted - L / units::c) < s.time_step() / 10);
    }
}

TEST_CASE("translation covariance") {
    const RectangularQuantumBarrier b{10 * units::eV, 1e-9};
    const double nu = 5 * units::eV / units::h;
    auto spec = packet(nu, 0.01);
    const auto base = simulate(b, spec).report;
    const double shift = 123.0 * (spec.t_end - spec.t_start) / spec.samples;
    spec.t_start += shift;
    spec.t_end += shift;
    const auto moved = simulate(b, spec).report;
    CHECK(moved.t_peak_incident_reference - base.t_peak_incident_reference ==
          doctest::Approx(shift).epsilon(1e-9));
    CHECK(moved.delay_transmitted == doctest::Approx(base.delay_transmitted).epsilon(1e-9));
}

TEST_CASE("energy conservation") {
    SUBCASE("semi-transparent quantum barrier") {
        const RectangularQuantumBarrier b{10 * units::eV, 0.15e-9};
        const auto r = simulate(b, packet(5 * units::eV / units::h, 0.01)).report;
        CHECK(r.energy_transmitted > 0.05 * r.energy_incident);
        CHECK(std::abs(r.energy_transmitted + r.energy_reflected - r.energy_incident) <
              1e-8 * r.energy_incident);
    }

    SUBCASE("stack between unequal media") {
        DielectricStack s = quarter_wave_stack(2.0, 1.4, 3, 1e14);
        s.n_out = 1.5;
        const auto r = simulate(s, packet(0.8e14, 0.01)).report;
        CHECK(std::abs(r.energy_transmitted + r.energy_reflected - r.energy_incident) <
              1e-8 * r.energy_incident);
    }
}

TEST_CASE("stationary phase: packet delay approaches the group delay") {
    const RectangularQuantumBarrier q{10 * units::eV, 1e-9};
    const double nu_q = 5 * units::eV / units::h;
    const BarrierModel stack = quarter_wave_stack(2.0, 1.0, 5, 1e14);

    SUBCASE("opaque quantum barrier at 1% bandwidth") {
        CHECK(relative_delay_error(q, nu_q, 0.01) < 0.01);
    }

    SUBCASE("error shrinks as the bandwidth narrows") {
        for (const BarrierModel& m : {BarrierModel{q}, stack}) {
            const double nu = std::holds_alternative<DielectricStack>(m) ? 1e14 : nu_q;
            const double e4 = relative_delay_error(m, nu, 0.04);
            const double e2 = relative_delay_error(m, nu, 0.02);
            const double e1 = relative_delay_error(m, nu, 0.01);
            CHECK(e2 < e4);
            CHECK(e1 < e2);
        }
    }
}

TEST_CASE("FTIR coincidence") {
    const double nu = 8.345e9;
    const FtirGap g{1.6, 1.0, kPi / 4, 3 * units::c / nu, Polarization::s, nu};
    const auto r = ftir_coincidence(g, packet(nu, 0.01));
    REQUIRE(r.coincidence.has_value());
    CHECK(*r.coincidence < 0.02 * r.period);
    CHECK(r.kappa_d.value() >= 5.0);
    CHECK(r.warnings.empty());

    SUBCASE("closed gap: no barrier, no reflection") {
        auto closed = g;
        closed.gap = 0.0;
        const auto c = ftir_coincidence(closed, packet(nu, 0.01));
        CHECK(std::abs(c.delay_transmitted) < 1e-3 * c.period);
        CHECK_FALSE(c.coincidence.has_value());
        CHECK(c.warnings.size() == 2);
    }
}
