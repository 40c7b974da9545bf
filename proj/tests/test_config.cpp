#include "hartmankit/config.hpp"
#include "hartmankit/errors.hpp"

#include <doctest.h>

#include <sstream>

using namespace hartmankit;
using namespace hartmankit::config;

namespace {

RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_run_config(ConfigFile::parse(in));
}

std::string error_of(const std::string& text) {
    try {
        parse(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("quantum barrier with grid") {
    const auto rc = parse(R"(
# comment
[barrier]
family = quantum   # trailing comment
height = 10 eV
width = 1 nm
mass = 0.5 m_e

[grid]
start = 4 eV
stop = 6 eV
samples = 21
at = 5 eV
)");
    const auto& b = std::get<barriers::RectangularQuantumBarrier>(rc.barrier);
    CHECK(b.height == doctest::Approx(10 * units::eV));
    CHECK(b.width == doctest::Approx(1e-9));
    CHECK(b.mass == doctest::Approx(0.5 * units::m_e));
    REQUIRE(rc.grid.has_value());
    CHECK(rc.grid->size() == 21);
    CHECK(rc.grid->front() == doctest::Approx(4 * units::eV / units::hbar));
    CHECK(rc.at.value() == doctest::Approx(5 * units::eV / units::hbar));
    CHECK_FALSE(rc.packet.has_value());
}

TEST_CASE("stack forms") {
    SUBCASE("explicit layers") {
        const auto rc = parse(R"(
[barrier]
family = stack
n_in = 1.0
n_out = 1.5
layer = 2.3 100 nm
layer = 1.4 160 nm
)");
        const auto& s = std::get<barriers::DielectricStack>(rc.barrier);
        REQUIRE(s.layers.size() == 2);
        CHECK(s.layers[1].index == 1.4);
        CHECK(s.layers[1].thickness == doctest::Approx(160e-9));
        CHECK(s.n_out == 1.5);
    }
    SUBCASE("quarter-wave shorthand") {
        const auto rc = parse(R"(
[barrier]
family = stack
n_high = 2
n_low = 1
periods = 5
design_frequency = 100 THz
)");
        CHECK(std::get<barriers::DielectricStack>(rc.barrier).layers.size() == 10);
    }
    SUBCASE("vacuum") {
        const auto rc = parse("[barrier]\nfamily = vacuum\nlength = 0.3 m\n");
        const auto& s = std::get<barriers::DielectricStack>(rc.barrier);
        REQUIRE(s.layers.size() == 1);
        CHECK(s.layers[0].index == 1.0);
    }
}

TEST_CASE("FTIR, waveguide, packet and output sections") {
    const auto rc = parse(R"(
[barrier]
family = ftir
n1 = 1.6
n2 = 1.0
angle = 45 deg
gap = 10 cm
polarization = p
reference_frequency = 8.345 GHz

[packet]
carrier = 8.345 GHz
bandwidth = 0.01
window_start = 0 ns
window_end = 80 ns
samples = 4096
center = 20 ns

[output]
format = csv
path = out.csv
)");
    const auto& g = std::get<barriers::FtirGap>(rc.barrier);
    CHECK(g.polarization == barriers::Polarization::p);
    CHECK(g.gap == doctest::Approx(0.1));
    REQUIRE(rc.packet.has_value());
    CHECK(rc.packet->carrier == doctest::Approx(8.345e9));
    CHECK(rc.packet->t_center.value() == doctest::Approx(20e-9));
    CHECK(rc.output.format == OutputFormat::csv);
    CHECK(rc.output.path.value() == "out.csv");

    const auto wg = parse("[barrier]\nfamily = waveguide\ncutoff_wide = 6.56 GHz\n"
                          "cutoff_narrow = 9.49 GHz\nlength = 40 mm\n");
    CHECK(std::get<barriers::UndersizedWaveguideBarrier>(wg.barrier).length == doctest::Approx(0.04));
}

TEST_CASE("errors carry the offending line") {
    const auto missing_unit = error_of("[barrier]\nfamily = quantum\nheight = 10\nwidth = 1 nm\n");
    CHECK(missing_unit.find("line 3") != std::string::npos);
    CHECK(missing_unit.find("missing unit") != std::string::npos);

    CHECK(error_of("[barrier]\nfamily = quantum\nheight = 10 ps\nwidth = 1 nm\n").find("line 3") !=
          std::string::npos);
    CHECK(error_of("[barrier]\nfamily = quantum\nheight = 10 eV\nheight = 11 eV\nwidth = 1 nm\n")
              .find("line 4") != std::string::npos);
    CHECK(error_of("[barrier]\nfamily = quantum\nheight = 10 eV\nwidth = 1 nm\ncolour = red\n")
              .find("line 5") != std::string::npos);
    CHECK(error_of("[barrier]\nfamily = tachyon\n").find("line 2") != std::string::npos);
    CHECK(error_of("[barrier]\nfamily = vacuum\nlength = 1 m\n[extras]\nx = 1\n").find("line 4") !=
          std::string::npos);
    CHECK(error_of("[barrier\n").find("line 1") != std::string::npos);
    CHECK(error_of("[barrier]\njust text\n").find("line 2") != std::string::npos);
    CHECK(error_of("family = quantum\n").find("line 1") != std::string::npos);
    CHECK(error_of("[barrier]\nfamily = stack\nlayer = 2.0 100\n").find("line 3") != std::string::npos);
    CHECK(error_of("[barrier]\nfamily = ftir\nn1 = 1.6\nn2 = 1\nangle = 45 deg\ngap = 1 cm\n"
                   "polarization = q\nreference_frequency = 1 GHz\n")
              .find("line 7") != std::string::npos);
    CHECK_FALSE(error_of("[grid]\nat = 1 GHz\n").empty());
    CHECK(error_of("[barrier]\nfamily = vacuum\nlength = 1 m\n[grid]\nstart = 2 GHz\nstop = 1 GHz\n"
                   "samples = 11\n")
              .find("line 4") != std::string::npos);
}

TEST_CASE("config files from disk") {
    CHECK_THROWS_AS(load_run_config("/nonexistent/run.ini"), ConfigError);
    const auto rc = load_run_config(HARTMANKIT_CONFIG_DIR "/quantum.ini");
    CHECK(std::holds_alternative<barriers::RectangularQuantumBarrier>(rc.barrier));
}
