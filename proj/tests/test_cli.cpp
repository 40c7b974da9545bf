#include "hartmankit/cli.hpp"
#include "hartmankit/report.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hartmankit;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "hartmankit");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string cfg(const char* name) {
    return std::string(HARTMANKIT_CONFIG_DIR) + "/" + name;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    const auto p = std::filesystem::temp_directory_path() / ("hartmankit_cli_" + name);
    std::ofstream(p) << text;
    return p;
}

report::Json json_of(const Result& r) {
    return report::Json::parse(r.out);
}

} // namespace

TEST_CASE("delay") {
    const auto r = run({"delay", cfg("quantum.ini"), "--no-timestamp"});
    REQUIRE(r.code == 0);
    const auto j = json_of(r);
    CHECK(j["tau_phase_s"].get<double>() == doctest::Approx(1.32e-16).epsilon(5e-3));
    CHECK(j["esposito_consistent"].get<bool>() == false);
    CHECK_FALSE(j.contains("generated_at"));

    const auto stamped = run({"delay", cfg("quantum.ini")});
    CHECK(json_of(stamped).begin().key() == "generated_at");
}

TEST_CASE("deterministic output") {
    for (const char* c : {"quantum.ini", "ftir.ini", "stack.ini"}) {
        const auto a = run({"delay", cfg(c), "--no-timestamp"});
        const auto b = run({"delay", cfg(c), "--no-timestamp"});
        CHECK(a.out == b.out);
    }
    const auto p1 = run({"packet", cfg("ftir.ini"), "--no-timestamp"});
    const auto p2 = run({"packet", cfg("ftir.ini"), "--no-timestamp"});
    CHECK(p1.out == p2.out);
}

TEST_CASE("JSON numbers survive a round trip at the printed precision") {
    const auto r = run({"delay", cfg("waveguide.ini"), "--no-timestamp"});
    const auto j = json_of(r);
    const double tau = j["tau_phase_s"].get<double>();
    CHECK(report::format_number(tau) == report::format_number(report::round_to_output(tau)));
    std::ostringstream again;
    report::write_json(again, j);
    CHECK(again.str() == r.out);
}

TEST_CASE("physics and usage exit codes") {
    const auto above = write_temp("above.ini", "[barrier]\nfamily = quantum\nheight = 10 eV\nwidth = 1 nm\n"
                                               "[grid]\nstart = 11 eV\nstop = 13 eV\nsamples = 21\nat = 12 eV\n");
    const auto r = run({"delay", above.string()});
    CHECK(r.code == 3);
    CHECK(r.err.find("above-barrier") != std::string::npos);

    const auto unitless = write_temp("unitless.ini", "[barrier]\nfamily = quantum\nheight = 10\nwidth = 1 nm\n");
    const auto u = run({"delay", unitless.string()});
    CHECK(u.code == 2);
    CHECK(u.err.find("line 3") != std::string::npos);

    CHECK(run({"delay", "/nonexistent.ini"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);

    const auto wide = write_temp("wide.ini", "[barrier]\nfamily = vacuum\nlength = 0.3 m\n[packet]\n"
                                             "carrier = 10 GHz\nbandwidth = 0.10\nwindow_start = 0 ns\n"
                                             "window_end = 70 ns\nsamples = 4096\n");
    const auto w = run({"packet", wide.string()});
    CHECK(w.code == 3);
    CHECK(w.err.find("narrowband") != std::string::npos);

    std::filesystem::remove(above);
    std::filesystem::remove(unitless);
    std::filesystem::remove(wide);
}

TEST_CASE("hartman") {
    const auto r = run({"hartman", cfg("quantum.ini"), "--widths", "1nm,1.5nm,2nm"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, line;
    std::getline(lines, header);
    CHECK(header.rfind("width_m,tau_s,error_estimate_s", 0) == 0);
    std::vector<double> taus;
    while (std::getline(lines, line)) {
        const auto a = line.find(',');
        taus.push_back(std::stod(line.substr(a + 1)));
    }
    REQUIRE(taus.size() == 3);
    for (double t : taus)
        CHECK(t == doctest::Approx(taus[0]).epsilon(1e-6));

    CHECK(run({"hartman", cfg("quantum.ini"), "--widths", ""}).code == 2);
    CHECK(run({"hartman", cfg("quantum.ini"), "--widths", "2nm,1nm"}).code == 2);
    CHECK(run({"hartman", cfg("quantum.ini")}).code == 2);
}

TEST_CASE("packet") {
    const auto r = run({"packet", cfg("ftir.ini"), "--no-timestamp"});
    REQUIRE(r.code == 0);
    const auto j = json_of(r);
    CHECK(j["coincidence_over_T"].get<double>() < 0.02);

    const auto v = json_of(run({"packet", cfg("vacuum.ini"), "--no-timestamp"}));
    CHECK(v["delay_transmitted_s"].get<double>() == doctest::Approx(1.0007e-9).epsilon(1e-4));

    const auto prefix = (std::filesystem::temp_directory_path() / "hartmankit_cli_trace").string();
    CHECK(run({"packet", cfg("vacuum.ini"), "--traces", prefix}).code == 0);
    for (const char* ch : {"_incident.csv", "_transmitted.csv", "_reflected.csv"}) {
        CHECK(std::filesystem::exists(prefix + ch));
        std::filesystem::remove(prefix + ch);
    }
}

TEST_CASE("table1") {
    const auto r = run({"table1", "--row", "ionization"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("4.26") != std::string::npos);
    CHECK(r.out.find("1.7998") != std::string::npos);
    CHECK(r.out.find("INCONSISTENT") != std::string::npos);

    const auto all = run({"table1", "--all"});
    REQUIRE(all.code == 0);
    CHECK(all.out.find("tau/T") != std::string::npos);
    CHECK(all.out.find("Yang et al.") != std::string::npos);

    const auto j = json_of(run({"table1", "--all", "--format", "json", "--no-timestamp"}));
    CHECK(j["rows"].size() == 8);
    CHECK(j["summary"]["median_tau_over_T"].get<double>() == doctest::Approx(0.9875));

    const auto csv = run({"table1", "--all", "--format", "csv"});
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 9);

    CHECK(run({"table1", "--row", "unknown-name"}).code == 2);
    CHECK(run({"table1"}).code == 2);
    CHECK(run({"table1", "--all", "--format", "xml"}).code == 2);
}

TEST_CASE("dataset override through the environment") {
    const auto dir = std::filesystem::temp_directory_path() / "hartmankit_cli_data";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "table1.csv") << "name,reference,tau_s,T_s,tauA_s,family,note\n";
    setenv("HARTMANKIT_DATA", (dir / "table1.csv").c_str(), 1);
    const auto r = run({"table1", "--all"});
    unsetenv("HARTMANKIT_DATA");
    CHECK(r.code == 2);
    CHECK(r.err.find("dataset error") != std::string::npos);
    CHECK(run({"table1", "--all"}).code == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("ftir-shift and esposito") {
    const auto s = json_of(run({"ftir-shift", cfg("ftir.ini"), "--no-timestamp"}));
    CHECK(s["shift_m"].get<double>() > 0.012);
    CHECK(s["shift_m"].get<double>() < 0.108);

    const auto q = json_of(run({"esposito", "quantum", "--energy", "54.39 eV", "--height", "78.98 eV",
                                "--no-timestamp"}));
    CHECK(q["tau_form_ratio_s"].get<double>() == doctest::Approx(4.26e-18).epsilon(2e-3));
    CHECK(q["consistent"].get<bool>() == false);

    const auto f = json_of(run({"esposito", "ftir", "--n1", "1.6", "--n2", "1", "--angle", "45 deg",
                                "--period", "120 ps", "--no-timestamp"}));
    CHECK(f["tau_A_s"].get<double>() == doctest::Approx(81.7e-12).epsilon(2e-3));

    CHECK(run({"esposito", "ftir", "--n1", "1.6", "--n2", "1", "--angle", "30 deg", "--frequency",
               "1 GHz"}).code == 3);
    CHECK(run({"esposito", "quantum", "--energy", "5", "--height", "10 eV"}).code == 2);
}

TEST_CASE("installed executable maps errors to exit codes") {
    const char* exe = std::getenv("HARTMANKIT_CLI");
    if (!exe)
        return;
    const std::string base = std::string(exe) + " ";
    auto status = [](const std::string& cmd) {
        const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(s);
    };
    CHECK(status(base + "table1 --row ionization") == 0);
    CHECK(status(base + "table1 --row unknown-name") == 2);
    CHECK(status(base + "esposito quantum --energy '12 eV' --height '10 eV'") == 3);
}
