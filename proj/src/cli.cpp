#include "hartmankit/cli.hpp"

#include "hartmankit/config.hpp"
#include "hartmankit/csv.hpp"
#include "hartmankit/errors.hpp"
#include "hartmankit/packets.hpp"
#include "hartmankit/phasetime.hpp"
#include "hartmankit/reference.hpp"
#include "hartmankit/report.hpp"
#include "hartmankit/universal.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace hartmankit::cli {

namespace {

using config::OutputFormat;
using report::Json;

struct Options {
    std::string config_path;
    bool no_timestamp = false;
    std::string widths;
    std::string traces;
    std::string row;
    bool all = false;
    std::string format;
    std::string output;
    std::string energy;
    std::string height;
    double n1 = 0.0;
    double n2 = 0.0;
    std::string angle;
    std::string frequency;
    std::string period;
};

OutputFormat parse_format(const std::string& s) {
    if (s == "json")
        return OutputFormat::json;
    if (s == "csv")
        return OutputFormat::csv;
    throw ConfigError("--format must be json or csv");
}

double cli_quantity(const std::string& option, const std::string& text, units::Dimension dim) {
    units::Quantity q{0.0, units::Dimension::dimensionless};
    try {
        q = units::parse_quantity(text);
    } catch (const DomainError& e) {
        throw ConfigError(option + ": " + e.what());
    }
    if (q.dimension() != dim)
        throw ConfigError(option + ": expected a value with a " +
                          std::string(units::to_string(dim)) + " unit, got '" + text + "'");
    return q.si();
}

class Emitter {
public:
    Emitter(std::ostream& out, bool timestamp) : out_(out), timestamp_(timestamp) {}

    void emit(const config::OutputSpec& spec, OutputFormat fallback, const Json& object,
              const std::vector<Json>* table = nullptr) const {
        const auto format = spec.format.value_or(fallback);
        std::ostringstream buf;
        if (format == OutputFormat::json)
            report::write_json(buf, timestamp_ ? report::with_timestamp(object) : object);
        else if (table)
            report::write_csv_table(buf, *table);
        else
            report::write_csv(buf, object);
        if (spec.path) {
            std::ofstream file(*spec.path, std::ios::binary);
            if (!file)
                throw ConfigError("cannot write " + spec.path->string());
            file << buf.str();
        } else {
            out_ << buf.str();
        }
    }

private:
    std::ostream& out_;
    bool timestamp_;
};

config::RunConfig require_at(const config::RunConfig& rc, const char* command) {
    if (!rc.at)
        throw ConfigError(std::string(command) + " needs 'at' in [grid]");
    return rc;
}

int cmd_delay(const Options& o, const Emitter& em) {
    const auto rc = require_at(config::load_run_config(o.config_path), "delay");
    if (!rc.grid)
        throw ConfigError("delay needs start, stop and samples in [grid]");
    const auto rep = phasetime::tunneling_time_report(rc.barrier, *rc.grid, *rc.at);
    em.emit(rc.output, OutputFormat::json, report::to_json(rep));
    return kExitOk;
}

std::vector<double> parse_widths(const std::string& text) {
    std::vector<double> widths;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos)
            continue;
        widths.push_back(cli_quantity("--widths", item, units::Dimension::length));
    }
    if (widths.empty())
        throw ConfigError("--widths: empty width list");
    for (std::size_t i = 1; i < widths.size(); ++i)
        if (!(widths[i] > widths[i - 1]))
            throw ConfigError("--widths: widths must be strictly increasing");
    return widths;
}

int cmd_hartman(const Options& o, const Emitter& em) {
    const auto widths = parse_widths(o.widths);
    const auto rc = require_at(config::load_run_config(o.config_path), "hartman");
    const auto scan = phasetime::hartman_scan(rc.barrier, widths, *rc.at);
    std::vector<Json> rows;
    for (const auto& p : scan)
        rows.push_back(Json{{"width_m", p.width}, {"tau_s", p.tau}, {"error_estimate_s", p.error_estimate}});
    em.emit(rc.output, OutputFormat::csv, Json{{"scan", report::to_json(scan)}}, &rows);
    return kExitOk;
}

void write_trace(const std::string& path, const packets::PacketTrace& trace) {
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw ConfigError("cannot write " + path);
    csv::write_record(file, {"time_s", "envelope"});
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        csv::write_record(file, {report::format_number(trace.times[i]),
                                 report::format_number(trace.envelope[i])});
}

int cmd_packet(const Options& o, const Emitter& em) {
    const auto rc = config::load_run_config(o.config_path);
    if (!rc.packet)
        throw ConfigError("packet needs a [packet] section");
    const auto run = packets::simulate(rc.barrier, *rc.packet);
    if (!o.traces.empty()) {
        write_trace(o.traces + "_incident.csv", run.incident);
        write_trace(o.traces + "_transmitted.csv", run.output.transmitted);
        write_trace(o.traces + "_reflected.csv", run.output.reflected);
    }
    em.emit(rc.output, OutputFormat::json, report::to_json(run.report));
    return kExitOk;
}

int cmd_ftir_shift(const Options& o, const Emitter& em) {
    const auto rc = require_at(config::load_run_config(o.config_path), "ftir-shift");
    const auto* gap = std::get_if<barriers::FtirGap>(&rc.barrier);
    if (!gap)
        throw ConfigError("ftir-shift needs family = ftir");
    em.emit(rc.output, OutputFormat::json,
            report::to_json(phasetime::goos_haenchen_shift(*gap, *rc.at)));
    return kExitOk;
}

std::string fmt_time(double s) {
    return report::format_number(s) + " s";
}

void print_row_text(std::ostream& out, const reference::ExperimentRow& row,
                    const reference::ReproductionReport& rep) {
    out << rep.row << "\n"
        << "  tabulated: tau = " << fmt_time(row.tau_measured) << ", T = " << fmt_time(row.T)
        << ", tau_A = " << fmt_time(row.tau_A) << "\n"
        << "  tau/T = " << report::format_number(rep.tau_over_T) << "\n";
    if (rep.T_recomputed)
        out << "  T recomputed = " << fmt_time(*rep.T_recomputed) << " ("
            << std::showpos << std::fixed << std::setprecision(2)
            << 100.0 * *rep.T_relative_deviation << std::noshowpos << " %)\n"
            << std::defaultfloat;
    if (rep.tau_A_recomputed)
        out << "  tau_A recomputed = " << fmt_time(*rep.tau_A_recomputed) << " ("
            << std::showpos << std::fixed << std::setprecision(2)
            << 100.0 * *rep.tau_A_relative_deviation << std::noshowpos << " %)\n"
            << std::defaultfloat;
    if (rep.tau_A_sqrt_form)
        out << "  tau_A sqrt form = " << fmt_time(*rep.tau_A_sqrt_form)
            << (*rep.esposito_consistent ? " (consistent)" : " (INCONSISTENT with ratio form)") << "\n";
    if (rep.mass)
        out << "  particle mass: " << *rep.mass << "\n";
    out << "  status: "
        << (rep.status == reference::ReproductionStatus::reproduced ? "reproduced" : "incomplete")
        << " - " << rep.note << "\n";
}

int cmd_table1(const Options& o, const Emitter& em, std::ostream& out) {
    if (o.all == !o.row.empty())
        throw ConfigError("table1 needs exactly one of --row <name> or --all");
    const auto rows = reference::load_table();
    config::OutputSpec spec;
    if (!o.format.empty())
        spec.format = parse_format(o.format);
    if (!o.output.empty())
        spec.path = o.output;
    const bool text = o.format.empty() || spec.path;
    const bool machine = !o.format.empty() || spec.path;

    if (!o.all) {
        const auto& row = reference::find_row(rows, o.row);
        const auto rep = reference::reproduce_row(row);
        if (text)
            print_row_text(out, row, rep);
        if (machine)
            em.emit(spec, OutputFormat::json,
                    Json{{"row", report::to_json(row)}, {"reproduction", report::to_json(rep)}});
        return kExitOk;
    }

    const auto summary = reference::universality_summary(rows);
    Json all = Json::array();
    std::vector<Json> table;
    for (const auto& row : rows) {
        const auto rep = reference::reproduce_row(row);
        all.push_back(Json{{"row", report::to_json(row)}, {"reproduction", report::to_json(rep)}});
        auto flat = report::to_json(row);
        flat["status"] = report::to_json(rep)["status"];
        table.push_back(flat);
    }
    if (text) {
        int name_width = 4;
        for (const auto& row : rows)
            name_width = std::max(name_width, static_cast<int>(row.display_name().size()) + 2);
        out << std::left << std::setw(name_width) << "row" << std::setw(17) << "tau_s" << std::setw(17)
            << "T_s" << std::setw(17) << "tauA_s" << "tau/T\n";
        for (const auto& row : rows)
            out << std::setw(name_width) << row.display_name() << std::setw(17)
                << report::format_number(row.tau_measured) << std::setw(17)
                << report::format_number(row.T) << std::setw(17)
                << report::format_number(row.tau_A)
                << report::format_number(row.tau_measured / row.T) << "\n";
        out << std::right << "tau/T: min " << report::format_number(summary.min) << ", median "
            << report::format_number(summary.median) << ", max "
            << report::format_number(summary.max) << "\n";
        for (const auto& name : summary.outside_core_band)
            out << "  outside [0.8, 1.2]: " << name << "\n";
    }
    if (machine)
        em.emit(spec, OutputFormat::json,
                Json{{"rows", all}, {"summary", report::to_json(summary)}}, &table);
    return kExitOk;
}

int cmd_esposito_quantum(const Options& o, const Emitter& em) {
    const double e = cli_quantity("--energy", o.energy, units::Dimension::energy);
    const double v0 = cli_quantity("--height", o.height, units::Dimension::energy);
    const auto r = universal::esposito_quantum(e, v0);
    auto j = report::to_json(r);
    j["T_s"] = universal::particle_universal_time(e);
    j["mass"] = "electron";
    config::OutputSpec spec;
    if (!o.format.empty())
        spec.format = parse_format(o.format);
    if (!o.output.empty())
        spec.path = o.output;
    em.emit(spec, OutputFormat::json, j);
    return kExitOk;
}

int cmd_esposito_ftir(const Options& o, const Emitter& em) {
    if (o.frequency.empty() == o.period.empty())
        throw ConfigError("esposito ftir needs exactly one of --frequency or --period");
    const double nu = o.frequency.empty()
                          ? 1.0 / cli_quantity("--period", o.period, units::Dimension::time)
                          : cli_quantity("--frequency", o.frequency, units::Dimension::frequency);
    const double theta = cli_quantity("--angle", o.angle, units::Dimension::angle);
    auto j = report::to_json(universal::esposito_ftir(o.n1, o.n2, theta, nu));
    j["T_s"] = 1.0 / nu;
    config::OutputSpec spec;
    if (!o.format.empty())
        spec.format = parse_format(o.format);
    if (!o.output.empty())
        spec.path = o.output;
    em.emit(spec, OutputFormat::json, j);
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Barrier traversal (phase) times for quantum, optical and microwave barriers",
                 "hartmankit"};
    app.require_subcommand(1);
    Options o;

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("config", o.config_path, "Run configuration file")->required();
        sub->add_flag("--no-timestamp", o.no_timestamp, "Omit generated_at from JSON output");
    };

    auto* delay = app.add_subcommand("delay", "Phase time, universal time and tau_A at one frequency");
    add_config(delay);

    auto* hartman = app.add_subcommand("hartman", "Phase time versus barrier length");
    add_config(hartman);
    hartman->add_option("--widths", o.widths, "Comma-separated increasing widths with units, e.g. 1nm,1.5nm")
        ->required();

    auto* packet = app.add_subcommand("packet", "Gaussian packet arrival times");
    add_config(packet);
    packet->add_option("--traces", o.traces, "Write <prefix>_{incident,transmitted,reflected}.csv");

    auto* table1 = app.add_subcommand("table1", "Reference tunneling-time table and its reproduction");
    table1->add_option("--row", o.row, "Row name, reference or unique substring");
    table1->add_flag("--all", o.all, "All rows plus the universality summary");
    table1->add_option("--format", o.format, "Machine-readable format: json or csv");
    table1->add_option("--output", o.output, "Machine-readable output file");
    table1->add_flag("--no-timestamp", o.no_timestamp, "Omit generated_at from JSON output");

    auto* shift = app.add_subcommand("ftir-shift", "Goos-Haenchen shift at a double prism");
    add_config(shift);

    auto* esposito = app.add_subcommand("esposito", "Direct evaluation of the tau_A factors");
    esposito->require_subcommand(1);
    auto* eq = esposito->add_subcommand("quantum", "Square barrier: sqrt and ratio forms");
    eq->add_option("--energy", o.energy, "Particle energy, e.g. '54.39 eV'")->required();
    eq->add_option("--height", o.height, "Barrier height, e.g. '78.98 eV'")->required();
    auto* ef = esposito->add_subcommand("ftir", "Double prism factor");
    ef->add_option("--n1", o.n1, "Prism index")->required();
    ef->add_option("--n2", o.n2, "Gap index")->required();
    ef->add_option("--angle", o.angle, "Incidence angle, e.g. '45 deg'")->required();
    ef->add_option("--frequency", o.frequency, "Carrier frequency, e.g. '8.33 GHz'");
    ef->add_option("--period", o.period, "Carrier period T = 1/nu, e.g. '120 ps'");
    for (auto* sub : {eq, ef}) {
        sub->add_option("--format", o.format, "json (default) or csv");
        sub->add_option("--output", o.output, "Output file");
        sub->add_flag("--no-timestamp", o.no_timestamp, "Omit generated_at from JSON output");
    }

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const Emitter em(out, !o.no_timestamp);
    try {
        if (delay->parsed()) return cmd_delay(o, em);
        if (hartman->parsed()) return cmd_hartman(o, em);
        if (packet->parsed()) return cmd_packet(o, em);
        if (table1->parsed()) return cmd_table1(o, em, out);
        if (shift->parsed()) return cmd_ftir_shift(o, em);
        if (eq->parsed()) return cmd_esposito_quantum(o, em);
        if (ef->parsed()) return cmd_esposito_ftir(o, em);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const LoadError& e) {
        err << "dataset error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PhysicsError& e) {
        err << "error: " << e.what() << "\n";
        return kExitPhysics;
    }
    return kExitUsage;
}

} // namespace hartmankit::cli
