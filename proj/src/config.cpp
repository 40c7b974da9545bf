#include "hartmankit/config.hpp"

#include "hartmankit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace hartmankit::config {

namespace {

using units::Dimension;

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

units::Quantity parse_entry(const ConfigFile::Entry& e) {
    try {
        return units::parse_quantity(e.value);
    } catch (const DomainError& err) {
        throw ConfigError(e.line, e.key + ": " + err.what());
    }
}

barriers::BarrierModel parse_barrier(const ConfigFile& f) {
    if (!f.has_section("barrier"))
        throw ConfigError("missing [barrier] section");
    const auto family = f.text("barrier", "family");

    if (family == "quantum") {
        f.require_known("barrier", {"family", "height", "width", "mass"});
        barriers::RectangularQuantumBarrier b{};
        b.height = f.quantity("barrier", "height", Dimension::energy);
        b.width = f.quantity("barrier", "width", Dimension::length);
        b.mass = f.optional_quantity("barrier", "mass", Dimension::mass).value_or(units::m_e);
        return b;
    }
    if (family == "stack" || family == "vacuum") {
        barriers::DielectricStack s;
        if (family == "vacuum") {
            f.require_known("barrier", {"family", "length"});
            s.layers.push_back({1.0, f.quantity("barrier", "length", Dimension::length)});
            return s;
        }
        f.require_known("barrier", {"family", "n_in", "n_out", "layer", "n_high", "n_low",
                                    "periods", "design_frequency"});
        const double n_in = f.optional_number("barrier", "n_in").value_or(1.0);
        const double n_out = f.optional_number("barrier", "n_out").value_or(1.0);
        if (f.find("barrier", "periods")) {
            const double periods = f.number("barrier", "periods");
            if (periods != std::floor(periods) || periods < 0)
                throw ConfigError(f.find("barrier", "periods")->line, "periods must be a whole number");
            s = barriers::quarter_wave_stack(f.number("barrier", "n_high"), f.number("barrier", "n_low"),
                                             static_cast<int>(periods),
                                             f.quantity("barrier", "design_frequency", Dimension::frequency),
                                             n_in);
        }
        for (const auto* e : f.all("barrier", "layer")) {
            std::istringstream is(e->value);
            std::string index;
            is >> index;
            std::string rest;
            std::getline(is, rest);
            const auto n = parse_entry({e->key, index, e->line});
            if (n.dimension() != Dimension::dimensionless)
                throw ConfigError(e->line, "layer: expected '<index> <thickness> <unit>'");
            const auto d = parse_entry({e->key, rest, e->line});
            if (d.dimension() != Dimension::length)
                throw ConfigError(e->line, "layer: thickness needs a length unit");
            s.layers.push_back({n.si(), d.si()});
        }
        s.n_in = n_in;
        s.n_out = n_out;
        return s;
    }
    if (family == "ftir") {
        f.require_known("barrier", {"family", "n1", "n2", "angle", "gap", "polarization",
                                    "reference_frequency"});
        barriers::FtirGap g{};
        g.n1 = f.number("barrier", "n1");
        g.n2 = f.number("barrier", "n2");
        g.theta = f.quantity("barrier", "angle", Dimension::angle);
        g.gap = f.quantity("barrier", "gap", Dimension::length);
        g.reference_frequency = f.quantity("barrier", "reference_frequency", Dimension::frequency);
        const auto pol = f.text("barrier", "polarization");
        if (pol == "s")
            g.polarization = barriers::Polarization::s;
        else if (pol == "p")
            g.polarization = barriers::Polarization::p;
        else
            throw ConfigError(f.find("barrier", "polarization")->line, "polarization must be s or p");
        return g;
    }
    if (family == "waveguide") {
        f.require_known("barrier", {"family", "cutoff_wide", "cutoff_narrow", "length"});
        barriers::UndersizedWaveguideBarrier w{};
        w.cutoff_wide = f.quantity("barrier", "cutoff_wide", Dimension::frequency);
        w.cutoff_narrow = f.quantity("barrier", "cutoff_narrow", Dimension::frequency);
        w.length = f.quantity("barrier", "length", Dimension::length);
        return w;
    }
    throw ConfigError(f.find("barrier", "family")->line,
                      "unknown family '" + family + "' (quantum, stack, vacuum, ftir, waveguide)");
}

std::size_t parse_count(const ConfigFile& f, const std::string& section, const std::string& key) {
    const auto* e = f.find(section, key);
    const double v = f.number(section, key);
    if (v != std::floor(v) || v < 0 || v > 1e9)
        throw ConfigError(e->line, key + " must be a whole number");
    return static_cast<std::size_t>(v);
}

} // namespace

ConfigFile ConfigFile::parse(std::istream& in) {
    ConfigFile f;
    std::string raw;
    std::string current;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto text = trim(raw);
        if (text.empty() || text[0] == '#' || text[0] == ';')
            continue;
        if (text.front() == '[') {
            if (text.back() != ']')
                throw ConfigError(line, "unterminated section header");
            current = trim(text.substr(1, text.size() - 2));
            if (current.empty())
                throw ConfigError(line, "empty section name");
            if (f.sections_.count(current))
                throw ConfigError(line, "duplicate section [" + current + "]");
            f.sections_[current].line = line;
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line, "expected 'key = value'");
        if (current.empty())
            throw ConfigError(line, "key outside of any section");
        auto key = trim(text.substr(0, eq));
        auto value = trim(text.substr(eq + 1));
        if (const auto hash = value.find(" #"); hash != std::string::npos)
            value = trim(value.substr(0, hash));
        if (key.empty() || value.empty())
            throw ConfigError(line, "empty key or value");
        auto& sec = f.sections_[current];
        if (key != "layer") {
            for (const auto& e : sec.entries)
                if (e.key == key)
                    throw ConfigError(line, "duplicate key '" + key + "'");
        }
        sec.entries.push_back({key, value, line});
    }
    return f;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    return parse(in);
}

bool ConfigFile::has_section(const std::string& section) const {
    return sections_.count(section) != 0;
}

std::size_t ConfigFile::section_line(const std::string& section) const {
    const auto it = sections_.find(section);
    return it == sections_.end() ? 0 : it->second.line;
}

const ConfigFile::Entry* ConfigFile::find(const std::string& section, const std::string& key) const {
    const auto it = sections_.find(section);
    if (it == sections_.end())
        return nullptr;
    for (const auto& e : it->second.entries)
        if (e.key == key)
            return &e;
    return nullptr;
}

std::vector<const ConfigFile::Entry*> ConfigFile::all(const std::string& section,
                                                     const std::string& key) const {
    std::vector<const Entry*> out;
    const auto it = sections_.find(section);
    if (it == sections_.end())
        return out;
    for (const auto& e : it->second.entries)
        if (e.key == key)
            out.push_back(&e);
    return out;
}

const ConfigFile::Entry& ConfigFile::required(const std::string& section,
                                              const std::string& key) const {
    if (const auto* e = find(section, key))
        return *e;
    throw ConfigError(section_line(section), "[" + section + "] is missing '" + key + "'");
}

std::string ConfigFile::text(const std::string& section, const std::string& key) const {
    return required(section, key).value;
}

std::optional<std::string> ConfigFile::optional_text(const std::string& section,
                                                     const std::string& key) const {
    if (const auto* e = find(section, key))
        return e->value;
    return std::nullopt;
}

double ConfigFile::quantity(const std::string& section, const std::string& key,
                            units::Dimension dim) const {
    const auto& e = required(section, key);
    const auto q = parse_entry(e);
    if (q.dimension() == Dimension::dimensionless && dim != Dimension::dimensionless)
        throw ConfigError(e.line, key + ": missing unit (expected " +
                                      std::string(units::to_string(dim)) + ")");
    if (q.dimension() != dim)
        throw ConfigError(e.line, key + ": expected " + std::string(units::to_string(dim)) +
                                      ", got " + std::string(units::to_string(q.dimension())));
    return q.si();
}

std::optional<double> ConfigFile::optional_quantity(const std::string& section,
                                                    const std::string& key,
                                                    units::Dimension dim) const {
    if (!find(section, key))
        return std::nullopt;
    return quantity(section, key, dim);
}

double ConfigFile::angular_frequency(const std::string& section, const std::string& key) const {
    const auto& e = required(section, key);
    const auto q = parse_entry(e);
    switch (q.dimension()) {
    case Dimension::energy: return q.si() / units::hbar;
    case Dimension::frequency: return 2.0 * std::numbers::pi * q.si();
    case Dimension::dimensionless:
        throw ConfigError(e.line, key + ": missing unit (expected energy or frequency)");
    default:
        throw ConfigError(e.line, key + ": expected an energy or a frequency");
    }
}

double ConfigFile::number(const std::string& section, const std::string& key) const {
    const auto& e = required(section, key);
    const auto q = parse_entry(e);
    if (q.dimension() != Dimension::dimensionless)
        throw ConfigError(e.line, key + ": expected a plain number");
    return q.si();
}

std::optional<double> ConfigFile::optional_number(const std::string& section,
                                                  const std::string& key) const {
    if (!find(section, key))
        return std::nullopt;
    return number(section, key);
}

void ConfigFile::check_sections(const std::vector<std::string>& allowed) const {
    for (const auto& [name, sec] : sections_)
        if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
            throw ConfigError(sec.line, "unknown section [" + name + "]");
}

void ConfigFile::require_known(const std::string& section,
                               const std::vector<std::string>& allowed) const {
    const auto it = sections_.find(section);
    if (it == sections_.end())
        return;
    for (const auto& e : it->second.entries)
        if (std::find(allowed.begin(), allowed.end(), e.key) == allowed.end())
            throw ConfigError(e.line, "unknown key '" + e.key + "' in [" + section + "]");
}

RunConfig parse_run_config(const ConfigFile& f) {
    f.check_sections({"barrier", "grid", "packet", "output"});
    RunConfig rc{parse_barrier(f), std::nullopt, std::nullopt, std::nullopt, {}};

    if (f.has_section("grid")) {
        f.require_known("grid", {"start", "stop", "samples", "at"});
        if (f.find("grid", "start") || f.find("grid", "stop") || f.find("grid", "samples")) {
            const double start = f.angular_frequency("grid", "start");
            const double stop = f.angular_frequency("grid", "stop");
            const auto samples = parse_count(f, "grid", "samples");
            try {
                rc.grid = barriers::FrequencyGrid::linspace(start, stop, samples);
            } catch (const DomainError& e) {
                throw ConfigError(f.section_line("grid"), std::string("[grid]: ") + e.what());
            }
        }
        if (f.find("grid", "at"))
            rc.at = f.angular_frequency("grid", "at");
    }

    if (f.has_section("packet")) {
        f.require_known("packet", {"carrier", "bandwidth", "window_start", "window_end",
                                   "samples", "center"});
        packets::GaussianPacketSpec p{};
        p.carrier = f.angular_frequency("packet", "carrier") / (2.0 * std::numbers::pi);
        p.relative_bandwidth = f.number("packet", "bandwidth");
        p.t_start = f.quantity("packet", "window_start", Dimension::time);
        p.t_end = f.quantity("packet", "window_end", Dimension::time);
        p.samples = parse_count(f, "packet", "samples");
        p.t_center = f.optional_quantity("packet", "center", Dimension::time);
        rc.packet = p;
    }

    if (f.has_section("output")) {
        f.require_known("output", {"format", "path"});
        if (const auto fmt = f.optional_text("output", "format")) {
            if (*fmt == "json")
                rc.output.format = OutputFormat::json;
            else if (*fmt == "csv")
                rc.output.format = OutputFormat::csv;
            else
                throw ConfigError(f.find("output", "format")->line, "format must be json or csv");
        }
        if (const auto path = f.optional_text("output", "path"))
            rc.output.path = *path;
    }
    return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    return parse_run_config(ConfigFile::load(path));
}

} // namespace hartmankit::config
