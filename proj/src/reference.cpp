#include "hartmankit/reference.hpp"

#include "hartmankit/csv.hpp"
#include "hartmankit/errors.hpp"
#include "hartmankit/units.hpp"
#include "hartmankit/universal.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>

namespace hartmankit::reference {

namespace {

const csv::Record kTableHeader = {"name", "reference", "tau_s", "T_s", "tauA_s", "family", "note"};
const csv::Record kAssumptionHeader = {"reference", "parameter", "value", "source"};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

Family parse_family(const std::string& s) {
    if (s == "ftir") return Family::ftir;
    if (s == "photonic_lattice") return Family::photonic_lattice;
    if (s == "undersized_waveguide") return Family::undersized_waveguide;
    if (s == "ionization") return Family::ionization;
    if (s == "acoustic") return Family::acoustic;
    throw LoadError("unknown barrier family '" + s + "'");
}

double parse_time(const std::string& s, const std::string& where) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
        throw LoadError(where + ": '" + s + "' is not a positive time in seconds");
    return v;
}

std::vector<csv::Record> read_file(const std::filesystem::path& path, const csv::Record& header) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw LoadError("cannot open " + path.string());
    auto rows = csv::read(in);
    if (rows.empty() || rows.front() != header)
        throw LoadError(path.string() + ": unexpected header");
    rows.erase(rows.begin());
    return rows;
}

using ParameterMap = std::map<std::string, std::map<std::string, units::Quantity>>;

ParameterMap load_assumptions(const std::filesystem::path& path) {
    ParameterMap out;
    if (!std::filesystem::exists(path))
        return out;
    for (const auto& rec : read_file(path, kAssumptionHeader)) {
        if (rec.size() != kAssumptionHeader.size())
            throw LoadError(path.string() + ": malformed row");
        try {
            out[rec[0]].insert_or_assign(rec[1], units::parse_quantity(rec[2]));
        } catch (const DomainError& e) {
            throw LoadError(path.string() + ": " + e.what());
        }
    }
    return out;
}

std::optional<RecoveredParameters> recover(Family family,
                                           const std::map<std::string, units::Quantity>& p) {
    using units::Dimension;
    auto get = [&](const char* key, Dimension dim) -> std::optional<double> {
        const auto it = p.find(key);
        if (it == p.end())
            return std::nullopt;
        try {
            return it->second.as(dim);
        } catch (const DomainError& e) {
            throw LoadError(std::string("assumption '") + key + "': " + e.what());
        }
    };
    if (family == Family::ionization) {
        const auto e = get("energy", Dimension::energy);
        const auto v0 = get("barrier_height", Dimension::energy);
        if (e && v0)
            return IonizationParameters{*e, *v0};
    }
    if (family == Family::ftir) {
        const auto n1 = get("n1", Dimension::dimensionless);
        const auto n2 = get("n2", Dimension::dimensionless);
        const auto theta = get("theta", Dimension::angle);
        if (n1 && n2 && theta)
            return FtirParameters{*n1, *n2, *theta};
    }
    return std::nullopt;
}

double relative(double value, double ref) {
    return (value - ref) / ref;
}

} // namespace

std::string_view to_string(Family f) {
    switch (f) {
    case Family::ftir: return "ftir";
    case Family::photonic_lattice: return "photonic_lattice";
    case Family::undersized_waveguide: return "undersized_waveguide";
    case Family::ionization: return "ionization";
    case Family::acoustic: return "acoustic";
    }
    return "?";
}

std::string ExperimentRow::display_name() const {
    return name + " / " + reference_label;
}

std::filesystem::path default_table_path() {
    if (const char* env = std::getenv("HARTMANKIT_DATA"); env && *env)
        return env;
    return std::filesystem::path(HARTMANKIT_DATA_DIR) / "table1.csv";
}

std::vector<ExperimentRow> load_table(const std::filesystem::path& table) {
    const auto params = load_assumptions(table.parent_path() / "assumptions.csv");
    std::vector<ExperimentRow> rows;
    std::size_t line = 1;
    for (const auto& rec : read_file(table, kTableHeader)) {
        ++line;
        const auto where = table.string() + " row " + std::to_string(line);
        if (rec.size() != kTableHeader.size())
            throw LoadError(where + ": expected " + std::to_string(kTableHeader.size()) + " fields");
        ExperimentRow row{rec[0],
                          rec[1],
                          parse_time(rec[2], where),
                          parse_time(rec[3], where),
                          parse_time(rec[4], where),
                          parse_family(rec[5]),
                          std::nullopt,
                          rec[6]};
        if (const auto it = params.find(row.reference_label); it != params.end())
            row.recovered_parameters = recover(row.family, it->second);
        rows.push_back(std::move(row));
    }
    if (rows.size() != 8)
        throw LoadError(table.string() + ": expected 8 rows, found " + std::to_string(rows.size()));
    return rows;
}

std::vector<ExperimentRow> load_table() {
    return load_table(default_table_path());
}

const ExperimentRow& find_row(const std::vector<ExperimentRow>& rows, std::string_view query) {
    const auto q = lower(query);
    for (const auto& row : rows) {
        if (lower(row.display_name()) == q || lower(row.reference_label) == q)
            return row;
    }
    const ExperimentRow* hit = nullptr;
    std::size_t hits = 0;
    for (const auto& row : rows) {
        if (lower(row.display_name()).find(q) != std::string::npos) {
            hit = &row;
            ++hits;
        }
    }
    if (hits == 0)
        throw ConfigError("no table row matches '" + std::string(query) + "'");
    if (hits > 1)
        throw ConfigError("'" + std::string(query) + "' matches " + std::to_string(hits) +
                          " rows; be more specific");
    return *hit;
}

ReproductionReport reproduce_row(const ExperimentRow& row) {
    ReproductionReport rep{};
    rep.row = row.display_name();
    rep.family = row.family;
    rep.status = ReproductionStatus::incomplete;
    rep.tau_over_T = row.tau_measured / row.T;

    if (row.recovered_parameters) {
        if (const auto* ion = std::get_if<IonizationParameters>(&*row.recovered_parameters)) {
            const double T = universal::particle_universal_time(ion->energy);
            const auto esp = universal::esposito_quantum(ion->energy, ion->height);
            rep.T_recomputed = T;
            rep.T_relative_deviation = relative(T, row.T);
            rep.tau_A_recomputed = esp.tau_form_ratio;
            rep.tau_A_relative_deviation = relative(esp.tau_form_ratio, row.tau_A);
            rep.tau_A_sqrt_form = esp.tau_form_sqrt;
            rep.esposito_consistent = esp.consistent;
            rep.A_factor = esp.tau_form_ratio / T;
            rep.mass = "electron";
            rep.status = ReproductionStatus::reproduced;
            rep.note = "T from the particle energy; tau_A in sqrt and ratio forms, the table "
                       "matches the ratio form";
            return rep;
        }
        if (const auto* ftir = std::get_if<FtirParameters>(&*row.recovered_parameters)) {
            const auto esp = universal::esposito_ftir(ftir->n1, ftir->n2, ftir->theta, 1.0 / row.T);
            rep.tau_A_recomputed = esp.tau_A;
            rep.tau_A_relative_deviation = relative(esp.tau_A, row.tau_A);
            rep.A_factor = esp.A;
            rep.status = ReproductionStatus::reproduced;
            rep.note = "tau_A from the FTIR factor with reconstructed prism parameters "
                       "(assumptions.csv)";
            return rep;
        }
    }
    rep.note = row.family == Family::acoustic
                   ? "no closed-form factor for phononic barriers; tau/T only"
                   : "source parameters unavailable; tau/T only";
    return rep;
}

UniversalitySummary universality_summary(const std::vector<ExperimentRow>& rows) {
    UniversalitySummary s{};
    std::vector<double> values;
    for (const auto& row : rows) {
        const double ratio = row.tau_measured / row.T;
        s.ratios.emplace_back(row.display_name(), ratio);
        values.push_back(ratio);
        if (ratio < 0.05 || ratio > 1.5)
            s.outside_wide_band.push_back(row.display_name());
        if (row.family != Family::ionization && (ratio < 0.8 || ratio > 1.2))
            s.outside_core_band.push_back(row.display_name());
    }
    if (values.empty())
        return s;
    std::sort(values.begin(), values.end());
    s.min = values.front();
    s.max = values.back();
    const auto n = values.size();
    s.median = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    return s;
}

} // namespace hartmankit::reference
