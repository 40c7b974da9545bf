#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hartmankit::reference {

enum class Family { ftir, photonic_lattice, undersized_waveguide, ionization, acoustic };

std::string_view to_string(Family f);

struct IonizationParameters {
    double energy;  ///< J
    double height;  ///< J
};

struct FtirParameters {
    double n1;
    double n2;
    double theta;  ///< rad
};

using RecoveredParameters = std::variant<IonizationParameters, FtirParameters>;

struct ExperimentRow {
    std::string name;
    std::string reference_label;
    double tau_measured;  ///< s
    double T;             ///< s
    double tau_A;         ///< s
    Family family;
    std::optional<RecoveredParameters> recovered_parameters;
    std::string provenance_note;

    /// "name / reference"
    std::string display_name() const;
};

/// HARTMANKIT_DATA if set, otherwise the table shipped in data/.
std::filesystem::path default_table_path();

/// Reads the tunneling-time table. Parameters come from assumptions.csv next to
/// the table; rows without an entry there have no recovered parameters.
std::vector<ExperimentRow> load_table(const std::filesystem::path& table);
std::vector<ExperimentRow> load_table();

/// Case-insensitive lookup by display name, name, reference, or unique substring.
/// Throws ConfigError when nothing or more than one row matches.
const ExperimentRow& find_row(const std::vector<ExperimentRow>& rows, std::string_view query);

enum class ReproductionStatus { reproduced, incomplete };

struct ReproductionReport {
    std::string row;
    Family family;
    ReproductionStatus status;
    double tau_over_T;
    std::optional<double> T_recomputed;
    std::optional<double> T_relative_deviation;
    std::optional<double> tau_A_recomputed;  ///< form that the table uses
    std::optional<double> tau_A_relative_deviation;
    std::optional<double> tau_A_sqrt_form;   ///< ionization only
    std::optional<bool> esposito_consistent; ///< ionization only
    std::optional<double> A_factor;
    std::optional<std::string> mass;
    std::string note;
};

ReproductionReport reproduce_row(const ExperimentRow& row);

struct UniversalitySummary {
    std::vector<std::pair<std::string, double>> ratios;  ///< tau / T per row
    double min;
    double max;
    double median;
    /// Rows with tau/T outside [0.05, 1.5].
    std::vector<std::string> outside_wide_band;
    /// Non-ionization rows with tau/T outside [0.8, 1.2].
    std::vector<std::string> outside_core_band;
};

UniversalitySummary universality_summary(const std::vector<ExperimentRow>& rows);

} // namespace hartmankit::reference
