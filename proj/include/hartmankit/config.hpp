#pragma once

#include "hartmankit/barriers.hpp"
#include "hartmankit/packets.hpp"
#include "hartmankit/units.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hartmankit::config {

/// Sectioned key-value text:
///
///     # comment
///     [barrier]
///     family = quantum
///     height = 10 eV
///
/// Values with a physical dimension must carry a unit. Only `layer` may repeat.
class ConfigFile {
public:
    struct Entry {
        std::string key;
        std::string value;
        std::size_t line;
    };

    static ConfigFile parse(std::istream& in);
    static ConfigFile load(const std::filesystem::path& path);

    bool has_section(const std::string& section) const;
    std::size_t section_line(const std::string& section) const;

    const Entry* find(const std::string& section, const std::string& key) const;
    std::vector<const Entry*> all(const std::string& section, const std::string& key) const;

    std::string text(const std::string& section, const std::string& key) const;
    std::optional<std::string> optional_text(const std::string& section, const std::string& key) const;

    /// SI value of a dimensional field; a missing unit is an error.
    double quantity(const std::string& section, const std::string& key, units::Dimension dim) const;
    std::optional<double> optional_quantity(const std::string& section, const std::string& key,
                                            units::Dimension dim) const;

    /// Angular frequency from an energy (omega = E / hbar) or frequency (omega = 2 pi nu) field.
    double angular_frequency(const std::string& section, const std::string& key) const;

    /// Plain number without unit (indices, counts). "%" is accepted for fractions.
    double number(const std::string& section, const std::string& key) const;
    std::optional<double> optional_number(const std::string& section, const std::string& key) const;

    /// Rejects keys outside `allowed` in `section`.
    void require_known(const std::string& section, const std::vector<std::string>& allowed) const;
    void check_sections(const std::vector<std::string>& allowed) const;

private:
    struct Section {
        std::size_t line = 0;
        std::vector<Entry> entries;
    };
    const Entry& required(const std::string& section, const std::string& key) const;

    std::map<std::string, Section> sections_;
};

enum class OutputFormat { json, csv };

struct OutputSpec {
    std::optional<OutputFormat> format;
    std::optional<std::filesystem::path> path;
};

struct RunConfig {
    barriers::BarrierModel barrier;
    std::optional<barriers::FrequencyGrid> grid;
    std::optional<double> at;  ///< rad/s
    std::optional<packets::GaussianPacketSpec> packet;
    OutputSpec output;
};

RunConfig parse_run_config(const ConfigFile& file);
RunConfig load_run_config(const std::filesystem::path& path);

} // namespace hartmankit::config
