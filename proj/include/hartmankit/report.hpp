#pragma once

#include "hartmankit/packets.hpp"
#include "hartmankit/phasetime.hpp"
#include "hartmankit/reference.hpp"
#include "hartmankit/universal.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace hartmankit::report {

using Json = nlohmann::ordered_json;

/// Scientific notation, 9 significant digits ("1.31640029e-16").
std::string format_number(double v);

/// The double that format_number(v) parses back to.
double round_to_output(double v);

/// Pretty JSON with stable key order; floating values use format_number,
/// non-finite values become null.
void write_json(std::ostream& out, const Json& value);
std::string dump_json(const Json& value);

/// Header row of keys and one row of values. Nested objects flatten to
/// "outer.inner"; arrays of scalars are joined with "; ".
void write_csv(std::ostream& out, const Json& object);

/// One header row and one row per object; the columns are the first object's keys.
void write_csv_table(std::ostream& out, const std::vector<Json>& rows);

Json to_json(const phasetime::TunnelingTimeReport& r);
Json to_json(const std::vector<phasetime::HartmanPoint>& scan);
Json to_json(const phasetime::LateralShift& s);
Json to_json(const packets::ArrivalReport& r);
Json to_json(const reference::ExperimentRow& row);
Json to_json(const reference::ReproductionReport& r);
Json to_json(const reference::UniversalitySummary& s);
Json to_json(const universal::EspositoQuantumResult& r);
Json to_json(const universal::EspositoFtirResult& r);

/// Adds "generated_at" (UTC, ISO 8601) as the first key.
Json with_timestamp(const Json& object);

} // namespace hartmankit::report
