#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hartmankit::csv {

using Record = std::vector<std::string>;

/// RFC 4180 reader: quoted fields may hold commas, doubled quotes and newlines.
/// Blank lines are skipped.
std::vector<Record> read(std::istream& in);

/// Writes one record, quoting fields that contain a comma, quote, CR or LF.
void write_record(std::ostream& out, const Record& record);

std::string quote(std::string_view field);

} // namespace hartmankit::csv
