#pragma once

#include <filesystem>
#include <iosfwd>

#include "cpjoint/dataset.hpp"

namespace cpjoint::cli {

/// Numeric CSV: comma separated, '.' decimal point, no quoting. A first row containing any
/// non-numeric field is taken as a header and skipped. Blank lines are ignored.
/// Throws Error{ParseError} naming the offending line, plus the Dataset validation errors.
Dataset parse_csv(std::istream& in);

/// Throws Error{IoError} if the file cannot be opened.
Dataset read_csv(const std::filesystem::path& path);

/// Shortest round-trip decimal for every value, so parse_csv(write_csv(d)) == d bit for bit.
void write_csv(std::ostream& out, const Dataset& data);

}  // namespace cpjoint::cli
