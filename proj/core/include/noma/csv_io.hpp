#pragma once

// Deterministic CSV emission: fixed header, 17 significant digits for
// doubles (lossless round-trip), LF line endings, rows in sweep order.

#include "noma/sweep.hpp"

#include <string>
#include <vector>

namespace noma {

extern const char* const kCsvHeader;

std::string format_csv(const std::vector<ResultRow>& rows);
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);

// Inverse of emit_csv; throws validation_error on malformed input.
std::vector<ResultRow> parse_csv(const std::string& path);

} // namespace noma
