#pragma once

// Self-contained SVG rendering of a sweep: log-scale outage axis clamped to
// [1e-8, 1], one line series per scheme x user x method, legend, axis labels.
// Clamped points are drawn with a distinct hollow marker.

#include "noma/sweep.hpp"

#include <string>
#include <vector>

namespace noma {

std::string format_plot(const std::vector<ResultRow>& rows, const SweepSpec& sweep,
                        const std::string& title);
void emit_plot(const std::vector<ResultRow>& rows, const SweepSpec& sweep,
               const std::string& title, const std::string& path);

} // namespace noma
