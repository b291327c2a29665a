#pragma once

#include "projfeas/experiments.hpp"
#include "projfeas/regularity.hpp"
#include "projfeas/trace.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace projfeas {

enum class OutputFormat { kCsv, kJson };

std::optional<OutputFormat> parse_format(std::string_view s);

/// Iterates are written to JSON only up to this ambient dimension.
inline constexpr Eigen::Index kMaxJsonIterateDim = 64;

/// Columns: iter, f, log10_f, grad_norm, step_norm, dist_1..dist_m, ratio.
/// step_norm and ratio are blank on the first row.
void write_trace_csv(std::ostream& out, const Trace& trace);

/// The trace, optional regularity report and config echo as one JSON document.
std::string trace_json(const Trace& trace, const RegularityReport* report,
                       const ExperimentConfig* config);

/// Writes CSV or JSON; throws IoError naming the path when it cannot be written.
void emit(const ExperimentResult& result, OutputFormat format,
          const std::filesystem::path& path);
void emit(const Trace& trace, const RegularityReport* report, OutputFormat format,
          const std::filesystem::path& path);

/// Reads the trace part of a document produced by trace_json.
Trace read_trace_json(const std::string& text);

} // namespace projfeas
