#pragma once

#include "wavseg/harness.hpp"
#include "wavseg/multiscale.hpp"
#include "wavseg/simgen.hpp"
#include "wavseg/tau_table.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace wavseg::io {

inline constexpr int kSchemaVersion = 1;

/// Malformed or unreadable input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads one column of a headerless comma-separated numeric file. Blank
/// lines are skipped; anything else that does not parse is an InputError.
std::vector<double> read_csv_column(const std::string& path, int column = 0);
void write_series_csv(const std::string& path, const VectorX<double>& values);

nlohmann::json to_json(const TauTable& table);
TauTable tau_table_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const PiecewiseModelSpec& spec);
PiecewiseModelSpec model_spec_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const ReplicationReport& report, bool include_runtime = false);
/// One row per replicate: replicate, count, i_star_final, breakpoints.
std::string outcomes_csv(const ReplicationReport& report);

/// Segmentation output; indices shifted by one when `one_based`.
nlohmann::json to_json(const LswSegmentation& result, bool one_based = false);

/// Periodogram rows as columns (t, scale_-1, ...) plus a 0/1 breakpoint marker.
std::string periodogram_csv(const PeriodogramStackd& stack, const BreakpointSet& breakpoints, bool one_based = false);

nlohmann::json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace wavseg::io
