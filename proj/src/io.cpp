#include "wavseg/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace wavseg::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view field, const std::string& where) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || end != field.data() + field.size() || !std::isfinite(value)) {
    throw InputError(where + ": not a finite number: '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::vector<double> read_csv_column(const std::string& path, int column) {
  if (column < 0) throw InputError("column index must be nonnegative");
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::vector<double> values;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (trim(line).empty()) continue;
    std::string_view rest(line);
    for (int c = 0; c < column; ++c) {
      const auto comma = rest.find(',');
      if (comma == std::string_view::npos) {
        throw InputError(path + ":" + std::to_string(line_no) + ": no column " + std::to_string(column));
      }
      rest.remove_prefix(comma + 1);
    }
    values.push_back(parse_number(rest.substr(0, rest.find(',')), path + ":" + std::to_string(line_no)));
  }
  return values;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

void write_series_csv(const std::string& path, const VectorX<double>& values) {
  std::ostringstream text;
  text << std::setprecision(17);
  for (Index t = 0; t < values.size(); ++t) text << values[t] << '\n';
  write_text(path, text.str());
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

nlohmann::json to_json(const TauTable& table) {
  nlohmann::json entries = nlohmann::json::array();
  // Finest scale first.
  for (auto it = table.entries().rbegin(); it != table.entries().rend(); ++it) {
    entries.push_back({{"scale", it->first}, {"tau_detect", it->second.detect}, {"tau_post", it->second.post}});
  }
  return {{"schema_version", kSchemaVersion}, {"kind", "tau_table"}, {"T", table.length()}, {"entries", entries}};
}

TauTable tau_table_from_json(const nlohmann::json& doc) {
  try {
    std::map<int, TauPair> entries;
    for (const auto& entry : doc.at("entries")) {
      entries[entry.at("scale").get<int>()] = {entry.at("tau_detect").get<double>(),
                                               entry.at("tau_post").get<double>()};
    }
    return TauTable(doc.at("T").get<Index>(), std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("tau table: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("tau table: ") + e.what());
  }
}

nlohmann::json to_json(const PiecewiseModelSpec& spec) {
  nlohmann::json segments = nlohmann::json::array();
  for (const auto& seg : spec.segments()) {
    segments.push_back(
        {{"length", seg.length}, {"ar", seg.ar}, {"ma", seg.ma}, {"innovation_sd", seg.innovation_sd}});
  }
  return {{"schema_version", kSchemaVersion}, {"kind", "model_spec"}, {"name", spec.name()}, {"segments", segments}};
}

PiecewiseModelSpec model_spec_from_json(const nlohmann::json& doc) {
  try {
    std::vector<ArmaSegment> segments;
    for (const auto& seg : doc.at("segments")) {
      segments.push_back({seg.at("length").get<Index>(), seg.value("ar", std::vector<double>{}),
                          seg.value("ma", std::vector<double>{}), seg.value("innovation_sd", 1.0)});
    }
    return PiecewiseModelSpec(std::move(segments), doc.value("name", std::string("custom")));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("model spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("model spec: ") + e.what());
  }
}

namespace {
nlohmann::json histogram_json(const std::map<int, int>& histogram) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [value, freq] : histogram) out.push_back({{"value", value}, {"frequency", freq}});
  return out;
}
}  // namespace

nlohmann::json to_json(const ReplicationReport& report, bool include_runtime) {
  nlohmann::json doc = {{"schema_version", kSchemaVersion},
                        {"kind", "replication_report"},
                        {"model", report.model},
                        {"T", report.length},
                        {"reps", report.reps},
                        {"seed", report.seed},
                        {"true_breakpoints", report.true_breakpoints},
                        {"count_histogram", histogram_json(report.count_histogram)},
                        {"i_star_histogram", histogram_json(report.i_star_histogram)},
                        {"location_errors", report.location_errors}};
  if (include_runtime) {
    doc["runtime"] = {{"mean_seconds", report.runtime.mean_seconds},
                      {"max_seconds", report.runtime.max_seconds},
                      {"total_seconds", report.runtime.total_seconds}};
  }
  return doc;
}

std::string outcomes_csv(const ReplicationReport& report) {
  std::ostringstream out;
  out << "replicate,count,i_star_final,breakpoints\n";
  for (std::size_t r = 0; r < report.outcomes.size(); ++r) {
    const auto& outcome = report.outcomes[r];
    out << r << ',' << outcome.breakpoints.size() << ',' << outcome.i_star_final << ',';
    for (std::size_t k = 0; k < outcome.breakpoints.size(); ++k) {
      out << (k ? " " : "") << outcome.breakpoints[k];
    }
    out << '\n';
  }
  return out.str();
}

namespace {
nlohmann::json breakpoints_json(const BreakpointSet& set, bool one_based) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& bp : set) {
    out.push_back({{"index", bp.index + (one_based ? 1 : 0)},
                   {"source_scale", bp.source_scale},
                   {"statistic", bp.statistic}});
  }
  return out;
}
}  // namespace

nlohmann::json to_json(const LswSegmentation& result, bool one_based) {
  nlohmann::json scales = nlohmann::json::array();
  for (auto it = result.scales.per_scale().rbegin(); it != result.scales.per_scale().rend(); ++it) {
    scales.push_back({{"scale", it->first}, {"breakpoints", breakpoints_json(it->second, one_based)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "segmentation"},
          {"T", result.breakpoints.length()},
          {"index_base", one_based ? 1 : 0},
          {"i_star_final", result.i_star_final},
          {"breakpoints", breakpoints_json(result.breakpoints, one_based)},
          {"per_scale", scales}};
}

std::string periodogram_csv(const PeriodogramStackd& stack, const BreakpointSet& breakpoints, bool one_based) {
  std::ostringstream out;
  out << std::setprecision(12) << 't';
  for (int scale : stack.scales()) out << ",scale_" << scale;
  out << ",breakpoint\n";
  std::vector<bool> marked(static_cast<std::size_t>(stack.length()), false);
  for (const auto& bp : breakpoints) marked[static_cast<std::size_t>(bp.index)] = true;
  for (Index t = 0; t < stack.length(); ++t) {
    out << t + (one_based ? 1 : 0);
    for (int scale : stack.scales()) out << ',' << stack.row(scale)[t];
    out << ',' << (marked[static_cast<std::size_t>(t)] ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace wavseg::io
