#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nsm::harness {

enum class Metric { DistSqOpt, Objective, CorruptFlag, GammaT, Diverged };

std::string_view to_string(Metric metric) noexcept;
Metric parse_metric(std::string_view name);

/// One CSV row: run_id,seed,method,iter,metric,value.
///
/// Aggregated rows use seed = -1.
struct RunRecord {
  std::string run_id;
  std::int64_t seed;
  std::string method;
  std::uint64_t iter;
  Metric metric;
  double value;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Output order: (run_id, method, seed, iter), then metric in enum order.
bool record_less(const RunRecord& a, const RunRecord& b);
void sort_records(std::vector<RunRecord>& records);

enum class Statistic { Mean, Median, Last };
Statistic parse_statistic(std::string_view name);

/// Collapses seeds. Mean and Median summarize each (run_id, method, iter,
/// metric) group. Last takes every seed's final recorded value of each
/// (run_id, method, metric) and averages them, reported at the largest
/// final iter. Throws ConfigError when a (run_id, method, seed, iter, metric)
/// key repeats, which means records from different configurations were mixed.
std::vector<RunRecord> aggregate(const std::vector<RunRecord>& records, Statistic statistic);

inline constexpr std::string_view kCsvHeader = "run_id,seed,method,iter,metric,value";

/// 17 significant digits, shortest exponent form where needed; round-trips.
std::string format_real(double value);

/// Header plus one LF-terminated line per record, in the given order.
std::string to_csv(const std::vector<RunRecord>& records);

/// Writes to_csv(records) to `path`. Throws std::runtime_error naming the
/// path on I/O failure.
void write_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path);

/// Parses what to_csv produced. Throws ConfigError on malformed input.
std::vector<RunRecord> parse_csv(std::string_view text);

}  // namespace nsm::harness
