#include "nsm/harness/records.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "nsm/error.hpp"

namespace nsm::harness {

namespace {

constexpr std::array<std::pair<Metric, std::string_view>, 5> kMetricNames{{
    {Metric::DistSqOpt, "dist_sq_opt"},
    {Metric::Objective, "objective"},
    {Metric::CorruptFlag, "corrupt_flag"},
    {Metric::GammaT, "gamma_t"},
    {Metric::Diverged, "diverged"},
}};

auto sort_key(const RunRecord& r) {
  return std::tie(r.run_id, r.method, r.seed, r.iter, r.metric);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_number(std::string_view s, std::string_view what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("csv: bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return value;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::string_view to_string(Metric metric) noexcept {
  for (const auto& [m, name] : kMetricNames) {
    if (m == metric) return name;
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  for (const auto& [m, n] : kMetricNames) {
    if (n == name) return m;
  }
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

bool record_less(const RunRecord& a, const RunRecord& b) { return sort_key(a) < sort_key(b); }

void sort_records(std::vector<RunRecord>& records) {
  std::sort(records.begin(), records.end(), record_less);
}

Statistic parse_statistic(std::string_view name) {
  if (name == "mean") return Statistic::Mean;
  if (name == "median") return Statistic::Median;
  if (name == "last") return Statistic::Last;
  throw ConfigError("unknown statistic '" + std::string(name) + "'");
}

std::vector<RunRecord> aggregate(const std::vector<RunRecord>& records, Statistic statistic) {
  using Key = std::tuple<std::string, std::string, std::int64_t, std::uint64_t, Metric>;
  std::set<Key> seen;
  for (const auto& r : records) {
    if (!seen.emplace(r.run_id, r.method, r.seed, r.iter, r.metric).second) {
      throw ConfigError("aggregate: duplicate record for run '" + r.run_id + "', method '" +
                        r.method + "', seed " + std::to_string(r.seed) + ", iter " +
                        std::to_string(r.iter) + "; records mix configurations");
    }
  }

  std::vector<RunRecord> out;
  if (statistic == Statistic::Last) {
    // (run_id, method, metric) -> seed -> (iter, value) of the latest record.
    using GroupKey = std::tuple<std::string, std::string, Metric>;
    std::map<GroupKey, std::map<std::int64_t, std::pair<std::uint64_t, double>>> latest;
    for (const auto& r : records) {
      auto& slot = latest[{r.run_id, r.method, r.metric}][r.seed];
      if (r.iter >= slot.first) slot = {r.iter, r.value};
    }
    for (const auto& [key, per_seed] : latest) {
      std::vector<double> values;
      std::uint64_t iter = 0;
      for (const auto& [seed, entry] : per_seed) {
        iter = std::max(iter, entry.first);
        values.push_back(entry.second);
      }
      out.push_back({std::get<0>(key), -1, std::get<1>(key), iter, std::get<2>(key), mean_of(values)});
    }
  } else {
    using GroupKey = std::tuple<std::string, std::string, std::uint64_t, Metric>;
    std::map<GroupKey, std::vector<double>> groups;
    for (const auto& r : records) groups[{r.run_id, r.method, r.iter, r.metric}].push_back(r.value);
    for (const auto& [key, values] : groups) {
      const double v = statistic == Statistic::Mean ? mean_of(values) : median_of(values);
      out.push_back({std::get<0>(key), -1, std::get<1>(key), std::get<2>(key), std::get<3>(key), v});
    }
  }
  sort_records(out);
  return out;
}

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_real: conversion failed");
  return std::string(buf.data(), ptr);
}

std::string to_csv(const std::vector<RunRecord>& records) {
  std::string out;
  out.reserve(64 * (records.size() + 1));
  out.append(kCsvHeader);
  out.push_back('\n');
  for (const auto& r : records) {
    if (r.run_id.find_first_of(",\n\r\"") != std::string::npos ||
        r.method.find_first_of(",\n\r\"") != std::string::npos) {
      throw ConfigError("to_csv: run_id and method must not contain separators or quotes");
    }
    out.append(r.run_id);
    out.push_back(',');
    out.append(std::to_string(r.seed));
    out.push_back(',');
    out.append(r.method);
    out.push_back(',');
    out.append(std::to_string(r.iter));
    out.push_back(',');
    out.append(to_string(r.metric));
    out.push_back(',');
    out.append(format_real(r.value));
    out.push_back('\n');
  }
  return out;
}

void write_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  const std::string text = to_csv(records);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("write_csv: cannot open '" + path.string() + "' for writing");
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  os.flush();
  if (!os) throw std::runtime_error("write_csv: write to '" + path.string() + "' failed");
}

std::vector<RunRecord> parse_csv(std::string_view text) {
  std::vector<RunRecord> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != kCsvHeader) throw ConfigError("csv: unexpected header");
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 6) {
      throw ConfigError("csv: line " + std::to_string(line_no) + " has " +
                        std::to_string(fields.size()) + " fields");
    }
    out.push_back({std::string(fields[0]), parse_number<std::int64_t>(fields[1], "seed"),
                   std::string(fields[2]), parse_number<std::uint64_t>(fields[3], "iter"),
                   parse_metric(fields[4]), parse_number<double>(fields[5], "value")});
  }
  if (line_no == 0) throw ConfigError("csv: empty input");
  return out;
}

}  // namespace nsm::harness
