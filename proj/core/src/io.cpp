#include "singseries/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "singseries/errors.hpp"
#include "singseries/version.hpp"

namespace singseries {

void RunMeta::add(const std::string& k, std::uint64_t v) { params.emplace_back(k, std::to_string(v)); }

void RunMeta::add(const std::string& k, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  params.emplace_back(k, buf);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string resolve_out_path(const std::string& path) {
  if (path.empty()) raise(errc::usage, "output path is empty");
  if (path.front() == '/') return path;
  const char* dir = std::getenv("SINGSERIES_OUT_DIR");
  if (!dir || !*dir) return path;
  std::string out = dir;
  if (out.back() != '/') out.push_back('/');
  return out + path;
}

namespace {

using ordered_json = nlohmann::ordered_json;

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) raise(errc::usage, "cannot open output file: " + path);
  return f;
}

}  // namespace

void write_artifact_json(const std::string& path, const RunMeta& meta,
                         const ArtifactPayload& payload) {
  ordered_json doc;
  doc["schema_version"] = artifact_schema_version;
  doc["generator"] = {{"name", "singseries"}, {"version", version_string}};
  doc["command"] = meta.command;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : meta.params) params[k] = v;
  doc["params"] = params;
  ordered_json results = ordered_json::object();
  for (const auto& [k, v] : payload.numbers) results[k] = v;
  for (const auto& [k, v] : payload.integers) results[k] = v;
  for (const auto& [k, v] : payload.strings) results[k] = v;
  doc["results"] = results;
  if (payload.has_zero_atom || !payload.histogram.empty()) {
    ordered_json hist;
    hist["zero_atom"] = payload.zero_atom_count;
    ordered_json bins = ordered_json::array();
    for (const auto& row : payload.histogram) bins.push_back({row.lo, row.hi, row.count});
    hist["bins"] = bins;
    doc["histogram"] = hist;
  }
  if (!payload.count_histogram.empty()) {
    ordered_json rows = ordered_json::array();
    for (const auto& [r, c] : payload.count_histogram) rows.push_back({r, c});
    doc["count_histogram"] = rows;
  }
  auto f = open_out(path);
  f << doc.dump(2) << '\n';
}

void write_artifact_csv(const std::string& path, const RunMeta& meta,
                        const ArtifactPayload& payload) {
  auto f = open_out(path);
  f << "# singseries " << version_string << "\n";
  f << "# schema_version=" << artifact_schema_version << "\n";
  f << "# command=" << meta.command << "\n";
  for (const auto& [k, v] : meta.params) f << "# param." << k << "=" << v << "\n";
  char buf[64];
  if (!payload.histogram.empty() || payload.has_zero_atom) {
    f << "bin_lo,bin_hi,count\n";
    if (payload.has_zero_atom) f << "0,0," << payload.zero_atom_count << "\n";
    for (const auto& row : payload.histogram) {
      std::snprintf(buf, sizeof buf, "%.17g", row.lo);
      f << buf << ",";
      std::snprintf(buf, sizeof buf, "%.17g", row.hi);
      f << buf << "," << row.count << "\n";
    }
  } else if (!payload.count_histogram.empty()) {
    f << "seeds,windows\n";
    for (const auto& [r, c] : payload.count_histogram) f << r << "," << c << "\n";
  } else {
    f << "key,value\n";
    for (const auto& [k, v] : payload.numbers) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      f << k << "," << buf << "\n";
    }
    for (const auto& [k, v] : payload.integers) f << k << "," << v << "\n";
    for (const auto& [k, v] : payload.strings) f << k << "," << v << "\n";
  }
}

std::vector<ArtifactPayload::HistRow> bin_distribution(const EmpiricalDistribution& d,
                                                       std::uint32_t bins) {
  if (bins < 1) raise(errc::domain, "bin count must be positive");
  std::vector<ArtifactPayload::HistRow> rows;
  if (d.atoms().empty()) return rows;
  double lo = d.atoms().front().first;
  double hi = d.atoms().back().first;
  if (hi <= lo) {
    rows.push_back({lo, hi, 0});
    for (const auto& [v, c] : d.atoms()) rows.back().count += c;
    return rows;
  }
  double width = (hi - lo) / bins;
  rows.resize(bins);
  for (std::uint32_t b = 0; b < bins; ++b)
    rows[b] = {lo + b * width, b + 1 == bins ? hi : lo + (b + 1) * width, 0};
  for (const auto& [v, c] : d.atoms()) {
    std::uint32_t b = v >= hi ? bins - 1 : (std::uint32_t)((v - lo) / width);
    if (b >= bins) b = bins - 1;
    rows[b].count += c;
  }
  return rows;
}

std::vector<std::pair<std::string, std::string>> read_artifact_params(const std::string& path) {
  std::ifstream f(path);
  if (!f) raise(errc::usage, "cannot open artifact: " + path);
  ordered_json doc;
  try {
    f >> doc;
  } catch (const std::exception& e) {
    raise(errc::usage, std::string("malformed artifact JSON: ") + e.what());
  }
  if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer() ||
      doc["schema_version"].get<int>() != artifact_schema_version)
    raise(errc::config, "artifact schema version mismatch");
  std::vector<std::pair<std::string, std::string>> out;
  if (doc.contains("params"))
    for (const auto& [k, v] : doc["params"].items())
      out.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
  return out;
}

}  // namespace singseries
