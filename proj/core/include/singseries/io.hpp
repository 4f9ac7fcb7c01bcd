#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "singseries/empirical.hpp"

namespace singseries {

// Provenance block embedded in every artifact: the subcommand plus every
// parameter that shaped the run (defaults included), in insertion order.
struct RunMeta {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;

  void add(const std::string& k, const std::string& v) { params.emplace_back(k, v); }
  void add(const std::string& k, std::uint64_t v);
  void add(const std::string& k, double v);
};

// Results of a run. Scalar fields plus at most one table: either a binned
// value histogram (bin_lo, bin_hi, count rows with a separate zero-atom
// row) or an integer count histogram (r, count rows).
struct ArtifactPayload {
  std::vector<std::pair<std::string, double>> numbers;
  std::vector<std::pair<std::string, std::uint64_t>> integers;
  std::vector<std::pair<std::string, std::string>> strings;

  struct HistRow {
    double lo, hi;
    std::uint64_t count;
  };
  std::vector<HistRow> histogram;
  bool has_zero_atom = false;
  std::uint64_t zero_atom_count = 0;

  std::vector<std::pair<std::uint64_t, std::uint64_t>> count_histogram;
};

// 15 significant digits, the human display convention. Artifacts serialize
// doubles at full round-trip precision instead; see docs/formats.md.
std::string format_double(double v);

// Join against $SINGSERIES_OUT_DIR when set and path is relative.
std::string resolve_out_path(const std::string& path);

void write_artifact_json(const std::string& path, const RunMeta& meta,
                         const ArtifactPayload& payload);
void write_artifact_csv(const std::string& path, const RunMeta& meta,
                        const ArtifactPayload& payload);

// Equal-width bins over the positive atoms (the zero atom stays separate).
std::vector<ArtifactPayload::HistRow> bin_distribution(const EmpiricalDistribution& d,
                                                       std::uint32_t bins);

// Reads the params block back from a JSON artifact (the round-trip
// contract: re-running with these parameters reproduces the results).
std::vector<std::pair<std::string, std::string>> read_artifact_params(const std::string& path);

}  // namespace singseries
