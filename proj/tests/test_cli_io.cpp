#include <doctest.h>

#include <sys/stat.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "singseries/errors.hpp"
#include "singseries/io.hpp"
#include "singseries/primes.hpp"

using namespace singseries;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const char* cli_bin() {
  const char* bin = std::getenv("SINGSERIES_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "SINGSERIES_BIN must point at the CLI binary");
  return bin;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  std::string cmd = std::string(cli_bin()) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int st = pclose(pipe);
  if (output) *output = out;
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("display formatting uses 15 significant digits") {
    CHECK(format_double(1.3203237211796763) == "1.32032372117968");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1e-7) == "1e-07");
    CHECK(format_double(-3.25) == "-3.25");
  }

  TEST_CASE("output path resolution") {
    const char* saved = std::getenv("SINGSERIES_OUT_DIR");
    std::string saved_copy = saved ? saved : "";
    unsetenv("SINGSERIES_OUT_DIR");
    CHECK(resolve_out_path("/abs/p.json") == "/abs/p.json");
    CHECK(resolve_out_path("rel.json") == "rel.json");
    setenv("SINGSERIES_OUT_DIR", "/tmp/outdir", 1);
    CHECK(resolve_out_path("rel.json") == "/tmp/outdir/rel.json");
    CHECK(resolve_out_path("/abs/p.json") == "/abs/p.json");
    setenv("SINGSERIES_OUT_DIR", "/tmp/outdir/", 1);
    CHECK(resolve_out_path("rel.json") == "/tmp/outdir/rel.json");
    CHECK_THROWS_AS(resolve_out_path(""), error);
    if (saved)
      setenv("SINGSERIES_OUT_DIR", saved_copy.c_str(), 1);
    else
      unsetenv("SINGSERIES_OUT_DIR");
  }

  TEST_CASE("equal-width binning with a clamped last bin") {
    EmpiricalDistribution d(EmpiricalDistribution::Provenance::tuple_sweep,
                            {{1.0, 1}, {2.0, 1}, {3.0, 1}, {4.0, 2}}, 3);
    auto rows = bin_distribution(d, 3);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].lo == 1.0);
    CHECK(rows[0].count == 1);
    CHECK(rows[1].count == 1);
    CHECK(rows[2].hi == 4.0);
    CHECK(rows[2].count == 3);  // atoms 3 and 4 (4 sits on the closed top edge)
    auto one = bin_distribution(d, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].count == 5);
    CHECK_THROWS_AS(bin_distribution(d, 0), error);
  }

  TEST_CASE("binning degenerate distributions") {
    EmpiricalDistribution single(EmpiricalDistribution::Provenance::monte_carlo, {{2.0, 7}}, 0);
    auto rows = bin_distribution(single, 4);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].lo == 2.0);
    CHECK(rows[0].hi == 2.0);
    CHECK(rows[0].count == 7);
    EmpiricalDistribution zeros(EmpiricalDistribution::Provenance::monte_carlo, {}, 5);
    CHECK(bin_distribution(zeros, 4).empty());
  }

  TEST_CASE("json artifact layout and params round trip") {
    RunMeta meta;
    meta.command = "unit-probe";
    meta.add("k", (std::uint64_t)2);
    meta.add("x", 2.5);
    meta.add("family", std::string("x, x+2"));
    ArtifactPayload payload;
    payload.numbers.emplace_back("value", 1.25);
    payload.integers.emplace_back("count", (std::uint64_t)42);
    payload.strings.emplace_back("note", "ok");
    payload.has_zero_atom = true;
    payload.zero_atom_count = 9;
    payload.histogram.push_back({0.5, 1.0, 3});
    payload.count_histogram.emplace_back(0, 11);

    std::string path = "/tmp/singseries_unit_artifact.json";
    write_artifact_json(path, meta, payload);
    auto doc = nlohmann::ordered_json::parse(slurp(path));
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["generator"]["name"] == "singseries");
    CHECK(doc["command"] == "unit-probe");
    CHECK(doc["params"]["k"] == "2");
    CHECK(doc["params"]["x"] == "2.5");
    CHECK(doc["results"]["value"] == 1.25);
    CHECK(doc["results"]["count"] == 42);
    CHECK(doc["results"]["note"] == "ok");
    CHECK(doc["histogram"]["zero_atom"] == 9);
    CHECK(doc["histogram"]["bins"][0][2] == 3);
    CHECK(doc["count_histogram"][0][1] == 11);

    auto params = read_artifact_params(path);
    REQUIRE(params.size() == 3);
    CHECK(params[0] == std::pair<std::string, std::string>{"k", "2"});
    CHECK(params[1] == std::pair<std::string, std::string>{"x", "2.5"});
    CHECK(params[2] == std::pair<std::string, std::string>{"family", "x, x+2"});
  }

  TEST_CASE("reading rejects missing or mismatched artifacts") {
    CHECK_THROWS_AS(read_artifact_params("/tmp/does_not_exist_498312.json"), error);
    std::string bad = "/tmp/singseries_unit_bad.json";
    {
      std::ofstream f(bad);
      f << "{\"schema_version\": 999, \"params\": {}}\n";
    }
    CHECK_THROWS_AS(read_artifact_params(bad), error);
    {
      std::ofstream f(bad);
      f << "not json";
    }
    CHECK_THROWS_AS(read_artifact_params(bad), error);
  }

  TEST_CASE("csv artifact layouts") {
    RunMeta meta;
    meta.command = "unit-probe";
    meta.add("k", (std::uint64_t)3);
    std::string path = "/tmp/singseries_unit_artifact.csv";

    ArtifactPayload hist;
    hist.has_zero_atom = true;
    hist.zero_atom_count = 4;
    hist.histogram.push_back({0.5, 1.5, 2});
    write_artifact_csv(path, meta, hist);
    std::string text = slurp(path);
    CHECK(text.find("# singseries ") == 0);
    CHECK(text.find("# schema_version=1\n") != std::string::npos);
    CHECK(text.find("# command=unit-probe\n") != std::string::npos);
    CHECK(text.find("# param.k=3\n") != std::string::npos);
    CHECK(text.find("bin_lo,bin_hi,count\n0,0,4\n0.5,1.5,2\n") != std::string::npos);

    ArtifactPayload counts;
    counts.count_histogram = {{0, 7}, {1, 5}};
    write_artifact_csv(path, meta, counts);
    text = slurp(path);
    CHECK(text.find("seeds,windows\n0,7\n1,5\n") != std::string::npos);

    ArtifactPayload scalars;
    scalars.numbers.emplace_back("value", 0.5);
    scalars.strings.emplace_back("mode", "direct");
    write_artifact_csv(path, meta, scalars);
    text = slurp(path);
    CHECK(text.find("key,value\nvalue,0.5\nmode,direct\n") != std::string::npos);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("value runs succeed with readable output") {
    std::string out;
    CHECK(run_cli("sing-tuple --tuple 1,3 --cutoff 1000000", &out) == 0);
    CHECK(out.find("singular series = 1.320323") != std::string::npos);
    CHECK(out.find("tail log bound") != std::string::npos);
    CHECK(run_cli("nonvanish --k 3", &out) == 0);
    CHECK(out.find("7/36") != std::string::npos);
    CHECK(run_cli("--help", &out) == 0);
    CHECK(out.find("sing-tuple") != std::string::npos);
    CHECK(run_cli("--version", &out) == 0);
  }

  TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("no-such-command") == 2);
    CHECK(run_cli("") == 2);  // a subcommand is required
    CHECK(run_cli("sing-tuple") == 2);  // missing --tuple
    CHECK(run_cli("sing-tuple --tuple 1,3 --no-such-flag") == 2);
    CHECK(run_cli("sing-tuple --tuple 1,x") == 2);  // malformed entry
    CHECK(run_cli("distribution --k 2 --h 30 --format xml") == 2);
  }

  TEST_CASE("library error categories map onto exit codes") {
    CHECK(run_cli("sing-family --family 'x,x' --cutoff 100") == 3);       // domain
    CHECK(run_cli("sing-tuple --tuple 3,3 --cutoff 1000") == 4);          // degenerate
    CHECK(run_cli("sing-tuple --tuple 1,3 --cutoff 2199023255553") == 5); // bounds
    CHECK(run_cli("sing-family --family 'x^4+1' --cutoff 100") == 6);     // capability
    CHECK(run_cli("empirical-moment --k 5 --m 1 --h 200 --cutoff 1000") == 7);  // budget
    CHECK(run_cli("sing-tuple --tuple 1,3 --cutoff 6") == 8);             // config
  }

  TEST_CASE("json artifacts embed provenance and results") {
    std::string path = "/tmp/singseries_cli_dist.json";
    std::remove(path.c_str());
    std::string out;
    CHECK(run_cli("distribution --k 2 --h 30 --cutoff 1000 --bins 5 --out " + path, &out) == 0);
    CHECK(out.find("artifact: " + path) != std::string::npos);
    auto doc = nlohmann::ordered_json::parse(slurp(path));
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["command"] == "distribution");
    CHECK(doc["params"]["k"] == "2");
    CHECK(doc["params"]["h"] == "30");
    // 15 odd and 15 even entries: every mixed-parity ordered pair vanishes.
    CHECK(doc["histogram"]["zero_atom"] == 450);
  }

  TEST_CASE("relative outputs land in SINGSERIES_OUT_DIR") {
    mkdir("/tmp/singseries_outdir", 0755);
    std::string target = "/tmp/singseries_outdir/rel_probe.json";
    std::remove(target.c_str());
    std::string cmd = std::string("SINGSERIES_OUT_DIR=/tmp/singseries_outdir ") + cli_bin() +
                      " nonvanish --k 2 --out rel_probe.json 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::string out;
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int st = pclose(pipe);
    CHECK(WEXITSTATUS(st) == 0);
    CHECK(out.find("artifact: " + target) != std::string::npos);
    CHECK(std::ifstream(target).good());
  }

  TEST_CASE("artifact params reproduce the run") {
    std::string a = "/tmp/singseries_cli_m1.json";
    std::string b = "/tmp/singseries_cli_m2.json";
    CHECK(run_cli("moment --k 2 --m 2 --cutoff 20000 --out " + a) == 0);
    std::string rebuilt = "moment";
    for (const auto& [k, v] : read_artifact_params(a)) rebuilt += " --" + k + " " + v;
    CHECK(run_cli(rebuilt + " --out " + b) == 0);
    auto da = nlohmann::ordered_json::parse(slurp(a));
    auto db = nlohmann::ordered_json::parse(slurp(b));
    CHECK(da["results"] == db["results"]);
    CHECK(da["params"] == db["params"]);
  }

  TEST_CASE("csv artifacts from the binary") {
    std::string path = "/tmp/singseries_cli_seeds.csv";
    std::remove(path.c_str());
    CHECK(run_cli("seeds --family 'x, x+2' --N 100 --out " + path + " --format csv") == 0);
    std::string text = slurp(path);
    CHECK(text.find("# command=seeds\n") != std::string::npos);
    CHECK(text.find("# param.N=100\n") != std::string::npos);
    CHECK(text.find("count,8\n") != std::string::npos);
  }

  TEST_CASE("determinism across shard counts at the cli surface") {
    std::string o1, o3;
    std::string args = "mc-sample --k 2 --cutoff 1000 --n 4000 --seed 99";
    CHECK(run_cli(args + " --shards 1", &o1) == 0);
    CHECK(run_cli(args + " --shards 3", &o3) == 0);
    CHECK(o1 == o3);
  }
}
