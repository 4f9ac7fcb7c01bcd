// Command-line surface for the singular series toolkit. Every subcommand
// prints a human summary (15 significant digits plus tail bounds) and can
// write a JSON/CSV artifact that embeds full provenance.

#include <CLI11.hpp>
#include <cctype>
#include <cstdio>
#include <iostream>
#include <string>

#include "singseries/empirical.hpp"
#include "singseries/errors.hpp"
#include "singseries/io.hpp"
#include "singseries/moments.hpp"
#include "singseries/patterns.hpp"
#include "singseries/polyfam.hpp"
#include "singseries/primes.hpp"
#include "singseries/singular.hpp"
#include "singseries/tuples.hpp"
#include "singseries/version.hpp"

namespace ss = singseries;

namespace {

struct OutputOpts {
  std::string out;
  std::string format = "json";
};

void add_output_flags(CLI::App* cmd, OutputOpts& o) {
  cmd->add_option("--out", o.out, "artifact file path (joined with $SINGSERIES_OUT_DIR if relative)");
  cmd->add_option("--format", o.format, "artifact format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

void emit(const OutputOpts& o, const ss::RunMeta& meta, const ss::ArtifactPayload& payload) {
  if (o.out.empty()) return;
  std::string path = ss::resolve_out_path(o.out);
  if (o.format == "csv")
    ss::write_artifact_csv(path, meta, payload);
  else
    ss::write_artifact_json(path, meta, payload);
  std::cout << "artifact: " << path << "\n";
}

std::vector<std::uint64_t> parse_tuple(const std::string& text) {
  std::vector<std::uint64_t> entries;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) ss::raise(ss::errc::usage, "malformed tuple: empty entry");
    try {
      entries.push_back(std::stoull(cur));
    } catch (const std::exception&) {
      ss::raise(ss::errc::usage, "malformed tuple entry: '" + cur + "'");
    }
    cur.clear();
  };
  for (char c : text) {
    if (c == ',')
      flush();
    else if (!std::isspace((unsigned char)c))
      cur.push_back(c);
  }
  flush();
  return entries;
}

void print_value_line(const char* label, double value, double tail, const char* tail_kind) {
  std::cout << label << " = " << ss::format_double(value) << "   (" << tail_kind << " "
            << ss::format_double(tail) << ")\n";
}

// ---------------------------------------------------------------- sing-tuple

struct SingTupleOpts {
  std::string tuple;
  std::uint64_t cutoff = 1000000;
  unsigned shards = 1;
  bool direct = false;
  OutputOpts out;
};

void run_sing_tuple(const SingTupleOpts& o) {
  ss::KTuple h(parse_tuple(o.tuple));
  ss::PrimeTable pt(o.cutoff);
  ss::EulerProductValue v;
  if (o.direct) {
    v = ss::singular_series_tuple(h, o.cutoff, pt);
  } else {
    auto base = ss::base_constant((std::uint32_t)h.k(), o.cutoff, pt, o.shards);
    v = ss::singular_series_tuple(h, o.cutoff, pt, base);
  }
  print_value_line("singular series", v.value, v.tail_log_bound, "tail log bound");
  if (v.exact_zero) std::cout << "exact zero: a residue class is fully covered\n";

  ss::RunMeta meta;
  meta.command = "sing-tuple";
  meta.add("tuple", o.tuple);
  meta.add("cutoff", o.cutoff);
  meta.add("shards", (std::uint64_t)o.shards);
  meta.add("direct", std::string(o.direct ? "true" : "false"));
  ss::ArtifactPayload payload;
  payload.numbers.emplace_back("value", v.value);
  payload.numbers.emplace_back("tail_log_bound", v.tail_log_bound);
  payload.integers.emplace_back("cutoff", v.cutoff);
  payload.strings.emplace_back("tail_kind", "rigorous");
  payload.strings.emplace_back("exact_zero", v.exact_zero ? "true" : "false");
  emit(o.out, meta, payload);
}

// --------------------------------------------------------------- sing-family

struct SingFamilyOpts {
  std::string family;
  std::uint64_t cutoff = 1000000;
  bool assume_irreducible = false;
  OutputOpts out;
};

void run_sing_family(const SingFamilyOpts& o) {
  auto fam = ss::PolyFamily::parse(o.family);
  ss::PrimeTable pt(o.cutoff);
  auto v = ss::singular_series_family(fam, o.cutoff, pt, o.assume_irreducible);
  std::cout << "family: " << fam.text() << "\n";
  print_value_line("singular series", v.value, v.tail_log_bound,
                   v.mode == ss::EulerProductValue::Mode::rigorous ? "tail log bound"
                                                                   : "heuristic spread");
  if (v.exact_zero) std::cout << "exact zero: some prime divides every value\n";

  ss::RunMeta meta;
  meta.command = "sing-family";
  meta.add("family", o.family);
  meta.add("cutoff", o.cutoff);
  meta.add("assume-irreducible", std::string(o.assume_irreducible ? "true" : "false"));
  ss::ArtifactPayload payload;
  payload.numbers.emplace_back("value", v.value);
  payload.numbers.emplace_back("spread", v.tail_log_bound);
  payload.integers.emplace_back("cutoff", v.cutoff);
  payload.strings.emplace_back(
      "tail_kind", v.mode == ss::EulerProductValue::Mode::rigorous ? "rigorous" : "heuristic");
  payload.strings.emplace_back("exact_zero", v.exact_zero ? "true" : "false");
  payload.strings.emplace_back("family_text", fam.text());
  emit(o.out, meta, payload);
}

// -------------------------------------------------------------------- moment

struct MomentOpts {
  std::uint32_t k = 2, m = 2;
  std::uint64_t cutoff = 1000000;
  OutputOpts out;
};

void run_moment(const MomentOpts& o) {
  ss::PrimeTable pt(o.cutoff);
  auto r = ss::mu(o.k, o.m, o.cutoff, pt);
  print_value_line("moment", r.value, r.tail_log_bound, "tail log bound");
  std::cout << "log value = " << ss::format_double(r.log_value) << "\n";

  ss::RunMeta meta;
  meta.command = "moment";
  meta.add("k", (std::uint64_t)o.k);
  meta.add("m", (std::uint64_t)o.m);
  meta.add("cutoff", o.cutoff);
  ss::ArtifactPayload payload;
  payload.numbers.emplace_back("value", r.value);
  payload.numbers.emplace_back("log_value", r.log_value);
  payload.numbers.emplace_back("tail_log_bound", r.tail_log_bound);
  payload.integers.emplace_back("cutoff", r.cutoff);
  payload.strings.emplace_back("tail_kind", "rigorous");
  emit(o.out, meta, payload);
}

// ----------------------------------------------------------------- nonvanish

struct NonvanishOpts {
  std::uint32_t k = 2;
  OutputOpts out;
};

void run_nonvanish(const NonvanishOpts& o) {
  mpq_class p = ss::nonvanishing_probability(o.k);
  std::cout << "P(S != 0) = " << p.get_str() << " = " << ss::format_double(p.get_d())
            << "   (exact rational)\n";

  ss::RunMeta meta;
  meta.command = "nonvanish";
  meta.add("k", (std::uint64_t)o.k);
  ss::ArtifactPayload payload;
  payload.strings.emplace_back("probability_exact", p.get_str());
  payload.numbers.emplace_back("probability", p.get_d());
  emit(o.out, meta, payload);
}

// ---------------------------------------------------------- empirical-moment

struct EmpMomentOpts {
  std::uint32_t k = 2, m = 1;
  std::uint64_t h = 100;
  std::uint64_t cutoff = 1000000;
  unsigned shards = 1;
  std::uint64_t budget = ss::default_sweep_budget;
  OutputOpts out;
};

void run_empirical_moment(const EmpMomentOpts& o) {
  ss::PrimeTable pt(o.cutoff);
  double emp = ss::empirical_moment(o.k, o.m, o.h, o.cutoff, pt, o.shards, o.budget);
  auto lim = ss::mu(o.k, o.m, o.cutoff, pt);
  std::cout << "empirical moment = " << ss::format_double(emp) << "\n";
  print_value_line("limit moment", lim.value, lim.tail_log_bound, "tail log bound");
  std::cout << "|difference| = " << ss::format_double(std::abs(emp - lim.value)) << "\n";

  ss::RunMeta meta;
  meta.command = "empirical-moment";
  meta.add("k", (std::uint64_t)o.k);
  meta.add("m", (std::uint64_t)o.m);
  meta.add("h", o.h);
  meta.add("cutoff", o.cutoff);
  meta.add("shards", (std::uint64_t)o.shards);
  meta.add("budget", o.budget);
  ss::ArtifactPayload payload;
  payload.numbers.emplace_back("empirical", emp);
  payload.numbers.emplace_back("limit", lim.value);
  payload.numbers.emplace_back("difference", std::abs(emp - lim.value));
  payload.numbers.emplace_back("limit_tail_log_bound", lim.tail_log_bound);
  emit(o.out, meta, payload);
}

// -------------------------------------------------------------- distribution

struct DistributionOpts {
  std::uint32_t k = 2;
  std::uint64_t h = 100;
  std::uint64_t cutoff = 1000000;
  std::uint32_t bins = 40;
  unsigned shards = 1;
  std::uint64_t budget = ss::default_sweep_budget;
  OutputOpts out;
};

void summarize_distribution(const ss::EmpiricalDistribution& d, std::uint32_t bins,
                            ss::RunMeta meta, const OutputOpts& out) {
  double zero_frac = (double)d.zero_count() / (double)d.total();
  std::cout << "total = " << d.total() << ", zero atoms = " << d.zero_count() << " (fraction "
            << ss::format_double(zero_frac) << ")\n";
  std::cout << "mean = " << ss::format_double(d.mean())
            << ", second moment = " << ss::format_double(d.moment(2)) << "\n";

  ss::ArtifactPayload payload;
  payload.integers.emplace_back("total", d.total());
  payload.integers.emplace_back("zero_count", d.zero_count());
  payload.numbers.emplace_back("zero_fraction", zero_frac);
  payload.numbers.emplace_back("mean", d.mean());
  payload.numbers.emplace_back("second_moment", d.moment(2));
  payload.histogram = ss::bin_distribution(d, bins);
  payload.has_zero_atom = true;
  payload.zero_atom_count = d.zero_count();
  emit(out, meta, payload);
}

void run_distribution(const DistributionOpts& o) {
  ss::PrimeTable pt(o.cutoff);
  auto d = ss::empirical_distribution(o.k, o.h, o.cutoff, pt, o.shards, o.budget);
  ss::RunMeta meta;
  meta.command = "distribution";
  meta.add("k", (std::uint64_t)o.k);
  meta.add("h", o.h);
  meta.add("cutoff", o.cutoff);
  meta.add("bins", (std::uint64_t)o.bins);
  meta.add("shards", (std::uint64_t)o.shards);
  meta.add("budget", o.budget);
  summarize_distribution(d, o.bins, std::move(meta), o.out);
}

// ----------------------------------------------------------------- mc-sample

struct McSampleOpts {
  std::uint32_t k = 2;
  std::uint64_t cutoff = 1000;
  std::uint64_t n = 10000;
  std::uint64_t seed = 0;
  std::uint32_t bins = 40;
  unsigned shards = 1;
  OutputOpts out;
};

void run_mc_sample(const McSampleOpts& o) {
  ss::PrimeTable pt(o.cutoff);
  ss::MonteCarloConfig cfg{o.k, o.cutoff, o.n, o.seed};
  auto d = ss::sample_random_singular(cfg, pt, o.shards);
  ss::RunMeta meta;
  meta.command = "mc-sample";
  meta.add("k", (std::uint64_t)o.k);
  meta.add("cutoff", o.cutoff);
  meta.add("n", o.n);
  meta.add("seed", o.seed);
  meta.add("bins", (std::uint64_t)o.bins);
  meta.add("shards", (std::uint64_t)o.shards);
  summarize_distribution(d, o.bins, std::move(meta), o.out);
}

// ---------------------------------------------------------------- ks-compare

struct KsCompareOpts {
  std::uint32_t k = 2;
  std::uint64_t h = 2000;
  std::uint64_t sweep_cutoff = 1000000;
  std::uint64_t mc_cutoff = 1000;
  std::uint64_t n = 100000;
  std::uint64_t seed = 0;
  unsigned shards = 1;
  std::uint64_t budget = ss::default_sweep_budget;
  OutputOpts out;
};

void run_ks_compare(const KsCompareOpts& o) {
  ss::PrimeTable pt(std::max(o.sweep_cutoff, o.mc_cutoff));
  auto sweep = ss::empirical_distribution(o.k, o.h, o.sweep_cutoff, pt, o.shards, o.budget);
  ss::MonteCarloConfig cfg{o.k, o.mc_cutoff, o.n, o.seed};
  auto mc = ss::sample_random_singular(cfg, pt, o.shards);
  double ks = ss::ks_distance(sweep, mc);
  std::cout << "sweep: total " << sweep.total() << ", zero fraction "
            << ss::format_double((double)sweep.zero_count() / (double)sweep.total()) << "\n";
  std::cout << "mc:    total " << mc.total() << ", zero fraction "
            << ss::format_double((double)mc.zero_count() / (double)mc.total()) << "\n";
  std::cout << "ks distance = " << ss::format_double(ks) << "\n";

  ss::RunMeta meta;
  meta.command = "ks-compare";
  meta.add("k", (std::uint64_t)o.k);
  meta.add("h", o.h);
  meta.add("sweep-cutoff", o.sweep_cutoff);
  meta.add("mc-cutoff", o.mc_cutoff);
  meta.add("n", o.n);
  meta.add("seed", o.seed);
  meta.add("shards", (std::uint64_t)o.shards);
  meta.add("budget", o.budget);
  ss::ArtifactPayload payload;
  payload.numbers.emplace_back("ks_distance", ks);
  payload.integers.emplace_back("sweep_total", sweep.total());
  payload.integers.emplace_back("sweep_zero_count", sweep.zero_count());
  payload.integers.emplace_back("mc_total", mc.total());
  payload.integers.emplace_back("mc_zero_count", mc.zero_count());
  emit(o.out, meta, payload);
}

// ------------------------------------------------------------- compose-check

struct ComposeCheckOpts {
  std::string family;
  std::string tuple;
  bool assume_irreducible = false;
  OutputOpts out;
};

void run_compose_check(const ComposeCheckOpts& o) {
  auto fam = ss::PolyFamily::parse(o.family);
  ss::KTuple h(parse_tuple(o.tuple));
  auto composed = ss::compose(fam, h);
  auto graph = ss::degeneracy_graph(fam, h, o.assume_irreducible);
  bool primitive = graph.edges.empty();
  std::size_t distinct = ss::distinct_member_count(fam, h);
  mpz_class res_product = ss::pairwise_resultant_product(composed);

  std::cout << "composed: " << composed.text() << "\n";
  std::cout << "distinct members = " << distinct << " of " << composed.m() << "\n";
  std::cout << "degeneracy: components = " << graph.components
            << ", nontrivial = " << graph.nontrivial_components
            << ", edges = " << graph.edges.size() << "\n";
  std::cout << "primitive composition: " << (primitive ? "yes" : "no") << "\n";
  std::cout << "pairwise resultant product = " << res_product.get_str() << "\n";

  ss::RunMeta meta;
  meta.command = "compose-check";
  meta.add("family", o.family);
  meta.add("tuple", o.tuple);
  meta.add("assume-irreducible", std::string(o.assume_irreducible ? "true" : "false"));
  ss::ArtifactPayload payload;
  payload.strings.emplace_back("composed", composed.text());
  payload.integers.emplace_back("members", composed.m());
  payload.integers.emplace_back("distinct_members", distinct);
  payload.integers.emplace_back("components", graph.components);
  payload.integers.emplace_back("nontrivial_components", graph.nontrivial_components);
  payload.integers.emplace_back("edges", graph.edges.size());
  payload.strings.emplace_back("primitive", primitive ? "true" : "false");
  payload.strings.emplace_back("resultant_product", res_product.get_str());
  emit(o.out, meta, payload);
}

// --------------------------------------------------------------------- seeds

struct SeedsOpts {
  std::string family;
  std::uint64_t N = 1000;
  bool assume_irreducible = false;
  OutputOpts out;
};

void run_seeds(const SeedsOpts& o) {
  auto fam = ss::PolyFamily::parse(o.family);
  std::uint64_t count = ss::count_prime_seeds(fam, o.N, o.assume_irreducible);
  std::cout << "prime seeds in [1, " << o.N << "] of " << fam.text() << ": " << count << "\n";

  ss::RunMeta meta;
  meta.command = "seeds";
  meta.add("family", o.family);
  meta.add("N", o.N);
  meta.add("assume-irreducible", std::string(o.assume_irreducible ? "true" : "false"));
  ss::ArtifactPayload payload;
  payload.integers.emplace_back("count", count);
  payload.integers.emplace_back("N", o.N);
  payload.strings.emplace_back("family_text", fam.text());
  emit(o.out, meta, payload);
}

// ------------------------------------------------------------------- poisson

struct PoissonOpts {
  std::string family;
  std::uint64_t N = 1000000;
  double lambda = 2.0;
  std::string mode = "disjoint";
  std::uint64_t cutoff = 1000000;
  unsigned shards = 1;
  bool assume_irreducible = false;
  OutputOpts out;
};

void run_poisson(const PoissonOpts& o) {
  auto fam = ss::PolyFamily::parse(o.family);
  ss::PrimeTable pt(o.cutoff);
  auto mode = o.mode == "sliding" ? ss::WindowMode::sliding : ss::WindowMode::disjoint;
  auto w = ss::window_counts(fam, o.N, o.lambda, mode, o.cutoff, pt, o.shards,
                             o.assume_irreducible);
  auto fit = ss::poisson_fit(w);

  std::cout << "family: " << fam.text() << "\n";
  std::cout << "delta = " << ss::format_double(w.delta) << ", L = " << w.L
            << ", windows = " << w.window_count << " (" << o.mode << ")\n";
  if (mode == ss::WindowMode::sliding)
    std::cout << "note: sliding windows overlap; counts are serially correlated\n";
  std::cout << "seeds counted = " << w.seeds_counted << "\n";
  std::cout << "mean = " << ss::format_double(fit.mean)
            << ", variance = " << ss::format_double(fit.variance) << "\n";
  std::cout << "tv distance to Poisson(" << ss::format_double(o.lambda)
            << ") = " << ss::format_double(fit.tv) << "\n";
  std::cout << "chi-square = " << ss::format_double(fit.chi_square) << " over " << fit.chi_bins
            << " pooled bins\n";
  std::cout << "histogram:";
  for (std::size_t r = 0; r < w.histogram.size(); ++r) std::cout << " " << r << ":" << w.histogram[r];
  std::cout << "\n";

  ss::RunMeta meta;
  meta.command = "poisson";
  meta.add("family", o.family);
  meta.add("N", o.N);
  meta.add("lambda", o.lambda);
  meta.add("mode", o.mode);
  meta.add("cutoff", o.cutoff);
  meta.add("shards", (std::uint64_t)o.shards);
  meta.add("assume-irreducible", std::string(o.assume_irreducible ? "true" : "false"));
  ss::ArtifactPayload payload;
  payload.numbers.emplace_back("delta", w.delta);
  payload.integers.emplace_back("L", w.L);
  payload.integers.emplace_back("windows", w.window_count);
  payload.integers.emplace_back("seeds", w.seeds_counted);
  payload.numbers.emplace_back("mean", fit.mean);
  payload.numbers.emplace_back("variance", fit.variance);
  payload.numbers.emplace_back("tv", fit.tv);
  payload.numbers.emplace_back("chi_square", fit.chi_square);
  payload.integers.emplace_back("chi_bins", fit.chi_bins);
  payload.strings.emplace_back("serially_correlated",
                               mode == ss::WindowMode::sliding ? "true" : "false");
  for (std::size_t r = 0; r < w.histogram.size(); ++r)
    payload.count_histogram.emplace_back(r, w.histogram[r]);
  emit(o.out, meta, payload);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"singular series constants, moments, and prime pattern statistics"};
  app.set_version_flag("--version", ss::version_string);
  // --h is a real parameter below, so help is long-form only.
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  auto add_sub = [&](const char* name, const char* desc) {
    auto* s = app.add_subcommand(name, desc);
    s->set_help_flag("--help", "print help");
    return s;
  };

  SingTupleOpts sto;
  auto* st = add_sub("sing-tuple", "singular series of a k-tuple");
  st->add_option("--tuple", sto.tuple, "comma-separated positive entries")->required();
  st->add_option("--cutoff", sto.cutoff, "prime truncation bound");
  st->add_option("--shards", sto.shards, "worker count (result is shard-invariant)");
  st->add_flag("--direct", sto.direct, "full product over every prime (no base-constant path)");
  add_output_flags(st, sto.out);
  st->callback([&] { run_sing_tuple(sto); });

  SingFamilyOpts sfo;
  auto* sf = add_sub("sing-family", "singular series of a polynomial family");
  sf->add_option("--family", sfo.family, "semicolon/comma-separated members")->required();
  sf->add_option("--cutoff", sfo.cutoff, "prime truncation bound");
  sf->add_flag("--assume-irreducible", sfo.assume_irreducible,
               "accept members of degree >= 4 without an irreducibility proof");
  add_output_flags(sf, sfo.out);
  sf->callback([&] { run_sing_family(sfo); });

  MomentOpts mo;
  auto* mc = add_sub("moment", "limiting moment constant mu_k(m)");
  mc->add_option("--k", mo.k, "tuple size")->required();
  mc->add_option("--m", mo.m, "moment order")->required();
  mc->add_option("--cutoff", mo.cutoff, "prime truncation bound");
  add_output_flags(mc, mo.out);
  mc->callback([&] { run_moment(mo); });

  NonvanishOpts nvo;
  auto* nv = add_sub("nonvanish", "exact nonvanishing probability of the limit law");
  nv->add_option("--k", nvo.k, "tuple size")->required();
  add_output_flags(nv, nvo.out);
  nv->callback([&] { run_nonvanish(nvo); });

  EmpMomentOpts emo;
  auto* em = add_sub("empirical-moment", "sweep moment over all k-tuples in [1,h]");
  em->add_option("--k", emo.k, "tuple size")->required();
  em->add_option("--m", emo.m, "moment order")->required();
  em->add_option("--h", emo.h, "height bound")->required();
  em->add_option("--cutoff", emo.cutoff, "prime truncation bound");
  em->add_option("--shards", emo.shards, "worker count (result is shard-invariant)");
  em->add_option("--budget", emo.budget, "max tuples to enumerate");
  add_output_flags(em, emo.out);
  em->callback([&] { run_empirical_moment(emo); });

  DistributionOpts dio;
  auto* di = add_sub("distribution", "value distribution of the sweep ensemble");
  di->add_option("--k", dio.k, "tuple size")->required();
  di->add_option("--h", dio.h, "height bound")->required();
  di->add_option("--cutoff", dio.cutoff, "prime truncation bound");
  di->add_option("--bins", dio.bins, "histogram bins in the artifact");
  di->add_option("--shards", dio.shards, "worker count (result is shard-invariant)");
  di->add_option("--budget", dio.budget, "max tuples to enumerate");
  add_output_flags(di, dio.out);
  di->callback([&] { run_distribution(dio); });

  McSampleOpts mso;
  auto* ms = add_sub("mc-sample", "Monte Carlo truncated-product model");
  ms->add_option("--k", mso.k, "tuple size")->required();
  ms->add_option("--cutoff", mso.cutoff, "prime truncation bound of the model");
  ms->add_option("--n", mso.n, "sample count");
  ms->add_option("--seed", mso.seed, "stream seed");
  ms->add_option("--bins", mso.bins, "histogram bins in the artifact");
  ms->add_option("--shards", mso.shards, "worker count (result is shard-invariant)");
  add_output_flags(ms, mso.out);
  ms->callback([&] { run_mc_sample(mso); });

  KsCompareOpts kso;
  auto* ks = add_sub("ks-compare", "KS distance between sweep and Monte Carlo laws");
  ks->add_option("--k", kso.k, "tuple size")->required();
  ks->add_option("--h", kso.h, "sweep height bound");
  ks->add_option("--sweep-cutoff", kso.sweep_cutoff, "sweep truncation bound");
  ks->add_option("--mc-cutoff", kso.mc_cutoff, "Monte Carlo truncation bound");
  ks->add_option("--n", kso.n, "Monte Carlo sample count");
  ks->add_option("--seed", kso.seed, "stream seed");
  ks->add_option("--shards", kso.shards, "worker count (result is shard-invariant)");
  ks->add_option("--budget", kso.budget, "max tuples to enumerate");
  add_output_flags(ks, kso.out);
  ks->callback([&] { run_ks_compare(kso); });

  ComposeCheckOpts cco;
  auto* cc = add_sub("compose-check", "degeneracy analysis of a composition");
  cc->add_option("--family", cco.family, "family members")->required();
  cc->add_option("--tuple", cco.tuple, "shift tuple")->required();
  cc->add_flag("--assume-irreducible", cco.assume_irreducible,
               "accept members of degree >= 4 without an irreducibility proof");
  add_output_flags(cc, cco.out);
  cc->callback([&] { run_compose_check(cco); });

  SeedsOpts seo;
  auto* se = add_sub("seeds", "count n <= N where every member value is prime");
  se->add_option("--family", seo.family, "family members")->required();
  se->add_option("--N", seo.N, "range bound")->required();
  se->add_flag("--assume-irreducible", seo.assume_irreducible,
               "accept members of degree >= 4 without an irreducibility proof");
  add_output_flags(se, seo.out);
  se->callback([&] { run_seeds(seo); });

  PoissonOpts po;
  auto* ps = add_sub("poisson", "window statistics of prime seeds vs Poisson");
  ps->add_option("--family", po.family, "family members")->required();
  ps->add_option("--N", po.N, "range bound")->required();
  ps->add_option("--lambda", po.lambda, "target Poisson parameter");
  ps->add_option("--mode", po.mode, "disjoint or sliding")
      ->check(CLI::IsMember({"disjoint", "sliding"}));
  ps->add_option("--cutoff", po.cutoff, "prime truncation bound for the series");
  ps->add_option("--shards", po.shards, "worker count (result is shard-invariant)");
  ps->add_flag("--assume-irreducible", po.assume_irreducible,
               "accept members of degree >= 4 without an irreducibility proof");
  add_output_flags(ps, po.out);
  ps->callback([&] { run_poisson(po); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : (int)ss::errc::usage;
  } catch (const ss::error& e) {
    std::cerr << "error (" << ss::errc_name(e.code()) << "): " << e.what() << "\n";
    return (int)e.code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
