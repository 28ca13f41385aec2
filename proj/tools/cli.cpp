#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gmprime/gmprime.hpp"
#include "json.hpp"

namespace gmprime::cli {

using json = nlohmann::ordered_json;

double round_sig6(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return std::strtod(buf, nullptr);
}

namespace {

// Options shared by every subcommand that runs the primality pipeline.
struct PipelineFlags {
  std::string config_path;
  std::optional<u64> trial_bound;
  std::optional<unsigned> mr_rounds;
  std::optional<u64> smoothness_bound;
  std::optional<u64> aks_cap;
  std::optional<u64> seed;
  std::string strategy = "deterministic";
  std::string weights_path;
  bool aks_confirm = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value file (trial_bound, mr_rounds, "
                                              "smoothness_bound, aks_cap, seed)");
    cmd->add_option("--trial-bound", trial_bound, "Trial division bound");
    cmd->add_option("--mr-rounds", mr_rounds, "Miller-Rabin rounds for weighted/adaptive");
    cmd->add_option("--smoothness-bound", smoothness_bound, "Adaptive smoothness bound B");
    cmd->add_option("--aks-cap", aks_cap, "Largest n handed to AKS");
    cmd->add_option("--seed", seed, "Seed for base sampling");
    cmd->add_option("--strategy", strategy, "Miller-Rabin bases")
        ->check(CLI::IsMember({"deterministic", "weighted", "adaptive"}));
    cmd->add_option("--weights", weights_path, "Weight map JSON (weighted strategy)");
    cmd->add_flag("--aks-confirm", aks_confirm, "Confirm probable primes with AKS");
  }

  PipelineSettings settings() const {
    PipelineSettings s;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw DomainError("cannot open config file " + config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      s = parse_pipeline_settings(buf.str());
    }
    if (trial_bound) s.trial_bound = *trial_bound;
    if (mr_rounds) s.mr_rounds = *mr_rounds;
    if (smoothness_bound) s.smoothness_bound = *smoothness_bound;
    if (aks_cap) s.aks_cap = *aks_cap;
    if (seed) s.seed = *seed;
    return s;
  }

  PipelineConfig build(std::vector<u64> moduli) const {
    const PipelineSettings s = settings();
    PipelineConfig config;
    config.moduli = std::move(moduli);
    config.trial_bound = s.trial_bound;
    config.aks_cap = s.aks_cap;
    config.aks_confirm = aks_confirm;
    if (strategy == "weighted") {
      WeightedBases w = WeightedBases::uniform(FixedBases::deterministic64().bases, s.mr_rounds,
                                               s.seed);
      if (!weights_path.empty() && std::ifstream(weights_path).good()) {
        w.weights = load_weights(weights_path);
        if (w.weights.empty()) throw DomainError("weights file " + weights_path + " is empty");
      }
      config.strategy = w;
    } else if (strategy == "adaptive") {
      AdaptiveBases a;
      a.smoothness_bound = s.smoothness_bound;
      a.seed = s.seed;
      a.rounds = s.mr_rounds;
      config.strategy = a;
    }
    return config;
  }

  json echo() const {
    const PipelineSettings s = settings();
    json j;
    j["strategy"] = strategy;
    j["trial_bound"] = s.trial_bound;
    j["mr_rounds"] = s.mr_rounds;
    j["smoothness_bound"] = s.smoothness_bound;
    j["aks_cap"] = s.aks_cap;
    j["aks_confirm"] = aks_confirm;
    j["seed"] = s.seed;
    return j;
  }
};

struct ModuliFlags {
  std::vector<u64> explicit_moduli;
  std::optional<std::size_t> first_k;

  void attach(CLI::App* cmd) {
    cmd->add_option("--modulus,--moduli", explicit_moduli, "GM modulus d (repeatable)")
        ->delimiter(',');
    cmd->add_option("--moduli-primes", first_k, "Use the first k primes as moduli");
  }

  // Explicit moduli are validated by the filter; the default first-k-primes
  // list is clipped to the bound.
  std::vector<u64> resolve(u64 bound) const {
    if (!explicit_moduli.empty() && first_k) {
      throw CLI::ValidationError("--modulus and --moduli-primes are mutually exclusive");
    }
    if (!explicit_moduli.empty()) return explicit_moduli;
    if (first_k && *first_k == 0) throw DomainError("--moduli-primes must be >= 1");
    std::vector<u64> m = default_moduli(first_k.value_or(25));
    if (first_k) return m;
    std::erase_if(m, [bound](u64 d) { return d > bound; });
    if (m.empty()) m.push_back(2);
    return m;
  }
};

struct Output {
  std::string path;
  std::ostream* stdout_stream;

  void write(const std::string& content) const {
    if (path.empty()) {
      *stdout_stream << content;
      return;
    }
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw DomainError("cannot open output file " + path);
    f << content;
  }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw DomainError("cannot open output file " + path);
  f << content;
}

json number_or_null(const std::optional<double>& v) {
  return v ? json(round_sig6(*v)) : json(nullptr);
}

// ---------------------------------------------------------------------------

struct PrimesCmd {
  ModuliFlags moduli;
  PipelineFlags pipeline;
  u64 max = 0;
  bool drop_first_terms = false;
  bool survivors_only = false;
  bool no_header = false;
  std::string format = "text";
  std::string out;

  void attach(CLI::App* cmd) {
    moduli.attach(cmd);
    pipeline.attach(cmd);
    cmd->add_option("--max", max, "Upper bound N")->required();
    cmd->add_flag("--drop-first-terms", drop_first_terms,
                  "Treat each modulus as composite in the filter (reference-listing mode)");
    cmd->add_flag("--survivors", survivors_only, "Dump filter survivors instead of primes");
    cmd->add_option("--format", format)->check(CLI::IsMember({"text", "csv", "json"}));
    cmd->add_flag("--no-header", no_header, "Omit the metadata header line");
    cmd->add_option("--out", out, "Output file (default stdout)");
  }

  void run(const FilterOptions& base, std::ostream& stdout_stream) const {
    if (max < 2) throw DomainError("--max must be >= 2");
    const std::vector<u64> mods = moduli.resolve(max);
    FilterOptions fo = base;
    fo.drop_first_terms = drop_first_terms;
    PipelineConfig pc = pipeline.build(mods);

    std::vector<u64> values;
    if (survivors_only) {
      CandidateFilter filter = build_filter(mods, max, fo);
      values = filter.survivors();
    } else {
      std::vector<WitnessEvent> events;
      auto* weighted = std::get_if<WeightedBases>(&pc.strategy);
      VerdictObserver observe;
      if (weighted != nullptr) {
        observe = [&events, weighted](u64, const PrimalityVerdict& v) {
          if (v.decided_by != Stage::MillerRabin) return;
          // Bases reduced modulo a small n are not the ranked base; skip them.
          for (const auto& e : outcome_events(v)) {
            if (weighted->weights.contains(e.base)) events.push_back(e);
          }
        };
      }
      values = find_primes(mods, 2, max, fo, pc, observe);
      if (weighted != nullptr && !pipeline.weights_path.empty()) {
        save_weights(pipeline.weights_path, merge_outcomes(*weighted, events).weights);
      }
    }

    std::vector<u64> sorted_moduli = mods;
    std::sort(sorted_moduli.begin(), sorted_moduli.end());
    json meta;
    meta["moduli"] = sorted_moduli;
    meta["bound"] = max;
    meta["drop_first_terms"] = drop_first_terms;
    meta["stream"] = survivors_only ? "survivors" : "primes";
    if (!survivors_only) meta["pipeline"] = pipeline.echo();

    std::string content;
    if (format == "json") {
      json doc;
      doc["metadata"] = meta;
      doc["count"] = values.size();
      doc["values"] = values;
      content = doc.dump() + "\n";
    } else {
      if (!no_header) content += "# " + meta.dump() + "\n";
      if (format == "csv") content += "value\n";
      for (u64 v : values) {
        content += std::to_string(v);
        content += '\n';
      }
    }
    Output{out, &stdout_stream}.write(content);
  }
};

struct GapsCmd {
  ModuliFlags moduli;
  PipelineFlags pipeline;
  u64 max = 0;
  u64 min = 2;
  std::string mode = "primes";
  std::optional<u64> bin_width;
  double band_lo = 0.8;
  double band_hi = 1.1;
  bool drop_first_terms = false;
  std::string out;
  std::string histogram_path;

  void attach(CLI::App* cmd) {
    moduli.attach(cmd);
    pipeline.attach(cmd);
    cmd->add_option("--max", max, "Upper end of the range")->required();
    cmd->add_option("--min", min, "Lower end of the range");
    cmd->add_option("--mode", mode)->check(CLI::IsMember({"primes", "candidates"}));
    cmd->add_option("--bin-width", bin_width, "Histogram bin width (default 2 primes, 1 candidates)");
    cmd->add_option("--band-lo", band_lo, "Lower edge of the accepted mean/ln(N) band");
    cmd->add_option("--band-hi", band_hi, "Upper edge of the accepted mean/ln(N) band");
    cmd->add_flag("--drop-first-terms", drop_first_terms);
    cmd->add_option("--out", out, "Report JSON path (default stdout)");
    cmd->add_option("--histogram", histogram_path, "Histogram CSV path");
  }

  void run(const FilterOptions& base, std::ostream& stdout_stream) const {
    const GapMode gm = mode == "candidates" ? GapMode::Candidates : GapMode::ConfirmedPrimes;
    const u64 width = bin_width.value_or(gm == GapMode::Candidates ? 1 : 2);
    if (width < 1) throw DomainError("--bin-width must be >= 1");
    if (max < 3) throw DomainError("--max must be >= 3");
    const std::vector<u64> mods = moduli.resolve(max);

    GapRunOptions opts;
    opts.filter = base;
    opts.filter.drop_first_terms = drop_first_terms;
    opts.pipeline = pipeline.build(mods);
    const GapRun run = gap_run(min, max, mods, gm, opts);
    const GapReport& r = run.report;
    const CramerComparison cc = cramer_comparison(r, max, {band_lo, band_hi});
    const auto bins = histogram(run.sequence, width);

    std::vector<u64> sorted_moduli = mods;
    std::sort(sorted_moduli.begin(), sorted_moduli.end());
    json report;
    report["bound"] = max;
    report["range_lo"] = run.range_lo;
    report["mode"] = to_string(gm);
    report["moduli"] = sorted_moduli;
    report["drop_first_terms"] = drop_first_terms;
    report["count"] = r.value_count;
    report["gap_count"] = r.gap_count;
    report["mean"] = round_sig6(r.mean);
    report["variance"] = round_sig6(r.variance);
    report["skewness"] = number_or_null(r.skewness);
    report["excess_kurtosis"] = number_or_null(r.excess_kurtosis);
    report["max_gap"] = r.max_gap;
    report["ln_bound"] = round_sig6(cc.ln_bound);
    report["cramer_ratio"] = round_sig6(cc.ratio);
    report["cramer_band"] = {round_sig6(band_lo), round_sig6(band_hi)};
    report["cramer_in_band"] = cc.in_band;
    report["moment_estimator"] = "population";
    report["bin_width"] = width;
    report["pipeline"] = pipeline.echo();

    if (!histogram_path.empty()) {
      json meta;
      meta["bound"] = max;
      meta["range_lo"] = run.range_lo;
      meta["mode"] = to_string(gm);
      meta["moduli"] = sorted_moduli;
      meta["drop_first_terms"] = drop_first_terms;
      meta["bin_width"] = width;
      write_file(histogram_path, "# " + meta.dump() + "\n" + histogram_csv(bins, width));
    }
    Output{out, &stdout_stream}.write(report.dump(2) + "\n");
  }
};

struct BenchCmd {
  ModuliFlags moduli;
  PipelineFlags pipeline;
  u64 max = 0;
  std::vector<std::string> methods{"gm", "eratosthenes"};
  int repeat = 3;
  std::string out;

  void attach(CLI::App* cmd) {
    moduli.attach(cmd);
    pipeline.attach(cmd);
    cmd->add_option("--max", max, "Upper bound N")->required();
    cmd->add_option("--methods", methods, "Comma-separated: gm,eratosthenes")
        ->delimiter(',')
        ->check(CLI::IsMember({"gm", "eratosthenes"}));
    cmd->add_option("--repeat", repeat, "Timed repetitions (median reported)");
    cmd->add_option("--out", out, "CSV output path (default stdout)");
  }

  void run(const FilterOptions& base, std::ostream& stdout_stream) const {
    if (max < 100) throw DomainError("bench requires --max >= 100");
    if (repeat < 1) throw DomainError("--repeat must be >= 1");
    const std::vector<u64> mods = moduli.resolve(max);
    const PipelineConfig pc = pipeline.build(mods);

    struct Record {
      std::string method;
      u64 candidates = 0;
      u64 primes = 0;
      double wall_ms = 0;
    };
    std::vector<Record> records;
    for (const std::string& method : methods) {
      Record rec{method};
      std::vector<double> times;
      for (int i = 0; i < repeat; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        if (method == "gm") {
          CandidateFilter filter = build_filter(mods, max, base);
          rec.candidates = filter.survivor_count();
          rec.primes = find_primes(mods, 2, max, base, pc).size();
        } else {
          rec.candidates = max - 1;
          rec.primes = eratosthenes_primes(max).size();
        }
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      }
      std::sort(times.begin(), times.end());
      rec.wall_ms = times[times.size() / 2];
      records.push_back(rec);
    }
    for (const Record& rec : records) {
      if (rec.primes != records.front().primes) {
        throw InvariantError("prime counts disagree: " + records.front().method + "=" +
                             std::to_string(records.front().primes) + ", " + rec.method + "=" +
                             std::to_string(rec.primes));
      }
    }

    std::vector<u64> sorted_moduli = mods;
    std::sort(sorted_moduli.begin(), sorted_moduli.end());
    json meta;
    meta["bound"] = max;
    meta["moduli"] = sorted_moduli;
    meta["methods"] = methods;
    meta["repeat"] = repeat;
    meta["pipeline"] = pipeline.echo();
    std::string content = "# " + meta.dump() + "\n";
    content += "method,bound,candidates,primes,wall_ms,reduction_ratio\n";
    for (const Record& rec : records) {
      char row[256];
      std::snprintf(row, sizeof row, "%s,%llu,%llu,%llu,%.6g,%.6g\n", rec.method.c_str(),
                    static_cast<unsigned long long>(max),
                    static_cast<unsigned long long>(rec.candidates),
                    static_cast<unsigned long long>(rec.primes), rec.wall_ms,
                    static_cast<double>(rec.candidates) / static_cast<double>(max));
      content += row;
    }
    Output{out, &stdout_stream}.write(content);
  }
};

struct FactorCmd {
  ModuliFlags moduli;
  u64 target = 0;
  std::string out;

  void attach(CLI::App* cmd) {
    moduli.attach(cmd);
    cmd->add_option("target", target, "Integer to factor")->required();
    cmd->add_option("--out", out);
  }

  void run(std::ostream& stdout_stream) const {
    if (target < 2) throw DomainError("factor target must be >= 2");
    FactorConfig config;
    config.moduli = moduli.resolve(~u64{0});
    config.pipeline.moduli = config.moduli;
    const FactorProbeResult r = factor_complete(target, config);
    json doc;
    doc["target"] = r.target;
    doc["factors"] = r.factors;
    doc["method_trace"] = r.method_trace;
    json hits = json::array();
    for (const auto& h : r.hits) hits.push_back({{"modulus", h.modulus}, {"cofactor", h.cofactor}});
    doc["gm_hits"] = hits;
    std::vector<u64> sorted_moduli = config.moduli;
    std::sort(sorted_moduli.begin(), sorted_moduli.end());
    doc["moduli"] = sorted_moduli;
    Output{out, &stdout_stream}.write(doc.dump() + "\n");
  }
};

struct EccCmd {
  unsigned k = 0;
  u64 c_max = 1000;
  std::string out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--k", k, "Exponent k in 2^k - c")->required();
    cmd->add_option("--c-max", c_max, "Largest offset c to try");
    cmd->add_option("--out", out);
  }

  void run(std::ostream& stdout_stream) const {
    const EccPrimeResult r = ecc_prime_search(k, c_max);
    json doc;
    doc["k"] = r.k;
    doc["c_max"] = c_max;
    doc["c"] = r.c;
    if (auto small = to_u64(r.p)) {
      doc["p"] = *small;
    } else {
      doc["p"] = r.p.str();
    }
    doc["verdict"] = to_string(r.verdict.classification);
    doc["decided_by"] = to_string(r.verdict.decided_by);
    doc["deterministic"] = r.deterministic;
    Output{out, &stdout_stream}.write(doc.dump() + "\n");
  }
};

struct ChallengeCmd {
  unsigned bits = 16;
  u64 seed = 0;
  std::optional<u64> solve;
  std::string out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--bits", bits, "Prime size in bits, 8..32");
    cmd->add_option("--seed", seed);
    cmd->add_option("--solve", solve, "Factor a challenge modulus instead of generating one");
    cmd->add_option("--out", out);
  }

  void run(std::ostream& stdout_stream) const {
    json doc;
    if (solve) {
      const auto [p, q] = solve_challenge(*solve);
      doc["N"] = *solve;
      doc["p"] = p;
      doc["q"] = q;
    } else {
      const RsaChallenge c = rsa_toy_challenge(bits, seed);
      doc["bits"] = c.bits;
      doc["seed"] = c.seed;
      doc["N"] = c.modulus;
    }
    Output{out, &stdout_stream}.write(doc.dump() + "\n");
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"GM-(n+1) composite filtering and prime analysis toolkit", "gmprime"};
  app.require_subcommand(1);
  unsigned threads = 1;
  u64 segment_size = u64{1} << 26;
  app.add_option("--threads", threads, "Worker threads for segmented filtering")
      ->check(CLI::Range(1U, 1024U));
  app.add_option("--segment-size", segment_size, "Integers per filter segment");

  PrimesCmd primes;
  GapsCmd gaps;
  BenchCmd bench;
  FactorCmd factor;
  EccCmd ecc;
  ChallengeCmd challenge;
  auto* primes_cmd = app.add_subcommand("primes", "Filter survivors confirmed prime up to N");
  auto* gaps_cmd = app.add_subcommand("gaps", "Gap statistics and histogram");
  auto* bench_cmd = app.add_subcommand("bench", "Compare GM filtering against Eratosthenes");
  auto* factor_cmd = app.add_subcommand("factor", "Factor an integer via GM probes");
  auto* ecc_cmd = app.add_subcommand("ecc", "Smallest c with 2^k - c prime");
  auto* challenge_cmd = app.add_subcommand("challenge", "Toy RSA moduli");
  primes.attach(primes_cmd);
  gaps.attach(gaps_cmd);
  bench.attach(bench_cmd);
  factor.attach(factor_cmd);
  ecc.attach(ecc_cmd);
  challenge.attach(challenge_cmd);

  std::vector<std::string> argv_storage{"gmprime"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    FilterOptions fo;
    fo.threads = threads;
    fo.segment_size = segment_size;
    if (primes_cmd->parsed()) primes.run(fo, out);
    if (gaps_cmd->parsed()) gaps.run(fo, out);
    if (bench_cmd->parsed()) bench.run(fo, out);
    if (factor_cmd->parsed()) factor.run(out);
    if (ecc_cmd->parsed()) ecc.run(out);
    if (challenge_cmd->parsed()) challenge.run(out);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace gmprime::cli
