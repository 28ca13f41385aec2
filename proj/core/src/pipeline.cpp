#include <charconv>
#include <sstream>
#include <string>

#include "gmprime/errors.hpp"
#include "gmprime/primality.hpp"

namespace gmprime {

namespace {

PrimalityVerdict decided(Classification c, Stage stage, Evidence ev) {
  PrimalityVerdict v;
  v.classification = c;
  v.method = Method::Pipeline;
  v.decided_by = stage;
  v.evidence = std::move(ev);
  return v;
}

}  // namespace

PrimalityVerdict hybrid_is_prime(u64 n, const PipelineConfig& config) {
  if (n < 2) return decided(Classification::Composite, Stage::None, evidence::ByConvention{});

  for (u64 d : config.moduli) {
    if (d >= 2 && d < n && n % d == 0) {
      return decided(Classification::Composite, Stage::DivisibilityScreen, evidence::Divisor{d});
    }
  }

  if (config.trial_bound >= 2) {
    u64 i = 2;
    for (; i <= config.trial_bound && i <= n / i; ++i) {
      if (n % i == 0) {
        return decided(Classification::Composite, Stage::TrialDivision, evidence::Divisor{i});
      }
    }
    if (i > n / i) return decided(Classification::Prime, Stage::TrialDivision, {});
  }

  PrimalityVerdict mr = miller_rabin(n, config.strategy);
  PrimalityVerdict v = decided(mr.classification, Stage::MillerRabin, mr.evidence);
  v.bases_tested = std::move(mr.bases_tested);
  if (v.classification != Classification::ProbablyPrime || !config.aks_confirm) return v;

  if (n > config.aks_cap) {
    v.notices.push_back("aks skipped: n=" + std::to_string(n) + " exceeds aks_cap=" +
                        std::to_string(config.aks_cap));
    return v;
  }
  PrimalityVerdict aks = aks_is_prime(n);
  v.classification = aks.classification;
  v.evidence = aks.evidence;
  v.decided_by = Stage::AKS;
  return v;
}

PrimalityVerdict hybrid_is_prime(const BigInt& n, const PipelineConfig& config) {
  if (auto small = to_u64(n)) return hybrid_is_prime(*small, config);

  for (u64 d : config.moduli) {
    if (d >= 2 && n % d == 0) {
      return decided(Classification::Composite, Stage::DivisibilityScreen, evidence::Divisor{d});
    }
  }
  for (u64 i = 2; i <= config.trial_bound; ++i) {
    if (n % i == 0) {
      return decided(Classification::Composite, Stage::TrialDivision, evidence::Divisor{i});
    }
  }
  PrimalityVerdict mr = miller_rabin(n, config.strategy);
  PrimalityVerdict v = decided(mr.classification, Stage::MillerRabin, mr.evidence);
  v.bases_tested = std::move(mr.bases_tested);
  if (v.classification == Classification::ProbablyPrime && config.aks_confirm) {
    v.notices.push_back("aks skipped: n exceeds aks_cap=" + std::to_string(config.aks_cap));
  }
  return v;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

u64 parse_u64(const std::string& key, const std::string& value) {
  u64 out = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end || value.empty()) {
    throw DomainError("config key '" + key + "' expects a non-negative integer, got '" + value +
                      "'");
  }
  return out;
}

}  // namespace

PipelineSettings parse_pipeline_settings(const std::string& text, PipelineSettings settings) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "trial_bound") {
      settings.trial_bound = parse_u64(key, value);
    } else if (key == "mr_rounds") {
      settings.mr_rounds = static_cast<unsigned>(parse_u64(key, value));
    } else if (key == "smoothness_bound") {
      settings.smoothness_bound = parse_u64(key, value);
    } else if (key == "aks_cap") {
      settings.aks_cap = parse_u64(key, value);
    } else if (key == "seed") {
      settings.seed = parse_u64(key, value);
    } else {
      throw DomainError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return settings;
}

}  // namespace gmprime
