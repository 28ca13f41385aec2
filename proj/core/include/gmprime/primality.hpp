#pragma once

// Secondary primality battery for filter survivors: trial division,
// Miller-Rabin with pluggable base selection, AKS, and the hybrid pipeline
// that chains them behind the GM divisibility screen.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gmprime/arith.hpp"

namespace gmprime {

enum class Classification { Prime, Composite, ProbablyPrime };
enum class Method { TrialDivision, MillerRabin, AKS, Pipeline };
enum class Stage { None, DivisibilityScreen, TrialDivision, MillerRabin, AKS };

const char* to_string(Classification c);
const char* to_string(Method m);
const char* to_string(Stage s);

namespace evidence {
/// n <= 1: non-prime by convention, there is no divisor to report.
struct ByConvention {
  bool operator==(const ByConvention&) const = default;
};
struct Divisor {
  u64 value;
  bool operator==(const Divisor&) const = default;
};
struct Witness {
  u64 base;
  bool operator==(const Witness&) const = default;
};
struct Rounds {
  unsigned count;
  bool operator==(const Rounds&) const = default;
};
/// AKS found n = base^exponent.
struct PerfectPower {
  u64 base;
  unsigned exponent;
  bool operator==(const PerfectPower&) const = default;
};
/// AKS polynomial congruence failed for (X + a).
struct CongruenceFailure {
  u64 a;
  bool operator==(const CongruenceFailure&) const = default;
};
}  // namespace evidence

using Evidence = std::variant<std::monostate, evidence::ByConvention, evidence::Divisor,
                              evidence::Witness, evidence::Rounds, evidence::PerfectPower,
                              evidence::CongruenceFailure>;

struct PrimalityVerdict {
  Classification classification = Classification::Composite;
  Method method = Method::TrialDivision;
  Evidence evidence;
  /// Pipeline only: the stage that produced the classification.
  Stage decided_by = Stage::None;
  /// Miller-Rabin bases actually run, in order.
  std::vector<u64> bases_tested;
  /// Informational messages, e.g. a skipped AKS stage.
  std::vector<std::string> notices;

  bool is_prime() const { return classification == Classification::Prime; }
  bool is_composite() const { return classification == Classification::Composite; }
};

PrimalityVerdict is_prime_trial(std::int64_t num);

/// n - 1 = 2^s * d with d odd.
struct PowDecomposition {
  unsigned s;
  u64 d;
  bool operator==(const PowDecomposition&) const = default;
};

/// Requires n odd and n >= 3.
PowDecomposition decompose(u64 n);

enum class MrOutcome { ConsistentWithPrime, WitnessOfCompositeness };

/// One strong-probable-prime round. Requires n odd >= 3 and 2 <= base <= n-2.
MrOutcome miller_rabin_single(u64 n, u64 base);
MrOutcome miller_rabin_single(const BigInt& n, u64 base);

// ---------------------------------------------------------------------------
// Base selection
// ---------------------------------------------------------------------------

/// A fixed, ordered list of bases.
struct FixedBases {
  std::vector<u64> bases;

  /// {2, 3, ..., 37}: deterministic for every n < 2^64.
  static FixedBases deterministic64();
  bool is_deterministic64() const;
};

/// Bases ranked by accumulated witness counts. The run order is weight
/// descending, ties broken by a permutation derived from `seed`.
struct WeightedBases {
  std::map<u64, u64> weights;
  unsigned rounds = 8;
  u64 seed = 0;
  u64 reward = 1;
  u64 floor = 1;

  static WeightedBases uniform(std::span<const u64> bases, unsigned rounds, u64 seed);
  std::vector<u64> order() const;
};

/// Picks bases from the shape of n - 1 = 2^s * d: a B-smooth d gets the
/// small-base list, otherwise `rounds` bases are drawn from [2, n - 2].
struct AdaptiveBases {
  u64 smoothness_bound = 100;
  std::vector<u64> small_bases{2, 3, 5, 7, 11, 13};
  u64 seed = 0;
  unsigned rounds = 8;
};

using BaseStrategy = std::variant<FixedBases, WeightedBases, AdaptiveBases>;

/// Result of one base on one candidate, as fed back into a WeightedBases.
struct WitnessEvent {
  u64 base;
  bool witnessed;
};

/// Applies one outcome. Throws DomainError if `base` has no weight entry.
WeightedBases update_weights(WeightedBases strategy, WitnessEvent outcome);

/// Single-writer merge of buffered events, applied in order.
WeightedBases merge_outcomes(WeightedBases strategy, std::span<const WitnessEvent> events);

/// Events implied by a Miller-Rabin verdict: every tested base that did not
/// witness, then the witness (if any).
std::vector<WitnessEvent> outcome_events(const PrimalityVerdict& verdict);

/// Requires n odd >= 5.
std::vector<u64> adaptive_bases(u64 n, const AdaptiveBases& policy);

/// Bases the strategy would run on n, already reduced into [2, n - 2].
std::vector<u64> select_bases(u64 n, const BaseStrategy& strategy);

PrimalityVerdict miller_rabin(u64 n, const BaseStrategy& strategy);
/// Arbitrary-precision variant; n >= 2^64 can only be ProbablyPrime.
PrimalityVerdict miller_rabin(const BigInt& n, const BaseStrategy& strategy);

// ---------------------------------------------------------------------------
// AKS
// ---------------------------------------------------------------------------

/// Agrawal-Kayal-Saxena test. Exact for every n >= 2; only practical at desk
/// scale (the polynomial stage is O(r^2 log n) per congruence).
PrimalityVerdict aks_is_prime(u64 n);

// ---------------------------------------------------------------------------
// Hybrid pipeline
// ---------------------------------------------------------------------------

struct PipelineConfig {
  /// GM screen moduli. Empty disables the screen.
  std::vector<u64> moduli = first_primes(25);
  /// Trial division runs with divisors up to this bound. 0 or 1 disables it.
  u64 trial_bound = 10'000;
  BaseStrategy strategy = FixedBases::deterministic64();
  bool aks_confirm = false;
  u64 aks_cap = 1'000'000;
};

PrimalityVerdict hybrid_is_prime(u64 n, const PipelineConfig& config = {});
PrimalityVerdict hybrid_is_prime(const BigInt& n, const PipelineConfig& config = {});

/// Scalar settings read from a key=value file.
struct PipelineSettings {
  u64 trial_bound = 10'000;
  unsigned mr_rounds = 8;
  u64 smoothness_bound = 100;
  u64 aks_cap = 1'000'000;
  u64 seed = 0;
};

/// Parses `key=value` lines ('#' comments, blank lines allowed). Keys:
/// trial_bound, mr_rounds, smoothness_bound, aks_cap, seed. Unknown keys and
/// malformed values throw DomainError.
PipelineSettings parse_pipeline_settings(const std::string& text,
                                         PipelineSettings defaults = {});

/// Loads a weight map {"2": 4, "3": 1}. Throws DomainError on malformed input.
std::map<u64, u64> load_weights(const std::string& path);
/// Writes the weight map to `path` via a temporary file and rename.
void save_weights(const std::string& path, const std::map<u64, u64>& weights);
std::string weights_to_json(const std::map<u64, u64>& weights);
std::map<u64, u64> weights_from_json(const std::string& text);

}  // namespace gmprime
