#pragma once

// Gap sequences between consecutive primes or filter survivors, their
// moment statistics, and the comparison against a mean gap of ln x.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmprime/gm_filter.hpp"
#include "gmprime/primality.hpp"

namespace gmprime {

struct GapSequence {
  std::uint64_t source_bound = 0;
  std::vector<std::uint64_t> values;
  std::vector<std::uint64_t> gaps;  // gaps[i] = values[i + 1] - values[i]
};

/// Values must be strictly ascending with at least two entries.
/// `source_bound` defaults to the last value.
GapSequence extract_gaps(std::span<const std::uint64_t> values,
                         std::optional<std::uint64_t> source_bound = std::nullopt);

/// Population moments over the gap list (divide by the gap count).
struct GapReport {
  std::uint64_t source_bound = 0;
  std::uint64_t value_count = 0;
  std::uint64_t gap_count = 0;
  double mean = 0;
  double variance = 0;
  /// Undefined (nullopt) when the variance is zero.
  std::optional<double> skewness;
  std::optional<double> excess_kurtosis;
  std::uint64_t max_gap = 0;
  double ln_bound = 0;
  double cramer_ratio = 0;
  /// Exact gap size -> count.
  std::map<std::uint64_t, std::uint64_t> histogram;
};

GapReport moments(const GapSequence& seq);

/// Bin index floor(g / bin_width) -> count.
std::map<std::uint64_t, std::uint64_t> histogram(const GapSequence& seq,
                                                 std::uint64_t bin_width);

struct CramerBand {
  double lo = 0.8;
  double hi = 1.1;
};

struct CramerComparison {
  double mean;
  double ln_bound;
  double ratio;
  bool in_band;
  std::string verdict;
};

/// Requires bound >= 3.
CramerComparison cramer_comparison(const GapReport& report, std::uint64_t bound,
                                   CramerBand band = {});

enum class GapMode { Candidates, ConfirmedPrimes };
const char* to_string(GapMode mode);

struct GapRunOptions {
  FilterOptions filter;
  PipelineConfig pipeline;
};

struct GapRun {
  GapMode mode;
  std::uint64_t range_lo;
  std::uint64_t range_hi;
  std::vector<std::uint64_t> moduli;
  GapSequence sequence;
  GapReport report;
};

/// Builds the gap sequence of [range_lo, range_hi]: either the survivors of
/// the moduli filter or the survivors that the hybrid pipeline confirms as
/// prime. `report.source_bound` is range_hi. Throws DomainError when the
/// range is invalid or yields fewer than two values.
GapRun gap_run(std::uint64_t range_lo, std::uint64_t range_hi,
               std::span<const std::uint64_t> moduli, GapMode mode,
               const GapRunOptions& options = {});

/// Histogram rows as CSV with header `gap,count`; `gap` is the lower edge
/// of the bin (bin index * width).
std::string histogram_csv(const std::map<std::uint64_t, std::uint64_t>& bins,
                          std::uint64_t bin_width);

}  // namespace gmprime
