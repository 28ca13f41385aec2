#include "gmprime/gap_stats.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "gmprime/errors.hpp"
#include "gmprime/prime_search.hpp"

namespace gmprime {

GapSequence extract_gaps(std::span<const std::uint64_t> values,
                         std::optional<std::uint64_t> source_bound) {
  if (values.size() < 2) throw DomainError("gap extraction needs at least two values");
  GapSequence seq;
  seq.values.assign(values.begin(), values.end());
  seq.gaps.reserve(values.size() - 1);
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw DomainError("values must be strictly ascending (index " + std::to_string(i) + ")");
    }
    seq.gaps.push_back(values[i] - values[i - 1]);
  }
  seq.source_bound = source_bound.value_or(values.back());
  return seq;
}

GapReport moments(const GapSequence& seq) {
  if (seq.gaps.empty()) throw DomainError("moments need at least one gap");
  GapReport r;
  r.source_bound = seq.source_bound;
  r.value_count = seq.values.size();
  r.gap_count = seq.gaps.size();

  long double sum = 0;
  for (std::uint64_t g : seq.gaps) {
    sum += static_cast<long double>(g);
    r.max_gap = std::max(r.max_gap, g);
    ++r.histogram[g];
  }
  const long double count = static_cast<long double>(seq.gaps.size());
  const long double mean = sum / count;

  long double m2 = 0, m3 = 0, m4 = 0;
  for (std::uint64_t g : seq.gaps) {
    const long double dev = static_cast<long double>(g) - mean;
    const long double sq = dev * dev;
    m2 += sq;
    m3 += sq * dev;
    m4 += sq * sq;
  }
  m2 /= count;
  m3 /= count;
  m4 /= count;

  r.mean = static_cast<double>(mean);
  r.variance = static_cast<double>(m2);
  if (m2 > 0) {
    r.skewness = static_cast<double>(m3 / std::pow(m2, 1.5L));
    r.excess_kurtosis = static_cast<double>(m4 / (m2 * m2) - 3);
  }
  if (seq.source_bound >= 2) {
    r.ln_bound = std::log(static_cast<double>(seq.source_bound));
    r.cramer_ratio = r.mean / r.ln_bound;
  }
  return r;
}

std::map<std::uint64_t, std::uint64_t> histogram(const GapSequence& seq,
                                                 std::uint64_t bin_width) {
  if (bin_width < 1) throw DomainError("histogram bin width must be >= 1");
  std::map<std::uint64_t, std::uint64_t> bins;
  for (std::uint64_t g : seq.gaps) ++bins[g / bin_width];
  return bins;
}

CramerComparison cramer_comparison(const GapReport& report, std::uint64_t bound, CramerBand band) {
  if (bound < 3) throw DomainError("Cramer comparison needs bound >= 3");
  CramerComparison c;
  c.mean = report.mean;
  c.ln_bound = std::log(static_cast<double>(bound));
  c.ratio = c.mean / c.ln_bound;
  c.in_band = c.ratio >= band.lo && c.ratio <= band.hi;
  char buf[160];
  std::snprintf(buf, sizeof buf, "mean gap / ln(N) = %.6g is %s the band [%.6g, %.6g]", c.ratio,
                c.in_band ? "inside" : "outside", band.lo, band.hi);
  c.verdict = buf;
  return c;
}

const char* to_string(GapMode mode) {
  return mode == GapMode::Candidates ? "candidates" : "primes";
}

GapRun gap_run(std::uint64_t range_lo, std::uint64_t range_hi,
               std::span<const std::uint64_t> moduli, GapMode mode,
               const GapRunOptions& options) {
  if (range_lo < 2) range_lo = 2;
  if (range_lo >= range_hi) {
    throw DomainError("invalid gap range [" + std::to_string(range_lo) + ", " +
                      std::to_string(range_hi) + "]");
  }
  GapRun run{mode, range_lo, range_hi, {moduli.begin(), moduli.end()}, {}, {}};

  std::vector<std::uint64_t> values;
  if (mode == GapMode::Candidates) {
    scan_survivors(moduli, range_lo, range_hi, options.filter,
                   [&](std::uint64_t m) { values.push_back(m); });
  } else {
    values = find_primes(moduli, range_lo, range_hi, options.filter, options.pipeline);
  }
  if (values.size() < 2) {
    throw DomainError("range [" + std::to_string(range_lo) + ", " + std::to_string(range_hi) +
                      "] holds fewer than two values");
  }
  run.sequence = extract_gaps(values, range_hi);
  run.report = moments(run.sequence);
  return run;
}

std::string histogram_csv(const std::map<std::uint64_t, std::uint64_t>& bins,
                          std::uint64_t bin_width) {
  std::string out = "gap,count\n";
  for (const auto& [bin, count] : bins) {
    out += std::to_string(bin * bin_width);
    out += ',';
    out += std::to_string(count);
    out += '\n';
  }
  return out;
}

}  // namespace gmprime
