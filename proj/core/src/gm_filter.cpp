#include "gmprime/gm_filter.hpp"

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>

#include "gmprime/arith.hpp"
#include "gmprime/errors.hpp"

namespace gmprime {

GmSet::GmSet(std::uint64_t modulus, std::uint64_t bound) : modulus_(modulus), bound_(bound) {
  if (modulus < 2) throw DomainError("GM set modulus must be >= 2, got " + std::to_string(modulus));
  if (bound < modulus) {
    throw DomainError("GM set bound " + std::to_string(bound) + " is below its modulus " +
                      std::to_string(modulus));
  }
}

std::vector<std::uint64_t> GmSet::elements() const {
  std::vector<std::uint64_t> out;
  out.reserve(size());
  for (std::uint64_t k = 1; k <= size(); ++k) out.push_back(k * modulus_);
  return out;
}

GmSet gm_set(std::uint64_t n, std::uint64_t max_num) {
  if (n < 1) throw DomainError("GM index n must be >= 1");
  return GmSet(n + 1, max_num);
}

namespace {

std::vector<std::uint64_t> validated_moduli(std::span<const std::uint64_t> moduli,
                                            std::uint64_t bound) {
  if (moduli.empty()) throw DomainError("moduli list is empty");
  std::vector<std::uint64_t> sorted(moduli.begin(), moduli.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 2) throw DomainError("modulus must be >= 2, got " + std::to_string(sorted[i]));
    if (sorted[i] > bound) {
      throw DomainError("modulus " + std::to_string(sorted[i]) + " exceeds bound " +
                        std::to_string(bound));
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw DomainError("duplicate modulus " + std::to_string(sorted[i]));
    }
  }
  return sorted;
}

std::uint64_t effective_segment(const FilterOptions& options) {
  std::uint64_t seg = std::max<std::uint64_t>(options.segment_size, 64);
  return (seg + 63) / 64 * 64;
}

// Marks survivors of [lo, hi] into `words`, where bit (m - lo) stands for m.
// `words` must hold at least (hi - lo + 64) / 64 words.
void sieve_segment(std::span<const std::uint64_t> moduli, std::uint64_t lo, std::uint64_t hi,
                   bool drop_first_terms, std::uint64_t* words) {
  const std::uint64_t len = hi - lo + 1;
  const std::uint64_t nwords = (len + 63) / 64;
  std::fill(words, words + nwords, ~std::uint64_t{0});
  if (len % 64 != 0) words[nwords - 1] = (std::uint64_t{1} << (len % 64)) - 1;
  for (std::uint64_t m = lo; m < 2 && m <= hi; ++m) {
    words[(m - lo) >> 6] &= ~(std::uint64_t{1} << ((m - lo) & 63));
  }
  for (std::uint64_t d : moduli) {
    const std::uint64_t first = drop_first_terms ? d : 2 * d;
    std::uint64_t m = lo <= first ? first : (lo + d - 1) / d * d;
    for (; m <= hi; m += d) {
      const std::uint64_t off = m - lo;
      words[off >> 6] &= ~(std::uint64_t{1} << (off & 63));
    }
  }
}

unsigned worker_count(const FilterOptions& options, std::uint64_t segments) {
  unsigned t = std::max(1U, options.threads);
  return static_cast<unsigned>(std::min<std::uint64_t>(t, segments));
}

}  // namespace

CandidateFilter build_filter(std::span<const std::uint64_t> moduli, std::uint64_t max_num,
                             const FilterOptions& options) {
  if (max_num < 2) throw DomainError("filter bound must be >= 2");
  CandidateFilter filter;
  filter.moduli_ = validated_moduli(moduli, max_num);
  filter.bound_ = max_num;
  filter.drop_first_terms_ = options.drop_first_terms;
  filter.bits_.assign(max_num / 64 + 1, 0);

  const std::uint64_t seg = effective_segment(options);
  const std::uint64_t segments = max_num / seg + 1;
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t s = next++; s < segments; s = next++) {
      const std::uint64_t lo = s * seg;
      const std::uint64_t hi = std::min(max_num, lo + seg - 1);
      sieve_segment(filter.moduli_, lo, hi, options.drop_first_terms,
                    filter.bits_.data() + lo / 64);
    }
  };
  const unsigned workers = worker_count(options, segments);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  return filter;
}

std::uint64_t CandidateFilter::survivor_count() const {
  std::uint64_t total = 0;
  for (std::uint64_t w : bits_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

void CandidateFilter::Iterator::advance(std::uint64_t from) {
  const std::uint64_t limit = owner_->bound_ + 1;
  if (from >= limit) {
    pos_ = limit;
    return;
  }
  std::uint64_t word_idx = from >> 6;
  std::uint64_t word = owner_->bits_[word_idx] & (~std::uint64_t{0} << (from & 63));
  while (word == 0) {
    if (++word_idx >= owner_->bits_.size()) {
      pos_ = limit;
      return;
    }
    word = owner_->bits_[word_idx];
  }
  pos_ = std::min(limit, word_idx * 64 + static_cast<std::uint64_t>(std::countr_zero(word)));
}

std::vector<std::uint64_t> CandidateFilter::survivors_in(std::uint64_t lo, std::uint64_t hi) const {
  std::vector<std::uint64_t> out;
  if (hi > bound_) hi = bound_;
  if (lo > hi) return out;
  for (Iterator it(this, lo); it != end() && *it <= hi; ++it) out.push_back(*it);
  return out;
}

void scan_survivors(std::span<const std::uint64_t> moduli, std::uint64_t lo, std::uint64_t hi,
                    const FilterOptions& options,
                    const std::function<void(std::uint64_t)>& visit) {
  if (lo > hi) throw DomainError("scan range is empty");
  const std::vector<std::uint64_t> sorted = validated_moduli(moduli, hi);
  // No point allocating past the range itself.
  FilterOptions clipped = options;
  clipped.segment_size = std::min(options.segment_size, hi - lo + 1);
  const std::uint64_t seg = effective_segment(clipped);
  const std::uint64_t segments = (hi - lo) / seg + 1;
  const unsigned workers = worker_count(options, segments);
  std::vector<std::vector<std::uint64_t>> buffers(workers,
                                                  std::vector<std::uint64_t>(seg / 64 + 1));

  for (std::uint64_t batch = 0; batch < segments; batch += workers) {
    const std::uint64_t in_batch = std::min<std::uint64_t>(workers, segments - batch);
    auto bounds = [&](std::uint64_t s) {
      const std::uint64_t a = lo + s * seg;
      const std::uint64_t b = (hi - a < seg - 1) ? hi : a + seg - 1;
      return std::pair{a, b};
    };
    auto fill = [&](std::uint64_t i) {
      auto [a, b] = bounds(batch + i);
      sieve_segment(sorted, a, b, options.drop_first_terms, buffers[i].data());
    };
    if (in_batch == 1) {
      fill(0);
    } else {
      std::vector<std::jthread> pool;
      for (std::uint64_t i = 0; i < in_batch; ++i) pool.emplace_back(fill, i);
    }
    for (std::uint64_t i = 0; i < in_batch; ++i) {
      auto [a, b] = bounds(batch + i);
      const std::uint64_t nwords = (b - a) / 64 + 1;
      for (std::uint64_t w = 0; w < nwords; ++w) {
        std::uint64_t word = buffers[i][w];
        while (word != 0) {
          visit(a + w * 64 + static_cast<std::uint64_t>(std::countr_zero(word)));
          word &= word - 1;
        }
      }
    }
  }
}

std::vector<std::uint64_t> default_moduli(std::size_t k) {
  if (k == 0) throw DomainError("default moduli need k >= 1");
  return first_primes(k);
}

std::vector<std::uint64_t> eratosthenes_primes(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i * i <= n; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (!composite[i]) primes.push_back(i);
  }
  return primes;
}

}  // namespace gmprime
