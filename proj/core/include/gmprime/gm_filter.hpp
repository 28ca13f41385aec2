#pragma once

// GM-(n+1) sets and union-of-sets composite filtering.
//
// A GM set with modulus d is the progression {d, 2d, 3d, ...} truncated at a
// bound N. Every term after the first is composite, so removing those terms
// from [2, N] for several moduli leaves a candidate pool that still contains
// every prime <= N. Sets are always identified by their modulus d (= n + 1).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <span>
#include <vector>

namespace gmprime {

/// One GM-(n+1) sequence, represented implicitly by (modulus, bound).
class GmSet {
 public:
  /// Constructs the set for modulus d. Throws DomainError when d < 2 or
  /// bound < d (the set would be empty).
  GmSet(std::uint64_t modulus, std::uint64_t bound);

  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t bound() const { return bound_; }
  std::uint64_t size() const { return bound_ / modulus_; }

  /// Divisibility predicate; nothing is materialized.
  bool contains(std::uint64_t m) const {
    return m >= 1 && m <= bound_ && m % modulus_ == 0;
  }

  /// Ascending list d, 2d, ..., floor(N/d)*d.
  std::vector<std::uint64_t> elements() const;

 private:
  std::uint64_t modulus_;
  std::uint64_t bound_;
};

/// Index form: n is the index, the modulus is n + 1.
GmSet gm_set(std::uint64_t n, std::uint64_t max_num);

struct FilterOptions {
  /// Remove each modulus itself as well (reproduces the reference Python
  /// listing, which treats the first term as composite too).
  bool drop_first_terms = false;
  /// Integers per segment; rounded up to a multiple of 64.
  std::uint64_t segment_size = std::uint64_t{1} << 26;
  /// Worker threads used to fill segments. 0 means 1.
  unsigned threads = 1;
};

/// Immutable survivor set over [2, N].
///
/// m survives iff 2 <= m <= N and every modulus d satisfies d does not
/// divide m, or m == d (first-term retention; disabled by drop_first_terms).
class CandidateFilter {
 public:
  class Iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = std::uint64_t;
    using difference_type = std::ptrdiff_t;
    using pointer = const std::uint64_t*;
    using reference = std::uint64_t;

    Iterator() = default;
    std::uint64_t operator*() const { return pos_; }
    Iterator& operator++() {
      advance(pos_ + 1);
      return *this;
    }
    Iterator operator++(int) {
      Iterator tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(const Iterator& other) const { return pos_ == other.pos_; }

   private:
    friend class CandidateFilter;
    Iterator(const CandidateFilter* owner, std::uint64_t from) : owner_(owner) { advance(from); }
    void advance(std::uint64_t from);

    const CandidateFilter* owner_ = nullptr;
    std::uint64_t pos_ = 0;
  };

  const std::vector<std::uint64_t>& moduli() const { return moduli_; }
  std::uint64_t bound() const { return bound_; }
  bool drop_first_terms() const { return drop_first_terms_; }

  bool contains(std::uint64_t m) const {
    return m <= bound_ && ((bits_[m >> 6] >> (m & 63)) & 1U);
  }

  std::uint64_t survivor_count() const;

  /// Survivors in ascending order. Restartable: every call starts at 2.
  Iterator begin() const { return Iterator(this, 0); }
  Iterator end() const { return Iterator(this, bound_ + 1); }

  std::vector<std::uint64_t> survivors() const { return {begin(), end()}; }

  /// Survivors in [lo, hi] (clamped to [2, N]).
  std::vector<std::uint64_t> survivors_in(std::uint64_t lo, std::uint64_t hi) const;

 private:
  friend CandidateFilter build_filter(std::span<const std::uint64_t>, std::uint64_t,
                                      const FilterOptions&);
  CandidateFilter() = default;

  std::vector<std::uint64_t> moduli_;
  std::uint64_t bound_ = 0;
  bool drop_first_terms_ = false;
  std::vector<std::uint64_t> bits_;  // bit m set <=> m survives
};

/// Builds the filter. Moduli may be given in any order but must be distinct,
/// each in [2, N], and non-empty; violations throw DomainError. The result
/// is identical for every segment size and thread count.
CandidateFilter build_filter(std::span<const std::uint64_t> moduli, std::uint64_t max_num,
                             const FilterOptions& options = {});

inline std::uint64_t survivor_count(const CandidateFilter& filter) {
  return filter.survivor_count();
}

/// Streams survivors of [lo, hi] segment by segment without building a
/// full-range bitmask. Segments may be sieved concurrently, but the visitor
/// is always called from the calling thread in ascending order.
void scan_survivors(std::span<const std::uint64_t> moduli, std::uint64_t lo, std::uint64_t hi,
                    const FilterOptions& options,
                    const std::function<void(std::uint64_t)>& visit);

/// Default moduli: the first k primes (k = 25 gives the primes <= 97).
std::vector<std::uint64_t> default_moduli(std::size_t k = 25);

/// Baseline: all primes <= n by the plain sieve of Eratosthenes.
std::vector<std::uint64_t> eratosthenes_primes(std::uint64_t n);

}  // namespace gmprime
