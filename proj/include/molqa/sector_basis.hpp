#pragma once

#include <cstdint>
#include <vector>

#include "molqa/errors.hpp"

namespace molqa {

// Binomial coefficient as an exact signed 64-bit value; throws on overflow.
std::uint64_t binomial(int n, int k);

// Fixed-excitation basis: all n-site bitstrings with exactly k set bits
// (bit i set = site i excited), ordered lexicographically with site 0 as the
// least-significant bit. rank/unrank run in O(n) against a binomial table.
class SectorBasis {
 public:
  SectorBasis(int n_sites, int k_excitations);

  int n_sites() const { return n_; }
  int k_excitations() const { return k_; }
  std::int64_t size() const { return static_cast<std::int64_t>(states_.size()); }
  std::uint64_t state(std::int64_t rank) const {
    return states_[static_cast<size_t>(rank)];
  }
  std::int64_t rank(std::uint64_t bits) const;

  const std::vector<std::uint64_t>& states() const { return states_; }

 private:
  int n_;
  int k_;
  std::vector<std::uint64_t> states_;
};

}  // namespace molqa
