#include "molqa/sector_basis.hpp"

#include <bit>
#include <limits>

namespace molqa {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (result > std::numeric_limits<std::uint64_t>::max() / num)
      throw SizeLimitError("binomial coefficient overflow");
    result = result * num / static_cast<std::uint64_t>(i);
  }
  return result;
}

SectorBasis::SectorBasis(int n_sites, int k_excitations)
    : n_(n_sites), k_(k_excitations) {
  if (n_sites < 1 || n_sites > 62)
    throw SizeLimitError("sector basis supports 1..62 sites");
  if (k_excitations < 0 || k_excitations > n_sites)
    throw ConfigError("excitation count outside [0, n_sites]");

  const std::uint64_t dim = binomial(n_sites, k_excitations);
  states_.reserve(dim);
  if (k_excitations == 0) {
    states_.push_back(0);
    return;
  }
  // ascending integers with fixed popcount (Gosper's hack)
  std::uint64_t v = (std::uint64_t{1} << k_excitations) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n_sites;
  while (v < limit) {
    states_.push_back(v);
    const std::uint64_t t = v | (v - 1);
    if (t == std::numeric_limits<std::uint64_t>::max()) break;
    v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
  }
}

std::int64_t SectorBasis::rank(std::uint64_t bits) const {
  if (std::popcount(bits) != k_)
    throw ConfigError("bitstring is outside the excitation sector");
  // combinadic rank: sum of C(position, #ones seen so far)
  std::int64_t r = 0;
  int seen = 0;
  for (int pos = 0; pos < n_ && seen < k_; ++pos) {
    if (bits & (std::uint64_t{1} << pos)) {
      ++seen;
      r += static_cast<std::int64_t>(binomial(pos, seen));
    }
  }
  return r;
}

}  // namespace molqa
