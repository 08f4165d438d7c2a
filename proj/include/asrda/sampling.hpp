#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "asrda/rng.hpp"

namespace asrda {

/// Seeded uniform subset of {0, ..., total-1} of size min(n, total), returned
/// in ascending order. Partial Fisher-Yates over the counter-based generator,
/// so the subset is identical on every platform.
inline std::vector<std::size_t> sample_indices(std::size_t total, std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (n >= total) return idx;
  CounterRng rng(derive_key(seed, 0x5A3B1E));
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace asrda
