#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

namespace asrda::test {

struct OracleCounts {
  std::size_t s = 0, i = 0, d = 0;
};

// Alignments are enumerated by their deletion count d: n - d reference tokens
// are paired in order with n - d hypothesis tokens, the rest are deletions or
// insertions. best[i][j][p] is the most matches achievable pairing p tokens
// from ref[0..i) and hyp[0..j). The edit count for d is m + d - matches(d);
// ties go to the smallest d (fewest insertions + deletions).
template <typename T>
OracleCounts oracle_align(const std::vector<T>& ref, const std::vector<T>& hyp) {
  const std::size_t n = ref.size(), m = hyp.size(), P = std::min(n, m);
  constexpr int kNone = std::numeric_limits<int>::min() / 2;
  std::vector<int> best((n + 1) * (m + 1) * (P + 1), kNone);
  auto at = [&](std::size_t i, std::size_t j, std::size_t p) -> int& {
    return best[(i * (m + 1) + j) * (P + 1) + p];
  };
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      at(i, j, 0) = 0;
      for (std::size_t p = 1; p <= std::min({i, j, P}); ++p) {
        int v = kNone;
        if (i > 0) v = std::max(v, at(i - 1, j, p));
        if (j > 0) v = std::max(v, at(i, j - 1, p));
        if (at(i - 1, j - 1, p - 1) != kNone) v = std::max(v, at(i - 1, j - 1, p - 1) + (ref[i - 1] == hyp[j - 1]));
        at(i, j, p) = v;
      }
    }
  }
  OracleCounts out;
  std::size_t best_edits = std::numeric_limits<std::size_t>::max();
  for (std::size_t d = (n > m ? n - m : 0); d <= n; ++d) {
    const std::size_t pairs = n - d;
    const auto matches = static_cast<std::size_t>(at(n, m, pairs));
    const std::size_t edits = m + d - matches;
    if (edits < best_edits) {
      best_edits = edits;
      out = {pairs - matches, d + m - n, d};
    }
  }
  return out;
}

}  // namespace asrda::test
