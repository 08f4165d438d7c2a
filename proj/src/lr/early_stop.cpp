#include "asrda/lr/early_stop.hpp"

#include <algorithm>

#include "asrda/error.hpp"

namespace asrda::lr {

bool should_stop(std::span<const double> wer_history, std::size_t patience, double min_delta) {
  require(patience >= 1, ErrorCode::kInvalidArgument, "patience must be >= 1");
  if (wer_history.size() <= patience) return false;
  const auto split = wer_history.end() - static_cast<std::ptrdiff_t>(patience);
  const double best_before = *std::min_element(wer_history.begin(), split);
  const double best_recent = *std::min_element(split, wer_history.end());
  return best_before - best_recent < min_delta;
}

}  // namespace asrda::lr
