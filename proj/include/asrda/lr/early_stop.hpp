#pragma once

#include <cstddef>
#include <span>

namespace asrda::lr {

/// True when the last `patience` evaluations failed to improve on the best
/// WER seen before them by at least `min_delta` percentage points. Histories
/// of `patience` entries or fewer never stop. Throws InvalidArgument for patience 0.
bool should_stop(std::span<const double> wer_history, std::size_t patience, double min_delta);

}  // namespace asrda::lr
