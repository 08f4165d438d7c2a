#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "asrda/eval/tokenize.hpp"

namespace asrda::eval {

struct EditCounts {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t ref_tokens = 0;

  std::size_t errors() const { return substitutions + insertions + deletions; }
  /// 100 * errors / ref_tokens; 0 when both are zero.
  double wer() const;

  EditCounts& operator+=(const EditCounts& o);
  bool operator==(const EditCounts&) const = default;
};

/// Minimum-edit alignment with unit costs. Among alignments with the fewest
/// edits, the one with the fewest insertions + deletions is chosen, which
/// fixes the S/I/D split uniquely.
template <typename T>
EditCounts align(std::span<const T> ref, std::span<const T> hyp) {
  struct Cell {
    std::size_t edits;
    std::size_t indels;
    bool operator<(const Cell& o) const { return edits != o.edits ? edits < o.edits : indels < o.indels; }
  };
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<Cell> dp((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> Cell& { return dp[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = {i, i};
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = {j, j};
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const Cell& d = at(i - 1, j - 1);
      Cell best = ref[i - 1] == hyp[j - 1] ? d : Cell{d.edits + 1, d.indels};
      const Cell del{at(i - 1, j).edits + 1, at(i - 1, j).indels + 1};
      const Cell ins{at(i, j - 1).edits + 1, at(i, j - 1).indels + 1};
      best = std::min({best, del, ins});
      at(i, j) = best;
    }
  }
  const Cell& final_cell = at(n, m);
  // errors = S + I + D, indels = I + D, I - D = m - n.
  EditCounts c;
  c.ref_tokens = n;
  const auto diff = static_cast<std::ptrdiff_t>(m) - static_cast<std::ptrdiff_t>(n);
  c.substitutions = final_cell.edits - final_cell.indels;
  c.insertions = static_cast<std::size_t>((static_cast<std::ptrdiff_t>(final_cell.indels) + diff) / 2);
  c.deletions = final_cell.indels - c.insertions;
  return c;
}

inline EditCounts align(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
  return align<std::string>(std::span<const std::string>(ref), std::span<const std::string>(hyp));
}

struct UtteranceScore {
  std::size_t index = 0;
  EditCounts counts;
  bool empty_reference = false;  // excluded from the aggregate
};

struct WerReport {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t ref_tokens = 0;
  double wer = 0.0;  // percent, micro-averaged
  std::size_t num_utterances = 0;
  std::size_t empty_references = 0;
  std::vector<UtteranceScore> per_utterance;

  EditCounts totals() const { return {substitutions, insertions, deletions, ref_tokens}; }
};

void to_json(nlohmann::json& j, const WerReport& r);

struct ScoringOptions {
  TokenMode mode = TokenMode::kWord;
  bool normalize = false;
  bool keep_per_utterance = true;
};

/// Micro-averaged WER over parallel reference/hypothesis lists.
/// Utterances whose reference tokenizes to nothing are flagged and excluded.
/// Throws InvalidArgument on a length mismatch and EmptyReference when no
/// reference tokens remain.
WerReport compute_wer(std::span<const std::string> refs, std::span<const std::string> hyps,
                      const ScoringOptions& options = {});

struct RefHyp {
  std::string ref;
  std::string hyp;
};

/// WER over a seeded uniform sample of min(sample_n, pairs.size()) utterances.
/// Throws EmptyCorpus for no pairs.
WerReport estimate_baseline_wer(std::span<const RefHyp> pairs, std::size_t sample_n = 200, std::uint64_t seed = 0,
                                const ScoringOptions& options = {});

/// Parallel plain-text files, one utterance per line. Throws InvalidArgument
/// when the line counts differ.
std::vector<RefHyp> read_parallel_text(const std::filesystem::path& ref_path, const std::filesystem::path& hyp_path);

/// JSONL with {"ref": ..., "hyp": ...} objects.
std::vector<RefHyp> read_pairs_jsonl(const std::filesystem::path& path);

}  // namespace asrda::eval
