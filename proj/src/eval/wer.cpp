#include "asrda/eval/wer.hpp"

#include <fstream>

#include "asrda/error.hpp"
#include "asrda/sampling.hpp"

namespace asrda::eval {

using nlohmann::json;

double EditCounts::wer() const {
  if (ref_tokens == 0) return errors() == 0 ? 0.0 : 100.0 * static_cast<double>(errors());
  return 100.0 * static_cast<double>(errors()) / static_cast<double>(ref_tokens);
}

EditCounts& EditCounts::operator+=(const EditCounts& o) {
  substitutions += o.substitutions;
  insertions += o.insertions;
  deletions += o.deletions;
  ref_tokens += o.ref_tokens;
  return *this;
}

void to_json(json& j, const WerReport& r) {
  j = json{{"substitutions", r.substitutions},
           {"insertions", r.insertions},
           {"deletions", r.deletions},
           {"ref_tokens", r.ref_tokens},
           {"wer", r.wer},
           {"num_utterances", r.num_utterances},
           {"empty_references", r.empty_references}};
  if (!r.per_utterance.empty()) {
    json per = json::array();
    for (const auto& u : r.per_utterance) {
      per.push_back({{"index", u.index},
                     {"substitutions", u.counts.substitutions},
                     {"insertions", u.counts.insertions},
                     {"deletions", u.counts.deletions},
                     {"ref_tokens", u.counts.ref_tokens},
                     {"wer", u.empty_reference ? json(nullptr) : json(u.counts.wer())},
                     {"empty_reference", u.empty_reference}});
    }
    j["per_utterance"] = std::move(per);
  }
}

WerReport compute_wer(std::span<const std::string> refs, std::span<const std::string> hyps,
                      const ScoringOptions& options) {
  require(refs.size() == hyps.size(), ErrorCode::kInvalidArgument,
          "reference/hypothesis count mismatch: " + std::to_string(refs.size()) + " vs " + std::to_string(hyps.size()));
  WerReport report;
  report.num_utterances = refs.size();
  EditCounts total;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const auto ref = tokenize(refs[i], options.mode, options.normalize);
    UtteranceScore score;
    score.index = i;
    if (ref.empty()) {
      score.empty_reference = true;
      ++report.empty_references;
    } else {
      score.counts = align(ref, tokenize(hyps[i], options.mode, options.normalize));
      total += score.counts;
    }
    if (options.keep_per_utterance) report.per_utterance.push_back(score);
  }
  require(total.ref_tokens > 0, ErrorCode::kEmptyReference, "no non-empty references to score");
  report.substitutions = total.substitutions;
  report.insertions = total.insertions;
  report.deletions = total.deletions;
  report.ref_tokens = total.ref_tokens;
  report.wer = total.wer();
  return report;
}

WerReport estimate_baseline_wer(std::span<const RefHyp> pairs, std::size_t sample_n, std::uint64_t seed,
                                const ScoringOptions& options) {
  require(!pairs.empty(), ErrorCode::kEmptyCorpus, "no utterances to score");
  std::vector<std::string> refs, hyps;
  for (std::size_t i : sample_indices(pairs.size(), sample_n, seed)) {
    refs.push_back(pairs[i].ref);
    hyps.push_back(pairs[i].hyp);
  }
  return compute_wer(refs, hyps, options);
}

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace

std::vector<RefHyp> read_parallel_text(const std::filesystem::path& ref_path, const std::filesystem::path& hyp_path) {
  const auto refs = read_lines(ref_path);
  const auto hyps = read_lines(hyp_path);
  require(refs.size() == hyps.size(), ErrorCode::kInvalidArgument,
          "line count mismatch: " + std::to_string(refs.size()) + " references vs " + std::to_string(hyps.size()) +
              " hypotheses");
  std::vector<RefHyp> pairs;
  for (std::size_t i = 0; i < refs.size(); ++i) pairs.push_back({refs[i], hyps[i]});
  return pairs;
}

std::vector<RefHyp> read_pairs_jsonl(const std::filesystem::path& path) {
  std::vector<RefHyp> pairs;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      pairs.push_back({j.at("ref").get<std::string>(), j.at("hyp").get<std::string>()});
    } catch (const json::exception& e) {
      fail(ErrorCode::kParseError, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return pairs;
}

}  // namespace asrda::eval
