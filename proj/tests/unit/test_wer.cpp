#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "asrda/error.hpp"
#include "asrda/eval/tokenize.hpp"
#include "asrda/eval/wer.hpp"
#include "asrda/sampling.hpp"
#include "test_support.hpp"
#include "wer_oracle.hpp"

using namespace asrda;
using namespace asrda::eval;
using Catch::Approx;

namespace {

std::vector<std::string> strings(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

std::string join(const std::vector<int>& tokens) {
  std::string s;
  for (int t : tokens) {
    if (!s.empty()) s += ' ';
    s += static_cast<char>('a' + t);
  }
  return s;
}

}  // namespace

TEST_CASE("tokenize examples", "[tokenize]") {
  REQUIRE(tokenize("Hello, world", TokenMode::kWord, true) == strings({"hello", "world"}));
  REQUIRE(tokenize("Hello, world", TokenMode::kWord, false) == strings({"Hello,", "world"}));
  REQUIRE(tokenize("你好吗", TokenMode::kChar, false) == strings({"你", "好", "吗"}));
  REQUIRE(tokenize("", TokenMode::kWord, true).empty());
  REQUIRE(tokenize("", TokenMode::kChar, true).empty());
  REQUIRE(tokenize("  a\t b \n", TokenMode::kWord, false) == strings({"a", "b"}));
  REQUIRE(tokenize("(Don't) [stop]!", TokenMode::kWord, true) == strings({"dont", "stop"}));
  REQUIRE(tokenize("ab c", TokenMode::kChar, false) == strings({"a", "b", "c"}));
  // Combining sequence and its precomposed form agree after NFC; a cluster stays whole.
  REQUIRE(tokenize("e\xCC\x81", TokenMode::kChar, false) == strings({"\xC3\xA9"}));
  REQUIRE(tokenize("\xF0\x9F\x91\x8D\xF0\x9F\x8F\xBD", TokenMode::kChar, false).size() == 1);
  REQUIRE(tokenize("ÉCOLE", TokenMode::kWord, true) == strings({"école"}));
}

TEST_CASE("compute_wer examples", "[wer]") {
  const std::vector<std::string> r1{"a b c d"}, h1{"a x c"};
  const auto w = compute_wer(r1, h1);
  REQUIRE(w.substitutions == 1);
  REQUIRE(w.deletions == 1);
  REQUIRE(w.insertions == 0);
  REQUIRE(w.wer == 50.0);

  const std::vector<std::string> same{"the cat sat", "on the mat"};
  REQUIRE(compute_wer(same, same).wer == 0.0);

  const std::vector<std::string> r3{"a"}, h3{"a b c"};
  const auto w3 = compute_wer(r3, h3);
  REQUIRE(w3.insertions == 2);
  REQUIRE(w3.wer == 200.0);

  const std::vector<std::string> r4{"a b c"}, h4{""};
  REQUIRE(compute_wer(r4, h4).wer == 100.0);
  REQUIRE(compute_wer(r4, h4).deletions == 3);
}

TEST_CASE("compute_wer errors and empty references", "[wer]") {
  const std::vector<std::string> two{"a", "b"}, one{"a"};
  try {
    compute_wer(two, one);
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::kInvalidArgument);
  }
  const std::vector<std::string> refs{"a b", "", "c"}, hyps{"a b", "x", "d"};
  const auto w = compute_wer(refs, hyps);
  REQUIRE(w.empty_references == 1);
  REQUIRE(w.per_utterance[1].empty_reference);
  REQUIRE(w.ref_tokens == 3);
  REQUIRE(w.substitutions == 1);
  REQUIRE(w.insertions == 0);
  const std::vector<std::string> empties{"", " . "}, hyps2{"a", "b"};
  try {
    compute_wer(empties, hyps2, {TokenMode::kWord, true, true});
    FAIL("expected EmptyReference");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::kEmptyReference);
  }
}

TEST_CASE("alignment equals the independent oracle on random sequences", "[wer][property]") {
  std::mt19937_64 gen(20240611);
  std::uniform_int_distribution<int> len(0, 12), sym(0, 4);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 12000; ++trial) {
    std::vector<int> ref(len(gen)), hyp(len(gen));
    for (auto& t : ref) t = sym(gen);
    for (auto& t : hyp) t = sym(gen);
    const auto got = align<int>(ref, hyp);
    const auto want = test::oracle_align(ref, hyp);
    const bool same = got.substitutions == want.s && got.insertions == want.i && got.deletions == want.d;
    if (!same) ++mismatches;
    // Report-level path: compute_wer on the same tokens as text.
    if (!ref.empty() && trial % 10 == 0) {
      const std::vector<std::string> r{join(ref)}, h{join(hyp)};
      const auto w = compute_wer(r, h);
      REQUIRE(w.substitutions + w.insertions + w.deletions == want.s + want.i + want.d);
      REQUIRE(w.wer == Approx(100.0 * (want.s + want.i + want.d) / ref.size()));
      REQUIRE(w.wer <= 100.0 * (ref.size() + hyp.size()) / ref.size());
    }
  }
  REQUIRE(mismatches == 0);
}

TEST_CASE("alignment equals the oracle on every short pair", "[wer][property]") {
  // All sequences of length <= 4 over a 3-symbol alphabet.
  std::vector<std::vector<int>> all{{}};
  for (std::size_t l = 1; l <= 4; ++l) {
    std::vector<int> seq(l, 0);
    for (;;) {
      all.push_back(seq);
      std::size_t k = 0;
      while (k < l && ++seq[k] == 3) seq[k++] = 0;
      if (k == l) break;
    }
  }
  REQUIRE(all.size() == 1 + 3 + 9 + 27 + 81);
  for (const auto& r : all) {
    for (const auto& h : all) {
      const auto got = align<int>(r, h);
      const auto want = test::oracle_align(r, h);
      REQUIRE(got.substitutions == want.s);
      REQUIRE(got.insertions == want.i);
      REQUIRE(got.deletions == want.d);
      REQUIRE(got.substitutions + got.deletions <= r.size());
    }
  }
}

TEST_CASE("identity and all-deletion properties", "[wer][property]") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> x(1 + trial % 12);
    for (auto& t : x) t = static_cast<int>(gen() % 5);
    REQUIRE(align<int>(x, x).errors() == 0);
    const auto del = align<int>(x, std::vector<int>{});
    REQUIRE(del.deletions == x.size());
    REQUIRE(del.wer() == 100.0);
  }
}

TEST_CASE("micro-average over concatenated corpora", "[wer][property]") {
  const std::vector<std::string> r1{"a b c", "d e"}, h1{"a c", "d e f g"};
  const std::vector<std::string> r2{"x y z w"}, h2{"x q z"};
  std::vector<std::string> r12 = r1, h12 = h1;
  r12.insert(r12.end(), r2.begin(), r2.end());
  h12.insert(h12.end(), h2.begin(), h2.end());
  const auto a = compute_wer(r1, h1), b = compute_wer(r2, h2), ab = compute_wer(r12, h12);
  const double expected =
      100.0 * double(a.totals().errors() + b.totals().errors()) / double(a.ref_tokens + b.ref_tokens);
  REQUIRE(ab.wer == Approx(expected));
  EditCounts sum;
  for (const auto& u : ab.per_utterance) sum += u.counts;
  REQUIRE(sum == ab.totals());
}

TEST_CASE("baseline WER over a seeded sample", "[wer][baseline]") {
  std::vector<RefHyp> pairs;
  for (int i = 0; i < 50; ++i) {
    // Utterance i has i % 4 substitutions out of 4 tokens.
    std::string hyp;
    for (int k = 0; k < 4; ++k) hyp += (k < i % 4 ? "z " : "w ");
    pairs.push_back({"w w w w", hyp});
  }
  std::vector<std::string> refs, hyps;
  for (const auto& p : pairs) {
    refs.push_back(p.ref);
    hyps.push_back(p.hyp);
  }
  REQUIRE(estimate_baseline_wer(pairs, 200, 1).wer == compute_wer(refs, hyps).wer);

  const auto a = estimate_baseline_wer(pairs, 10, 99);
  REQUIRE(a.wer == estimate_baseline_wer(pairs, 10, 99).wer);
  std::size_t errors = 0;
  for (auto i : sample_indices(pairs.size(), 10, 99)) errors += i % 4;
  REQUIRE(a.num_utterances == 10);
  REQUIRE(a.wer == Approx(100.0 * errors / 40.0));

  try {
    estimate_baseline_wer(std::vector<RefHyp>{}, 200, 1);
    FAIL("expected EmptyCorpus");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::kEmptyCorpus);
  }
}

TEST_CASE("reading parallel text and JSONL pairs", "[wer][io]") {
  test::TempDir dir;
  test::write_text(dir / "ref.txt", "a b c\nd e\n");
  test::write_text(dir / "hyp.txt", "a b\nd e\n");
  const auto p = read_parallel_text(dir / "ref.txt", dir / "hyp.txt");
  REQUIRE(p.size() == 2);
  REQUIRE(p[0].hyp == "a b");
  test::write_text(dir / "short.txt", "a b\n");
  REQUIRE_THROWS_AS(read_parallel_text(dir / "ref.txt", dir / "short.txt"), Error);
  test::write_text(dir / "pairs.jsonl", "{\"ref\": \"a b\", \"hyp\": \"a\"}\n{\"ref\": \"c\", \"hyp\": \"c\"}\n");
  REQUIRE(read_pairs_jsonl(dir / "pairs.jsonl").size() == 2);
  test::write_text(dir / "bad.jsonl", "{\"ref\": \"a b\"}\n");
  REQUIRE_THROWS_AS(read_pairs_jsonl(dir / "bad.jsonl"), Error);
}

TEST_CASE("report JSON carries counts", "[wer]") {
  const std::vector<std::string> r{"a b c d"}, h{"a x c"};
  const nlohmann::json j = compute_wer(r, h);
  REQUIRE(j["substitutions"] == 1);
  REQUIRE(j["deletions"] == 1);
  REQUIRE(j["wer"] == 50.0);
  REQUIRE(j["per_utterance"].size() == 1);
}
