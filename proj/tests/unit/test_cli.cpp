#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <sys/wait.h>
#include <json.hpp>

#include "asrda/audio/wav.hpp"
#include "asrda/profile/profile.hpp"
#include "test_support.hpp"

using namespace asrda;
using Catch::Approx;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ASRDA_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

double field(const std::string& out, const std::string& key) {
  const auto pos = out.find(key + ": ");
  REQUIRE(pos != std::string::npos);
  return std::stod(out.substr(pos + key.size() + 2));
}

void make_corpus(const std::filesystem::path& dir, int files, int rate) {
  for (int i = 0; i < files; ++i) {
    auto x = test::gaussian(static_cast<std::size_t>(rate), 0.01, 100 + i);
    const auto tone = test::sine(200.0 + 100 * i, rate, 1.0, 0.3);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += tone[k] * (std::fmod(double(k) / rate, 0.5) < 0.3);
    audio::write_wav(dir / ("utt" + std::to_string(i) + ".wav"), audio::AudioBuffer(x, rate), 16);
  }
}

}  // namespace

TEST_CASE("help exits 0 for every subcommand", "[cli]") {
  REQUIRE(run("--help").code == 0);
  for (const char* sub : {"profile", "augment", "wer", "lr-init", "lr-next", "schedule-sim"}) {
    const auto r = run(std::string(sub) + " --help");
    INFO(sub);
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("--") != std::string::npos);
  }
  REQUIRE(run("").code == 2);
  REQUIRE(run("bogus").code == 2);
}

TEST_CASE("cli profile", "[cli]") {
  test::TempDir dir;
  make_corpus(dir / "corpus", 2, 16000);
  auto r = run("profile -i " + q(dir / "corpus") + " -o " + q(dir / "p.json"));
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("spectral_rolloff_hz") != std::string::npos);
  REQUIRE(profile::read_profile(dir / "p.json").num_files == 2);

  std::filesystem::create_directories(dir / "empty");
  REQUIRE(run("profile -i " + q(dir / "empty") + " -o " + q(dir / "e.json")).code == 1);
  REQUIRE(run("profile -o " + q(dir / "e.json")).code == 2);

  REQUIRE(run("profile --sample 1 --seed 7 -i " + q(dir / "corpus") + " -o " + q(dir / "s1.json")).code == 0);
  REQUIRE(run("profile --sample 1 --seed 7 -j 1 -i " + q(dir / "corpus") + " -o " + q(dir / "s2.json")).code == 0);
  REQUIRE(test::read_bytes(dir / "s1.json") == test::read_bytes(dir / "s2.json"));
}

TEST_CASE("cli augment", "[cli]") {
  test::TempDir dir;
  make_corpus(dir / "corpus", 3, 16000);
  REQUIRE(run("profile -i " + q(dir / "corpus") + " -o " + q(dir / "p.json")).code == 0);

  SECTION("profile-driven, deterministic, SNR within the profile range") {
    const auto args = " -p " + q(dir / "p.json") + " -i " + q(dir / "corpus") + " --seed 5 -o ";
    REQUIRE(run("augment" + args + q(dir / "o1")).code == 0);
    REQUIRE(run("augment -j 1" + args + q(dir / "o2")).code == 0);
    for (const char* f : {"utt0.wav", "utt1.wav", "utt2.wav", "augment_report.jsonl"}) {
      REQUIRE(test::read_bytes(dir / "o1" / f) == test::read_bytes(dir / "o2" / f));
    }
    const auto p = profile::read_profile(dir / "p.json");
    std::istringstream lines(test::read_text(dir / "o1/augment_report.jsonl"));
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
      const auto j = nlohmann::json::parse(line);
      const double snr = j["plan"]["target_snr_db"].get<double>();
      REQUIRE(snr >= p.snr_db.min);
      REQUIRE(snr <= p.snr_db.max);
      ++n;
    }
    REQUIRE(n == 3);
  }
  SECTION("telephony preset") {
    REQUIRE(run("augment --preset telephony -i " + q(dir / "corpus") + " -o " + q(dir / "tel")).code == 0);
    REQUIRE(audio::read_wav(dir / "tel/utt1.wav").sample_rate == 8000);
    REQUIRE(run("augment --preset telephony --telephony-8bit -i " + q(dir / "corpus") + " -o " + q(dir / "t8")).code ==
            0);
    REQUIRE(audio::read_wav(dir / "t8/utt1.wav").source_bit_depth == 8);
  }
  SECTION("usage and operational errors") {
    REQUIRE(run("augment -i " + q(dir / "corpus") + " -o " + q(dir / "x")).code == 2);
    REQUIRE(run("augment --preset radio -i " + q(dir / "corpus") + " -o " + q(dir / "x")).code == 2);
    test::write_text(dir / "bad.json", "{\"version\": 99}");
    REQUIRE(run("augment -p " + q(dir / "bad.json") + " -i " + q(dir / "corpus") + " -o " + q(dir / "x")).code == 1);
  }
}

TEST_CASE("cli wer", "[cli]") {
  test::TempDir dir;
  test::write_text(dir / "ref.txt", "a b c d\nhello world\n");
  test::write_text(dir / "hyp.txt", "a x c\nhello world\n");
  test::write_text(dir / "short.txt", "a b c d\n");
  auto r = run("wer --ref " + q(dir / "ref.txt") + " --hyp " + q(dir / "ref.txt"));
  REQUIRE(r.code == 0);
  REQUIRE(nlohmann::json::parse(r.out)["wer"] == 0.0);
  r = run("wer --ref " + q(dir / "ref.txt") + " --hyp " + q(dir / "hyp.txt") + " -o " + q(dir / "w.json"));
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["substitutions"] == 1);
  REQUIRE(j["deletions"] == 1);
  REQUIRE(j["wer"].get<double>() == Approx(100.0 * 2 / 6));
  REQUIRE(nlohmann::json::parse(test::read_text(dir / "w.json"))["per_utterance"].size() == 2);
  REQUIRE(run("wer --ref " + q(dir / "ref.txt") + " --hyp " + q(dir / "short.txt")).code == 1);
  REQUIRE(run("wer --ref " + q(dir / "ref.txt")).code == 2);

  test::write_text(dir / "pairs.jsonl", "{\"ref\": \"你好吗\", \"hyp\": \"你好\"}\n");
  r = run("wer --mode char --pairs " + q(dir / "pairs.jsonl"));
  REQUIRE(r.code == 0);
  REQUIRE(nlohmann::json::parse(r.out)["deletions"] == 1);
}

TEST_CASE("cli lr-init and lr-next", "[cli]") {
  auto r = run("lr-init --family llm --wer0 20.51");
  REQUIRE(r.code == 0);
  REQUIRE(field(r.out, "eta") == Approx(2.1305e-5).margin(1e-9));
  REQUIRE(field(run("lr-init --family llm --wer0 0").out, "eta") == 1e-6);
  r = run("lr-init --family enc-dec");
  REQUIRE(field(r.out, "eta") == Approx(1e-6).epsilon(1e-9));
  REQUIRE(field(r.out, "eta_min") == 1e-7);
  REQUIRE(field(r.out, "eta_max") == 1e-5);
  REQUIRE(field(r.out, "sigma_ref") == 0.5);
  REQUIRE(run("lr-init --family llm").code == 2);
  REQUIRE(run("lr-init --family llm --wer0 -3").code == 2);

  r = run("lr-next --wers 21.5,21.5,21.5");
  REQUIRE(r.code == 0);
  REQUIRE(field(r.out, "sigma_wer") == 0.0);
  REQUIRE(field(r.out, "eta_next") == 1e-5);
  r = run("lr-next --wers 20.0,20.5 --sigma-ref 0.5 --eta-min 1e-7 --eta-max 1e-5");
  REQUIRE(field(r.out, "sigma_wer") == Approx(0.3536).margin(1e-4));
  REQUIRE(field(r.out, "eta_next") == Approx(3.0e-6).margin(1e-8));
  REQUIRE(run("lr-next --wers 20.0").code == 2);
  REQUIRE(run("lr-next --wers 20,21 --eta-min 1e-3").code == 2);

  test::TempDir dir;
  test::write_text(dir / "w.txt", "20.0\n20.5\n");
  REQUIRE(field(run("lr-next --wers-file " + q(dir / "w.txt")).out, "sigma_wer") == Approx(0.3536).margin(1e-4));
}

TEST_CASE("cli schedule-sim", "[cli]") {
  test::TempDir dir;
  const std::filesystem::path configs = ASRDA_CONFIG_DIR;
  auto etas = [&](const std::string& name) {
    const auto csv = dir / (name + ".csv");
    const auto r = run("schedule-sim -c " + q(configs / ("schedule_" + name + ".toml")) + " --trajectory " + q(csv) +
                       " --summary " + q(dir / (name + ".json")));
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("best step") != std::string::npos);
    std::vector<double> per_cycle;
    std::istringstream lines(test::read_text(csv));
    std::string line;
    std::getline(lines, line);
    REQUIRE(line == "step,eta,loss,wer");
    int row = 0;
    while (std::getline(lines, line)) {
      const double eta = std::stod(line.substr(line.find(',') + 1));
      if (row++ % 10 == 0) per_cycle.push_back(eta);
    }
    return per_cycle;
  };
  const auto stable = etas("stable");
  REQUIRE(stable.size() >= 6);
  for (std::size_t j = 1; j < stable.size(); ++j) REQUIRE(stable[j] == 1e-5);
  const auto unstable = etas("unstable");
  REQUIRE(unstable[1] < unstable[0]);

  REQUIRE(run("schedule-sim -c " + q(dir / "missing.toml")).code == 2);
  test::write_text(dir / "bad.toml", "[scheduler]\neval_every = 33\n[trainer]\n");
  REQUIRE(run("schedule-sim -c " + q(dir / "bad.toml")).code == 2);
}
