// asrda: corpus profiling, profile-driven augmentation, WER scoring and
// learning-rate control from the command line.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "asrda/augment/assets.hpp"
#include "asrda/augment/chain.hpp"
#include "asrda/augment/plan.hpp"
#include "asrda/error.hpp"
#include "asrda/eval/wer.hpp"
#include "asrda/lr/adaptation.hpp"
#include "asrda/lr/schedule.hpp"
#include "asrda/lr/sim_config.hpp"
#include "asrda/lr/synthetic_trainer.hpp"
#include "asrda/parallel.hpp"
#include "asrda/profile/manifest.hpp"
#include "asrda/profile/profiler.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOperational = 1;
constexpr int kExitUsage = 2;

// Bad flags or flag combinations detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void print_stat_row(const std::string& name, const asrda::profile::StatBlock& s) {
  std::printf("%-22s %12.4f %12.4f %12.4f %12.4f\n", name.c_str(), s.mean, s.std, s.min, s.max);
}

void print_histogram(const std::string& name, const asrda::profile::Histogram& h) {
  std::printf("%-22s", name.c_str());
  for (const auto& [value, count] : h) std::printf(" %d:%zu", value, count);
  std::printf("\n");
}

// ---------------------------------------------------------------- profile

struct ProfileArgs {
  std::string input;
  std::string out;
  std::optional<std::size_t> sample;
  std::uint64_t seed = 0;
  std::size_t jobs = 0;
};

int run_profile(const ProfileArgs& a) {
  namespace pf = asrda::profile;
  const auto manifest = pf::load_manifest(a.input);
  pf::ProfileOptions opts;
  opts.sample_limit = a.sample;
  opts.seed = a.seed;
  opts.jobs = a.jobs;
  const auto result = pf::profile_corpus(manifest, opts);
  for (const auto& s : result.skipped) std::cerr << "skipped " << s.path << ": " << s.reason << '\n';
  pf::write_profile(a.out, result.profile);

  const auto& p = result.profile;
  std::printf("analyzed %zu of %zu files (%zu skipped)\n", result.analyzed.size(), result.considered,
              result.skipped.size());
  print_histogram("sample_rate", p.sample_rates);
  print_histogram("bit_depth", p.bit_depths);
  print_histogram("channels", p.channel_counts);
  std::printf("%-22s %12s %12s %12s %12s\n", "metric", "mean", "std", "min", "max");
  print_stat_row("snr_db", p.snr_db);
  print_stat_row("lufs", p.lufs);
  print_stat_row("spectral_centroid_hz", p.spectral_centroid_hz);
  print_stat_row("spectral_rolloff_hz", p.spectral_rolloff_hz);
  std::printf("profile written to %s\n", a.out.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------- augment

struct AugmentArgs {
  std::string profile;
  std::string preset;
  bool eight_bit = false;
  std::string input;
  std::string out_dir;
  std::string noise_dir;
  std::string rir_dir;
  std::uint64_t seed = 0;
  std::size_t jobs = 0;
};

int run_augment(const AugmentArgs& a) {
  namespace ag = asrda::augment;
  if (!a.preset.empty() && a.preset != "telephony") throw UsageError("unknown preset '" + a.preset + "'");
  if (a.preset.empty() && a.profile.empty()) throw UsageError("--profile is required unless --preset is given");
  if (a.eight_bit && a.preset.empty()) throw UsageError("--telephony-8bit requires --preset telephony");

  const auto sources = asrda::profile::load_manifest(a.input);
  if (sources.empty()) asrda::fail(asrda::ErrorCode::kEmptyCorpus, "no input files in " + a.input);
  sources.validate();

  auto opt_path = [](const std::string& s) -> std::optional<std::filesystem::path> {
    if (s.empty()) return std::nullopt;
    return s;
  };
  const auto bank = ag::AssetBank::load(opt_path(a.rir_dir), opt_path(a.noise_dir));

  std::vector<ag::PlanEntry> plan;
  if (!a.preset.empty()) {
    plan = ag::sample_plan(ag::telephony_preset({a.eight_bit}), sources, bank, a.seed);
  } else {
    plan = ag::sample_plan(asrda::profile::read_profile(a.profile), sources, bank, a.seed);
  }

  const auto summary = ag::augment_corpus(plan, bank, a.out_dir, a.jobs);
  for (const auto& e : summary.errors) std::cerr << "failed: " << e << '\n';
  std::printf("augmented %zu files, %zu failed; report: %s\n", summary.succeeded, summary.failed,
              (std::filesystem::path(a.out_dir) / ag::kReportFileName).string().c_str());
  return summary.succeeded > 0 ? kExitOk : kExitOperational;
}

// ---------------------------------------------------------------- wer

struct WerArgs {
  std::string ref;
  std::string hyp;
  std::string pairs;
  std::string mode = "word";
  bool normalize = false;
  std::optional<std::size_t> sample;
  std::uint64_t seed = 0;
  std::string out;
  bool per_utterance = false;
};

int run_wer(const WerArgs& a) {
  namespace ev = asrda::eval;
  const bool text_input = !a.ref.empty() || !a.hyp.empty();
  if (text_input == !a.pairs.empty()) throw UsageError("give either --ref and --hyp, or --pairs");
  if (text_input && (a.ref.empty() || a.hyp.empty())) throw UsageError("--ref and --hyp go together");

  ev::ScoringOptions opts;
  opts.mode = a.mode == "char" ? ev::TokenMode::kChar : ev::TokenMode::kWord;
  opts.normalize = a.normalize;
  const auto pairs = text_input ? ev::read_parallel_text(a.ref, a.hyp) : ev::read_pairs_jsonl(a.pairs);

  ev::WerReport report;
  if (a.sample) {
    report = ev::estimate_baseline_wer(pairs, *a.sample, a.seed, opts);
  } else {
    std::vector<std::string> refs, hyps;
    for (const auto& p : pairs) {
      refs.push_back(p.ref);
      hyps.push_back(p.hyp);
    }
    report = ev::compute_wer(refs, hyps, opts);
  }
  for (const auto& u : report.per_utterance) {
    if (u.empty_reference) std::cerr << "utterance " << u.index << " has an empty reference; excluded\n";
  }

  nlohmann::json full = report;
  if (!a.out.empty()) {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) asrda::fail(asrda::ErrorCode::kIo, "cannot write " + a.out);
    out << full.dump(2) << '\n';
  }
  if (!a.per_utterance) full.erase("per_utterance");
  std::cout << full.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- lr-init / lr-next

struct BoundsArgs {
  std::string family = "encoder_decoder";
  std::optional<double> eta_min;
  std::optional<double> eta_max;
};

asrda::lr::LrBounds make_bounds(const BoundsArgs& a) {
  namespace lr = asrda::lr;
  lr::ModelFamily family;
  try {
    family = lr::parse_family(a.family);
  } catch (const asrda::Error& e) {
    throw UsageError(e.what());
  }
  const auto d = lr::LrBounds::defaults(family);
  try {
    return lr::LrBounds(a.eta_min.value_or(d.eta_min()), a.eta_max.value_or(d.eta_max()), family);
  } catch (const asrda::Error& e) {
    throw UsageError(e.what());
  }
}

void print_bounds(const asrda::lr::LrBounds& b, double sigma_ref) {
  std::printf("family: %s\n", std::string(asrda::lr::to_string(b.family())).c_str());
  std::printf("eta_min: %s\n", num(b.eta_min()).c_str());
  std::printf("eta_max: %s\n", num(b.eta_max()).c_str());
  std::printf("sigma_ref: %s\n", num(sigma_ref).c_str());
}

struct LrInitArgs {
  BoundsArgs bounds;
  std::optional<double> wer0;
};

int run_lr_init(const LrInitArgs& a) {
  namespace lr = asrda::lr;
  const auto bounds = make_bounds(a.bounds);
  double eta = 0.0;
  if (bounds.family() == lr::ModelFamily::kLlm) {
    if (!a.wer0) throw UsageError("--wer0 is required for the llm family");
    if (*a.wer0 < 0.0) throw UsageError("--wer0 must be non-negative");
    eta = lr::initial_lr_llm(*a.wer0, bounds);
  } else {
    eta = lr::initial_lr_encdec(bounds);
  }
  print_bounds(bounds, lr::kDefaultSigmaRef);
  if (a.wer0) std::printf("wer0: %s\n", num(*a.wer0).c_str());
  std::printf("eta: %s\n", num(eta).c_str());
  return kExitOk;
}

struct LrNextArgs {
  BoundsArgs bounds;
  std::vector<double> wers;
  std::string wers_file;
  double sigma_ref = asrda::lr::kDefaultSigmaRef;
};

std::vector<double> read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) asrda::fail(asrda::ErrorCode::kIo, "cannot read " + path);
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    for (char& c : token) {
      if (c == ',') c = ' ';
    }
    std::istringstream parts(token);
    std::string part;
    while (parts >> part) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        asrda::fail(asrda::ErrorCode::kParseError, "not a number in " + path + ": '" + part + "'");
      }
    }
  }
  return values;
}

int run_lr_next(const LrNextArgs& a) {
  namespace lr = asrda::lr;
  const auto bounds = make_bounds(a.bounds);
  if (!(a.sigma_ref > 0.0)) throw UsageError("--sigma-ref must be positive");
  std::vector<double> wers = a.wers;
  if (!a.wers_file.empty()) {
    const auto more = read_numbers(a.wers_file);
    wers.insert(wers.end(), more.begin(), more.end());
  }
  if (wers.size() < 2) throw UsageError("need at least two WER values");
  const double sigma = lr::sample_std(wers);
  print_bounds(bounds, a.sigma_ref);
  std::printf("sigma_wer: %s\n", num(sigma).c_str());
  std::printf("eta_next: %s\n", num(lr::lr_from_sigma(sigma, a.sigma_ref, bounds)).c_str());
  return kExitOk;
}

// ---------------------------------------------------------------- schedule-sim

struct SimArgs {
  std::string config;
  std::string trajectory;
  std::string summary;
};

int run_schedule_sim(const SimArgs& a) {
  namespace lr = asrda::lr;
  lr::SimulationConfig cfg;
  try {
    cfg = lr::load_simulation_config(a.config);
  } catch (const asrda::Error& e) {
    throw UsageError(a.config + ": " + e.what());
  }
  if (!a.trajectory.empty()) cfg.trajectory_path = a.trajectory;
  if (!a.summary.empty()) cfg.summary_path = a.summary;

  lr::SyntheticTrainer trainer(cfg.trainer);
  const auto result = lr::run_adaptation(trainer, cfg.scheduler);
  lr::write_trajectory_csv(result, cfg.trajectory_path);
  lr::write_summary_json(result, cfg.summary_path);

  const auto& best = result.best();
  std::printf("cycles: %zu, evaluations: %zu, stopped: %s\n", result.cycles.size(), result.trajectory.size(),
              result.stopped_reason.c_str());
  std::printf("best step: %zu, best WER: %s\n", best.step, num(best.wer).c_str());
  std::printf("final eta: %s\n", num(result.final_eta).c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ASR domain adaptation toolkit: profiling, augmentation, WER and learning-rate control"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "asrda 0.1.0");
  std::function<int()> action;
  const std::string jobs_help = std::string("worker threads (default: $") + asrda::kJobsEnvVar + " or all cores)";

  ProfileArgs pa;
  auto* profile = app.add_subcommand("profile", "Profile a corpus (manifest JSONL or directory of WAVs)");
  profile->add_option("-i,--input", pa.input, "manifest JSONL or directory")->required();
  profile->add_option("-o,--out", pa.out, "output profile JSON")->required();
  profile->add_option("--sample", pa.sample, "analyze a seeded subset of N files")->check(CLI::PositiveNumber);
  profile->add_option("--seed", pa.seed, "subset sampling seed");
  profile->add_option("-j,--jobs", pa.jobs, jobs_help)->check(CLI::NonNegativeNumber);
  profile->callback([&] { action = [&] { return run_profile(pa); }; });

  AugmentArgs aa;
  auto* augment = app.add_subcommand("augment", "Augment a corpus toward a target profile or preset");
  augment->add_option("-p,--profile", aa.profile, "target profile JSON");
  augment->add_option("--preset", aa.preset, "fixed recipe instead of a profile")
      ->check(CLI::IsMember({"telephony"}));
  augment->add_flag("--telephony-8bit", aa.eight_bit, "telephony preset with 8-bit output");
  augment->add_option("-i,--input", aa.input, "source manifest JSONL or directory")->required();
  augment->add_option("-o,--out-dir", aa.out_dir, "output root")->required();
  augment->add_option("--noise-dir", aa.noise_dir, "directory of noise WAVs")->check(CLI::ExistingDirectory);
  augment->add_option("--rir-dir", aa.rir_dir, "directory of room impulse response WAVs")
      ->check(CLI::ExistingDirectory);
  augment->add_option("--seed", aa.seed, "master seed");
  augment->add_option("-j,--jobs", aa.jobs, jobs_help)->check(CLI::NonNegativeNumber);
  augment->callback([&] { action = [&] { return run_augment(aa); }; });

  WerArgs wa;
  auto* wer = app.add_subcommand("wer", "Score hypotheses against references");
  wer->add_option("--ref", wa.ref, "reference text, one utterance per line");
  wer->add_option("--hyp", wa.hyp, "hypothesis text, one utterance per line");
  wer->add_option("--pairs", wa.pairs, "JSONL of {\"ref\", \"hyp\"} objects");
  wer->add_option("--mode", wa.mode, "word or char tokens")->check(CLI::IsMember({"word", "char"}));
  wer->add_flag("--normalize", wa.normalize, "lowercase and strip punctuation");
  wer->add_option("--sample", wa.sample, "score a seeded subset of N utterances")->check(CLI::PositiveNumber);
  wer->add_option("--seed", wa.seed, "subset sampling seed");
  wer->add_option("-o,--out", wa.out, "write the full JSON report here");
  wer->add_flag("--per-utterance", wa.per_utterance, "include per-utterance counts on stdout");
  wer->callback([&] { action = [&] { return run_wer(wa); }; });

  auto add_bounds = [](CLI::App* cmd, BoundsArgs& b) {
    cmd->add_option("--family", b.family, "encoder_decoder (enc-dec) or llm");
    cmd->add_option("--eta-min", b.eta_min, "lower learning-rate bound");
    cmd->add_option("--eta-max", b.eta_max, "upper learning-rate bound");
  };

  LrInitArgs ia;
  auto* lr_init = app.add_subcommand("lr-init", "Initial learning rate for a model family");
  add_bounds(lr_init, ia.bounds);
  lr_init->add_option("--wer0", ia.wer0, "baseline WER in percent (llm family)");
  lr_init->callback([&] { action = [&] { return run_lr_init(ia); }; });

  LrNextArgs na;
  auto* lr_next = app.add_subcommand("lr-next", "Next-cycle learning rate from intra-cycle WERs");
  add_bounds(lr_next, na.bounds);
  lr_next->add_option("--wers", na.wers, "comma-separated WER percents")->delimiter(',');
  lr_next->add_option("--wers-file", na.wers_file, "file of WER percents")->check(CLI::ExistingFile);
  lr_next->add_option("--sigma-ref", na.sigma_ref, "reference deviation in percentage points");
  lr_next->callback([&] { action = [&] { return run_lr_next(na); }; });

  SimArgs sa;
  auto* sim = app.add_subcommand("schedule-sim", "Run the learning-rate controller against a synthetic trainer");
  sim->add_option("-c,--config", sa.config, "TOML config")->required()->check(CLI::ExistingFile);
  sim->add_option("--trajectory", sa.trajectory, "trajectory CSV (overrides the config)");
  sim->add_option("--summary", sa.summary, "summary JSON (overrides the config)");
  sim->callback([&] { action = [&] { return run_schedule_sim(sa); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const asrda::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOperational;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOperational;
  }
}
