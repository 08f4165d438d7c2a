#include "asrda/lr/file_bridge.hpp"

#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "asrda/error.hpp"

namespace asrda::lr {
namespace {

// Complete (newline-terminated, non-blank) lines only; a writer may be mid-line.
std::vector<std::string> complete_lines(const std::filesystem::path& path) {
  std::vector<std::string> lines;
  std::ifstream in(path, std::ios::binary);
  if (!in) return lines;
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t start = 0;
  for (std::size_t nl = text.find('\n'); nl != std::string::npos; nl = text.find('\n', start)) {
    std::string line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) lines.push_back(std::move(line));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

FileBridgeTrainer::FileBridgeTrainer(FileBridgeOptions options) : options_(std::move(options)) {
  require(!options_.command_file.empty() && !options_.result_file.empty(), ErrorCode::kInvalidArgument,
          "file bridge needs command and result paths");
  require(options_.poll_interval.count() > 0, ErrorCode::kInvalidArgument, "poll interval must be positive");
  consumed_ = complete_lines(options_.result_file).size();
}

FileBridgeTrainer::Reply FileBridgeTrainer::exchange(double eta, std::size_t steps) {
  {
    std::ofstream out(options_.command_file, std::ios::app | std::ios::binary);
    require(static_cast<bool>(out), ErrorCode::kIo, "cannot open " + options_.command_file.string());
    out << nlohmann::json{{"eta", eta}, {"steps", steps}}.dump() << '\n';
    out.flush();
    require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + options_.command_file.string());
  }
  const auto deadline = std::chrono::steady_clock::now() + options_.timeout;
  for (;;) {
    auto lines = complete_lines(options_.result_file);
    if (lines.size() > consumed_) {
      const std::string& line = lines[consumed_];
      ++consumed_;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::kParseError, "bad result line " + std::to_string(consumed_) + ": " + e.what());
      }
      require(j.is_object() && j.contains("wer") && j["wer"].is_number(), ErrorCode::kParseError,
              "result line " + std::to_string(consumed_) + " lacks a numeric \"wer\"");
      Reply reply{std::nullopt, j["wer"].get<double>()};
      if (j.contains("loss") && j["loss"].is_number()) reply.loss = j["loss"].get<double>();
      return reply;
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      fail(ErrorCode::kTimeout, "no result in " + options_.result_file.string() + " after " +
                                    std::to_string(options_.timeout.count()) + " ms");
    }
    std::this_thread::sleep_for(options_.poll_interval);
  }
}

double FileBridgeTrainer::train_steps(std::size_t n, double eta) {
  require(n > 0, ErrorCode::kInvalidArgument, "step count must be positive");
  const Reply reply = exchange(eta, n);
  require(reply.loss.has_value(), ErrorCode::kParseError, "training result lacks a numeric \"loss\"");
  last_eta_ = eta;
  last_wer_ = reply.wer;
  return *reply.loss;
}

double FileBridgeTrainer::evaluate() {
  if (last_wer_) return *last_wer_;
  last_wer_ = exchange(last_eta_, 0).wer;
  return *last_wer_;
}

}  // namespace asrda::lr
