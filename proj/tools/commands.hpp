#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "synclift/tolerances.hpp"

namespace synclift::cli {

/// Stable across subcommands.
enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 2,
  kUsage = 64,
  kMalformedInput = 65,
};

enum class Format { json, csv };

struct RunConfig {
  std::uint64_t seed = 0;
  Tolerances tol;
  std::filesystem::path output_dir = ".";
  Format format = Format::json;
  unsigned threads = 1;
};

/// Thrown for argument combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerifyBoundArgs {
  int trials = 1000;
  std::string dims = "1..16";
  bool force_half = false;
};

struct RoundArgs {
  std::filesystem::path input;
  std::string mode = "pad_last";
  std::string state = "trace";  // "trace" or a path to a density matrix JSON
};

struct CorrelateArgs {
  std::filesystem::path rep;
  std::filesystem::path trace;  // empty: normalized trace
};

struct PipelineArgs {
  std::filesystem::path sequence;
  std::filesystem::path target;
  std::string metric = "sup";
};

struct GameArgs {
  std::filesystem::path game;
  std::filesystem::path table;
  bool classical = false;
  bool seesaw = false;
  int dim = 0;  // 0: number of answers
  int iters = 200;
};

struct GenerateArgs {
  std::string kind;
  int dim = 4;
  int questions = 2;
  int answers = 2;
  double eps = 0.05;
  int levels = 12;
  bool amplify = false;
  std::vector<int> function;
};

/// Parses "1..16" or "1,2,4" into a list of positive dims.
std::vector<long> parse_dims(const std::string& spec);

int cmd_verify_bound(const RunConfig& cfg, const VerifyBoundArgs& args);
int cmd_round(const RunConfig& cfg, const RoundArgs& args);
int cmd_correlate(const RunConfig& cfg, const CorrelateArgs& args);
int cmd_pipeline(const RunConfig& cfg, const PipelineArgs& args);
int cmd_game(const RunConfig& cfg, const GameArgs& args);
int cmd_generate(const RunConfig& cfg, const GenerateArgs& args);

}  // namespace synclift::cli
