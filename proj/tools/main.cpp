#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "synclift/errors.hpp"

using namespace synclift::cli;

namespace {

unsigned threads_from_env() {
  const char* value = std::getenv("SYNC_LIFT_THREADS");
  if (value == nullptr) return 1;
  const long n = std::strtol(value, nullptr, 10);
  return n >= 1 ? static_cast<unsigned>(n) : 1u;
}

int exit_code_for(synclift::ErrorCode code) {
  switch (code) {
    case synclift::ErrorCode::MalformedInput:
      return kMalformedInput;
    case synclift::ErrorCode::InvalidArgument:
    case synclift::ErrorCode::SearchSpaceTooLarge:
      return kUsage;
    default:
      return kValidationFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Round approximate PVMs, extract synchronous correlations, evaluate games"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "json";
  app.add_option("--seed", cfg.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--out", cfg.output_dir, "Output directory")->capture_default_str();
  app.add_option("--format", format, "Primary output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  for (const char* name : {"herm", "eig", "proj", "pos", "psd", "trace", "thresh", "corr"}) {
    app.add_option_function<double>(
           std::string("--tol.") + name,
           [&cfg, name](double v) { cfg.tol.set(name, v); }, "Tolerance override")
        ->check(CLI::PositiveNumber);
  }

  VerifyBoundArgs verify;
  auto* verify_cmd = app.add_subcommand("verify-bound", "Check ||a - p(a)||_phi <= 2 ||a^2 - a||_phi on random inputs");
  verify_cmd->add_option("--trials", verify.trials)->capture_default_str();
  verify_cmd->add_option("--dims", verify.dims, "Range lo..hi or comma list")->capture_default_str();
  verify_cmd->add_flag("--force-half", verify.force_half, "Use a = I/2 for every trial");

  RoundArgs round;
  auto* round_cmd = app.add_subcommand("round", "Round a rep of positive tuples, or a sequence of them, to exact PVMs");
  round_cmd->add_option("input", round.input)->required()->check(CLI::ExistingFile);
  round_cmd->add_option("--mode", round.mode)->check(CLI::IsMember({"pad_last", "report_only"}))->capture_default_str();
  round_cmd->add_option("--state", round.state, "'trace' or a density matrix JSON file")->capture_default_str();

  CorrelateArgs correlate;
  auto* correlate_cmd = app.add_subcommand("correlate", "Synchronous correlation table of a rep under a tracial state");
  correlate_cmd->add_option("rep", correlate.rep)->required()->check(CLI::ExistingFile);
  correlate_cmd->add_option("--trace", correlate.trace, "TraceSpec JSON (default: normalized trace)")->check(CLI::ExistingFile);

  PipelineArgs pipeline;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "Lift a sequence indexwise and track correlation distance to a target");
  pipeline_cmd->add_option("sequence", pipeline.sequence)->required()->check(CLI::ExistingFile);
  pipeline_cmd->add_option("target", pipeline.target)->required()->check(CLI::ExistingFile);
  pipeline_cmd->add_option("--metric", pipeline.metric)->check(CLI::IsMember({"sup", "l1"}))->capture_default_str();

  GameArgs game;
  auto* game_cmd = app.add_subcommand("game", "Evaluate a synchronous game");
  game_cmd->add_option("game", game.game)->required()->check(CLI::ExistingFile);
  game_cmd->add_option("--table", game.table, "Value of this correlation table")->check(CLI::ExistingFile);
  game_cmd->add_flag("--classical", game.classical, "Brute-force deterministic value");
  game_cmd->add_flag("--seesaw", game.seesaw, "Rounding-based local search");
  game_cmd->add_option("--dim", game.dim, "Seesaw dimension (default: answers)");
  game_cmd->add_option("--iters", game.iters)->capture_default_str();

  GenerateArgs generate;
  auto* generate_cmd = app.add_subcommand("generate", "Write seeded fixtures");
  generate_cmd->add_option("kind", generate.kind, "rep | perturbed | sequence | exact-sequence | deterministic | mub | games")
      ->required();
  generate_cmd->add_option("--dim", generate.dim)->capture_default_str();
  generate_cmd->add_option("--questions", generate.questions)->capture_default_str();
  generate_cmd->add_option("--answers", generate.answers)->capture_default_str();
  generate_cmd->add_option("--eps", generate.eps)->capture_default_str();
  generate_cmd->add_option("--levels", generate.levels)->capture_default_str();
  generate_cmd->add_flag("--amplify", generate.amplify, "Index n uses dim * n");
  generate_cmd->add_option("--function", generate.function, "Deterministic strategy f(0) f(1) ...");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsage;
  }
  cfg.format = format == "csv" ? Format::csv : Format::json;
  cfg.threads = threads_from_env();

  try {
    if (*verify_cmd) return cmd_verify_bound(cfg, verify);
    if (*round_cmd) return cmd_round(cfg, round);
    if (*correlate_cmd) return cmd_correlate(cfg, correlate);
    if (*pipeline_cmd) return cmd_pipeline(cfg, pipeline);
    if (*game_cmd) return cmd_game(cfg, game);
    if (*generate_cmd) return cmd_generate(cfg, generate);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const synclift::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}
