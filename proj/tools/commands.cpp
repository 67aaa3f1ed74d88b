#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "synclift/correlations.hpp"
#include "synclift/experiments.hpp"
#include "synclift/games.hpp"
#include "synclift/io.hpp"
#include "synclift/lift.hpp"

namespace synclift::cli {

namespace {

using io::json;

void write_output(const RunConfig& cfg, const std::string& name, std::string_view contents) {
  io::write_file_atomic(cfg.output_dir / name, contents);
}

RoundingMode parse_mode(const std::string& mode) {
  if (mode == "pad_last") return RoundingMode::pad_last;
  if (mode == "report_only") return RoundingMode::report_only;
  throw UsageError("--mode must be pad_last or report_only");
}

TableMetric parse_metric(const std::string& metric) {
  if (metric == "sup") return TableMetric::sup;
  if (metric == "l1") return TableMetric::l1;
  throw UsageError("--metric must be sup or l1");
}

// Library contract violations caused by file contents are malformed input.
template <typename F>
auto from_file(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedInput) throw;
    throw Error(ErrorCode::MalformedInput, e.what());
  }
}

}  // namespace

std::vector<long> parse_dims(const std::string& spec) {
  std::vector<long> dims;
  auto parse_one = [&](const std::string& token) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || token.empty() || v < 1) throw UsageError("bad dimension '" + token + "' in --dims");
    return v;
  };
  if (const auto range = spec.find(".."); range != std::string::npos) {
    const long lo = parse_one(spec.substr(0, range));
    const long hi = parse_one(spec.substr(range + 2));
    if (hi < lo) throw UsageError("empty --dims range");
    for (long d = lo; d <= hi; ++d) dims.push_back(d);
    return dims;
  }
  std::stringstream ss(spec);
  for (std::string token; std::getline(ss, token, ',');) dims.push_back(parse_one(token));
  if (dims.empty()) throw UsageError("--dims is empty");
  return dims;
}

int cmd_verify_bound(const RunConfig& cfg, const VerifyBoundArgs& args) {
  if (args.trials < 1) throw UsageError("--trials must be >= 1");
  const auto parsed = parse_dims(args.dims);
  const std::vector<Eigen::Index> dims(parsed.begin(), parsed.end());
  const auto samples = run_bound_trials(args.trials, dims, cfg.seed, args.force_half);

  std::ostringstream csv;
  csv << "dim,seed,distance,bound,ratio\n";
  double max_ratio = 0;
  int violations = 0;
  for (const auto& s : samples) {
    csv << s.dim << ',' << s.seed << ',' << io::format_double(s.distance) << ','
        << io::format_double(s.bound) << ',' << io::format_double(s.ratio) << '\n';
    max_ratio = std::max(max_ratio, s.ratio);
    if (!(s.distance <= s.bound + cfg.tol.proj)) ++violations;
  }
  write_output(cfg, "verify_bound.csv", csv.str());

  // Half-identity witness at every requested dim.
  double worst_witness_gap = 0;
  for (Eigen::Index d : dims) {
    const Matrix half = Matrix::Identity(d, d) / 2.0;
    const State phi = State::normalized_trace(d);
    const Matrix p = spectral_projection_upper_half(half, cfg.tol);
    const double ratio = bound_ratio(state_two_norm(half - p, phi), 2.0 * state_two_norm(half * half - half, phi));
    worst_witness_gap = std::max(worst_witness_gap, std::abs(ratio - 1.0));
  }
  std::cout << "trials " << samples.size() << "\n"
            << "violations " << violations << "\n"
            << "max_ratio " << io::format_double(max_ratio) << "\n"
            << "half_identity_ratio_is_1 " << (worst_witness_gap <= 1e-12 ? "yes" : "no") << "\n";
  return violations == 0 ? kSuccess : kValidationFailure;
}

int cmd_round(const RunConfig& cfg, const RoundArgs& args) {
  const RoundingMode mode = parse_mode(args.mode);
  const json input = io::read_json_file(args.input);

  if (input.is_object() && input.contains("indices")) {
    if (args.state != "trace") throw UsageError("sequences are rounded under the normalized trace; drop --state");
    const auto seq = from_file([&] { return io::sequence_from_json(input); });
    const auto lifted = lift_sequence(seq, mode, cfg.tol, cfg.threads);
    json reps = json::array(), reports = json::array();
    std::string csv;
    bool all_valid = !lifted.empty();
    for (std::size_t n = 0; n < lifted.size(); ++n) {
      const auto& item = lifted[n];
      json per_question = json::array();
      for (const auto& r : item.reports) per_question.push_back(io::to_json(r));
      reports.push_back({{"index", n}, {"error", item.error}, {"questions", std::move(per_question)}});
      reps.push_back(item.ok() ? io::to_json(*item.rep) : json(nullptr));
      const std::string rows = io::defects_csv(item.reports, "index", std::to_string(n));
      csv += n == 0 ? rows : rows.substr(rows.find('\n') + 1);
      all_valid = all_valid && item.ok() && validate_player_rep(*item.rep, cfg.tol.proj).valid;
    }
    if (lifted.empty()) csv = io::defects_csv({}, "index", "");
    write_output(cfg, "rounded.json", io::dump({{"reps", std::move(reps)}}));
    write_output(cfg, "defects.json", io::dump({{"indices", std::move(reports)}}));
    write_output(cfg, "defects.csv", csv);
    std::cout << "indices " << lifted.size() << " valid " << (all_valid ? "yes" : "no") << "\n";
    return all_valid ? kSuccess : kValidationFailure;
  }

  // A single representation whose PVMs are (approximate) tuples.
  const PlayerRep approx = from_file([&] { return io::rep_from_json(input); });
  const State phi = args.state == "trace"
                        ? State::normalized_trace(approx.dim)
                        : from_file([&] { return State::from_density(io::matrix_from_json(io::read_json_file(args.state)), cfg.tol); });
  if (phi.dim() != approx.dim) throw Error(ErrorCode::MalformedInput, "state dim differs from rep dim");

  PlayerRep rounded{approx.dim, approx.questions, approx.answers, {}};
  std::vector<DefectReport> reports;
  for (const auto& tuple : as_tuples(approx)) {
    auto result = from_file([&] { return orthogonalize_tuple(tuple, phi, mode, cfg.tol); });
    rounded.pvms.push_back(PVM{std::move(result.projections)});
    reports.push_back(std::move(result.report));
  }
  json report_json = json::array();
  for (const auto& r : reports) report_json.push_back(io::to_json(r));
  const auto validation = validate_player_rep(rounded, cfg.tol.proj);
  write_output(cfg, "rounded.json", io::dump(io::to_json(rounded)));
  write_output(cfg, "defects.json", io::dump({{"questions", std::move(report_json)}, {"validation", io::to_json(validation)}}));
  write_output(cfg, "defects.csv", io::defects_csv(reports));
  std::cout << "valid " << (validation.valid ? "yes" : "no") << " projection "
            << validation.max_projection_defect << " orthogonality " << validation.max_orthogonality_defect
            << " sum " << validation.max_sum_defect << "\n";
  return validation.valid ? kSuccess : kValidationFailure;
}

int cmd_correlate(const RunConfig& cfg, const CorrelateArgs& args) {
  const PlayerRep rep = from_file([&] { return io::rep_from_json(io::read_json_file(args.rep)); });
  const TraceSpec tau = args.trace.empty() ? TraceSpec::normalized(rep.dim)
                                           : io::trace_from_json(io::read_json_file(args.trace));
  const auto validation = validate_player_rep(rep, cfg.tol.proj);
  if (!validation.valid) {
    std::cerr << "rep fails PVM validation: " << io::to_json(validation).dump() << "\n";
    return kValidationFailure;
  }
  const CorrelationTable table = correlation_from_rep(rep, tau, cfg.tol);
  const auto check = check_table(table, cfg.tol.corr);
  if (cfg.format == Format::csv) write_output(cfg, "table.csv", io::table_csv(table));
  else write_output(cfg, "table.json", io::dump(io::to_json(table)));
  write_output(cfg, "table_check.json", io::dump(io::to_json(check)));
  std::cout << "table valid " << (check.valid ? "yes" : "no") << "\n";
  return check.valid ? kSuccess : kValidationFailure;
}

int cmd_pipeline(const RunConfig& cfg, const PipelineArgs& args) {
  const TableMetric metric = parse_metric(args.metric);
  const auto seq = from_file([&] { return io::sequence_from_json(io::read_json_file(args.sequence)); });
  const auto target = from_file([&] { return io::table_from_json(io::read_json_file(args.target)); });
  if (seq.indices.empty()) throw Error(ErrorCode::MalformedInput, "sequence has no indices");
  const auto report = from_file([&] { return pipeline_correlations(seq, target, metric, cfg.tol, cfg.threads); });

  std::ostringstream csv;
  csv << "index,dim,max_defect,max_bound,distance,status\n";
  std::size_t succeeded = 0;
  for (std::size_t n = 0; n < report.indices.size(); ++n) {
    const auto& row = report.indices[n];
    csv << n << ',' << row.dim << ',' << io::format_double(row.max_defect) << ','
        << io::format_double(row.max_bound) << ',' << (row.ok ? io::format_double(row.distance) : "") << ','
        << (row.ok ? "ok" : "error") << '\n';
    if (row.ok) ++succeeded;
    else std::cerr << "index " << n << ": " << row.error << "\n";
  }
  write_output(cfg, "convergence.csv", csv.str());
  std::cout << "indices " << report.indices.size() << " succeeded " << succeeded << " final_distance "
            << io::format_double(report.final_distance) << " (" << to_string(metric) << ")\n";
  return succeeded > 0 ? kSuccess : kValidationFailure;
}

int cmd_game(const RunConfig& cfg, const GameArgs& args) {
  const int modes = (args.table.empty() ? 0 : 1) + (args.classical ? 1 : 0) + (args.seesaw ? 1 : 0);
  if (modes != 1) throw UsageError("choose exactly one of --table, --classical, --seesaw");
  if (args.iters < 1) throw UsageError("--iters must be >= 1");
  const Game game = from_file([&] { return io::game_from_json(io::read_json_file(args.game)); });

  json result;
  if (!args.table.empty()) {
    const auto table = from_file([&] { return io::table_from_json(io::read_json_file(args.table)); });
    const double value = from_file([&] { return game_value(game, table); });
    result = {{"mode", "table"}, {"value", value}};
  } else if (args.classical) {
    const auto best = classical_sync_value(game);
    result = {{"mode", "classical"}, {"value", best.value}, {"argmax", best.argmax}};
  } else {
    const int dim = args.dim > 0 ? args.dim : game.answers();
    const auto opt = seesaw_optimize(game, dim, args.iters, cfg.seed);
    json trajectory = json::array();
    for (const auto& [it, v] : opt.trajectory) trajectory.push_back({it, v});
    result = {{"mode", "seesaw"},        {"seed", cfg.seed},
              {"dim", dim},              {"iters", args.iters},
              {"value", opt.value},      {"rounding_invocations", opt.rounding_invocations},
              {"trajectory", trajectory}, {"rep", io::to_json(opt.rep)}};
  }
  write_output(cfg, "game_result.json", io::dump(result));
  std::cout << result["mode"].get<std::string>() << " value " << io::format_double(result["value"].get<double>()) << "\n";
  return kSuccess;
}

int cmd_generate(const RunConfig& cfg, const GenerateArgs& args) {
  const auto& kind = args.kind;
  if (kind == "rep") {
    write_output(cfg, "rep.json", io::dump(io::to_json(random_rep(args.dim, args.questions, args.answers, cfg.seed))));
  } else if (kind == "perturbed") {
    const PlayerRep base = random_rep(args.dim, args.questions, args.answers, cfg.seed);
    PlayerRep approx = base;
    const auto tuples = perturb_rep(base, args.eps, cfg.seed + 1);
    for (std::size_t x = 0; x < tuples.size(); ++x) approx.pvms[x].projections = tuples[x].elements;
    write_output(cfg, "perturbed.json", io::dump(io::to_json(approx)));
  } else if (kind == "sequence" || kind == "exact-sequence") {
    const PlayerRep base = random_rep(args.dim, args.questions, args.answers, cfg.seed);
    const auto eps = kind == "sequence" ? geometric_schedule(args.levels)
                                        : std::vector<double>(static_cast<std::size_t>(args.levels), 0.0);
    const auto seq = perturbed_sequence(base, eps, cfg.seed + 1, args.amplify);
    write_output(cfg, "base_rep.json", io::dump(io::to_json(base)));
    write_output(cfg, "sequence.json", io::dump(io::to_json(seq)));
    write_output(cfg, "target.json",
                 io::dump(io::to_json(correlation_from_rep(base, TraceSpec::normalized(base.dim), cfg.tol))));
  } else if (kind == "deterministic") {
    if (static_cast<int>(args.function.size()) != args.questions)
      throw UsageError("--function needs one value per question");
    write_output(cfg, "rep.json", io::dump(io::to_json(deterministic_rep(args.function, args.questions, args.answers))));
  } else if (kind == "mub") {
    write_output(cfg, "rep.json", io::dump(io::to_json(mub_rep(args.dim))));
  } else if (kind == "games") {
    write_output(cfg, "k3_2col.json", io::dump(io::to_json(triangle_coloring_game(2))));
    write_output(cfg, "k3_3col.json", io::dump(io::to_json(triangle_coloring_game(3))));
    write_output(cfg, "pentagon_3col.json", io::dump(io::to_json(pentagon_coloring_game(3))));
    write_output(cfg, "trivial_accept.json", io::dump(io::to_json(trivial_game(2, 2, true))));
    write_output(cfg, "trivial_reject.json", io::dump(io::to_json(trivial_game(2, 2, false))));
  } else {
    throw UsageError("unknown kind '" + kind + "'");
  }
  return kSuccess;
}

}  // namespace synclift::cli
