#pragma once

// JSON and CSV formats for every artifact. Readers throw
// Error(ErrorCode::MalformedInput) with a description of what is wrong.

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "synclift/correlations.hpp"
#include "synclift/games.hpp"
#include "synclift/lift.hpp"
#include "synclift/player.hpp"

namespace synclift::io {

using json = nlohmann::json;

/// {"dim": n, "entries": [[[re, im], ...], ...]}, row-major.
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// {"dim", "questions", "answers", "pvms": [[matrix x A] x X]}.
json to_json(const PlayerRep& rep);
PlayerRep rep_from_json(const json& j);

/// {"blocks": [{"dim", "weight"}, ...]}.
json to_json(const TraceSpec& tau);
TraceSpec trace_from_json(const json& j);

/// {"questions", "answers", "indices": [{"dim", "tuples": [[matrix x A] x X]}, ...]}.
json to_json(const ApproxRepSequence& s);
ApproxRepSequence sequence_from_json(const json& j);

/// {"questions", "answers", "values": [a][b][x][y]}.
json to_json(const CorrelationTable& t);
CorrelationTable table_from_json(const json& j);

/// {"questions", "answers", "synchronous", "lambda": [[...]], "predicate": [a][b][x][y]}.
json to_json(const Game& g);
Game game_from_json(const json& j);

json to_json(const DefectReport& r);
json to_json(const RepValidation& r);
json to_json(const TableValidation& r);

/// 17 significant digits, the CSV number format.
std::string format_double(double v);

/// Header: question,element,projection_defect,rounding_distance,certified_bound,original_distance
std::string defects_csv(const std::vector<DefectReport>& per_question, std::string_view prefix_header = {},
                        std::string_view prefix_value = {});
/// Header: a,b,x,y,p
std::string table_csv(const CorrelationTable& t);

/// Parses text, reporting line and column of syntax errors.
json parse_json(std::string_view text);
json read_json_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Pretty JSON with a trailing newline.
std::string dump(const json& j);

}  // namespace synclift::io
