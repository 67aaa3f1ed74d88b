#include "synclift/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace synclift::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object with field \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field \"") + key + "\"");
  return *it;
}

const json& array_field(const json& j, const char* key) {
  const json& value = field(j, key);
  if (!value.is_array()) malformed(std::string("field \"") + key + "\" must be an array");
  return value;
}

long long integer_field(const json& j, const char* key, long long min_value) {
  const json& value = field(j, key);
  if (!value.is_number_integer()) malformed(std::string("field \"") + key + "\" must be an integer");
  const long long v = value.get<long long>();
  if (v < min_value) malformed(std::string("field \"") + key + "\" must be >= " + std::to_string(min_value));
  return v;
}

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) malformed(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) malformed(std::string(what) + " must be finite");
  return v;
}

void require_size(const json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n)
    malformed(what + " must be an array of length " + std::to_string(n));
}

json matrices_to_json(const std::vector<Matrix>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

std::vector<Matrix> matrices_from_json(const json& j, std::size_t count, Eigen::Index dim, const std::string& what) {
  require_size(j, count, what);
  std::vector<Matrix> out;
  for (const auto& item : j) {
    Matrix m = matrix_from_json(item);
    if (m.rows() != dim) malformed(what + ": matrix dim " + std::to_string(m.rows()) + " differs from " + std::to_string(dim));
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return {{"dim", m.rows()}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const json& j) {
  const auto dim = static_cast<Eigen::Index>(integer_field(j, "dim", 1));
  const json& entries = array_field(j, "entries");
  require_size(entries, static_cast<std::size_t>(dim), "matrix entries");
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const json& row = entries[static_cast<std::size_t>(i)];
    require_size(row, static_cast<std::size_t>(dim), "matrix row " + std::to_string(i));
    for (Eigen::Index k = 0; k < dim; ++k) {
      const json& z = row[static_cast<std::size_t>(k)];
      require_size(z, 2, "matrix entry");
      m(i, k) = Complex(finite_number(z[0], "real part"), finite_number(z[1], "imaginary part"));
    }
  }
  return m;
}

json to_json(const PlayerRep& rep) {
  json pvms = json::array();
  for (const auto& pvm : rep.pvms) pvms.push_back(matrices_to_json(pvm.projections));
  return {{"dim", rep.dim}, {"questions", rep.questions}, {"answers", rep.answers}, {"pvms", std::move(pvms)}};
}

PlayerRep rep_from_json(const json& j) {
  PlayerRep rep;
  rep.dim = static_cast<Eigen::Index>(integer_field(j, "dim", 1));
  rep.questions = static_cast<int>(integer_field(j, "questions", 1));
  rep.answers = static_cast<int>(integer_field(j, "answers", 1));
  const json& pvms = array_field(j, "pvms");
  require_size(pvms, static_cast<std::size_t>(rep.questions), "pvms");
  for (std::size_t x = 0; x < pvms.size(); ++x)
    rep.pvms.push_back(PVM{matrices_from_json(pvms[x], static_cast<std::size_t>(rep.answers), rep.dim,
                                              "pvms[" + std::to_string(x) + "]")});
  return rep;
}

json to_json(const TraceSpec& tau) {
  json blocks = json::array();
  for (const auto& b : tau.blocks()) blocks.push_back({{"dim", b.dim}, {"weight", b.weight}});
  return {{"blocks", std::move(blocks)}};
}

TraceSpec trace_from_json(const json& j) {
  std::vector<TraceBlock> blocks;
  for (const auto& b : array_field(j, "blocks"))
    blocks.push_back({static_cast<Eigen::Index>(integer_field(b, "dim", 1)), finite_number(field(b, "weight"), "weight")});
  try {
    return TraceSpec(std::move(blocks));
  } catch (const Error& e) {
    malformed(e.what());
  }
}

json to_json(const ApproxRepSequence& s) {
  json indices = json::array();
  for (const auto& index : s.indices) {
    json tuples = json::array();
    for (const auto& t : index.tuples) tuples.push_back(matrices_to_json(t.elements));
    indices.push_back({{"dim", index.dim}, {"tuples", std::move(tuples)}});
  }
  return {{"questions", s.questions}, {"answers", s.answers}, {"indices", std::move(indices)}};
}

ApproxRepSequence sequence_from_json(const json& j) {
  ApproxRepSequence s;
  s.questions = static_cast<int>(integer_field(j, "questions", 1));
  s.answers = static_cast<int>(integer_field(j, "answers", 1));
  for (const auto& item : array_field(j, "indices")) {
    ApproxRepIndex index;
    index.dim = static_cast<Eigen::Index>(integer_field(item, "dim", 1));
    const json& tuples = array_field(item, "tuples");
    require_size(tuples, static_cast<std::size_t>(s.questions), "tuples");
    for (const auto& t : tuples)
      index.tuples.push_back({index.dim, matrices_from_json(t, static_cast<std::size_t>(s.answers), index.dim, "tuple")});
    s.indices.push_back(std::move(index));
  }
  return s;
}

json to_json(const CorrelationTable& t) {
  json values = json::array();
  for (int a = 0; a < t.answers(); ++a) {
    json va = json::array();
    for (int b = 0; b < t.answers(); ++b) {
      json vb = json::array();
      for (int x = 0; x < t.questions(); ++x) {
        json vx = json::array();
        for (int y = 0; y < t.questions(); ++y) vx.push_back(t(a, b, x, y));
        vb.push_back(std::move(vx));
      }
      va.push_back(std::move(vb));
    }
    values.push_back(std::move(va));
  }
  return {{"questions", t.questions()}, {"answers", t.answers()}, {"values", std::move(values)}};
}

CorrelationTable table_from_json(const json& j) {
  const int nx = static_cast<int>(integer_field(j, "questions", 1));
  const int na = static_cast<int>(integer_field(j, "answers", 1));
  const json& values = array_field(j, "values");
  CorrelationTable t(nx, na);
  require_size(values, static_cast<std::size_t>(na), "values");
  for (int a = 0; a < na; ++a) {
    require_size(values[a], static_cast<std::size_t>(na), "values[a]");
    for (int b = 0; b < na; ++b) {
      require_size(values[a][b], static_cast<std::size_t>(nx), "values[a][b]");
      for (int x = 0; x < nx; ++x) {
        require_size(values[a][b][x], static_cast<std::size_t>(nx), "values[a][b][x]");
        for (int y = 0; y < nx; ++y) t(a, b, x, y) = finite_number(values[a][b][x][y], "table value");
      }
    }
  }
  return t;
}

json to_json(const Game& g) {
  json predicate = json::array();
  for (int a = 0; a < g.answers(); ++a) {
    json pa = json::array();
    for (int b = 0; b < g.answers(); ++b) {
      json pb = json::array();
      for (int x = 0; x < g.questions(); ++x) {
        json px = json::array();
        for (int y = 0; y < g.questions(); ++y) px.push_back(g.predicate(a, b, x, y));
        pb.push_back(std::move(px));
      }
      pa.push_back(std::move(pb));
    }
    predicate.push_back(std::move(pa));
  }
  return {{"questions", g.questions()}, {"answers", g.answers()}, {"synchronous", g.synchronous()},
          {"lambda", g.lambda()}, {"predicate", std::move(predicate)}};
}

Game game_from_json(const json& j) {
  const int nx = static_cast<int>(integer_field(j, "questions", 1));
  const int na = static_cast<int>(integer_field(j, "answers", 1));
  const json& sync = field(j, "synchronous");
  if (!sync.is_boolean()) malformed("field \"synchronous\" must be a boolean");
  const json& lambda_json = array_field(j, "lambda");
  require_size(lambda_json, static_cast<std::size_t>(nx), "lambda");
  std::vector<std::vector<double>> lambda;
  for (const auto& row : lambda_json) {
    require_size(row, static_cast<std::size_t>(nx), "lambda row");
    std::vector<double> r;
    for (const auto& w : row) r.push_back(finite_number(w, "lambda entry"));
    lambda.push_back(std::move(r));
  }
  const json& pred = array_field(j, "predicate");
  std::vector<int> predicate;
  require_size(pred, static_cast<std::size_t>(na), "predicate");
  for (const auto& pa : pred) {
    require_size(pa, static_cast<std::size_t>(na), "predicate[a]");
    for (const auto& pb : pa) {
      require_size(pb, static_cast<std::size_t>(nx), "predicate[a][b]");
      for (const auto& px : pb) {
        require_size(px, static_cast<std::size_t>(nx), "predicate[a][b][x]");
        for (const auto& v : px) {
          if (!v.is_number_integer()) malformed("predicate entries must be 0 or 1");
          predicate.push_back(v.get<int>());
        }
      }
    }
  }
  try {
    return Game(nx, na, std::move(lambda), std::move(predicate), sync.get<bool>());
  } catch (const Error& e) {
    malformed(e.what());
  }
}

json to_json(const DefectReport& r) {
  json elements = json::array();
  for (const auto& e : r.per_element)
    elements.push_back({{"projection_defect", e.projection_defect},
                        {"rounding_distance", e.rounding_distance},
                        {"certified_bound", e.certified_bound},
                        {"original_distance", e.original_distance}});
  return {{"per_element", std::move(elements)},
          {"sum_defect", r.sum_defect},
          {"max_orthogonality_defect", r.max_orthogonality_defect},
          {"padded", r.padded}};
}

json to_json(const RepValidation& r) {
  return {{"valid", r.valid},
          {"max_projection_defect", r.max_projection_defect},
          {"max_orthogonality_defect", r.max_orthogonality_defect},
          {"max_sum_defect", r.max_sum_defect},
          {"max_hermiticity_defect", r.max_hermiticity_defect},
          {"message", r.message}};
}

json to_json(const TableValidation& r) {
  return {{"valid", r.valid},
          {"max_negativity", r.max_negativity},
          {"max_normalization", r.max_normalization},
          {"max_synchronicity", r.max_synchronicity},
          {"max_symmetry", r.max_symmetry}};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string defects_csv(const std::vector<DefectReport>& per_question, std::string_view prefix_header,
                        std::string_view prefix_value) {
  std::ostringstream os;
  if (!prefix_header.empty()) os << prefix_header << ',';
  os << "question,element,projection_defect,rounding_distance,certified_bound,original_distance\n";
  for (std::size_t x = 0; x < per_question.size(); ++x)
    for (std::size_t k = 0; k < per_question[x].per_element.size(); ++k) {
      const auto& e = per_question[x].per_element[k];
      if (!prefix_value.empty()) os << prefix_value << ',';
      os << x << ',' << k << ',' << format_double(e.projection_defect) << ','
         << format_double(e.rounding_distance) << ',' << format_double(e.certified_bound) << ','
         << format_double(e.original_distance) << '\n';
    }
  return os.str();
}

std::string table_csv(const CorrelationTable& t) {
  std::ostringstream os;
  os << "a,b,x,y,p\n";
  for (int a = 0; a < t.answers(); ++a)
    for (int b = 0; b < t.answers(); ++b)
      for (int x = 0; x < t.questions(); ++x)
        for (int y = 0; y < t.questions(); ++y)
          os << a << ',' << b << ',' << x << ',' << y << ',' << format_double(t(a, b, x, y)) << '\n';
  return os.str();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t offset = e.byte == 0 ? 0 : std::min(e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    os << "line " << line << ", column " << column << ": " << e.what();
    malformed(os.str());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_json(buffer.str());
  } catch (const Error& e) {
    malformed(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

}  // namespace synclift::io
