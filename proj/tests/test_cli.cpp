#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = SYNCLIFT_FIXTURES;

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + SYNCLIFT_CLI + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("synclift_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string out() const { return "--out \"" + path.string() + "\" "; }
  fs::path operator/(const std::string& f) const { return path / f; }
};

std::string fixture(const std::string& rel) { return "\"" + (kFixtures / rel).string() + "\""; }

}  // namespace

TEST_CASE("cli exit codes") {
  TempDir dir("codes");
  CHECK(run(dir.out() + "--seed 1 verify-bound --trials 50 --dims 1..4") == 0);
  CHECK(fs::exists(dir / "verify_bound.csv"));
  CHECK(run(dir.out() + "verify-bound --trials 0") == 64);
  CHECK(run("no-such-command") == 64);
  CHECK(run("") == 64);
  CHECK(run("--tol.bogus 1 verify-bound") == 64);
  CHECK(run("--help") == 0);

  CHECK(run(dir.out() + "round " + fixture("reps/perturbed_d4/perturbed.json")) == 0);
  CHECK(fs::exists(dir / "rounded.json"));
  CHECK(fs::exists(dir / "defects.csv"));
  CHECK(run(dir.out() + "round --mode report_only " + fixture("reps/perturbed_d4/perturbed.json")) == 0);
  {
    // Both elements round to zero, so nothing is left to sum to the identity.
    std::ofstream(dir / "lossy.json") << R"({"dim": 1, "questions": 1, "answers": 2, "pvms": [[)"
                                      << R"({"dim": 1, "entries": [[[0.1, 0]]]}, {"dim": 1, "entries": [[[0.1, 0]]]}]]})";
  }
  CHECK(run(dir.out() + "round --mode report_only \"" + (dir / "lossy.json").string() + "\"") == 2);

  CHECK(run(dir.out() + "correlate " + fixture("reps/random_d4/rep.json")) == 0);
  CHECK(run(dir.out() + "correlate " + fixture("reps/random_d4/rep.json") + " --trace " +
            fixture("traces/normalized_d4.json")) == 0);
  CHECK(run(dir.out() + "correlate " + fixture("reps/perturbed_d4/perturbed.json")) == 2);
  CHECK(run(dir.out() + "--format csv correlate " + fixture("reps/mub2/rep.json")) == 0);
  CHECK(slurp(dir / "table.csv").rfind("a,b,x,y,p\n", 0) == 0);

  CHECK(run(dir.out() + "pipeline " + fixture("exact/sequence.json") + " " + fixture("exact/target.json")) == 0);

  CHECK(run(dir.out() + "game " + fixture("games/k3_3col.json") + " --classical") == 0);
  CHECK(run(dir.out() + "game " + fixture("games/k3_3col.json")) == 64);
  CHECK(run(dir.out() + "game " + fixture("games/k3_3col.json") + " --classical --seesaw") == 64);
  CHECK(run(dir.out() + "game " + fixture("games/k3_3col.json") + " --table " + fixture("pipeline/target.json")) == 65);
}

TEST_CASE("cli malformed input exits 65") {
  TempDir dir("malformed");
  const std::string full = slurp(kFixtures / "reps/random_d4/rep.json");
  {
    std::ofstream(dir / "truncated.json") << full.substr(0, full.size() / 2);
    std::ofstream(dir / "wrong_schema.json") << "{\"dim\": 2}";
    std::ofstream(dir / "empty_seq.json") << "{\"questions\": 2, \"answers\": 2, \"indices\": []}";
  }
  CHECK(run(dir.out() + "correlate \"" + (dir / "truncated.json").string() + "\"") == 65);
  CHECK(run(dir.out() + "round \"" + (dir / "truncated.json").string() + "\"") == 65);
  CHECK(run(dir.out() + "correlate \"" + (dir / "wrong_schema.json").string() + "\"") == 65);
  CHECK(run(dir.out() + "game \"" + (dir / "wrong_schema.json").string() + "\" --classical") == 65);
  CHECK(run(dir.out() + "pipeline \"" + (dir / "empty_seq.json").string() + "\" " + fixture("exact/target.json")) == 65);
}

TEST_CASE("cli output is byte-identical across runs") {
  TempDir first("det1"), second("det2");
  for (const TempDir* d : {&first, &second}) {
    REQUIRE(run(d->out() + "--seed 3 verify-bound --trials 40 --dims 1,2,5") == 0);
    REQUIRE(run(d->out() + "--seed 4 game " + fixture("games/k3_3col.json") + " --seesaw --iters 20") == 0);
  }
  CHECK(slurp(first / "verify_bound.csv") == slurp(second / "verify_bound.csv"));
  CHECK(slurp(first / "game_result.json") == slurp(second / "game_result.json"));
  CHECK_FALSE(slurp(first / "verify_bound.csv").empty());
}
