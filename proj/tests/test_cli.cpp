#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "figure_golden_text.hpp"
#include "schur2/cli.hpp"

using namespace schur2;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("decomp figure reproduces the published pattern byte for byte") {
  auto r = run({"decomp", "--variant", "classical", "--p", "5", "--size", "25",
                "--style", "figure"});
  CHECK(r.code == 0);
  CHECK(r.out == golden::kFigureDecompP5);
}

TEST_CASE("tilting figure reproduces the published pattern") {
  auto r = run({"tilting", "--variant", "classical", "--p", "5", "--size", "25"});
  CHECK(r.code == 0);
  CHECK(r.out == golden::kFigureTiltP5);
}

TEST_CASE("size can be given as a and k") {
  auto direct = run({"decomp", "--p", "5", "--size", "25"});
  auto factored = run({"decomp", "--p", "5", "--a", "5", "--k", "1"});
  CHECK(factored.code == 0);
  CHECK(factored.out == direct.out);
}

TEST_CASE("cartan of the trivial block") {
  auto r = run({"cartan", "--p", "5", "--size", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "0 | 1\n");
}

TEST_CASE("parameter validation lists every violation and exits 2") {
  auto r = run({"decomp", "--variant", "quantum", "--p", "4", "--ell", "8",
                "--lowest", "9", "--size", "10"});
  CHECK(r.code == 2);
  CHECK(r.err.find("not prime") != std::string::npos);
  CHECK(r.err.find("divides ell") != std::string::npos);
  CHECK(r.err.find("lowest") != std::string::npos);

  auto no_size = run({"decomp", "--p", "5"});
  CHECK(no_size.code == 2);
  CHECK(no_size.err.find("--size or --a/--k") != std::string::npos);

  auto unknown = run({"decomp", "--p", "5", "--size", "4", "--style", "pdf"});
  CHECK(unknown.code == 2);
}

TEST_CASE("quantum variant requires ell") {
  auto r = run({"tilting", "--variant", "quantum", "--p", "5", "--size", "4"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--ell is required") != std::string::npos);
}

TEST_CASE("blocks command on pinned examples") {
  auto r = run({"blocks", "--variant", "quantum", "--ell", "2", "--p", "3",
                "--r", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "block 0: weights {0,2,4} primitive lowest=0 size=3\n");

  auto cl = run({"blocks", "--variant", "classical", "--p", "2", "--r", "2"});
  CHECK(cl.code == 0);
  CHECK(cl.out == "block 0: weights {0,2} primitive lowest=0 size=2\n");

  auto r0 = run({"blocks", "--p", "2", "--r", "0"});
  CHECK(r0.code == 0);
  CHECK(r0.out.find("weights {0} primitive") != std::string::npos);

  auto json = run({"blocks", "--variant", "quantum", "--ell", "2", "--p", "3",
                   "--r", "4", "--format", "json"});
  CHECK(json.code == 0);
  auto parsed = nlohmann::json::parse(json.out);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].at("primitive") == true);
  CHECK(parsed[0].at("identified").at("size") == 3);
}

TEST_CASE("verify exits 0 on pass, 2 on bad grids") {
  auto r = run({"verify", "--suite", "all", "--p", "2", "--max-size", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("checks passed") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);

  auto bad = run({"verify", "--suite", "nope"});
  CHECK(bad.code == 2);
  auto badp = run({"verify", "--p", "9", "--max-size", "4"});
  CHECK(badp.code == 2);
}

TEST_CASE("verify exits 1 on a counterexample planted through the cache") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() /
                 ("schur2-poison-" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  // shape-valid but mathematically wrong row for weight 5 at p = 5
  std::ofstream(dir / "classical-p5-decomp.json")
      << R"({"format":"schur2-rowcache","version":1,"p":5,"kind":"decomp",)"
      << R"("rows":[[5,[1,5]]]})";
  auto r = run({"verify", "--suite", "prop4.1", "--p", "5", "--size", "10",
                "--classical-only", "--cache", (dir / "").string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("[FAIL]") != std::string::npos);
  CHECK(r.err.find("counterexample") != std::string::npos);
  CHECK(r.out.find("lambda=6") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("verify json output is canonical under reparse") {
  auto r = run({"verify", "--suite", "lemmas", "--p", "2", "--max-size", "8",
                "--classical-only", "--json"});
  CHECK(r.code == 0);
  auto parsed = nlohmann::json::parse(r.out);
  CHECK(parsed.dump(2) + "\n" == r.out);
}

TEST_CASE("verify pinned witness via json output") {
  auto r = run({"verify", "--suite", "lemma4.6", "--p", "5", "--size", "11",
                "--classical-only", "--json"});
  CHECK(r.code == 0);
  auto parsed = nlohmann::json::parse(r.out);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].at("status") == "pass");
  CHECK(parsed[0].at("witness").at("lambda") == 8);
  CHECK(parsed[0].at("witness").at("lhs") == 3);
}

TEST_CASE("verify --jobs gives identical output") {
  std::vector<std::string> base = {"verify", "--suite", "lemmas", "--p", "3",
                                   "--max-size", "30"};
  auto seq = run(base);
  auto par = run([&] {
    auto v = base;
    v.push_back("--jobs");
    v.push_back("4");
    return v;
  }());
  CHECK(seq.code == 0);
  CHECK(par.code == seq.code);
  CHECK(par.out == seq.out);
}

TEST_CASE("parallel verify with a cache directory") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() /
                 ("schur2-jobs-cache-" + std::to_string(std::random_device{}()));
  std::vector<std::string> args = {"verify",     "--suite", "prop4.1",
                                   "--p",        "3",       "--max-size",
                                   "60",         "--jobs",  "3",
                                   "--cache",    dir.string()};
  auto first = run(args);
  CHECK(first.code == 0);
  CHECK(fs::exists(dir / "classical-p3-decomp.json"));
  CHECK(fs::exists(dir / "classical-p3-tilt.json"));
  auto second = run(args);  // warm cache
  CHECK(second.code == 0);
  CHECK(second.out == first.out);
  fs::remove_all(dir);
}

TEST_CASE("matrix commands honor --out and --cache") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() /
                 ("schur2-cli-test-" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  auto out_file = (dir / "matrix.txt").string();
  auto cache_dir = (dir / "cache").string();
  auto r = run({"decomp", "--p", "5", "--size", "25", "--out", out_file,
                "--cache", cache_dir});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out_file);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text == golden::kFigureDecompP5);
  CHECK(fs::exists(fs::path(cache_dir) / "classical-p5-decomp.json"));
  // second run loads the cache
  auto again = run({"decomp", "--p", "5", "--size", "25", "--cache", cache_dir});
  CHECK(again.code == 0);
  CHECK(again.out == golden::kFigureDecompP5);
  fs::remove_all(dir);
}

TEST_CASE("help exits 0") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("decomp") != std::string::npos);
}

TEST_CASE("missing subcommand is a usage error") {
  auto r = run({});
  CHECK(r.code == 2);
}
