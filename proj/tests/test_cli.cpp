#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kazhdan/cli.hpp"

using namespace kazhdan;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::main(args, out, err);
  return {status, out.str(), err.str()};
}

Result run_nc(std::vector<std::string> args) {
  args.push_back("--no-cache");
  return run(std::move(args));
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("basic commands") {
  auto ih = run_nc({"--type", "A2", "--cmd", "ih", "--x", "sts", "--format", "text"});
  CHECK(ih.status == 0);
  CHECK(ih.out == "1 + 2q + 2q^2 + q^3\n");

  auto kl = run_nc({"--type", "A1", "--cmd", "kl", "--y", "e", "--x", "s"});
  CHECK(kl.status == 0);
  CHECK(kl.out == "h = v\nP = 1\nmu = 1\n");

  auto h = run_nc({"--type", "A3", "--cmd", "h", "--y", "s2", "--x", "s2s1s3s2"});
  CHECK(h.out == "v + v^3\n");

  auto lef = run_nc({"--type", "A3", "--cmd", "lefschetz", "--y", "e", "--x", "s2s1s3s2"});
  CHECK(lef.status == 0);
  CHECK(lef.out.find("poly = 1 + 2q + 2q^2 + q^3\n") != std::string::npos);

  auto bs = run_nc({"--type", "A2", "--cmd", "bs", "--word", "sts"});
  CHECK(bs.out == "s: 1\nsts: 1\n");
  auto bs2 = run_nc({"--type", "A2", "--cmd", "bs", "--word", "ss"});
  CHECK(bs2.out == "s: v^-1 + v\n");

  auto eq = run_nc({"--type", "A1", "--cmd", "equivariant", "--y", "e", "--x", "s", "--rank", "1", "--n-max", "5"});
  CHECK(eq.out == "0 1 0 1 0 1\n");
  auto eq_default_rank = run_nc({"--type", "A1", "--cmd", "equivariant", "--y", "s", "--x", "s", "--n-max", "2"});
  CHECK(eq_default_rank.out == "1 0 1\n");

  auto audit = run_nc({"--type", "A1", "--cmd", "audit"});
  CHECK(audit.status == 0);
  CHECK(audit.out == "local pairs: 3, passed: 3\nglobal ih: 2, palindromic: 2\nresult: PASS\n");
}

TEST_CASE("andersen tables") {
  auto csv = run_nc({"--type", "A3", "--parabolic", "s2", "--cmd", "andersen", "--format", "csv"});
  CHECK(csv.status == 0);
  CHECK(csv.out.rfind("row,col,i,dim\n", 0) == 0);
  std::set<std::string> rows, cols;
  std::istringstream in(csv.out);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    auto a = line.find(','), b = line.find(',', a + 1);
    rows.insert(line.substr(0, a));
    cols.insert(line.substr(a + 1, b - a - 1));
  }
  CHECK(rows.size() == 12);
  CHECK(cols.size() == 12);

  auto json = run_nc({"--type", "A3", "--parabolic", "s2", "--cmd", "andersen", "--format", "json"});
  auto doc = nlohmann::json::parse(json.out);
  CHECK(doc["rows"].size() == 12);
  CHECK(doc["cols"].size() == 12);

  auto pair = run_nc({"--type", "A2", "--parabolic", "t", "--cmd", "andersen", "--y", "e", "--x", "ts", "--format", "json"});
  CHECK(nlohmann::json::parse(pair.out) == nlohmann::json::parse(R"({"y":"t","x":"sts","dims":{"2":1}})"));

  auto text = run_nc({"--type", "A1", "--cmd", "andersen"});
  CHECK(text.status == 0);
  CHECK(count_lines(text.out) == 3);
}

TEST_CASE("usage errors name the offending flag") {
  auto r = run_nc({"--type", "A2", "--cmd", "frobnicate"});
  CHECK(r.status == 1);
  CHECK(r.err.find("--cmd") != std::string::npos);

  r = run_nc({"--type", "A2", "--parabolic", "q", "--cmd", "andersen"});
  CHECK(r.status == 1);
  CHECK(r.err.find("--parabolic") != std::string::npos);

  r = run_nc({"--type", "A2", "--cmd", "ih", "--x", "sq"});
  CHECK(r.status == 1);
  CHECK(r.err.find("--x") != std::string::npos);

  r = run_nc({"--type", "A2", "--cmd", "ih"});
  CHECK(r.status == 1);
  CHECK(r.err.find("--x") != std::string::npos);

  r = run_nc({"--type", "Z2", "--cmd", "ih", "--x", "s"});
  CHECK(r.status == 1);
  CHECK(r.err.find("--type") != std::string::npos);

  r = run_nc({"--cmd", "ih", "--x", "s"});
  CHECK(r.status == 1);

  r = run_nc({"--type", "A2", "--cmd", "equivariant", "--y", "e", "--x", "s", "--n-max", "-1"});
  CHECK(r.status == 1);
  CHECK(r.err.find("--n-max") != std::string::npos);

  r = run_nc({"--type", "A2", "--cmd", "equivariant", "--y", "e", "--x", "s", "--rank", "0"});
  CHECK(r.status == 1);
  CHECK(r.err.find("--rank") != std::string::npos);

  r = run_nc({"--type", "A2", "--cmd", "bs"});
  CHECK(r.status == 1);
  CHECK(r.err.find("--word") != std::string::npos);

  r = run_nc({"--type", "A7", "--cmd", "audit"});
  CHECK(r.status == 1);

  r = run_nc({"--matrix", "/nonexistent/m.json", "--cmd", "audit"});
  CHECK(r.status == 1);
  CHECK(r.err.find("--matrix") != std::string::npos);

  CHECK(run({}).status == 1);
  auto help = run({"--help"});
  CHECK(help.status == 0);
  CHECK(help.out.find("--scenario") != std::string::npos);
}

TEST_CASE("matrix files") {
  auto r = run_nc({"--matrix", KAZHDAN_TEST_DATA "/b2_matrix.json", "--cmd", "ih", "--x", "abab"});
  CHECK(r.status == 0);
  CHECK(r.out == "1 + 2q + 2q^2 + 2q^3 + q^4\n");
}

TEST_CASE("cache files: cold, warm and mismatched") {
  auto dir = std::filesystem::temp_directory_path() / "kazhdan_test_cli";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  auto file = (dir / "a3.json").string();

  std::vector<std::string> args{"--type", "A3", "--cmd", "kl", "--format", "json", "--cache", file};
  auto cold = run(args);
  CHECK(cold.status == 0);
  CHECK(std::filesystem::exists(file));
  auto stamp = std::filesystem::last_write_time(file);
  auto warm = run(args);
  CHECK(warm.out == cold.out);
  CHECK(std::filesystem::last_write_time(file) == stamp);  // nothing new to save
  CHECK(run_nc({"--type", "A3", "--cmd", "kl", "--format", "json"}).out == cold.out);

  // A cache for another system is a warning, not an error.
  auto other = run({"--type", "B3", "--cmd", "ih", "--x", "s1", "--cache", file});
  CHECK(other.status == 0);
  CHECK(other.err.find("warning") != std::string::npos);

  {
    std::ofstream(dir / "junk.json") << "[1, 2";
  }
  auto junk = run({"--type", "A2", "--cmd", "ih", "--x", "sts", "--cache", (dir / "junk.json").string()});
  CHECK(junk.status == 0);
  CHECK(junk.out == "1 + 2q + 2q^2 + q^3\n");
  CHECK(junk.err.find("malformed") != std::string::npos);

  // Default directory from the environment.
  setenv(cli::kCacheDirEnv, dir.string().c_str(), 1);
  auto env = run({"--type", "G2", "--cmd", "ih", "--x", "ststst"});
  unsetenv(cli::kCacheDirEnv);
  CHECK(env.status == 0);
  bool found = false;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    found = found || entry.path().filename().string().rfind("kl-", 0) == 0;
  CHECK(found);
  std::filesystem::remove_all(dir);
}

TEST_CASE("scenario files and determinism") {
  auto a = run({"--scenario", KAZHDAN_TEST_DATA "/scenario.txt"});
  CHECK(a.status == 0);
  CHECK(a.err.empty());
  auto b = run({"--scenario", KAZHDAN_TEST_DATA "/scenario.txt"});
  CHECK(a.out == b.out);
  CHECK(a.out.find("### --type A1 --cmd kl --y e --x s\nh = v\nP = 1\nmu = 1\n") != std::string::npos);
  CHECK(run({"--scenario", "/nonexistent"}).status == 1);
}
