#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string("\"") + BCLAB_CLI_PATH + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("bclab_cli_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("cli pmf") {
  auto r = cli(R"(pmf --model '{"type": "galton"}' --n 4)");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("2,8,9,") != std::string::npos);
  CHECK(r.out.find("4,1,9,") != std::string::npos);
}

TEST_CASE("cli moments writes series") {
  auto dir = scratch("moments");
  auto r = cli(R"(moments --model '{"type": "runs", "run_lengths": [1, 2, 4, 8]}' --horizon 100 --out )" +
               dir.string());
  REQUIRE(r.code == 0);
  std::size_t csv = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) csv += e.path().extension() == ".csv";
  CHECK(csv == 3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli experiment io-not-sub") {
  auto dir = scratch("io");
  auto r = cli("experiment --name io-not-sub --horizon 1000 --format json --out " + dir.string());
  REQUIRE(r.code == 0);
  auto report = nlohmann::json::parse(slurp(dir / "io-not-sub.json"));
  CHECK(report["ok"] == true);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli exit codes") {
  CHECK(cli(R"(pmf --model '{"type": "bogus"}' --n 4)").code == 1);
  CHECK(cli("pmf --model /nonexistent.json --n 4").code == 1);
  CHECK(cli("experiment --name nope").code == 1);
  CHECK(cli("--no-such-flag").code == 1);
  CHECK(cli(R"(pmf --model '{"type": "interval", "thresholds": ["1/2"]}' --n 0)").code == 1);
  auto bad_space = scratch("space");
  std::filesystem::create_directories(bad_space);
  std::ofstream(bad_space / "s.json") << R"({"atoms": [["a", "1/2"], ["b", "1/2"]], "events": [["a"]]})";
  CHECK(cli("validate --space " + (bad_space / "s.json").string() + " --paths 100000").code == 0);
  std::filesystem::remove_all(bad_space);
  CHECK(cli(R"(validate --model '{"type": "galton"}' --n 13)").code == 1);
  CHECK(cli(R"(validate --model '{"type": "galton"}' --n 6 --paths 100)").code == 1);
}

TEST_CASE("cli reruns are byte identical") {
  auto a = scratch("rerun_a");
  auto b = scratch("rerun_b");
  const std::string args = "experiment --name bruss-demo --seed 3 --format both --svg --out ";
  REQUIRE(cli(args + a.string()).code == 0);
  REQUIRE(cli(args + b.string() + " --workers 3").code == 0);
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(a)) {
    CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
    ++files;
  }
  CHECK(files > 2);
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}
