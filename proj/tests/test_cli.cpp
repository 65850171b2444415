#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(OKP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) res.out.append(buf, n);
  const int status = pclose(p);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string golden(const std::string& name) {
  std::ifstream f(std::string(OKP_GOLDEN_DIR) + "/" + name);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("golden outputs are byte-stable") {
  const long ds[] = {2, 3, 5, 13};
  for (long D : ds) {
    const std::string d = std::to_string(D);
    auto cf = run_cli("cf " + d);
    CHECK(cf.exit_code == 0);
    CHECK(cf.out == golden("cf_" + d + ".json"));

    auto cl = run_cli("classify " + d + " 3 1");
    CHECK(cl.exit_code == 0);
    CHECK(cl.out == golden("classify_" + d + "_3_1.json"));

    auto cu = run_cli("count-ud " + d + " --verify-brute");
    CHECK(cu.exit_code == 0);
    CHECK(cu.out == golden("count_ud_" + d + ".json"));

    auto rc = run_cli("reconstruct " + d + " --seed 7 --no-timings");
    CHECK(rc.exit_code == 0);
    CHECK(rc.out == golden("reconstruct_" + d + ".json"));
  }
}

TEST_CASE("identical invocations are deterministic") {
  auto a = run_cli("reconstruct 13 --seed 3 --no-timings");
  auto b = run_cli("reconstruct 13 --seed 3 --no-timings");
  CHECK(a.out == b.out);
  auto s1 = run_cli("sweep --from 2 --to 15 --no-timings --jobs 1");
  auto s2 = run_cli("sweep --from 2 --to 15 --no-timings --jobs 3");
  CHECK(s1.out == s2.out);
}

TEST_CASE("exit codes") {
  CHECK(run_cli("cf 12").exit_code == 2);
  CHECK(run_cli("classify 2 0 0").exit_code == 3);
  CHECK(run_cli("classify 2 1 1").exit_code == 3);
  CHECK(run_cli("indecomposables 2").exit_code == 2);
  CHECK(run_cli("indecomposables 2 --count 3 --max-trace 9").exit_code == 2);
  CHECK(run_cli("sweep --from 5 --to 3").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("sweep --from 48 --to 50 --no-timings").exit_code == 0);
}

TEST_CASE("sweep record shape") {
  auto r = run_cli("sweep --from 2 --to 3 --no-timings");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int records = 0;
  while (std::getline(lines, line)) {
    ++records;
    CHECK(line.find("\"D\":") != std::string::npos);
  }
  CHECK(records == 2);
}

TEST_CASE("not totally positive output still reports signs") {
  auto r = run_cli("classify 2 1 1");
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("\"sign_first\": 1") != std::string::npos);
  CHECK(r.out.find("\"sign_second\": -1") != std::string::npos);
}
