#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

TEST_SUITE_BEGIN("cli");

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const char* cli = std::getenv("FQPAT_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "FQPAT_CLI must point at the fqpat binary");
  std::string outfile = "cli_test_out.tmp";
  std::string cmd = std::string(cli) + " " + args + " > " + outfile + " 2> cli_test_err.tmp";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WEXITSTATUS(status);
  std::ifstream f(outfile, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  r.out = ss.str();
  return r;
}

}  // namespace

TEST_CASE("census reports the exact family size") {
  auto r = run_cli("census --family 3ap --q 3 --n 2 --format json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"A_size\": \"12\"") != std::string::npos);

  auto r2 = run_cli("census --family plane --q 2 --n 4 --m 2 --format json");
  CHECK(r2.code == 0);
  CHECK(r2.out.find("\"A_size\": \"140\"") != std::string::npos);
}

TEST_CASE("validation failures exit with code 2 and name the precondition") {
  CHECK(run_cli("census --family 3ap --q 2 --n 3").code == 2);  // CharTwo
  CHECK(run_cli("census --family nosuch --q 3 --n 2").code == 2);
  CHECK(run_cli("census --family plane --q 3 --n 2 --m 5").code == 2);
}

TEST_CASE("resource caps exit with code 3") {
  CHECK(run_cli("census --family plane --q 2 --n 25 --m 1").code == 3);  // q^n over the space cap
  CHECK(run_cli("census --family 3ap --q 5 --n 7").code == 3);          // enumeration cap
}

TEST_CASE("exactprob prints the exact fraction") {
  auto r = run_cli("exactprob --q 2 --n 2 --M 2 --f 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("1/2\n") != std::string::npos);
}

TEST_CASE("sample dump: uniform model emits bitsets of popcount M") {
  auto r = run_cli("sample --model uniform --q 2 --n 3 --M 5 --trials 4 --seed 9");
  CHECK(r.code == 0);
  int lines = 0;
  std::stringstream ss(r.out);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    ++lines;
    int pop = 0;
    for (char c : line) {
      int v = c <= '9' ? c - '0' : c - 'a' + 10;
      pop += __builtin_popcount(v);
    }
    CHECK(pop == 5);
  }
  CHECK(lines == 4);
}

TEST_CASE("reruns with the same seed are byte-identical") {
  std::string args = "sweep --family pg --q 2 --n 3 --scales 0.5,1,2 --trials 500 --seed 77";
  auto a = run_cli(args);
  auto b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("# command=sweep") != std::string::npos);  // config header present
  CHECK(a.out.find("family,q,n,m,delta,trials,seed,p_hat,stderr,E_X,mean_X,tv,r1,r2,r3,r4") !=
        std::string::npos);
}

TEST_CASE("poisson command emits the fit") {
  auto r = run_cli("poisson --family 3ap --q 3 --n 2 --lambda 0.5 --trials 2000 --seed 5 --format json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"lambda\": 0.5") != std::string::npos);
  CHECK(r.out.find("\"histogram\"") != std::string::npos);
}

TEST_CASE("extremal command certifies and exports") {
  auto r = run_cli("extremal --family rt --q 7 --n 2 --seeds 5 --seed 3 --export cli_free.tmp");
  CHECK(r.code == 0);
  CHECK(r.out.find("best_size") != std::string::npos);
  std::ifstream f("cli_free.tmp");
  std::string line;
  std::getline(f, line);
  CHECK(line.size() >= 2);
  CHECK(line.front() == '[');
}

TEST_SUITE_END();
