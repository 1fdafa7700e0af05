#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "imwak/report.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string binary_path() { return IMWAK_BIN; }

std::string reports_dir() { return IMWAK_REPORTS_DIR; }

RunResult run(const std::string& args, bool merge_stderr = false) {
  std::string cmd = "\"" + binary_path() + "\" " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

}  // namespace

TEST_CASE("act: single-generator words") {
  {
    RunResult r = run("act a:-1");
    REQUIRE(r.exit_code == 0);
    imwak::Json j = imwak::Json::parse(r.out);
    CHECK(j == imwak::Json({{"a", {-1}}, {"b", imwak::Json::array()}, {"c", "1"}}));
  }
  {
    // e_1 f_{-1} w = (h_0 + kappa) w = (lambda + kappa) w.
    RunResult r = run("act e:1,f:-1 --lambda 3 --kappa 2");
    REQUIRE(r.exit_code == 0);
    CHECK(strip(r.out) == "5");
  }
  {
    // L_0 w = lambda(lambda - 2 mu)/4 at lambda = 2, mu = 0.
    RunResult r = run("act L:0 --lambda 2");
    REQUIRE(r.exit_code == 0);
    CHECK(strip(r.out) == "1");
  }
  {
    // a*_1 annihilates the highest weight vector.
    RunResult r = run("act 'a*:1'");
    REQUIRE(r.exit_code == 0);
    CHECK(imwak::Json::parse(r.out) == imwak::Json::array());
  }
  {
    // Single non-scalar term: h_0 a_{-1} w = (lambda - 2) a_{-1} w.
    RunResult r = run("act h:0,a:-1 --lambda 0");
    REQUIRE(r.exit_code == 0);
    imwak::Json j = imwak::Json::parse(r.out);
    CHECK(j == imwak::Json({{"a", {-1}}, {"b", imwak::Json::array()}, {"c", "-2"}}));
  }
}

TEST_CASE("act: degree operator and b-level flags") {
  // d w = -Delta(lambda) w; Delta(2) = 1 under the default convention at mu = 0.
  RunResult r = run("act d --lambda 2 --mu 0");
  REQUIRE(r.exit_code == 0);
  CHECK(strip(r.out) == "-1");

  // b_0 multiplies by lambda.
  RunResult r2 = run("act b:0 --lambda 7");
  REQUIRE(r2.exit_code == 0);
  CHECK(strip(r2.out) == "7");

  // b_1 b_{-1} w = 2 b_level w.
  RunResult r3 = run("act b:1,b:-1 --b-level 5/2");
  REQUIRE(r3.exit_code == 0);
  CHECK(strip(r3.out) == "5");
}

TEST_CASE("exit codes: 0 on success, 1 on tier-1 failure, 2 on usage errors") {
  CHECK(run("verify lbar").exit_code == 0);
  CHECK(run("verify nosuchsuite").exit_code == 2);
  CHECK(run("act q:1").exit_code == 2);
  CHECK(run("act a:notanumber").exit_code == 2);
  CHECK(run("kz --window 2").exit_code == 2);
  CHECK(run("kz --m-range=3..1").exit_code == 2);
  CHECK(run("beta --kappa 0").exit_code == 2);
  CHECK(run("singular --kappa 0").exit_code == 2);
  CHECK(run("singular --degree 0").exit_code == 2);
  CHECK(run("--help", true).exit_code == 0);
  CHECK(run("verify --help", true).exit_code == 0);
  // Detuned b-level makes the affine relation suite fail honestly.
  CHECK(run("verify affine --kappa 2 --b-level 3").exit_code == 1);
}

TEST_CASE("verify: skip semantics at kappa = 0") {
  RunResult r = run("verify phi --kappa 0 --format json");
  REQUIRE(r.exit_code == 0);
  imwak::Json j = imwak::Json::parse(r.out);
  CHECK(j["tier1"]["ok"] == true);
  CHECK(j["tier1"]["checks"] == 0);
  REQUIRE(j["skipped"].size() == 1);
}

TEST_CASE("reports are byte-stable across runs") {
  std::string f1 = "cli_det_1.json", f2 = "cli_det_2.json";
  REQUIRE(run("verify heisenberg --seed 9 --report " + f1).exit_code == 0);
  REQUIRE(run("verify heisenberg --seed 9 --report " + f2).exit_code == 0);
  CHECK(slurp(f1) == slurp(f2));
  std::remove(f1.c_str());
  std::remove(f2.c_str());

  // Different seeds still verify but sample differently (config records the seed).
  std::string f3 = "cli_det_3.json";
  REQUIRE(run("verify heisenberg --seed 10 --report " + f3).exit_code == 0);
  imwak::Json j = imwak::Json::parse(slurp(f3));
  CHECK(j["config"]["seed"] == 10);
  std::remove(f3.c_str());
}

TEST_CASE("golden reports match the committed files byte for byte") {
  struct Golden {
    const char* suite;
    const char* file;
  };
  for (Golden g : {Golden{"singular", "singular_formula_vs_solve.json"},
                   Golden{"phi", "phi_b_commutator_residual.json"},
                   Golden{"kz", "kz_residuals.json"}}) {
    std::string tmp = std::string("cli_golden_") + g.suite + ".json";
    RunResult r = run(std::string("verify ") + g.suite + " --report " + tmp);
    INFO(g.suite);
    REQUIRE(r.exit_code == 0);
    std::string fresh = slurp(tmp);
    std::string committed = slurp(reports_dir() + "/" + g.file);
    CHECK(fresh == committed);
    std::remove(tmp.c_str());
  }
}

TEST_CASE("beta and singular subcommands emit well-formed JSON") {
  {
    RunResult r = run("beta --max-n 4 --m 2 --kappa 3 --format json");
    REQUIRE(r.exit_code == 0);
    imwak::Json j = imwak::Json::parse(r.out);
    REQUIRE(j["table"].is_array());
    CHECK(j["table"].size() == 11);  // nonempty partitions of weight 1..4
    CHECK(j["max_weight"] == 4);
  }
  {
    RunResult r = run("singular --solve --degree 3 --m 2 --kappa 3 --lambda 1");
    REQUIRE(r.exit_code == 0);
    imwak::Json j = imwak::Json::parse(r.out);
    CHECK(j["dimension"] == 1);
    CHECK(j["normalized"] == true);
  }
}
