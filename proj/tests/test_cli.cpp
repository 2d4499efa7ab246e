#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "polproj/report.hpp"
#include "polproj/specparse.hpp"

using namespace polproj;
using namespace polproj::cli;

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(POLPROJ_BIN) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("spec grammar") {
  ParsedSpec ps = parse_spec("Sp(n=3,q=2) point:upper");
  CHECK(ps.form.kind() == forms::Kind::Symplectic);
  CHECK(ps.form.rank() == 3);
  CHECK(ps.form.field()->q() == 2);
  REQUIRE(ps.residue.has_value());
  CHECK(ps.residue->side == polar::Side::Upper);

  ParsedSpec el = parse_spec("O(n=3,q=2,corank=2) point:upper");
  CHECK(el.form.dim() == 8); // ambient 2*3+2

  ParsedSpec h = parse_spec("U(n=3,q=2,corank=0)");
  CHECK(h.form.field()->q() == 4); // coordinates live in GF(q^2)
  CHECK(!h.residue.has_value());

  CHECK(parse_spec("Sp(n=2,q=3) max").residue->side == polar::Side::Lower);
  CHECK(parse_spec("Sp(n=3,q=2) subspace(d=1):lower").residue->d == 1);

  CHECK_THROWS_AS(parse_spec("O(n=3,q=3,corank=0)"), Error); // top-thin
  CHECK_THROWS_AS(parse_spec("X(n=3,q=2)"), Error);
  CHECK_THROWS_AS(parse_spec("Sp(n=3)"), Error);
  CHECK_THROWS_AS(parse_spec("Sp(n=3,q=6)"), Error); // not a prime power
  CHECK_THROWS_AS(parse_spec("Sp(n=3,q=2) point:sideways"), Error);
  CHECK_THROWS_AS(parse_spec("Sp(n=3,q=2) point extra"), Error);
}

TEST_CASE("grammar round trip on randomized valid specs") {
  std::mt19937_64 rng(5);
  const char* kinds[] = {"Sp", "O", "U"};
  for (int trial = 0; trial < 60; ++trial) {
    std::string kind = kinds[rng() % 3];
    int n = 1 + static_cast<int>(rng() % 3);
    std::string text;
    if (kind == "Sp")
      text = "Sp(n=" + std::to_string(n) + ",q=" + std::to_string(rng() % 2 ? 2 : 3) + ")";
    else if (kind == "O")
      text = "O(n=" + std::to_string(n) + ",q=" + std::to_string(rng() % 2 ? 2 : 3) +
             ",corank=" + std::to_string(1 + rng() % 2) + ")";
    else
      text = "U(n=" + std::to_string(n) + ",q=" + std::to_string(rng() % 2 ? 2 : 3) +
             ",corank=" + std::to_string(rng() % 2) + ")";
    int d = static_cast<int>(rng() % n);
    std::string res;
    switch (rng() % 4) {
      case 0: res = "point"; d = 0; break;
      case 1: res = n >= 2 ? "line" : "point"; d = n >= 2 ? 1 : 0; break;
      case 2: res = "subspace(d=" + std::to_string(d) + ")"; break;
      default: res = "max"; d = n - 1; break;
    }
    res += rng() % 2 ? ":upper" : ":lower";
    ParsedSpec ps = parse_spec(text + " " + res);
    std::string canon = ps.form.render() + " " + render_residue(*ps.residue);
    ParsedSpec ps2 = parse_spec(canon);
    CHECK(ps2.form.render() == ps.form.render());
    CHECK(render_residue(*ps2.residue) == render_residue(*ps.residue));
  }
}

TEST_CASE("cli parse echoes the canonical form") {
  std::string out_path = "/tmp/polproj_parse_out.txt";
  std::string cmd = std::string(POLPROJ_BIN) + " parse \"Sp(n=3, q=2) point\" > " + out_path;
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(out_path) == "Sp(n=3,q=2) point:upper\n");
  std::remove(out_path.c_str());
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("parse \"O(n=3,q=3,corank=0)\"") == 3);           // semantic error
  CHECK(run_cli("verify no-such-check \"Sp(n=2,q=2)\"") == 3);    // unknown check
  CHECK(run_cli("group \"Sp(n=2,q=2) point:upper\"") == 0);       // pass
  // Hermitian GF(4) norm set is the recorded open question: discrepancy
  CHECK(run_cli("verify normset \"U(n=2,q=2,corank=0)\"") == 2);
}

TEST_CASE("exit-status contract per outcome") {
  using polproj::verify::Report;
  auto with = [](const std::string& o) {
    Report r;
    r.outcome = o;
    return r;
  };
  CHECK(cli::exit_code_for({with("pass")}) == 0);
  CHECK(cli::exit_code_for({with("fail")}) == 1);
  CHECK(cli::exit_code_for({with("discrepancy")}) == 2);
  CHECK(cli::exit_code_for({with("error")}) == 3);
  CHECK(cli::exit_code_for({with("pass"), with("discrepancy"), with("fail")}) == 2);
  CHECK(cli::exit_code_for({with("skipped")}) == 0);
}

TEST_CASE("unwritable output path is an io error") {
  CHECK(run_cli("group \"Sp(n=2,q=2) point\" --out /nonexistent-dir/x.json") == 3);
}

TEST_CASE("explicit d=0 selector gives the skipped nonmaxlower report") {
  CHECK(run_cli("verify nonmaxlower \"Sp(n=3,q=2) subspace(d=0):lower\"") == 0);
}

TEST_CASE("environment seed is honored") {
  std::string path = "/tmp/polproj_envseed.json";
  std::string cmd = "POLPROJ_SEED=777 " + std::string(POLPROJ_BIN) +
                    " group \"Sp(n=2,q=2) point\" --out " + path + " > /dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(path).find("\"seed\": 777") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("identical argv and seed produce byte-identical reports") {
  std::string p1 = "/tmp/polproj_rep1.json", p2 = "/tmp/polproj_rep2.json";
  std::string args = "group \"Sp(n=2,q=3) point:upper\" --mode sampled --seed 7 --out ";
  REQUIRE(run_cli(args + p1) == 0);
  REQUIRE(run_cli(args + p2) == 0);
  std::string a = slurp(p1), b = slurp(p2);
  CHECK(!a.empty());
  CHECK(a == b);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("verify json contains the fixed schema fields") {
  std::string path = "/tmp/polproj_rep3.json";
  REQUIRE(run_cli("verify conic-elation q=4 --out " + path) == 0);
  std::string doc = slurp(path);
  for (const char* key : {"\"version\"", "\"runs\"", "\"check\"", "\"spec\"", "\"mode\"",
                          "\"seed\"", "\"outcome\"", "\"order_pi\"", "\"order_pi_plus\"",
                          "\"index\"", "\"catalog\"", "\"witnesses\"", "\"ms\""})
    CHECK(doc.find(key) != std::string::npos);
  std::remove(path.c_str());
}
