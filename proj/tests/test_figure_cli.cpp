#include "rademacher/figure.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace rademacher;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream ifs(path, std::ios::binary);
  std::ostringstream os;
  os << ifs.rdbuf();
  return os.str();
}

std::filesystem::path temp_file(const std::string& tag) {
  return std::filesystem::temp_directory_path() /
         ("rademacher_test_" + std::to_string(getpid()) + "_" + tag);
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& tag) : path(temp_file(tag)) {}
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("figure rows enumerate every parity point below the cap", "[figure]") {
  const Xi one(Rational(1));
  const auto rows = figure_rows(10, one);
  REQUIRE(rows.size() == 36);

  int xi_points = 0;
  for (const FigureRow& r : rows) {
    REQUIRE((r.n + r.ell) % 2 == 0);
    REQUIRE(r.ell >= 0);
    REQUIRE(r.ell <= r.n);
    REQUIRE(r.prob == interval_prob(r.n, r.ell));
    REQUIRE(r.is_xi_point == (r.ell == kappa(r.n, one)));
    if (r.is_xi_point) ++xi_points;
  }
  REQUIRE(xi_points == 11);  // one marked point per n when kappa stays in range
}

TEST_CASE("figure respects the row cap", "[figure]") {
  REQUIRE_THROWS_AS(figure_rows(201, Xi(Rational(1))), std::domain_error);
  REQUIRE_THROWS_AS(figure_rows(-1, Xi(Rational(1))), std::domain_error);
  REQUIRE(figure_rows(0, Xi(Rational(1))).size() == 1);
}

TEST_CASE("trajectory marks vanish when kappa dips below range", "[figure]") {
  const Xi quarter(Rational(1, 4));
  const auto rows = figure_rows(4, quarter);
  for (const FigureRow& r : rows) {
    if (r.n == 1 || r.n == 3) REQUIRE_FALSE(r.is_xi_point);  // kappa is -1 there
    if (r.n == 4 && r.ell == 0) REQUIRE(r.is_xi_point);
  }
}

TEST_CASE("figure csv bytes are exact and stable", "[figure]") {
  const Xi one(Rational(1));
  std::ostringstream first, second;
  write_figure_csv(first, figure_rows(3, one));
  write_figure_csv(second, figure_rows(3, one));
  const std::string expected =
      "n,ell,prob_exact,prob_decimal,is_xi_point\n"
      "0,0,1,1.00000000000,true\n"
      "1,1,1,1.00000000000,true\n"
      "2,0,1/2,0.500000000000,true\n"
      "2,2,1,1.00000000000,false\n"
      "3,1,3/4,0.750000000000,true\n"
      "3,3,1,1.00000000000,false\n";
  REQUIRE(first.str() == expected);
  REQUIRE(second.str() == expected);

  std::ostringstream bounds;
  write_boundaries_csv(bounds, figure_boundaries(20, one));
  REQUIRE(bounds.str() == "k,n_k\n1,0\n2,3\n3,8\n4,15\n");
}

TEST_CASE("prob subcommand prints the exact value in both shapes", "[cli]") {
  if (!oracles::cli_available()) SKIP("RADEMACHER_CLI not set");

  const auto text = oracles::run_cli("prob --n 7 --k 2");
  REQUIRE(text.exit_code == 0);
  REQUIRE(text.out == "35/64 (0.546875000000)\n");

  const auto by_k = oracles::run_cli("prob --n 7 --k 2 --json");
  REQUIRE(by_k.exit_code == 0);
  const auto jk = nlohmann::json::parse(by_k.out);
  REQUIRE(jk["n"] == 7);
  REQUIRE(jk["k"] == 2);
  REQUIRE(jk["prob"]["exact"] == "35/64");
  REQUIRE(jk["prob"]["decimal"] == "0.546875000000");

  const auto by_q = oracles::run_cli("prob --n 6 --q 1/2 --json");
  REQUIRE(by_q.exit_code == 0);
  const auto jq = nlohmann::json::parse(by_q.out);
  REQUIRE(jq["q"] == "1/2");
  REQUIRE(jq["prob"]["exact"] == "5/16");

  // decimal q is parsed exactly
  const auto decimal_q = oracles::run_cli("prob --n 17 --q 0.5");
  REQUIRE(decimal_q.exit_code == 0);
  REQUIRE(decimal_q.out == "12155/32768 (0.370941162109)\n");
}

TEST_CASE("prob subcommand wants exactly one threshold flavor", "[cli]") {
  if (!oracles::cli_available()) SKIP("RADEMACHER_CLI not set");
  REQUIRE(oracles::run_cli("prob --n 7 --k 2 --q 1").exit_code == 2);
  REQUIRE(oracles::run_cli("prob --n 7").exit_code == 2);
}

TEST_CASE("bound subcommand reports the reference thresholds", "[cli]") {
  if (!oracles::cli_available()) SKIP("RADEMACHER_CLI not set");
  const auto res = oracles::run_cli("bound --q 9/16 --json");
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  REQUIRE(j["q"] == "9/16");
  REQUIRE(j["n1"] == 2);
  REQUIRE(j["n2"] == 7);
  REQUIRE(j["sharp_bound"]["exact"] == "5/16");
  REQUIRE(j["chebyshev_bound"]["exact"] == "0");
  REQUIRE(j["normal_limit_formula"] == "2*Phi(sqrt(q)) - 1");
}

TEST_CASE("blocks subcommand lists starts and end values", "[cli]") {
  if (!oracles::cli_available()) SKIP("RADEMACHER_CLI not set");
  const auto res = oracles::run_cli("blocks --q 2/3 --k-max 3 --json");
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  REQUIRE(j["q"] == "2/3");
  REQUIRE(j["guaranteed_regime"] == true);
  REQUIRE(j["blocks"].size() == 3);
  REQUIRE(j["blocks"][0]["k"] == 1);
  REQUIRE(j["blocks"][0]["n_k"] == 2);
  REQUIRE(j["blocks"][0]["n_hi_exclusive"] == 5);
  REQUIRE(j["blocks"][0]["q_minus"]["exact"] == "3/8");
  REQUIRE(j["blocks"][2]["n_k"] == 14);
}

TEST_CASE("verify subcommand exits clean and writes deterministic json", "[cli]") {
  if (!oracles::cli_available()) SKIP("RADEMACHER_CLI not set");

  const auto res = oracles::run_cli("verify --suite remark --n-max 20");
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  for (const auto& rep : j) REQUIRE(rep["status"] == "pass");

  TempFile a("verify_a.json");
  TempFile b("verify_b.json");
  REQUIRE(oracles::run_cli("verify --suite theorem1 --q 2/3 --k-max 8 --out " +
                           a.path.string()).exit_code == 0);
  REQUIRE(oracles::run_cli("verify --suite theorem1 --q 2/3 --k-max 8 --out " +
                           b.path.string()).exit_code == 0);
  const std::string first = slurp(a.path);
  REQUIRE_FALSE(first.empty());
  REQUIRE(first == slurp(b.path));

  const auto ce = oracles::run_cli("verify --suite counterexamples");
  REQUIRE(ce.exit_code == 0);
  const auto jce = nlohmann::json::parse(ce.out);
  REQUIRE(jce[0]["records"][0]["confirmed"] == true);
  REQUIRE(jce[0]["records"][0]["lhs"]["exact"] == "99/128");
}

TEST_CASE("figure subcommand writes byte-identical csv across runs", "[cli]") {
  if (!oracles::cli_available()) SKIP("RADEMACHER_CLI not set");

  TempFile f1("fig1.csv"), b1("bnd1.csv"), f2("fig2.csv"), b2("bnd2.csv");
  const std::string common = "figure --n-max 20 --q 1 ";
  REQUIRE(oracles::run_cli(common + "--out " + f1.path.string() + " --boundaries-out " +
                           b1.path.string()).exit_code == 0);
  REQUIRE(oracles::run_cli(common + "--out " + f2.path.string() + " --boundaries-out " +
                           b2.path.string()).exit_code == 0);
  const std::string fig = slurp(f1.path);
  REQUIRE_FALSE(fig.empty());
  REQUIRE(fig == slurp(f2.path));
  REQUIRE(slurp(b1.path) == slurp(b2.path));
  REQUIRE(slurp(b1.path) == "k,n_k\n1,0\n2,3\n3,8\n4,15\n");

  // boundaries land on stdout when no companion path is given
  TempFile f3("fig3.csv");
  const auto res = oracles::run_cli("figure --n-max 5 --q 1 --out " + f3.path.string());
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.out == "k,n_k\n1,0\n2,3\n");
}

TEST_CASE("conjecture subcommand reports the weighted count", "[cli]") {
  if (!oracles::cli_available()) SKIP("RADEMACHER_CLI not set");

  const auto text = oracles::run_cli("conjecture --w 1/2,1/2,1/2,1/2 --t 1");
  REQUIRE(text.exit_code == 0);
  REQUIRE(text.out.find("7/8") != std::string::npos);
  REQUIRE(text.out.find("at least 1/2: yes") != std::string::npos);

  const auto res = oracles::run_cli("conjecture --w 3/5,4/5 --json");
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  REQUIRE(j["probability"]["exact"] == "1/2");
  REQUIRE(j["norm_sq"] == "1");
  REQUIRE(j["at_least_half"] == true);
  REQUIRE(j["weights"].size() == 2);
}

TEST_CASE("error paths map to distinct exit codes", "[cli]") {
  if (!oracles::cli_available()) SKIP("RADEMACHER_CLI not set");

  REQUIRE(oracles::run_cli("--help").exit_code == 0);
  REQUIRE(oracles::run_cli("verify").exit_code == 2);              // missing --suite
  REQUIRE(oracles::run_cli("verify --suite bogus").exit_code == 2);
  REQUIRE(oracles::run_cli("bogus").exit_code == 2);               // unknown subcommand
  REQUIRE(oracles::run_cli("prob --k 2").exit_code == 2);          // missing --n

  REQUIRE(oracles::run_cli("blocks --q 0").exit_code == 3);        // q out of domain
  REQUIRE(oracles::run_cli("bound --q 2").exit_code == 3);         // outside the regime
  REQUIRE(oracles::run_cli("prob --n -1 --k 2").exit_code == 3);

  TempFile f("cap.csv");
  REQUIRE(oracles::run_cli("figure --n-max 300 --q 1 --out " + f.path.string()).exit_code == 3);
  REQUIRE(oracles::run_cli("figure --n-max 5 --q 1 --out /nonexistent/dir/x.csv").exit_code == 4);
  REQUIRE(oracles::run_cli("verify --suite remark --n-max 10 --out /nonexistent/dir/x.json")
              .exit_code == 4);
}
