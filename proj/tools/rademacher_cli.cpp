// Command-line front end: exact sign-sum probabilities, block structure,
// lower bounds, figure data, claim verification, and the weighted-sum
// enumeration. Exit codes: 0 success / verification pass, 1 verification
// failure, 2 usage error, 3 domain or regime error, 4 I/O error.

#include "rademacher/rademacher.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace rademacher;
using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kUsage = 2;
constexpr int kDomain = 3;
constexpr int kIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_double(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

ordered_json exact_and_decimal(const Rational& v) {
  return ordered_json{{"exact", to_fraction_string(v)}, {"decimal", to_decimal_string(v)}};
}

void emit(const ordered_json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream ofs(out_path, std::ios::binary);
  if (!ofs) throw IoError("cannot open '" + out_path + "' for writing");
  ofs << j.dump(2) << "\n";
  if (!ofs.good()) throw IoError("write to '" + out_path + "' failed");
}

int run_prob(std::int64_t n, const std::optional<std::int64_t>& k,
             const std::optional<std::string>& q_text, bool as_json) {
  Probability p;
  ordered_json j;
  j["n"] = n;
  if (k.has_value()) {
    p = interval_prob(n, *k);
    j["k"] = *k;
  } else {
    const Rational q = parse_rational(*q_text);
    p = xi_prob(n, q);
    j["q"] = to_fraction_string(q);
  }
  if (as_json) {
    j["prob"] = exact_and_decimal(p.value);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << to_fraction_string(p.value) << " (" << to_decimal_string(p.value) << ")\n";
  }
  return kOk;
}

int run_bound(const std::string& q_text, int digits, bool as_json) {
  const Xi xi(parse_rational(q_text));
  const BoundReport rep = sharp_lower_bound(xi, digits);
  if (as_json) {
    ordered_json j;
    j["q"] = to_fraction_string(rep.q);
    j["n1"] = rep.n1;
    j["n2"] = rep.n2;
    j["sharp_bound"] = exact_and_decimal(rep.sharp_bound.value);
    j["chebyshev_bound"] = exact_and_decimal(rep.chebyshev);
    j["normal_limit"] = format_double(rep.normal_limit, rep.normal_limit_digits);
    j["normal_limit_formula"] = "2*Phi(sqrt(q)) - 1";
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "q = " << to_fraction_string(rep.q) << "\n"
              << "n1 = " << rep.n1 << "\n"
              << "n2 = " << rep.n2 << "\n"
              << "sharp_bound = " << to_fraction_string(rep.sharp_bound.value) << " ("
              << to_decimal_string(rep.sharp_bound.value) << "), attained at n = " << rep.n2 - 1
              << "\n"
              << "chebyshev_bound = " << to_fraction_string(rep.chebyshev) << "\n"
              << "normal_limit = " << format_double(rep.normal_limit, rep.normal_limit_digits)
              << "  [2*Phi(sqrt(q)) - 1]\n";
  }
  return kOk;
}

int run_blocks(const std::string& q_text, std::int64_t k_max, bool as_json) {
  const Xi xi(parse_rational(q_text));
  if (k_max < 1) throw std::domain_error("blocks: --k-max must be >= 1");

  struct Row {
    std::int64_t k, lo, hi;
    Probability q;
  };
  std::vector<Row> rows;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    rows.push_back(Row{k, n_k(k, xi), n_k(k + 1, xi), q_minus(k, xi)});
  }

  if (as_json) {
    ordered_json j;
    j["q"] = to_fraction_string(xi.q);
    j["guaranteed_regime"] = xi.guaranteed_regime;
    j["blocks"] = ordered_json::array();
    for (const Row& r : rows) {
      ordered_json b;
      b["k"] = r.k;
      b["n_k"] = r.lo;
      b["n_hi_exclusive"] = r.hi;
      b["q_minus"] = exact_and_decimal(r.q.value);
      j["blocks"].push_back(std::move(b));
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "q = " << to_fraction_string(xi.q)
              << (xi.guaranteed_regime ? "" : "  (q > 1: block minima not guaranteed)") << "\n";
    std::cout << "k\tn_k\tblock\t\tQ_k^-\n";
    for (const Row& r : rows) {
      std::cout << r.k << '\t' << r.lo << '\t' << '[' << r.lo << ", " << r.hi - 1 << "]\t"
                << to_fraction_string(r.q.value) << " (" << to_decimal_string(r.q.value) << ")\n";
    }
  }
  return kOk;
}

int run_figure(std::int64_t n_max, const std::string& q_text, const std::string& out_path,
               const std::string& boundaries_path) {
  const Xi xi(parse_rational(q_text));
  const auto rows = figure_rows(n_max, xi);
  const auto boundaries = figure_boundaries(n_max, xi);

  {
    std::ofstream ofs(out_path, std::ios::binary);
    if (!ofs) throw IoError("cannot open '" + out_path + "' for writing");
    write_figure_csv(ofs, rows);
    if (!ofs.good()) throw IoError("write to '" + out_path + "' failed");
  }
  if (boundaries_path.empty()) {
    write_boundaries_csv(std::cout, boundaries);
  } else {
    std::ofstream ofs(boundaries_path, std::ios::binary);
    if (!ofs) throw IoError("cannot open '" + boundaries_path + "' for writing");
    write_boundaries_csv(ofs, boundaries);
    if (!ofs.good()) throw IoError("write to '" + boundaries_path + "' failed");
  }
  return kOk;
}

int run_verify(const std::string& suite, const std::string& q_text, std::int64_t k_max,
               std::int64_t n_cap, std::int64_t n_max, bool slow, const std::string& out_path) {
  ordered_json out = ordered_json::array();
  bool failed = false;
  const auto push = [&](const VerificationReport& rep) {
    out.push_back(to_json(rep));
    failed = failed || rep.status == VerifyStatus::fail;
  };

  if (suite == "remark" || suite == "all") {
    push(verify_remark(n_max));
    push(verify_corollary(n_max));
  }
  if (suite == "mainthm" || suite == "all") push(verify_mainthm(k_max, n_cap));
  if (suite == "lemma" || suite == "all") push(verify_lemma(k_max, n_cap));
  if (suite == "theorem1" || suite == "all") {
    push(verify_theorem1(Xi(parse_rational(q_text)), k_max));
  }
  if (suite == "counterexamples" || suite == "all") {
    const VerificationReport rep = counterexamples_report(slow);
    ordered_json j = to_json(rep);
    j["records"] = ordered_json::array();
    for (const CounterexampleRecord& r : check_counterexamples(slow)) {
      j["records"].push_back(to_json(r));
    }
    out.push_back(std::move(j));
    failed = failed || rep.status == VerifyStatus::fail;
  }

  emit(out, out_path);
  return failed ? kVerifyFail : kOk;
}

int run_conjecture(const std::string& weights_text, const std::string& t_text, bool as_json) {
  std::vector<Rational> weights;
  std::stringstream ss(weights_text);
  std::string part;
  while (std::getline(ss, part, ',')) weights.push_back(parse_rational(part));
  if (weights.empty()) throw std::invalid_argument("conjecture: --w needs at least one weight");
  const Rational t = parse_rational(t_text);

  const WeightedSignSum result = tomaszewski_count(weights, t);
  const bool at_least_half = result.probability.value >= Rational(1, 2);
  if (as_json) {
    ordered_json j;
    j["weights"] = ordered_json::array();
    for (const Rational& w : weights) j["weights"].push_back(to_fraction_string(w));
    j["t"] = to_fraction_string(t);
    j["probability"] = exact_and_decimal(result.probability.value);
    j["norm_sq"] = to_fraction_string(result.norm_sq);
    j["at_least_half"] = at_least_half;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "P(|sum a_i eps_i| <= " << to_fraction_string(t)
              << ") = " << to_fraction_string(result.probability.value) << " ("
              << to_decimal_string(result.probability.value) << ")\n"
              << "sum a_i^2 = " << to_fraction_string(result.norm_sq) << "\n"
              << "at least 1/2: " << (at_least_half ? "yes" : "no") << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact probabilities P(|S_n| <= xi sqrt(n)) for Rademacher sign sums: "
               "block structure, sharp lower bounds, and claim verification."};
  app.require_subcommand(1);

  // prob
  auto* cmd_prob = app.add_subcommand("prob", "P(|S_n| <= k) or P(|S_n| <= xi sqrt(n)), exactly");
  std::int64_t prob_n = 0;
  std::optional<std::int64_t> prob_k;
  std::optional<std::string> prob_q;
  bool prob_json = false;
  cmd_prob->add_option("--n", prob_n, "number of signs")->required();
  auto* prob_k_opt = cmd_prob->add_option("--k", prob_k, "integer threshold");
  auto* prob_q_opt =
      cmd_prob->add_option("--q", prob_q, "q = xi^2 as 'p/s' or finite decimal; threshold xi sqrt(n)");
  prob_k_opt->excludes(prob_q_opt);

  // bound
  auto* cmd_bound = app.add_subcommand("bound", "sharp lower bound report for 0 < q <= 1");
  std::string bound_q;
  int bound_digits = 12;
  bool bound_json = false;
  cmd_bound->add_option("--q", bound_q, "q = xi^2, rational in (0, 1]")->required();
  cmd_bound->add_option("--digits", bound_digits, "digits for the normal limit (1..15)");
  cmd_bound->add_flag("--json", bound_json, "emit JSON");

  // blocks
  auto* cmd_blocks = app.add_subcommand("blocks", "block starts n_k and block-end values Q_k^-");
  std::string blocks_q;
  std::int64_t blocks_kmax = 10;
  bool blocks_json = false;
  cmd_blocks->add_option("--q", blocks_q, "q = xi^2, rational > 0")->required();
  cmd_blocks->add_option("--k-max", blocks_kmax, "largest block index to list");
  cmd_blocks->add_flag("--json", blocks_json, "emit JSON");

  // figure
  auto* cmd_figure = app.add_subcommand(
      "figure", "CSV of all exact points (n, ell) with the xi trajectory marked");
  std::int64_t figure_nmax = 0;
  std::string figure_q = "1";
  std::string figure_out;
  std::string figure_boundaries;
  cmd_figure->add_option("--n-max", figure_nmax, "largest n (at most 200)")->required();
  cmd_figure->add_option("--q", figure_q, "q = xi^2 for the marked trajectory");
  cmd_figure->add_option("--out", figure_out, "output CSV path")->required();
  cmd_figure->add_option("--boundaries-out", figure_boundaries,
                         "where to write the block-start companion CSV (default: stdout)");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "sweep the proven claims and report JSON");
  std::string verify_suite;
  std::string verify_q = "1";
  std::int64_t verify_kmax = 25;
  std::int64_t verify_ncap = 2000;
  std::int64_t verify_nmax = 300;
  bool verify_slow = false;
  std::string verify_out;
  cmd_verify
      ->add_option("--suite", verify_suite,
                   "remark | mainthm | lemma | theorem1 | counterexamples | all")
      ->required()
      ->check(CLI::IsMember({"remark", "mainthm", "lemma", "theorem1", "counterexamples", "all"}));
  cmd_verify->add_option("--q", verify_q, "q = xi^2 for the theorem1 suite (default 1)");
  cmd_verify->add_option("--k-max", verify_kmax, "largest k swept (default 25)");
  cmd_verify->add_option("--n-cap", verify_ncap, "largest n swept by mainthm/lemma (default 2000)");
  cmd_verify->add_option(
      "--n-max", verify_nmax,
      "largest n for the remark identity sweeps (default 300; the chain check grows cubically)");
  cmd_verify->add_flag("--slow", verify_slow, "include the n ~ 40000 counterexample");
  cmd_verify->add_option("--out", verify_out, "write the JSON report here instead of stdout");

  // conjecture
  auto* cmd_conjecture = app.add_subcommand(
      "conjecture", "enumerate P(|sum a_i eps_i| <= t) exactly for up to 24 rational weights");
  std::string conjecture_w;
  std::string conjecture_t = "1";
  bool conjecture_json = false;
  cmd_conjecture->add_option("--w", conjecture_w, "comma-separated rational weights")->required();
  cmd_conjecture->add_option("--t", conjecture_t, "threshold t (default 1)");
  cmd_conjecture->add_flag("--json", conjecture_json, "emit JSON");

  cmd_prob->add_flag("--json", prob_json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (cmd_prob->parsed()) {
      if (prob_k.has_value() == prob_q.has_value()) {
        std::cerr << "error: prob needs exactly one of --k or --q\n";
        return kUsage;
      }
      return run_prob(prob_n, prob_k, prob_q, prob_json);
    }
    if (cmd_bound->parsed()) return run_bound(bound_q, bound_digits, bound_json);
    if (cmd_blocks->parsed()) return run_blocks(blocks_q, blocks_kmax, blocks_json);
    if (cmd_figure->parsed()) {
      return run_figure(figure_nmax, figure_q, figure_out, figure_boundaries);
    }
    if (cmd_verify->parsed()) {
      return run_verify(verify_suite, verify_q, verify_kmax, verify_ncap, verify_nmax,
                        verify_slow, verify_out);
    }
    if (cmd_conjecture->parsed()) {
      return run_conjecture(conjecture_w, conjecture_t, conjecture_json);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kOk;
}
