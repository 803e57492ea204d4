#include "rademacher/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace rademacher;

namespace {

bool has_failure_at(const VerificationReport& rep,
                    const std::map<std::string, std::string>& inputs) {
  return std::any_of(rep.failures.begin(), rep.failures.end(), [&](const FailureRecord& f) {
    for (const auto& [key, value] : inputs) {
      const auto it = f.inputs.find(key);
      if (it == f.inputs.end() || it->second != value) return false;
    }
    return true;
  });
}

}  // namespace

TEST_CASE("step identities pass exhaustively and count every tuple", "[verify]") {
  const VerificationReport rep = verify_remark(60);
  REQUIRE(rep.claim_id == "step-identities");
  REQUIRE(rep.status == VerifyStatus::pass);
  REQUIRE(rep.failures.empty());
  REQUIRE(rep.checks_run == 6690);
  REQUIRE_THROWS_AS(verify_remark(1), std::domain_error);
}

TEST_CASE("step identities fail on the wrong parity class", "[verify]") {
  const VerificationReport rep = verify_remark(20, RemarkOptions{.include_odd_parity = true});
  REQUIRE(rep.status == VerifyStatus::fail);
  REQUIRE_FALSE(rep.failures.empty());
  REQUIRE(std::is_sorted(rep.failures.begin(), rep.failures.end()));
  for (const FailureRecord& f : rep.failures) {
    REQUIRE_FALSE(f.relation.empty());
    REQUIRE(f.actual.count("lhs") == 1);
    REQUIRE(f.actual.count("lhs_decimal") == 1);
  }
}

TEST_CASE("the equal-threshold chain passes and pins its check count", "[verify]") {
  const VerificationReport rep = verify_corollary(60);
  REQUIRE(rep.claim_id == "equal-threshold-chain");
  REQUIRE(rep.status == VerifyStatus::pass);
  REQUIRE(rep.checks_run == 37355);
  REQUIRE_THROWS_AS(verify_corollary(1), std::domain_error);
}

TEST_CASE("the equal-threshold chain detects the diagonal degeneracy", "[verify]") {
  const VerificationReport rep = verify_corollary(20, CorollaryOptions{.include_diagonal = true});
  REQUIRE(rep.status == VerifyStatus::fail);
  REQUIRE(has_failure_at(rep, {{"k", "1"}, {"n", "1"}}));
}

TEST_CASE("chain conclusions hold for direct window evaluations", "[verify]") {
  // the two claims behind the chain sweep, recomputed without any recurrence
  for (std::int64_t k : {0, 3, 8}) {
    for (std::int64_t n = k + 2; n <= 40; n += 2) {
      INFO("k = " << k << ", n = " << n);
      REQUIRE(interval_prob(n, k) == interval_prob(n, k + 1));
      REQUIRE(interval_prob(n, k + 1) < interval_prob(n - 2, k + 1));
    }
  }
}

TEST_CASE("the cross-block comparison passes under the square hypothesis", "[verify]") {
  const VerificationReport rep = verify_mainthm(12, 300);
  REQUIRE(rep.claim_id == "cross-block-comparison");
  REQUIRE(rep.status == VerifyStatus::pass);
  REQUIRE(rep.checks_run == 88625);
  REQUIRE_THROWS_AS(verify_mainthm(0, 300), std::domain_error);
  REQUIRE_THROWS_AS(verify_mainthm(12, 0), std::domain_error);
}

TEST_CASE("the cross-block comparison fails without the square hypothesis", "[verify]") {
  const VerificationReport rep =
      verify_mainthm(6, 100, MainthmOptions{.drop_square_hypothesis = true});
  REQUIRE(rep.status == VerifyStatus::fail);
  REQUIRE(has_failure_at(rep, {{"k", "4"}, {"n", "4"}, {"l", "1"}}));

  // the recorded equality point: P_4(2) = P_7(3) = 7/8
  const auto it = std::find_if(rep.failures.begin(), rep.failures.end(), [](const FailureRecord& f) {
    return f.inputs.at("k") == "4" && f.inputs.at("n") == "4" && f.inputs.at("l") == "1";
  });
  REQUIRE(it != rep.failures.end());
  REQUIRE(it->actual.at("lhs") == "7/8");
  REQUIRE(it->actual.at("rhs") == "7/8");
}

TEST_CASE("harmonic-step sums stay within every bound", "[verify]") {
  const VerificationReport rep = verify_lemma(12, 300);
  REQUIRE(rep.claim_id == "harmonic-step-sum");
  REQUIRE(rep.status == VerifyStatus::pass);
  REQUIRE(rep.checks_run == 304582);
}

TEST_CASE("harmonic-step sums overshoot past the admissible length", "[verify]") {
  const VerificationReport rep = verify_lemma(6, 100, LemmaOptions{.overrun_ell_bound = true});
  REQUIRE(rep.status == VerifyStatus::fail);
  const auto it = std::find_if(rep.failures.begin(), rep.failures.end(), [](const FailureRecord& f) {
    return f.relation == "sum_{i=1..l} k/(n+2i) <= 1" && f.inputs.at("k") == "2" &&
           f.inputs.at("n") == "2" && f.inputs.at("l") == "3";
  });
  REQUIRE(it != rep.failures.end());
  REQUIRE(it->actual.at("lhs") == "13/12");
}

TEST_CASE("harmonic and pairing bounds recomputed with plain rationals", "[verify]") {
  // same claims as the lemma sweep, evaluated with reduced rationals instead
  // of the unreduced running fraction and the 128-bit cross products
  for (std::int64_t k = 1; k <= 4; ++k) {
    std::int64_t n = std::max<std::int64_t>(k * k - 2, 0);
    if ((n + k) % 2 != 0) ++n;
    for (; n <= 24; n += 2) {
      std::int64_t lim = 0;
      while (BigInt(k) * k * (n + 1 + 2 * (lim + 1)) < BigInt(k + 1) * (k + 1) * (n + 2)) ++lim;
      Rational sum(0);
      for (std::int64_t l = 1; l <= lim; ++l) {
        sum += Rational(k, n + 2 * l);
        INFO("k = " << k << ", n = " << n << ", l = " << l);
        REQUIRE(sum <= 1);
        const Rational pairing =
            Rational(l, 2) * (Rational(k, n + 2) + Rational(k, n + 2 * l));
        REQUIRE(sum <= pairing);
        REQUIRE(Rational(l, n + 2) + Rational(l, n + 2 * l) <= Rational(2, k));
      }
    }
  }
  // the spot value quoted in the sweep documentation
  Rational spot(0);
  for (std::int64_t i = 1; i <= 4; ++i) spot += Rational(1, 1 + 2 * i);
  REQUIRE(spot == Rational(248, 315));
}

TEST_CASE("block minima hold across the guaranteed regime", "[verify]") {
  for (const Rational& q : {Rational(1), Rational(2, 3), Rational(1, 2)}) {
    const VerificationReport rep = verify_theorem1(Xi(q), 10);
    INFO("q = " << to_fraction_string(q));
    REQUIRE(rep.claim_id == "block-minima");
    REQUIRE(rep.status == VerifyStatus::pass);
    REQUIRE(rep.checks_run > 0);
  }
  REQUIRE_THROWS_AS(verify_theorem1(Xi(Rational(1)), 0), std::domain_error);
}

TEST_CASE("tied block minima are reported as information, not failure", "[verify]") {
  const VerificationReport rep = verify_theorem1(Xi(Rational(1, 4)), 3);
  REQUIRE(rep.status == VerifyStatus::pass);
  REQUIRE_FALSE(rep.info.empty());
  REQUIRE(rep.info.front().inputs.at("claim") == "b-uniqueness");
}

TEST_CASE("outside the regime the sweep is exploratory and records violations", "[verify]") {
  const VerificationReport rep = verify_theorem1(Xi(Rational(2)), 6);
  REQUIRE(rep.status == VerifyStatus::exploratory);
  REQUIRE_FALSE(rep.failures.empty());
  REQUIRE(has_failure_at(rep, {{"claim", "c"}, {"k", "3"}}));

  const VerificationReport enforced =
      verify_theorem1(Xi(Rational(2)), 6, Theorem1Options{.enforce_outside_regime = true});
  REQUIRE(enforced.status == VerifyStatus::fail);
}

TEST_CASE("recorded counterexamples confirm with their boundaries", "[verify]") {
  const auto records = check_counterexamples(false);
  REQUIRE(records.size() == 2);

  REQUIRE(records[0].q == Rational(2));
  REQUIRE(records[0].k == 4);
  REQUIRE(records[0].n_k_value == 7);
  REQUIRE(records[0].n_k1_value == 12);
  REQUIRE(records[0].lhs.value == Rational(99, 128));
  REQUIRE(records[0].rhs.value == Rational(100, 128));
  REQUIRE(records[0].confirmed);

  REQUIRE(records[1].q == Rational(121, 100));
  REQUIRE(records[1].k == 22);
  REQUIRE(records[1].n_k_value == 399);
  REQUIRE(records[1].n_k1_value == 438);
  REQUIRE(records[1].confirmed);
  REQUIRE(records[1].lhs.value < Rational(70745, 100000));
  REQUIRE(Rational(70745, 100000) < records[1].rhs.value);

  const VerificationReport rep = counterexamples_report(false);
  REQUIRE(rep.claim_id == "block-end-counterexamples");
  REQUIRE(rep.status == VerifyStatus::pass);
  REQUIRE(rep.checks_run == 6);
}

TEST_CASE("counterexample control asserts the broken direction and fails", "[verify]") {
  const VerificationReport rep =
      counterexamples_report(false, CounterexampleOptions{.assert_block_monotonicity = true});
  REQUIRE(rep.status == VerifyStatus::fail);
  REQUIRE(rep.failures.size() == 2);
  for (const FailureRecord& f : rep.failures) {
    REQUIRE(f.relation == "Q_{k-1}^- < Q_k^-");
  }
}

TEST_CASE("report serialization is deterministic with a stable field order", "[verify]") {
  const std::string a = to_json(verify_remark(30)).dump(2);
  const std::string b = to_json(verify_remark(30)).dump(2);
  REQUIRE(a == b);
  REQUIRE(a.rfind("{\n  \"claim_id\"", 0) == 0);

  const VerificationReport failing =
      verify_corollary(10, CorollaryOptions{.include_diagonal = true});
  const nlohmann::ordered_json j = to_json(failing);
  REQUIRE(j["status"] == "fail");
  REQUIRE(j["failures"].is_array());
  REQUIRE_FALSE(j["failures"].empty());
  REQUIRE(j["failures"][0].contains("inputs"));
  REQUIRE(j["failures"][0].contains("relation"));
  REQUIRE(j["failures"][0].contains("actual"));

  const nlohmann::ordered_json rec = to_json(check_counterexamples(false)[0]);
  REQUIRE(rec["q"] == "2");
  REQUIRE(rec["k"] == 4);
  REQUIRE(rec["lhs"]["exact"] == "99/128");
  REQUIRE(rec["rhs"]["exact"] == "25/32");
  REQUIRE(rec["confirmed"] == true);

  REQUIRE(std::string(to_string(VerifyStatus::pass)) == "pass");
  REQUIRE(std::string(to_string(VerifyStatus::fail)) == "fail");
  REQUIRE(std::string(to_string(VerifyStatus::exploratory)) == "exploratory");
}
