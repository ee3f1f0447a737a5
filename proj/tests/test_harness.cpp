#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "rsinsdel/harness.hpp"

using namespace rsinsdel;

namespace {

std::string jsonl(const McResult& r) {
    std::ostringstream out;
    write_jsonl(out, r.records, summary_json(r.summary));
    return out.str();
}

ExperimentConfig small_config(McMode mode) {
    ExperimentConfig c;
    c.n = 12;
    c.k = 2;
    c.q = 101;
    c.eps = Rational(1, 2);
    c.trials = 60;
    c.seed = 17;
    c.mode = mode;
    return c;
}

}  // namespace

TEST_CASE("max LCS of constant codes") {
    const PrimeModulus three(3);
    const MaxLcsResult r = brute_force_max_lcs(RsCode(3, 1, three, {0, 1, 2}));
    CHECK(r.max_lcs == 0);
}

TEST_CASE("max LCS against exhaustive subsequence search") {
    const PrimeModulus m(13);
    const RsCode code = sample_random_code(5, 2, m, RandomSeed{5, 0});
    const MaxLcsResult a = brute_force_max_lcs(code), b = brute_force_max_lcs(code);
    CHECK(a.max_lcs == b.max_lcs);
    CHECK(a.witness == b.witness);
    CHECK(a.first_message == b.first_message);

    std::vector<Codeword> words;
    CodewordEnumerator it(code);
    while (auto next = it.next()) words.push_back(next->second);
    std::size_t best = 0;
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = i + 1; j < words.size(); ++j) best = std::max(best, oracle::lcs_exhaustive(words[i], words[j]));
    CHECK(a.max_lcs == best);
    CHECK(a.max_lcs >= 2);  // 2k-2
    REQUIRE(a.witness.size() == a.max_lcs);
    for (std::size_t i = 1; i <= a.max_lcs; ++i) CHECK(a.first[a.witness.I()(i) - 1] == a.second[a.witness.J()(i) - 1]);
    CHECK(a.first == code.encode(Polynomial(m, a.first_message)));
    CHECK_THROWS_AS(brute_force_max_lcs(code, 100), BudgetExceeded);
}

TEST_CASE("brute-force correction verdicts") {
    const PrimeModulus m(31);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const RsCode code = sample_random_code(6, 2, m, RandomSeed{s, 0});
        const std::size_t max_lcs = brute_force_max_lcs(code).max_lcs;
        CHECK(corrects_insdel_bruteforce(code, 0) == (max_lcs <= 5));
        CHECK_FALSE(corrects_insdel_bruteforce(code, 6));
        for (std::size_t t = 0; t <= 6; ++t) CHECK(corrects_insdel_bruteforce(code, t) == (max_lcs + t + 1 <= 6));
    }
}

TEST_CASE("V-matrix verifier") {
    const PrimeModulus m(13);
    // alpha makes x and x - 1 collide on 0, 1, 2
    const RsCode collide(5, 2, m, {0, 1, 2, 3, 7});
    const VMatrixVerdict v = corrects_insdel_vmatrix(collide, 3);
    CHECK_FALSE(v.full_rank);
    REQUIRE(v.witness);
    CHECK(agreement_count(*v.witness) <= 1);
    CHECK(v.witness_rank < 3);
    CHECK(vmatrix_rank(2, *v.witness, collide.alpha(), m) == v.witness_rank);

    const VMatrixVerdict all = corrects_insdel_vmatrix(collide, 5);
    CHECK(all.full_rank);
    CHECK(all.pairs_checked == 0);  // only I = J = (1..5), filtered out

    CHECK_THROWS_AS(corrects_insdel_vmatrix(collide, 2), std::invalid_argument);
    CHECK_THROWS_AS(corrects_insdel_vmatrix(collide, 6), std::invalid_argument);
    CHECK_THROWS_AS(corrects_insdel_vmatrix(collide, 3, 10), BudgetExceeded);
}

TEST_CASE("V-matrix verdicts are sound") {
    int proved = 0;
    for (std::uint64_t s = 0; s < 120; ++s) {
        const std::uint64_t q = s % 2 ? 31 : 17;
        const std::size_t n = 5 + s % 2;
        const PrimeModulus m(q);
        const RsCode code = sample_random_code(n, 2, m, RandomSeed{s, 7});
        for (std::size_t l = 3; l <= n; ++l) {
            const VMatrixVerdict v = corrects_insdel_vmatrix(code, l);
            if (v.full_rank) {
                ++proved;
                REQUIRE(corrects_insdel_bruteforce(code, n - l));
            } else {
                REQUIRE(vmatrix_rank(2, *v.witness, code.alpha(), m) < 3);
            }
        }
    }
    CHECK(proved > 100);
}

TEST_CASE("vmatrix_rank agrees with the elimination oracle") {
    Rng rng({51, 0});
    for (int rep = 0; rep < 500; ++rep) {
        const std::size_t k = 1 + rng.below(3);
        const MatchingPair pair = sample_matching_pair(10, 2 * k - 1 + rng.below(4), k - 1, rng);
        const auto alpha = sample_distinct_residues(10, 13, rng);
        REQUIRE(vmatrix_rank(k, pair, alpha, PrimeModulus(13)) ==
                oracle::rref_rank(oracle::v_matrix(pair.I().indices(), pair.J().indices(), alpha, k, 13), 13));
    }
}

TEST_CASE("Monte Carlo configuration errors") {
    ExperimentConfig c = small_config(McMode::Rank);
    c.trials = 0;
    CHECK_THROWS_AS(monte_carlo(c), std::invalid_argument);
    c = small_config(McMode::Rank);
    c.q = 100;
    CHECK_THROWS_AS(monte_carlo(c), std::invalid_argument);
    c = small_config(McMode::Certify1);
    c.r = 4;  // ceil(6/2) = 3
    CHECK_THROWS_AS(monte_carlo(c), std::invalid_argument);
    c = small_config(McMode::Certify2);
    CHECK_THROWS_AS(monte_carlo(c), std::invalid_argument);  // l = 9 too short for eps0 = 1/4
    CHECK_THROWS_AS(parse_mode("nope"), std::invalid_argument);
}

TEST_CASE("Monte Carlo output is reproducible and independent of workers") {
    for (McMode mode : {McMode::Rank, McMode::Certify1, McMode::Zero}) {
        ExperimentConfig c = small_config(mode);
        const McResult a = monte_carlo(c);
        c.workers = 3;
        const McResult b = monte_carlo(c);
        CHECK(jsonl(a) == jsonl(b));
        for (std::uint64_t t : {0ULL, 13ULL, 59ULL}) {
            CHECK(to_json(run_trial(c, t)) == to_json(a.records[t]));
        }
        CHECK(a.summary.invariant_violations == 0);
    }
}

TEST_CASE("JSONL and CSV shapes") {
    ExperimentConfig c = small_config(McMode::Certify1);
    c.q = 13;
    c.trials = 2000;
    const McResult r = monte_carlo(c);
    CHECK(r.summary.failures > 0);
    std::istringstream lines(jsonl(r));
    std::string line;
    std::vector<nlohmann::json> objs;
    while (std::getline(lines, line)) objs.push_back(nlohmann::json::parse(line));
    REQUIRE(objs.size() == c.trials + 1);
    for (std::size_t i = 0; i < c.trials; ++i) {
        const auto& o = objs[i];
        CHECK(o.at("trial") == i);
        CHECK(o.at("mode") == "certify1");
        const std::string outcome = o.at("outcome");
        CHECK((outcome == "success" || outcome == "certificate"));
        CHECK(o.at("nanos") == 0);
        if (outcome == "certificate") CHECK(o.at("witness").at("certificate").size() == 3);
    }
    const auto& s = objs.back();
    CHECK(s.at("trials") == c.trials);
    CHECK(s.at("failures") == r.summary.failures);
    CHECK(s.at("ci95").size() == 2);
    CHECK(s.contains("bound"));
    CHECK(s.contains("vacuous"));

    std::ostringstream csv;
    write_csv(csv, r.records, summary_json(r.summary));
    const std::string text = csv.str();
    CHECK(text.rfind(kCsvTrialHeader, 0) == 0);
    CHECK(text.find(std::string("\n\n") + kCsvSummaryHeader + "\n") != std::string::npos);
}

TEST_CASE("zero-polynomial mode counts roots of X(X-1)") {
    ExperimentConfig c;
    c.n = 1;
    c.q = 5;
    c.trials = 5000;
    c.seed = 3;
    c.mode = McMode::Zero;
    const McResult r = monte_carlo(c);
    CHECK(r.summary.bound.exact == Rational(2, 5));
    CHECK(r.summary.freq == doctest::Approx(0.4).epsilon(0.1));
    for (const auto& rec : r.records)
        if (rec.failure) CHECK(rec.witness.at("alpha1").get<std::uint64_t>() <= 1);
}

TEST_CASE("theorem experiments") {
    ExperimentConfig c;
    c.n = 8;
    c.k = 1;
    c.q = 101;
    c.eps = Rational(1, 2);
    c.trials = 5;
    const TheoremSummary one = run_theorem_experiment(TheoremKind::M1, c);
    CHECK(one.failures == 0);
    CHECK(one.ell == 5);
    CHECK(one.prediction.exact == 0);

    c.n = 10;
    c.k = 2;
    c.q = 10007;
    c.eps = Rational(3, 10);
    const TheoremSummary m1 = run_theorem_experiment(TheoremKind::M1, c);
    CHECK(m1.r == 2);
    CHECK(m1.prediction.exact == Rational(210 * 210) * Rational(20, 9998) * Rational(20, 9998));
    CHECK_FALSE(m1.threshold_met);
    const TheoremSummary mn = run_theorem_experiment(TheoremKind::Main, c);
    CHECK(mn.eps0 == Rational(3, 40));
    CHECK(mn.r == 1);

    c.n = 30;
    c.eps = Rational(1, 2);
    CHECK_THROWS_AS(run_theorem_experiment(TheoremKind::M1, c), BudgetExceeded);
}
