// Acceptance suite: one line per criterion, "PASS"/"FAIL", then details.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rsinsdel/bounds.hpp"
#include "rsinsdel/certify.hpp"
#include "rsinsdel/chains.hpp"
#include "rsinsdel/harness.hpp"
#include "rsinsdel/vmatrix.hpp"

using namespace rsinsdel;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;  // 0: no runtime bound
    std::function<Verdict()> run;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<int> random_word(Rng& rng, std::size_t max_len, int alphabet) {
    std::vector<int> w(rng.below(max_len + 1));
    for (auto& x : w) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(alphabet)));
    return w;
}

/// Insertion/deletion distance by a suffix recursion, written independently
/// of the library's prefix DPs.
std::size_t indel_distance_suffix(const std::vector<int>& s, const std::vector<int>& t) {
    const std::size_t m = s.size(), n = t.size();
    std::vector<std::vector<std::size_t>> d(m + 1, std::vector<std::size_t>(n + 1));
    for (std::size_t i = m + 1; i-- > 0;) {
        for (std::size_t j = n + 1; j-- > 0;) {
            if (i == m) d[i][j] = n - j;
            else if (j == n) d[i][j] = m - i;
            else if (s[i] == t[j]) d[i][j] = d[i + 1][j + 1];
            else d[i][j] = 1 + std::min(d[i + 1][j], d[i][j + 1]);
        }
    }
    return d[0][0];
}

std::vector<Index> sorted_indices(const std::vector<std::uint64_t>& zero_based) {
    std::vector<Index> v;
    for (auto x : zero_based) v.push_back(static_cast<Index>(x + 1));
    std::sort(v.begin(), v.end());
    return v;
}

MatchingPair random_pair(Rng& rng, std::size_t n, std::size_t l) {
    return MatchingPair(sorted_indices(sample_distinct_residues(l, n, rng)),
                        sorted_indices(sample_distinct_residues(l, n, rng)), static_cast<Index>(n));
}

/// Rejection sampling with a short cap: near l = n admissible pairs are rare
/// or absent, and those parameter draws are simply skipped.
std::optional<MatchingPair> admissible_pair(Rng& rng, std::size_t n, std::size_t l, std::size_t max_agree) {
    for (int attempt = 0; attempt < 2000; ++attempt) {
        MatchingPair pair = random_pair(rng, n, l);
        if (agreement_count(pair) <= max_agree) return pair;
    }
    return std::nullopt;
}

std::size_t oracle_rank(const MatchingPair& pair, const std::vector<std::uint64_t>& alpha, std::size_t k,
                        std::uint64_t q) {
    return oracle::rref_rank(oracle::v_matrix(pair.I().indices(), pair.J().indices(), alpha, k, q), q);
}

// 1
Verdict ed_lcs_identity() {
    Rng rng({1001, 0});
    const int alphabets[] = {2, 5, 17};
    std::size_t bad = 0;
    const std::size_t total = 10000;
    for (std::size_t rep = 0; rep < total; ++rep) {
        const int a = alphabets[rep % 3];
        const auto s = random_word(rng, 30, a), t = random_word(rng, 30, a);
        const std::span<const int> ss(s), ts(t);
        const std::size_t ed = edit_distance(ss, ts);
        const std::size_t len = lcs_length(ss, ts);
        const LcsResult w = lcs(ss, ts);
        bool ok = ed == indel_distance_suffix(s, t) && ed == s.size() + t.size() - 2 * len && w.length == len &&
                  w.I.size() == len && w.J.size() == len;
        for (std::size_t i = 0; ok && i < len; ++i) {
            ok = s[w.I[i] - 1] == t[w.J[i] - 1] && (i == 0 || (w.I[i] > w.I[i - 1] && w.J[i] > w.J[i - 1]));
        }
        bad += !ok;
    }
    return {bad == 0, fmt("%zu/%zu pairs agree", total - bad, total)};
}

// 2
Verdict rank_oracle() {
    Rng rng({1002, 0});
    const std::uint64_t qs[] = {2, 13, 10007};
    std::size_t bad = 0, deficient = 0;
    const std::size_t total = 10000;
    for (std::size_t rep = 0; rep < total; ++rep) {
        const std::uint64_t q = qs[rep % 3];
        const std::size_t rows = 1 + rng.below(12), cols = 1 + rng.below(12);
        oracle::Matrix m(rows, std::vector<std::uint64_t>(cols));
        if (rep % 2 == 0) {
            for (auto& row : m)
                for (auto& x : row) x = rng.below(q);
        } else {
            // Low-rank product A (rows x t) * B (t x cols).
            const std::size_t t = 1 + rng.below(std::min(rows, cols));
            oracle::Matrix A(rows, std::vector<std::uint64_t>(t)), B(t, std::vector<std::uint64_t>(cols));
            for (auto& row : A)
                for (auto& x : row) x = rng.below(q);
            for (auto& row : B)
                for (auto& x : row) x = rng.below(q);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) {
                    std::uint64_t acc = 0;
                    for (std::size_t h = 0; h < t; ++h) acc = (acc + oracle::mulmod(A[i][h], B[h][j], q)) % q;
                    m[i][j] = acc;
                }
        }
        std::vector<std::uint64_t> flat;
        for (const auto& row : m) flat.insert(flat.end(), row.begin(), row.end());
        const std::size_t expect = oracle::rref_rank(m, q);
        deficient += expect < std::min(rows, cols);
        bad += rank(FieldMatrix(rows, cols, PrimeModulus(q), flat)) != expect;
    }
    return {bad == 0, fmt("%zu/%zu ranks agree (%zu rank-deficient)", total - bad, total, deficient)};
}

// 3
Verdict lemma_bad() {
    Rng rng({1003, 0});
    const std::size_t codes = 100, k = 2;
    std::size_t collisions = 0, bad = 0;
    for (std::size_t c = 0; c < codes; ++c) {
        const std::uint64_t q = c % 2 ? 31 : 13;
        const std::size_t n = 5 + rng.below(2), ell = 3 + rng.below(2);
        const PrimeModulus mod(q);
        const RsCode code = sample_random_code(n, k, mod, rng);
        std::vector<Codeword> words;
        CodewordEnumerator e(code);
        while (auto next = e.next()) words.push_back(next->second);
        for (std::size_t a = 0; a < words.size(); ++a) {
            for (std::size_t b = a + 1; b < words.size(); ++b) {
                const std::span<const std::uint64_t> s(words[a]), t(words[b]);
                if (lcs_length(s, t) < ell) continue;
                ++collisions;
                const auto pair = extract_matching(s, t, ell);
                const bool ok = pair && pair->size() == ell && agreement_count(*pair) <= k - 1 &&
                                oracle_rank(*pair, code.alpha(), k, q) < 2 * k - 1;
                bad += !ok;
            }
        }
    }
    return {bad == 0 && collisions > 0,
            fmt("%zu codes, %zu collisions, %zu without a rank-deficient matching", codes, collisions, bad)};
}

// 4
Verdict symbolic_nonvanishing() {
    Rng rng({1004, 0});
    const PrimeModulus mod(10007);
    std::size_t bad = 0, done = 0;
    while (done < 1000) {
        const std::size_t k = 1 + rng.below(3);
        const std::size_t l = 2 * k - 1;
        const std::size_t n = std::max<std::size_t>(l + 1, 2 + rng.below(11));
        const auto pair = admissible_pair(rng, n, l, k - 1);
        if (!pair) continue;
        ++done;
        const VMatrixSpec spec(k, *pair);
        const MultiPoly det = symbolic_determinant(spec, PartialAssignment::none(static_cast<Index>(n)), mod);
        bool ok = !det.is_zero();
        for (Index v = 1; ok && v <= n; ++v) ok = det.degree_in(v) <= 2 * (k - 1);
        // Expansion agrees with a Leibniz evaluation at a random point.
        const auto point = sample_distinct_residues(n, mod.value(), rng);
        ok = ok && det.evaluate(point) ==
                       oracle::leibniz_det(
                           oracle::v_matrix(pair->I().indices(), pair->J().indices(), point, k, mod.value()),
                           mod.value());
        bad += !ok;
    }
    return {bad == 0, fmt("%zu/%zu determinants nonzero with degree <= 2(k-1)", done - bad, done)};
}

// 5
Verdict algorithm1_contract() {
    Rng rng({1005, 0});
    const std::uint64_t qs[] = {17, 31, 10007};
    std::size_t runs = 0, fails = 0, unconfirmed = 0, repeated = 0, certificates = 0;
    while (runs < 10000) {
        const std::size_t k = 1 + rng.below(3);
        const std::size_t n = 2 * k + rng.below(15 - 2 * k);  // 2k <= n <= 14
        const std::size_t e = 1 + rng.below(n - 2 * k + 1);   // l = 2k-1+e <= n
        const Rational eps(static_cast<std::int64_t>(e), static_cast<std::int64_t>(n));
        const std::size_t l = 2 * k - 1 + e;
        const std::size_t r = ceil(eps * static_cast<std::int64_t>(n) / 2).convert_to<std::size_t>();
        const std::uint64_t q = qs[rng.below(3)];
        const auto pair = admissible_pair(rng, n, l, k - 1);
        if (!pair) continue;
        ++runs;
        const PrimeModulus mod(q);
        const auto alpha = sample_distinct_residues(n, q, rng);
        CertifyOutcome out;
        try {
            out = certify_v1(n, k, r, eps, *pair, alpha, mod);
        } catch (const InvariantViolation&) {
            ++fails;
            continue;
        }
        if (out.kind == OutcomeKind::Fail) {
            ++fails;
        } else if (out.kind == OutcomeKind::Success) {
            unconfirmed += oracle_rank(*pair, alpha, k, q) != 2 * k - 1;
        } else {
            ++certificates;
            const std::set<std::uint64_t> distinct(out.indices.begin(), out.indices.end());
            repeated += distinct.size() != out.indices.size() || out.indices.size() != r;
        }
    }
    return {fails == 0 && unconfirmed == 0 && repeated == 0,
            fmt("%zu runs: %zu FAIL, %zu unconfirmed SUCCESS, %zu certificates (%zu with repeats)", runs, fails,
                unconfirmed, certificates, repeated)};
}

// 6
Verdict certificate_probability() {
    ExperimentConfig c;
    c.n = 12;
    c.k = 2;
    c.q = 4099;
    c.eps = Rational(1, 2);
    c.r = 3;
    c.trials = 100000;
    c.seed = 1006;
    c.mode = McMode::Rank;
    c.fixed_pair = MatchingPair({1, 2, 3, 4, 5, 6, 7, 8, 9}, {2, 3, 4, 5, 6, 7, 8, 9, 10}, 12);
    const McSummary s = monte_carlo(c).summary;
    const bool ok = s.failures == 0 && !s.bound.vacuous && s.ci95.first <= s.bound.value &&
                    std::abs(s.bound.value - 2.0e-7) < 0.05e-7;
    return {ok, fmt("%llu/%llu non-full-rank, CP95 [%.3g, %.3g], bound %.4g", (unsigned long long)s.failures,
                    (unsigned long long)s.trials, s.ci95.first, s.ci95.second, s.bound.value)};
}

// 7
Verdict chain_decomposition() {
    Rng rng({1007, 0});
    const Rational epss[] = {Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 5), Rational(3, 10)};
    std::size_t bad = 0;
    const std::size_t total = 10000;
    for (std::size_t rep = 0; rep < total; ++rep) {
        const std::size_t n = 2 + rng.below(39);
        const std::size_t l = 1 + rng.below(std::min<std::size_t>(20, n));
        const MatchingPair pair = random_pair(rng, n, l);
        IndexSet P;
        for (Index i = 1; i <= l; ++i)
            if (rng.below(4) != 0) P.insert(i);
        if (P.empty()) P.insert(1);

        const ChainDecomposition d = decompose(pair, P);
        IndexSet seen;
        bool ok = true;
        for (const auto& part : d.parts) {
            for (Index p : part.members) ok = ok && seen.insert(p).second;
            const MatchingPair sub = restrict(pair, part.members);
            ok = ok && oracle::chain_by_definition(sub.I().indices(), sub.J().indices()) &&
                 is_maximal(pair, P, part.members);
        }
        ok = ok && seen == P && mutually_disjoint(pair, d.part_sets());

        const Rational& eps = epss[rng.below(5)];
        const ChainDecomposition split = split_long_chains(pair, eps);
        ok = ok && Rational(static_cast<std::int64_t>(split.ground.size())) >= (1 - eps) * static_cast<std::int64_t>(l);
        for (const auto& part : split.parts) ok = ok && BigInt(part.members.size()) <= floor(1 / eps);
        bad += !ok;
    }
    const MatchingPair fig({3, 4, 6, 7, 8, 9}, {1, 2, 3, 4, 6, 8}, 10);
    IndexSet all{1, 2, 3, 4, 5, 6};
    const auto parts = decompose(fig, all).part_sets();
    const bool figure = std::set<IndexSet>(parts.begin(), parts.end()) == std::set<IndexSet>{{1, 3, 5, 6}, {2, 4}};
    return {bad == 0 && figure, fmt("%zu/%zu random cases, figure example %s", total - bad, total,
                                    figure ? "reproduced" : "MISMATCH")};
}

// 8 (also feeds 9)
struct V2Stats {
    std::map<std::pair<std::size_t, std::size_t>, std::set<std::vector<std::uint64_t>>> certificates;
};

Verdict algorithm2_contract(V2Stats& stats) {
    Rng rng({1008, 0});
    struct Shape {
        std::size_t k, r;
        Rational eps0;
        std::size_t ell;
    };
    // Smallest l satisfying the linear condition for each (k, r, eps0).
    std::vector<Shape> shapes;
    for (std::size_t k : {1, 2}) {
        for (std::size_t r : {1, 2, 3}) {
            for (const Rational& eps0 : {Rational(1, 3), Rational(1, 4)}) {
                for (std::size_t l = 2 * k - 1; l <= 40; ++l) {
                    if (linear_condition_holds(l, k, r, eps0)) {
                        shapes.push_back({k, r, eps0, l});
                        break;
                    }
                }
            }
        }
    }
    std::size_t runs = 0, violations = 0, replay_mismatch = 0, misordered = 0, certs = 0;
    while (runs < 10000) {
        const Shape& sh = shapes[rng.below(shapes.size())];
        const std::size_t n = 2 * sh.ell + rng.below(4);
        const std::uint64_t q = [&] {
            std::uint64_t p = n + rng.below(8);
            while (!is_prime(p)) ++p;
            return p;
        }();
        const auto pair = admissible_pair(rng, n, sh.ell, sh.k - 1);
        if (!pair) continue;
        ++runs;
        const PrimeModulus mod(q);
        const auto alpha = sample_distinct_residues(n, q, rng);
        try {
            const CertifyV2Input in = prepare_v2_input(n, sh.k, sh.r, sh.eps0, *pair);
            CertifyV2Trace first, second;
            CertifyV2Options o1, o2;
            o1.trace = &first;
            o2.trace = &second;
            const CertifyOutcome a = certify_v2(in, alpha, mod, o1);
            const CertifyOutcome b = certify_v2(in, alpha, mod, o2);
            bool same = a == b && first == second;
            for (const CheckPoint& cp : first.checkpoints) {
                const auto st = reconstruct_state(in, cp.certificate, cp.c);
                same = same && st && st->Q == cp.Q && st->a == cp.a;
            }
            replay_mismatch += !same;
            if (a.kind == OutcomeKind::Certificate) {
                ++certs;
                const bool in_range = std::all_of(a.indices.begin(), a.indices.end(),
                                                  [&](std::uint64_t v) { return v <= 2 * sh.k - 2; });
                misordered += !std::is_sorted(a.indices.begin(), a.indices.end()) || !in_range ||
                              a.indices.size() != sh.r;
                stats.certificates[{sh.k, sh.r}].insert(a.indices);
            } else if (a.kind == OutcomeKind::Fail) {
                ++violations;
            }
        } catch (const InvariantViolation&) {
            ++violations;
        }
    }
    return {violations == 0 && replay_mismatch == 0 && misordered == 0,
            fmt("%zu runs over %zu shapes: %zu violations, %zu replay mismatches, %zu certificates (%zu malformed)",
                runs, shapes.size(), violations, replay_mismatch, certs, misordered)};
}

// 9
Verdict certificate_counting(const V2Stats& stats) {
    bool ok = true;
    for (std::size_t k = 1; k <= 4; ++k) {
        for (std::size_t r = 1; r <= 6; ++r) {
            // Nondecreasing length-r sequences over {0..2k-2}, by enumeration.
            std::uint64_t count = 0;
            std::vector<std::size_t> seq(r, 0);
            const std::size_t top = 2 * k - 2;
            for (;;) {
                ++count;
                std::size_t i = r;
                while (i > 0 && seq[i - 1] == top) --i;
                if (i == 0) break;
                const std::size_t v = seq[i - 1] + 1;
                for (std::size_t j = i - 1; j < r; ++j) seq[j] = v;
            }
            const CertificateCount cc = certificate_count_bound(k, r);
            ok = ok && cc.exact == BigInt(count) && cc.exact <= cc.bound;
        }
    }
    std::size_t seen = 0;
    for (const auto& [kr, set] : stats.certificates) {
        seen += set.size();
        ok = ok && BigInt(set.size()) <= certificate_count_bound(kr.first, kr.second).exact;
    }
    return {ok, fmt("counts exhaustive for k<=4, r<=6; %zu distinct certificates observed within exact counts", seen)};
}

// 10
Verdict theorem_m1() {
    ExperimentConfig c;
    c.n = 10;
    c.k = 2;
    c.q = 10007;
    c.eps = Rational(3, 10);
    c.trials = 200;
    c.seed = 1010;
    const TheoremSummary s = run_theorem_experiment(TheoremKind::M1, c);
    const double max_s = static_cast<double>(s.max_code_nanos) * 1e-9;
    const bool ok = s.ell == 6 && s.failures == 0 && s.ci95.first <= s.prediction.value && max_s < 2.0;
    return {ok, fmt("%llu/%llu codes failed, CP95 [%.3g, %.3g], prediction %.4g, slowest code %.3f s",
                    (unsigned long long)s.failures, (unsigned long long)s.codes, s.ci95.first, s.ci95.second,
                    s.prediction.value, max_s)};
}

// 11
Verdict half_singleton() {
    Rng rng({1011, 0});
    const PrimeModulus mod(31);
    std::size_t low = 0, smallest = SIZE_MAX;
    for (int c = 0; c < 50; ++c) {
        const RsCode code = sample_random_code(6, 2, mod, rng);
        const std::size_t m = brute_force_max_lcs(code).max_lcs;
        smallest = std::min(smallest, m);
        low += m < 2;
    }
    return {low == 0, fmt("50 codes, smallest max LCS %zu", smallest)};
}

// 12
Verdict schwartz_zippel() {
    ExperimentConfig c;
    c.n = 1;
    c.q = 101;
    c.trials = 100000;
    c.seed = 1012;
    c.mode = McMode::Zero;
    const McSummary s = monte_carlo(c).summary;
    const double p = 2.0 / 101.0;
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(s.trials));
    const bool ok = std::abs(s.freq - p) <= 3 * sigma && s.ci95.first <= s.bound.value &&
                    s.bound.exact == Rational(2, 101);
    return {ok, fmt("freq %.5f vs 2/101 = %.5f (%.2f sigma), CP95 [%.5f, %.5f]", s.freq, p,
                    std::abs(s.freq - p) / sigma, s.ci95.first, s.ci95.second)};
}

}  // namespace

int main() {
    V2Stats v2;
    const std::vector<Criterion> criteria{
        {1, "ED-LCS identity", 10, ed_lcs_identity},
        {2, "rank oracle equivalence", 30, rank_oracle},
        {3, "collision implies rank-deficient matching", 300, lemma_bad},
        {4, "symbolic nonvanishing and degree", 0, symbolic_nonvanishing},
        {5, "Algorithm 1 contract", 0, algorithm1_contract},
        {6, "certificate probability", 600, certificate_probability},
        {7, "chain decomposition", 0, chain_decomposition},
        {8, "Algorithm 2 contract", 0, [&] { return algorithm2_contract(v2); }},
        {9, "certificate counting", 0, [&] { return certificate_counting(v2); }},
        {10, "theorem-level experiment", 0, theorem_m1},
        {11, "half-Singleton sanity", 0, half_singleton},
        {12, "Schwartz-Zippel frequency", 0, schwartz_zippel},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        std::string timing = fmt("%.2f s", secs);
        if (c.limit_seconds > 0) {
            timing += fmt(" (limit %.0f s)", c.limit_seconds);
            if (secs >= c.limit_seconds) v.pass = false;
        }
        failed += !v.pass;
        std::printf("[%s] %2d %-44s %s; %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), v.detail.c_str(),
                    timing.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
