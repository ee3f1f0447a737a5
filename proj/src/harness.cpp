#include "rsinsdel/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace rsinsdel {

using nlohmann::json;

MaxLcsResult brute_force_max_lcs(const RsCode& code, std::uint64_t budget) {
    if (!message_count(code.q(), code.k(), budget)) {
        throw BudgetExceeded("q^k = " + std::to_string(code.q()) + "^" + std::to_string(code.k()) +
                             " codewords exceed the enumeration budget " + std::to_string(budget));
    }
    std::vector<Codeword> words;
    std::vector<std::vector<std::uint64_t>> messages;
    CodewordEnumerator it(code, budget);
    while (auto next = it.next()) {
        messages.push_back(next->first.coefficients());
        words.push_back(std::move(next->second));
    }

    MaxLcsResult best;
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t j = i + 1; j < words.size(); ++j) {
            const std::size_t len = lcs_length(std::span<const std::uint64_t>(words[i]), std::span<const std::uint64_t>(words[j]));
            if (!found || len > best.max_lcs) {
                best.max_lcs = len;
                bi = i;
                bj = j;
                found = true;
            }
        }
    }
    if (!found) return best;
    best.first = words[bi];
    best.second = words[bj];
    best.first_message = messages[bi];
    best.second_message = messages[bj];
    LcsResult al = lcs(std::span<const std::uint64_t>(best.first), std::span<const std::uint64_t>(best.second));
    best.witness = MatchingPair(std::move(al.I), std::move(al.J), static_cast<Index>(code.n()));
    return best;
}

bool corrects_insdel_bruteforce(const RsCode& code, std::size_t t, std::uint64_t budget) {
    const auto max_lcs = static_cast<std::int64_t>(brute_force_max_lcs(code, budget).max_lcs);
    return max_lcs <= static_cast<std::int64_t>(code.n()) - static_cast<std::int64_t>(t) - 1;
}

namespace {

/// Rank of a dense row-major matrix of residues; destroys `a`.
std::size_t small_rank(std::vector<std::uint64_t>& a, std::size_t rows, std::size_t cols, const PrimeModulus& mod) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank) {
            for (std::size_t x = 0; x < cols; ++x) std::swap(a[piv * cols + x], a[rank * cols + x]);
        }
        const std::uint64_t inv = mod.inv(a[rank * cols + c]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const std::uint64_t f = mod.mul(a[r * cols + c], inv);
            if (f == 0) continue;
            for (std::size_t x = c; x < cols; ++x) {
                a[r * cols + x] = mod.sub(a[r * cols + x], mod.mul(f, a[rank * cols + x]));
            }
        }
        ++rank;
    }
    return rank;
}

/// powers[v][e] = alpha_v^e for v in [1, n], e < k.
std::vector<std::vector<std::uint64_t>> power_table(std::span<const std::uint64_t> alpha, std::size_t k,
                                                    const PrimeModulus& mod) {
    std::vector<std::vector<std::uint64_t>> pw(alpha.size() + 1, std::vector<std::uint64_t>(k, 1));
    for (std::size_t v = 1; v <= alpha.size(); ++v) {
        for (std::size_t e = 1; e < k; ++e) pw[v][e] = mod.mul(pw[v][e - 1], mod.reduce(alpha[v - 1]));
    }
    return pw;
}

void fill_rows(std::vector<std::uint64_t>& a, const std::vector<Index>& I, const std::vector<Index>& J, std::size_t k,
               const std::vector<std::vector<std::uint64_t>>& pw) {
    const std::size_t cols = 2 * k - 1;
    a.assign(I.size() * cols, 0);
    for (std::size_t r = 0; r < I.size(); ++r) {
        std::uint64_t* row = &a[r * cols];
        row[0] = 1;
        for (std::size_t e = 1; e < k; ++e) {
            row[e] = pw[I[r]][e];
            row[k - 1 + e] = pw[J[r]][e];
        }
    }
}

/// All l-subsets of [n] as sorted vectors, in colexicographic order.
std::vector<std::vector<Index>> colex_combinations(std::size_t n, std::size_t ell) {
    std::vector<std::vector<Index>> out;
    std::vector<Index> c(ell);
    for (std::size_t i = 0; i < ell; ++i) c[i] = static_cast<Index>(i + 1);
    while (true) {
        out.push_back(c);
        std::size_t i = 0;
        while (i < ell && c[i] + 1 == (i + 1 < ell ? c[i + 1] : static_cast<Index>(n + 1))) ++i;
        if (i == ell) break;
        ++c[i];
        for (std::size_t j = 0; j < i; ++j) c[j] = static_cast<Index>(j + 1);
    }
    return out;
}

}  // namespace

std::size_t vmatrix_rank(std::size_t k, const MatchingPair& pair, std::span<const std::uint64_t> alpha,
                         const PrimeModulus& mod) {
    if (alpha.size() != pair.ambient()) throw std::invalid_argument("vmatrix_rank: need one value per variable");
    const auto pw = power_table(alpha, k, mod);
    std::vector<std::uint64_t> a;
    fill_rows(a, pair.I().indices(), pair.J().indices(), k, pw);
    return small_rank(a, pair.size(), 2 * k - 1, mod);
}

VMatrixVerdict corrects_insdel_vmatrix(const RsCode& code, std::size_t ell, std::uint64_t budget) {
    const std::size_t n = code.n(), k = code.k();
    if (ell < 2 * k - 1 || ell > n) {
        throw std::invalid_argument("corrects_insdel_vmatrix: need 2k-1 <= l <= n (l=" + std::to_string(ell) + ")");
    }
    const BigInt per_side = binomial(n, ell);
    if (per_side * per_side > budget) {
        throw BudgetExceeded("C(n,l)^2 = " + BigInt(per_side * per_side).str() + " pairs exceed the budget " +
                             std::to_string(budget) + "; use a smaller n or l");
    }
    const auto combos = colex_combinations(n, ell);
    const auto pw = power_table(code.alpha(), k, code.modulus());
    const std::size_t cols = 2 * k - 1;
    VMatrixVerdict verdict;
    std::vector<std::uint64_t> a;
    for (const auto& I : combos) {
        for (const auto& J : combos) {
            std::size_t agree = 0;
            for (std::size_t i = 0; i < ell; ++i) agree += I[i] == J[i];
            if (agree > k - 1) continue;
            ++verdict.pairs_checked;
            fill_rows(a, I, J, k, pw);
            const std::size_t rk = small_rank(a, ell, cols, code.modulus());
            if (rk < cols) {
                verdict.full_rank = false;
                verdict.witness = MatchingPair(I, J, static_cast<Index>(n));
                verdict.witness_rank = rk;
                return verdict;
            }
        }
    }
    return verdict;
}

std::string to_string(McMode mode) {
    switch (mode) {
        case McMode::Rank: return "rank";
        case McMode::Certify1: return "certify1";
        case McMode::Certify2: return "certify2";
        case McMode::Zero: return "zero";
    }
    return "unknown";
}

McMode parse_mode(const std::string& text) {
    if (text == "rank") return McMode::Rank;
    if (text == "certify1") return McMode::Certify1;
    if (text == "certify2") return McMode::Certify2;
    if (text == "zero") return McMode::Zero;
    throw std::invalid_argument("unknown mode '" + text + "' (rank, certify1, certify2, zero)");
}

std::string to_string(TrialOutcome outcome) {
    switch (outcome) {
        case TrialOutcome::Ok: return "ok";
        case TrialOutcome::Violation: return "violation";
        case TrialOutcome::Certificate: return "certificate";
        case TrialOutcome::Success: return "success";
    }
    return "unknown";
}

std::size_t ExperimentConfig::ell() const {
    return 2 * k - 1 + floor(eps * static_cast<std::int64_t>(n)).convert_to<std::size_t>();
}

std::size_t ExperimentConfig::effective_r() const {
    if (r) return *r;
    return ceil(eps * static_cast<std::int64_t>(n) / 2).convert_to<std::size_t>();
}

void validate_config(const ExperimentConfig& c) {
    auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
    if (c.trials == 0) fail("trials must be at least 1");
    if (c.workers == 0) fail("workers must be at least 1");
    if (c.n == 0) fail("n must be positive");
    if (!is_prime(c.q)) fail("q = " + std::to_string(c.q) + " is not prime");
    if (c.q < c.n) fail("need q >= n");
    if (c.mode == McMode::Zero) return;
    if (c.k == 0) fail("k must be positive");
    if (c.eps < 0) fail("eps must be nonnegative");
    const std::size_t ell = c.ell();
    if (ell > c.n) fail("l = 2k-1+floor(eps*n) = " + std::to_string(ell) + " exceeds n");
    if (c.fixed_pair) {
        if (c.fixed_pair->size() != ell || c.fixed_pair->ambient() != c.n) {
            fail("fixed (I, J) must have length l = " + std::to_string(ell) + " over [n]");
        }
        if (agreement_count(*c.fixed_pair) > c.k - 1) fail("fixed (I, J) agrees on more than k-1 coordinates");
    }
    const std::size_t r = c.effective_r();
    if (c.mode == McMode::Certify1) {
        const BigInt r_max = ceil(c.eps * static_cast<std::int64_t>(c.n) / 2);
        if (r < 1 || BigInt(r) > r_max) fail("certify1 needs 1 <= r <= ceil(eps*n/2) = " + r_max.str());
    }
    if (c.mode == McMode::Certify2) {
        if (r < 1) fail("certify2 needs r >= 1");
        if (!linear_condition_holds(ell, c.k, r, c.eps0)) {
            fail("certify2 needs (1-eps0)*l >= 2k-1+(r+1)/eps0; l=" + std::to_string(ell) + " is too short");
        }
    }
}

ProbabilityBound mode_bound(const ExperimentConfig& c) {
    switch (c.mode) {
        case McMode::Rank:
        case McMode::Certify1: return failure_prob_bound_quadratic_r(c.n, c.k, c.q, c.effective_r());
        case McMode::Certify2: return failure_prob_bound_linear(c.n, c.k, c.q, c.eps0, c.effective_r());
        case McMode::Zero: return schwartz_zippel_bound(c.n, 2, c.q);
    }
    return make_bound(1);
}

MatchingPair sample_matching_pair(std::size_t n, std::size_t ell, std::size_t max_agree, Rng& rng) {
    if (ell == 0 || ell > n) throw std::invalid_argument("sample_matching_pair: need 1 <= l <= n");
    auto draw = [&]() {
        auto picks = sample_distinct_residues(ell, n, rng);
        std::vector<Index> out(picks.begin(), picks.end());
        for (auto& v : out) ++v;
        std::sort(out.begin(), out.end());
        return out;
    };
    for (int attempt = 0; attempt < 100000; ++attempt) {
        MatchingPair pair(draw(), draw(), static_cast<Index>(n));
        if (agreement_count(pair) <= max_agree) return pair;
    }
    throw std::invalid_argument("sample_matching_pair: could not find a pair agreeing on at most " +
                                std::to_string(max_agree) + " coordinates");
}

namespace {

json pair_json(const MatchingPair& p) { return json{{"I", p.I().indices()}, {"J", p.J().indices()}}; }

void mark_violation(TrialRecord& rec, const std::string& what, json detail) {
    rec.outcome = TrialOutcome::Violation;
    rec.invariant_violation = true;
    rec.failure = true;
    detail["invariant"] = what;
    rec.witness = std::move(detail);
}

void run_checker(const ExperimentConfig& c, Rng& rng, TrialRecord& rec) {
    const PrimeModulus mod(c.q);
    if (c.mode == McMode::Zero) {
        const auto alpha = sample_distinct_residues(c.n, c.q, rng);
        const std::uint64_t x = alpha[0];
        if (mod.mul(x, mod.sub(x, 1)) == 0) {
            rec.outcome = TrialOutcome::Violation;
            rec.failure = true;
            rec.witness = json{{"alpha1", x}};
        }
        return;
    }

    const bool drawn = !c.fixed_pair;
    const MatchingPair pair = drawn ? sample_matching_pair(c.n, c.ell(), c.k - 1, rng) : *c.fixed_pair;
    const auto alpha = sample_distinct_residues(c.n, c.q, rng);
    const std::size_t full = 2 * c.k - 1;
    auto base = [&]() { return drawn ? pair_json(pair) : json::object(); };

    if (c.mode == McMode::Rank) {
        const std::size_t rk = vmatrix_rank(c.k, pair, alpha, mod);
        if (rk < full) {
            rec.outcome = TrialOutcome::Violation;
            rec.failure = true;
            json w = pair_json(pair);
            w["alpha"] = alpha;
            w["rank"] = rk;
            rec.witness = std::move(w);
        }
        return;
    }

    IdentityOptions id{c.identity, &rng};
    CertifyOutcome out;
    try {
        if (c.mode == McMode::Certify1) {
            out = certify_v1(c.n, c.k, c.effective_r(), c.eps, pair, alpha, mod, id);
        } else {
            const CertifyV2Input in = prepare_v2_input(c.n, c.k, c.effective_r(), c.eps0, pair);
            CertifyV2Options opts;
            opts.identity = id;
            out = certify_v2(in, alpha, mod, opts);
        }
    } catch (const InvariantViolation& e) {
        mark_violation(rec, e.what(), pair_json(pair));
        return;
    }

    const std::size_t rk = vmatrix_rank(c.k, pair, alpha, mod);
    if (out.kind == OutcomeKind::Success) {
        rec.outcome = TrialOutcome::Success;
        if (rk < full) mark_violation(rec, "SUCCESS on a rank-deficient matrix", pair_json(pair));
        return;
    }
    rec.outcome = TrialOutcome::Certificate;
    rec.failure = true;
    json w = base();
    w["certificate"] = out.indices;
    w["rank"] = rk;
    rec.witness = std::move(w);

    const auto& idx = out.indices;
    if (c.mode == McMode::Certify1) {
        std::vector<std::uint64_t> sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            mark_violation(rec, "repeated faulty index", rec.witness);
        }
    } else {
        const bool ordered = std::is_sorted(idx.begin(), idx.end());
        const bool in_range = std::all_of(idx.begin(), idx.end(), [&](std::uint64_t v) { return v <= 2 * c.k - 2; });
        if (!ordered || !in_range) mark_violation(rec, "certificate not nondecreasing in [0, 2k-2]", rec.witness);
    }
}

std::uint64_t elapsed_nanos(std::chrono::steady_clock::time_point start) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count());
}

/// Runs body(t) for t in [0, count) on `workers` threads; rethrows the first error.
template <typename Body>
void parallel_for(std::uint64_t count, unsigned workers, Body body) {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_lock;
    auto work = [&]() {
        for (std::uint64_t t; (t = next.fetch_add(1)) < count;) {
            try {
                body(t);
            } catch (...) {
                std::lock_guard<std::mutex> g(error_lock);
                if (!error) error = std::current_exception();
                next = count;
            }
        }
    };
    const unsigned spawn = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
    if (spawn <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < spawn; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace

TrialRecord run_trial(const ExperimentConfig& c, std::uint64_t trial) {
    const RandomSeed rs{c.seed, trial};
    Rng rng(rs);
    TrialRecord rec;
    rec.trial = trial;
    rec.seed = derive_seed(rs);
    rec.mode = to_string(c.mode);
    const auto start = std::chrono::steady_clock::now();
    run_checker(c, rng, rec);
    rec.nanos = c.timing ? elapsed_nanos(start) : 0;
    return rec;
}

McResult monte_carlo(const ExperimentConfig& c) {
    validate_config(c);
    McResult res;
    res.records.resize(c.trials);
    parallel_for(c.trials, c.workers, [&](std::uint64_t t) { res.records[t] = run_trial(c, t); });

    McSummary& s = res.summary;
    s.trials = c.trials;
    for (const auto& rec : res.records) {
        s.failures += rec.failure;
        s.invariant_violations += rec.invariant_violation;
        if (rec.outcome == TrialOutcome::Certificate) {
            s.certificates.insert(rec.witness.at("certificate").get<std::vector<std::uint64_t>>());
        }
    }
    s.freq = static_cast<double>(s.failures) / static_cast<double>(s.trials);
    s.ci95 = clopper_pearson(s.failures, s.trials);
    s.bound = mode_bound(c);
    return res;
}

TheoremSummary run_theorem_experiment(TheoremKind which, const ExperimentConfig& c, const Rational& const_c) {
    if (c.trials == 0) throw std::invalid_argument("theorem experiment needs at least one code");
    if (c.eps <= 0) throw std::invalid_argument("theorem experiment needs eps > 0");
    if (!is_prime(c.q)) throw std::invalid_argument("q = " + std::to_string(c.q) + " is not prime");
    if (c.k == 0 || c.k >= c.n || c.q < c.n) throw std::invalid_argument("theorem experiment needs 1 <= k < n <= q");
    TheoremSummary s;
    s.which = which;
    s.ell = c.ell();
    if (s.ell > c.n) throw std::invalid_argument("l = 2k-1+floor(eps*n) exceeds n; lower eps");
    const BigInt pairs = binomial(c.n, s.ell) * binomial(c.n, s.ell);
    if (pairs > c.budget) {
        throw BudgetExceeded("C(n,l)^2 = " + pairs.str() + " exceeds the budget; try a smaller n or l");
    }
    const std::int64_t n = static_cast<std::int64_t>(c.n);
    if (which == TheoremKind::M1) {
        s.r = ceil(c.eps * n / 2).convert_to<std::size_t>();
        s.per_pair = failure_prob_bound_quadratic_r(c.n, c.k, c.q, s.r);
        s.threshold = threshold_m1(c.n, c.k, c.eps);
    } else {
        s.eps0 = c.eps / 4;
        s.r = ceil(c.eps * c.eps * n / 16).convert_to<std::size_t>();
        s.per_pair = failure_prob_bound_linear(c.n, c.k, c.q, s.eps0, s.r);
        s.threshold = threshold_main(c.n, c.k, c.eps, const_c);
    }
    s.prediction = make_bound(s.per_pair.exact * Rational(pairs));
    s.threshold_met = s.threshold.met_by(c.q);
    s.codes = c.trials;

    const PrimeModulus mod(c.q);
    const std::string mode = which == TheoremKind::M1 ? "theorem-m1" : "theorem-main";
    s.records.resize(c.trials);
    parallel_for(c.trials, c.workers, [&](std::uint64_t t) {
        const RandomSeed rs{c.seed, t};
        Rng rng(rs);
        TrialRecord rec;
        rec.trial = t;
        rec.seed = derive_seed(rs);
        rec.mode = mode;
        const auto start = std::chrono::steady_clock::now();
        const RsCode code = sample_random_code(c.n, c.k, mod, rng);
        const VMatrixVerdict v = corrects_insdel_vmatrix(code, s.ell, c.budget);
        const std::uint64_t nanos = elapsed_nanos(start);
        if (!v.full_rank) {
            rec.outcome = TrialOutcome::Violation;
            rec.failure = true;
            json w = pair_json(*v.witness);
            w["alpha"] = code.alpha();
            w["rank"] = v.witness_rank;
            rec.witness = std::move(w);
        }
        rec.nanos = nanos;
        s.records[t] = std::move(rec);
    });
    for (auto& rec : s.records) {
        s.failures += rec.failure;
        s.max_code_nanos = std::max(s.max_code_nanos, rec.nanos);
        if (!c.timing) rec.nanos = 0;
    }
    s.freq = static_cast<double>(s.failures) / static_cast<double>(s.codes);
    s.ci95 = clopper_pearson(s.failures, s.codes);
    return s;
}

json to_json(const TrialRecord& r) {
    json j;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["mode"] = r.mode;
    j["outcome"] = to_string(r.outcome);
    j["witness"] = r.witness;
    j["nanos"] = r.nanos;
    return j;
}

json summary_json(const McSummary& s) {
    json j;
    j["trials"] = s.trials;
    j["failures"] = s.failures;
    j["freq"] = s.freq;
    j["ci95"] = {s.ci95.first, s.ci95.second};
    j["bound"] = s.bound.value;
    j["vacuous"] = s.bound.vacuous;
    j["bound_exact"] = to_string(s.bound.exact);
    j["invariant_violations"] = s.invariant_violations;
    return j;
}

void write_jsonl(std::ostream& out, const std::vector<TrialRecord>& records, const json& summary) {
    for (const auto& r : records) out << to_json(r).dump() << '\n';
    out << summary.dump() << '\n';
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records, const json& summary) {
    out << kCsvTrialHeader << '\n';
    for (const auto& r : records) {
        out << r.trial << ',' << r.seed << ',' << csv_field(r.mode) << ',' << to_string(r.outcome) << ','
            << csv_field(r.witness.is_null() ? "" : r.witness.dump()) << ',' << r.nanos << '\n';
    }
    out << '\n' << kCsvSummaryHeader << '\n';
    const json& ci = summary.at("ci95");
    out << scalar(summary.at("trials")) << ',' << scalar(summary.at("failures")) << ',' << scalar(summary.at("freq"))
        << ',' << scalar(ci.at(0)) << ',' << scalar(ci.at(1)) << ',' << scalar(summary.at("bound")) << ','
        << scalar(summary.at("vacuous")) << '\n';
}

}  // namespace rsinsdel
