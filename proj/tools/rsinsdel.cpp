// rsinsdel: command-line front end for the insdel Reed-Solomon lab.
//
// Exit codes: 0 all checks passed, 1 property violation (witness printed),
// 2 invalid arguments or infeasible budget.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rsinsdel/bounds.hpp"
#include "rsinsdel/certify.hpp"
#include "rsinsdel/chains.hpp"
#include "rsinsdel/harness.hpp"
#include "rsinsdel/rs_code.hpp"
#include "rsinsdel/seq_align.hpp"

using namespace rsinsdel;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kBadArgs = 2;

struct Common {
    std::size_t n = 0, k = 0;
    std::uint64_t q = 0;
    std::string eps = "0", eps0 = "1/4";
    std::size_t r = 0;  // 0 = derive
    std::uint64_t trials = 1000, seed = 0;
    unsigned workers = 1;
    std::string out, format = "jsonl";
    std::uint64_t budget = 0;  // 0 = command default
};

std::vector<std::uint64_t> parse_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        unsigned long long v = std::stoull(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad list entry '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<Index> parse_indices(const std::string& text) {
    auto raw = parse_list(text);
    return std::vector<Index>(raw.begin(), raw.end());
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void emit(const Common& c, const json& j) { Output(c.out).stream() << j.dump(2) << '\n'; }

std::vector<std::uint64_t> alpha_or_sample(const std::string& alpha_text, const Common& c, const PrimeModulus& mod) {
    if (!alpha_text.empty()) return parse_list(alpha_text);
    return sample_random_code(c.n, std::max<std::size_t>(1, std::min(c.k, c.n - 1)), mod, RandomSeed{c.seed, 0}).alpha();
}

json pair_json(const MatchingPair& p) { return {{"I", p.I().indices()}, {"J", p.J().indices()}}; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random Reed-Solomon codes under insertions and deletions"};
    app.fallthrough();
    app.require_subcommand(1);
    Common c;
    app.add_option("--n", c.n, "code length");
    app.add_option("--k", c.k, "dimension");
    app.add_option("--q", c.q, "field size (prime)");
    app.add_option("--eps", c.eps, "epsilon (exact: 3/10 or 0.3)");
    app.add_option("--eps0", c.eps0, "epsilon0 for the linear-alphabet certifier");
    app.add_option("--r", c.r, "certificate length (default ceil(eps*n/2))");
    app.add_option("--trials", c.trials, "trials or sampled codes");
    app.add_option("--seed", c.seed, "base seed");
    app.add_option("--workers", c.workers, "worker threads");
    app.add_option("--out", c.out, "output path (default stdout)");
    app.add_option("--format", c.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
    app.add_option("--budget", c.budget, "enumeration budget");

    auto* sample = app.add_subcommand("sample-code", "draw random distinct evaluation points");

    auto* encode = app.add_subcommand("encode", "encode a message f_0,...,f_{k-1}");
    std::string msg, alpha_text;
    encode->add_option("--msg", msg, "coefficients, comma separated")->required();
    encode->add_option("--alpha", alpha_text, "evaluation points (default: sampled from --seed)");

    auto* lcs_cmd = app.add_subcommand("lcs", "LCS and insdel distance of two words");
    std::string s_text, t_text;
    lcs_cmd->add_option("--s", s_text, "first word, comma separated")->required();
    lcs_cmd->add_option("--t", t_text, "second word, comma separated")->required();

    auto* chains_cmd = app.add_subcommand("chains", "maximal-chain decomposition of (I, J)");
    std::string i_text, j_text;
    chains_cmd->add_option("--I", i_text, "I, 1-based, comma separated")->required();
    chains_cmd->add_option("--J", j_text, "J, 1-based, comma separated")->required();

    auto* certify_cmd = app.add_subcommand("certify", "run a certifier on one (I, J, alpha)");
    int alg = 1;
    certify_cmd->add_option("--alg", alg, "1 (quadratic) or 2 (linear)")->check(CLI::IsMember({1, 2}));
    certify_cmd->add_option("--I", i_text, "I")->required();
    certify_cmd->add_option("--J", j_text, "J")->required();
    certify_cmd->add_option("--alpha", alpha_text, "evaluation points (default: sampled from --seed)");

    auto* verify = app.add_subcommand("verify", "V-matrix verification of a random code");
    std::size_t ell_opt = 0;
    bool brute = false;
    verify->add_option("--l", ell_opt, "subsequence length (default 2k-1+floor(eps*n))");
    verify->add_option("--alpha", alpha_text, "evaluation points (default: sampled from --seed)");
    verify->add_flag("--brute", brute, "cross-check with exhaustive LCS search");

    auto* mc = app.add_subcommand("montecarlo", "Monte Carlo estimate against the closed-form bound");
    std::string mode_text = "rank";
    bool timing = false, randomized = false;
    mc->add_option("--mode", mode_text, "rank, certify1, certify2 or zero");
    mc->add_option("--I", i_text, "fixed I (default: drawn per trial)");
    mc->add_option("--J", j_text, "fixed J");
    mc->add_flag("--timing", timing, "record wall-clock nanos (breaks byte-identical output)");
    mc->add_flag("--randomized", randomized, "randomized identity testing for every determinant");

    auto* theorem = app.add_subcommand("theorem", "verify many random codes against a theorem's prediction");
    std::string which = "m1", const_c = "64";
    theorem->add_option("--which", which, "m1 or main")->check(CLI::IsMember({"m1", "main"}));
    theorem->add_option("--c", const_c, "constant c in the main threshold");
    theorem->add_flag("--timing", timing, "record wall-clock nanos per code");

    auto* bound = app.add_subcommand("bound", "evaluate a closed-form bound");
    std::string kind = "quadratic";
    std::size_t degree = 2;
    std::uint64_t t_size = 0;
    bound->add_option("--kind", kind, "quadratic, linear, count, zippel, m1, main")
        ->check(CLI::IsMember({"quadratic", "linear", "count", "zippel", "m1", "main"}));
    bound->add_option("--d", degree, "degree (zippel)");
    bound->add_option("--T", t_size, "sample set size (zippel, default q)");
    bound->add_option("--c", const_c, "constant c (main)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadArgs;
    }

    try {
        const Rational eps = parse_rational(c.eps);
        const Rational eps0 = parse_rational(c.eps0);

        if (sample->parsed()) {
            const PrimeModulus mod(c.q);
            const RsCode code = sample_random_code(c.n, c.k, mod, RandomSeed{c.seed, 0});
            emit(c, {{"n", c.n}, {"k", c.k}, {"q", c.q}, {"seed", c.seed}, {"alpha", code.alpha()}});
            return kOk;
        }
        if (encode->parsed()) {
            const PrimeModulus mod(c.q);
            const auto coeffs = parse_list(msg);
            c.k = coeffs.size();
            const auto alpha = alpha_or_sample(alpha_text, c, mod);
            const RsCode code(alpha.size(), coeffs.size(), mod, alpha);
            emit(c, {{"alpha", code.alpha()}, {"message", coeffs}, {"codeword", code.encode(Polynomial(mod, coeffs))}});
            return kOk;
        }
        if (lcs_cmd->parsed()) {
            const auto s = parse_list(s_text), t = parse_list(t_text);
            const LcsResult r = lcs(std::span<const std::uint64_t>(s), std::span<const std::uint64_t>(t));
            const std::size_t ed = edit_distance(std::span<const std::uint64_t>(s), std::span<const std::uint64_t>(t));
            const bool identity = ed == s.size() + t.size() - 2 * r.length;
            emit(c, {{"lcs", r.length}, {"edit_distance", ed}, {"I", r.I}, {"J", r.J}, {"identity_holds", identity}});
            return identity ? kOk : kViolation;
        }
        if (chains_cmd->parsed()) {
            const auto I = parse_indices(i_text), J = parse_indices(j_text);
            const Index n = c.n ? static_cast<Index>(c.n)
                                : std::max(I.empty() ? 0 : I.back(), J.empty() ? 0 : J.back());
            const MatchingPair pair(I, J, n);
            IndexSet all;
            for (Index p = 1; p <= pair.size(); ++p) all.insert(p);
            auto describe = [&](const ChainDecomposition& d) {
                json parts = json::array();
                for (const auto& part : d.parts) {
                    const char* orient = part.kind.orientation == Orientation::IleadsJ   ? "IleadsJ"
                                         : part.kind.orientation == Orientation::JleadsI ? "JleadsI"
                                                                                         : "none";
                    parts.push_back({{"members", part.members},
                                     {"type", part.kind.type == ChainType::TypeI ? "I" : "II"},
                                     {"orientation", orient}});
                }
                return json{{"ground", d.ground}, {"parts", parts}, {"disjoint", mutually_disjoint(pair, d.part_sets())}};
            };
            json j{{"decomposition", describe(decompose(pair, all))}};
            if (eps > 0) j["split"] = describe(order_parts(split_long_chains(pair, eps)));
            emit(c, j);
            return kOk;
        }
        if (certify_cmd->parsed()) {
            const PrimeModulus mod(c.q);
            const MatchingPair pair(parse_indices(i_text), parse_indices(j_text), static_cast<Index>(c.n));
            const auto alpha = alpha_or_sample(alpha_text, c, mod);
            Rng rng(RandomSeed{c.seed, 1});
            IdentityOptions id{IdentityMode::Auto, &rng};
            json j = pair_json(pair);
            j["alpha"] = alpha;
            CertifyOutcome out;
            try {
                if (alg == 1) {
                    const std::size_t r = c.r ? c.r : ceil(eps * static_cast<std::int64_t>(c.n) / 2).convert_to<std::size_t>();
                    out = certify_v1(c.n, c.k, r, eps, pair, alpha, mod, id);
                } else {
                    if (!c.r) throw std::invalid_argument("certify --alg 2 needs --r");
                    CertifyV2Trace trace;
                    CertifyV2Options opts{id, true, &trace};
                    out = certify_v2(prepare_v2_input(c.n, c.k, c.r, eps0, pair), alpha, mod, opts);
                    j["bank_size"] = trace.m;
                    j["replacements"] = trace.replacements;
                }
            } catch (const InvariantViolation& e) {
                j["invariant"] = e.what();
                emit(c, j);
                return kViolation;
            }
            const std::size_t rk = vmatrix_rank(c.k, pair, alpha, mod);
            j["outcome"] = to_string(out.kind);
            j["certificate"] = out.indices;
            j["rank"] = rk;
            emit(c, j);
            return out.kind == OutcomeKind::Success && rk < 2 * c.k - 1 ? kViolation : kOk;
        }
        if (verify->parsed()) {
            const PrimeModulus mod(c.q);
            const auto alpha = alpha_or_sample(alpha_text, c, mod);
            const RsCode code(alpha.size(), c.k, mod, alpha);
            const std::size_t ell = ell_opt ? ell_opt
                                            : 2 * c.k - 1 + floor(eps * static_cast<std::int64_t>(c.n)).convert_to<std::size_t>();
            const VMatrixVerdict v = corrects_insdel_vmatrix(code, ell, c.budget ? c.budget : kDefaultPairBudget);
            json j{{"alpha", alpha}, {"l", ell}, {"corrects", code.n() - ell}, {"full_rank", v.full_rank},
                   {"pairs_checked", v.pairs_checked}};
            if (v.witness) {
                j["witness"] = pair_json(*v.witness);
                j["witness_rank"] = v.witness_rank;
            }
            bool sound = true;
            if (brute) {
                const MaxLcsResult m = brute_force_max_lcs(code, c.budget ? c.budget : kDefaultEnumerationBudget);
                const bool corrects = m.max_lcs + 1 <= ell;  // max LCS <= n - (n - l) - 1
                j["max_lcs"] = m.max_lcs;
                j["bruteforce_corrects"] = corrects;
                sound = !v.full_rank || corrects;
            }
            emit(c, j);
            return v.full_rank && sound ? kOk : kViolation;
        }
        if (mc->parsed()) {
            ExperimentConfig cfg;
            cfg.n = c.n;
            cfg.k = c.k;
            cfg.q = c.q;
            cfg.eps = eps;
            cfg.eps0 = eps0;
            if (c.r) cfg.r = c.r;
            cfg.trials = c.trials;
            cfg.seed = c.seed;
            cfg.workers = c.workers;
            cfg.mode = parse_mode(mode_text);
            cfg.timing = timing;
            if (randomized) cfg.identity = IdentityMode::Randomized;
            if (!i_text.empty() || !j_text.empty()) {
                cfg.fixed_pair = MatchingPair(parse_indices(i_text), parse_indices(j_text), static_cast<Index>(c.n));
            }
            const McResult res = monte_carlo(cfg);
            const json summary = summary_json(res.summary);
            Output out(c.out);
            if (c.format == "csv") write_csv(out.stream(), res.records, summary);
            else write_jsonl(out.stream(), res.records, summary);
            if (!c.out.empty()) std::cout << summary.dump() << '\n';
            return res.summary.invariant_violations > 0 || res.summary.exceeds_bound() ? kViolation : kOk;
        }
        if (theorem->parsed()) {
            ExperimentConfig cfg;
            cfg.n = c.n;
            cfg.k = c.k;
            cfg.q = c.q;
            cfg.eps = eps;
            cfg.trials = c.trials;
            cfg.seed = c.seed;
            cfg.workers = c.workers;
            cfg.timing = timing;
            if (c.budget) cfg.budget = c.budget;
            const TheoremSummary s =
                run_theorem_experiment(which == "m1" ? TheoremKind::M1 : TheoremKind::Main, cfg, parse_rational(const_c));
            json summary{{"trials", s.codes},
                         {"failures", s.failures},
                         {"freq", s.freq},
                         {"ci95", {s.ci95.first, s.ci95.second}},
                         {"bound", s.prediction.value},
                         {"vacuous", s.prediction.vacuous},
                         {"l", s.ell},
                         {"r", s.r},
                         {"per_pair_bound", s.per_pair.value},
                         {"threshold_log2", s.threshold.log2_value},
                         {"threshold_met", s.threshold_met},
                         {"max_code_nanos", s.max_code_nanos}};
            if (s.threshold.exact) summary["threshold"] = s.threshold.exact->str();
            Output out(c.out);
            if (c.format == "csv") write_csv(out.stream(), s.records, summary);
            else write_jsonl(out.stream(), s.records, summary);
            if (!c.out.empty()) std::cout << summary.dump() << '\n';
            const bool exceeds = !s.prediction.vacuous && s.ci95.first > s.prediction.value;
            return exceeds ? kViolation : kOk;
        }
        if (bound->parsed()) {
            auto prob = [](const ProbabilityBound& b) {
                return json{{"exact", to_string(b.exact)}, {"value", b.value}, {"vacuous", b.vacuous}};
            };
            json j{{"kind", kind}};
            if (kind == "quadratic") {
                j["bound"] = prob(c.r ? failure_prob_bound_quadratic_r(c.n, c.k, c.q, c.r)
                                      : failure_prob_bound_quadratic(c.n, c.k, c.q, eps));
            } else if (kind == "linear") {
                if (!c.r) throw std::invalid_argument("--kind linear needs --r");
                j["bound"] = prob(failure_prob_bound_linear(c.n, c.k, c.q, eps0, c.r));
            } else if (kind == "count") {
                const CertificateCount cc = certificate_count_bound(c.k, c.r ? c.r : 1);
                j["exact"] = cc.exact.str();
                j["bound"] = cc.bound.str();
            } else if (kind == "zippel") {
                j["bound"] = prob(schwartz_zippel_bound(c.n, degree, t_size ? t_size : c.q));
            } else {
                const Threshold t = kind == "m1" ? threshold_m1(c.n, c.k, eps) : threshold_main(c.n, c.k, eps, parse_rational(const_c));
                j["log2_threshold"] = t.log2_value;
                if (t.exact) j["threshold"] = t.exact->str();
                if (c.q) j["met"] = t.met_by(c.q);
            }
            emit(c, j);
            return kOk;
        }
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadArgs;
    }
    return kBadArgs;
}
