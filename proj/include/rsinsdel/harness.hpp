// Experiment orchestration: exhaustive and V-matrix insdel verifiers,
// seeded Monte Carlo runs against the closed-form bounds, and the
// JSONL / CSV writers used by the CLI.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsinsdel/bounds.hpp"
#include "rsinsdel/certify.hpp"
#include "rsinsdel/rs_code.hpp"
#include "rsinsdel/seq_align.hpp"

namespace rsinsdel {

/// Raised when an enumeration would exceed its budget.
class BudgetExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct MaxLcsResult {
    std::size_t max_lcs = 0;
    Codeword first, second;
    std::vector<std::uint64_t> first_message, second_message;
    MatchingPair witness;  // full canonical LCS alignment of first vs second
};

/// Maximum LCS over all unordered pairs of distinct codewords (ties keep the
/// first pair in enumeration order). Throws BudgetExceeded when q^k > budget.
MaxLcsResult brute_force_max_lcs(const RsCode& code, std::uint64_t budget = kDefaultEnumerationBudget);

/// max LCS <= n - t - 1.
bool corrects_insdel_bruteforce(const RsCode& code, std::size_t t, std::uint64_t budget = kDefaultEnumerationBudget);

inline constexpr std::uint64_t kDefaultPairBudget = std::uint64_t{1} << 26;

struct VMatrixVerdict {
    /// true proves the code corrects n - l insdels; false is inconclusive.
    bool full_rank = true;
    std::optional<MatchingPair> witness;  // first rank-deficient pair found
    std::size_t witness_rank = 0;
    std::uint64_t pairs_checked = 0;  // pairs passing the agreement filter
};

/// Checks every pair of length-l increasing sequences agreeing on at most
/// k-1 coordinates (colex order, I outer). Requires 2k-1 <= l <= n; throws
/// BudgetExceeded when C(n,l)^2 > budget.
VMatrixVerdict corrects_insdel_vmatrix(const RsCode& code, std::size_t ell,
                                       std::uint64_t budget = kDefaultPairBudget);

/// Numeric rank of V_{k,l,I,J} at alpha.
std::size_t vmatrix_rank(std::size_t k, const MatchingPair& pair, std::span<const std::uint64_t> alpha,
                         const PrimeModulus& mod);

enum class McMode { Rank, Certify1, Certify2, Zero };
std::string to_string(McMode mode);
/// Accepts rank, certify1, certify2, zero.
McMode parse_mode(const std::string& text);

struct ExperimentConfig {
    std::size_t n = 0;
    std::size_t k = 0;
    std::uint64_t q = 0;
    Rational eps = 0;
    Rational eps0 = Rational(1, 4);
    std::optional<std::size_t> r;  // defaults to ceil(eps*n/2)
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    McMode mode = McMode::Rank;
    std::optional<MatchingPair> fixed_pair;  // otherwise (I, J) is drawn per trial
    IdentityMode identity = IdentityMode::Auto;
    std::uint64_t budget = kDefaultPairBudget;
    bool timing = false;  // when false, nanos is recorded as 0

    /// l = 2k - 1 + floor(eps * n)
    std::size_t ell() const;
    std::size_t effective_r() const;
};

enum class TrialOutcome { Ok, Violation, Certificate, Success };
std::string to_string(TrialOutcome outcome);

struct TrialRecord {
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;  // engine seed derived from (config seed, trial)
    std::string mode;
    TrialOutcome outcome = TrialOutcome::Ok;
    nlohmann::json witness;  // null when there is nothing to show
    std::uint64_t nanos = 0;
    bool failure = false;             // counts toward the failure frequency
    bool invariant_violation = false;  // a guaranteed property broke
};

struct McSummary {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double freq = 0.0;
    std::pair<double, double> ci95{0.0, 1.0};
    ProbabilityBound bound;
    std::uint64_t invariant_violations = 0;
    std::set<std::vector<std::uint64_t>> certificates;

    /// Frequency significantly above a non-vacuous bound.
    bool exceeds_bound() const { return !bound.vacuous && ci95.first > bound.value; }
};

struct McResult {
    McSummary summary;
    std::vector<TrialRecord> records;  // sorted by trial index
};

/// Throws std::invalid_argument for invalid configurations (including zero trials).
McResult monte_carlo(const ExperimentConfig& config);
/// One trial in isolation; identical to the corresponding record of monte_carlo.
TrialRecord run_trial(const ExperimentConfig& config, std::uint64_t trial);
void validate_config(const ExperimentConfig& config);
ProbabilityBound mode_bound(const ExperimentConfig& config);

/// Uniform pair of length-l increasing sequences over [n] agreeing on at
/// most max_agree coordinates (rejection sampling, bounded attempts).
MatchingPair sample_matching_pair(std::size_t n, std::size_t ell, std::size_t max_agree, Rng& rng);

enum class TheoremKind { M1, Main };

struct TheoremSummary {
    TheoremKind which = TheoremKind::M1;
    std::size_t ell = 0;
    std::size_t r = 0;
    Rational eps0;  // Main only
    std::uint64_t codes = 0;
    std::uint64_t failures = 0;
    double freq = 0.0;
    std::pair<double, double> ci95{0.0, 1.0};
    ProbabilityBound per_pair;
    ProbabilityBound prediction;  // C(n,l)^2 * per_pair
    Threshold threshold;
    bool threshold_met = false;
    std::uint64_t max_code_nanos = 0;  // always measured
    std::vector<TrialRecord> records;
};

/// Samples config.trials random codes and verifies each with
/// corrects_insdel_vmatrix at l = 2k-1+floor(eps n).
TheoremSummary run_theorem_experiment(TheoremKind which, const ExperimentConfig& config,
                                      const Rational& c = Rational(64));

nlohmann::json to_json(const TrialRecord& record);
nlohmann::json summary_json(const McSummary& summary);

inline constexpr const char* kCsvTrialHeader = "trial,seed,mode,outcome,witness,nanos";
inline constexpr const char* kCsvSummaryHeader = "trials,failures,freq,ci95_lo,ci95_hi,bound,vacuous";

void write_jsonl(std::ostream& out, const std::vector<TrialRecord>& records, const nlohmann::json& summary);
/// Trial table, a blank line, then the one-row summary table.
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records, const nlohmann::json& summary);

}  // namespace rsinsdel
