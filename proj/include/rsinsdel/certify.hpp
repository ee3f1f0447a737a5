// Certificates for full column rank of assigned V-matrices.
//
// certify_v1 peels off faulty indices one at a time (quadratic-alphabet
// analysis); certify_v2 assigns variables chain by chain and, when a chain
// breaks nonsingularity, swaps in part of a reserve ("bank") chain
// (linear-alphabet analysis). Either returns Success, which proves full
// column rank of V_{k,l,I,J} under alpha, or an index sequence that the
// probability bounds in bounds.hpp count.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsinsdel/chains.hpp"
#include "rsinsdel/field.hpp"
#include "rsinsdel/rational.hpp"
#include "rsinsdel/seq_align.hpp"
#include "rsinsdel/vmatrix.hpp"

namespace rsinsdel {

/// A lemma-guaranteed property failed at runtime. Always a bug, never an input error.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

enum class OutcomeKind { Success, Fail, Certificate };

struct CertifyOutcome {
    OutcomeKind kind = OutcomeKind::Success;
    /// certify_v1: distinct variable indices in [n]. certify_v2: row counts in [0, 2k-2].
    std::vector<std::uint64_t> indices;

    friend bool operator==(const CertifyOutcome&, const CertifyOutcome&) = default;
};

std::string to_string(OutcomeKind kind);

struct IdentityOptions {
    IdentityMode mode = IdentityMode::Auto;
    Rng* rng = nullptr;  // required for randomized identity testing
};

/// Faulty index of A with respect to alpha: the i where det(A'|X_1..X_{i-1})
/// is a nonzero polynomial and det(A'|X_1..X_i) is zero, A' being the top
/// square block. nullopt when det(A') stays nonzero under every prefix.
/// Throws std::invalid_argument when A has fewer than 2k-1 rows.
std::optional<Index> faulty_index(const VMatrixSpec& A, std::span<const std::uint64_t> alpha, const PrimeModulus& mod,
                                  IdentityOptions opts = {});

/// Requires l = |I| = 2k-1 + floor(eps*n), 1 <= r <= ceil(eps*n/2), I and J
/// agreeing on at most k-1 coordinates and |alpha| = n; throws
/// std::invalid_argument otherwise. A FAIL under these conditions would
/// contradict the rank lemma and is raised as InvariantViolation.
CertifyOutcome certify_v1(std::size_t n, std::size_t k, std::size_t r, const Rational& eps, const MatchingPair& pair,
                          std::span<const std::uint64_t> alpha, const PrimeModulus& mod, IdentityOptions opts = {});

/// (1 - eps0) l >= 2k - 1 + (r + 1) / eps0
bool linear_condition_holds(std::size_t ell, std::size_t k, std::size_t r, const Rational& eps0);

/// Smallest m with |P_{s-m+1}| + ... + |P_s| in [r/eps0, (r+1)/eps0].
std::optional<std::size_t> select_bank(const std::vector<IndexSet>& parts, std::size_t r, const Rational& eps0);

struct CertifyV2Input {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t r = 0;
    Rational eps0;
    MatchingPair pair;
    /// P_1..P_s: mutually (I,J)-disjoint chains, |P_i| <= 1/eps0, Type I first, sizes nondecreasing.
    std::vector<IndexSet> parts;
};

/// Builds a valid input from (I, J): splits chains at eps0 and orders the parts.
CertifyV2Input prepare_v2_input(std::size_t n, std::size_t k, std::size_t r, const Rational& eps0,
                                const MatchingPair& pair);

/// Throws std::invalid_argument naming the first violated precondition.
void validate_v2_input(const CertifyV2Input& in);

/// State at one nonsingularity check (pseudocode line 12).
struct CheckPoint {
    std::size_t j = 0;
    std::vector<std::uint64_t> certificate;  // i_1..i_j
    std::size_t c = 0;
    std::size_t a = 0;                      // 1-based
    std::size_t b = 0;                      // 1-based
    std::vector<IndexSet> Q;
    bool nonsingular = false;

    friend bool operator==(const CheckPoint&, const CheckPoint&) = default;
};

struct CertifyV2Trace {
    std::size_t m = 0;
    std::size_t replacements = 0;
    std::vector<CheckPoint> checkpoints;

    friend bool operator==(const CertifyV2Trace&, const CertifyV2Trace&) = default;
};

struct CertifyV2Options {
    IdentityOptions identity;
    /// Assert every bookkeeping lemma (bank bounds, disjointness, fresh
    /// variables, nonsingularity before assignment) at each check.
    bool check_invariants = true;
    CertifyV2Trace* trace = nullptr;
};

CertifyOutcome certify_v2(const CertifyV2Input& in, std::span<const std::uint64_t> alpha, const PrimeModulus& mod,
                          CertifyV2Options opts = {});

/// Recomputes (Q_1..Q_s, a) at the check where j = certificate.size() and
/// c = c_star using only the input and the certificate prefix, no alpha.
/// nullopt if no such check point exists.
struct ReconstructedState {
    std::vector<IndexSet> Q;
    std::size_t a = 0;
};
std::optional<ReconstructedState> reconstruct_state(const CertifyV2Input& in,
                                                    const std::vector<std::uint64_t>& certificate, std::size_t c_star);

}  // namespace rsinsdel
