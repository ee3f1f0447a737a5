// V-matrices: the l x (2k-1) matrices whose row i is
//
//   (1, X_{I_i}, ..., X_{I_i}^{k-1}, X_{J_i}, ..., X_{J_i}^{k-1}),
//
// their row deletions and block stackings, numeric rank over F_q once the
// variables are assigned, and zero-testing of partially assigned square
// determinants.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rsinsdel/field.hpp"
#include "rsinsdel/mpoly.hpp"
#include "rsinsdel/seq_align.hpp"

namespace rsinsdel {

/// One symbolic row, identified by its two variable indices.
struct VRow {
    Index i_var;
    Index j_var;
    friend bool operator==(const VRow&, const VRow&) = default;
};

/// A symbolic V-matrix: dimension k and an ordered row list over X_1..X_n.
///
/// Built from a matching pair the rows follow (I_i, J_i); block stacking and
/// row deletion yield general row lists that no longer come from a single
/// increasing pair, so the row list is the primary representation.
class VMatrixSpec {
public:
    VMatrixSpec(std::size_t k, const MatchingPair& pair);
    VMatrixSpec(std::size_t k, Index n, std::vector<VRow> rows);

    std::size_t k() const noexcept { return k_; }
    Index ambient() const noexcept { return n_; }
    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return 2 * k_ - 1; }
    const std::vector<VRow>& row_list() const noexcept { return rows_; }

    /// V^B: drops every row that mentions a variable in B, keeping order.
    VMatrixSpec delete_rows(const IndexSet& B) const;
    /// First m rows.
    VMatrixSpec top(std::size_t m) const;
    /// Distinct variable indices mentioned by the rows.
    IndexSet variables() const;

    friend bool operator==(const VMatrixSpec&, const VMatrixSpec&) = default;

private:
    std::size_t k_;
    Index n_;
    std::vector<VRow> rows_;
};

/// Dense matrix of residues mod q.
class FieldMatrix {
public:
    FieldMatrix(std::size_t rows, std::size_t cols, const PrimeModulus& mod)
        : rows_(rows), cols_(cols), mod_(mod), data_(rows * cols, 0) {}
    FieldMatrix(std::size_t rows, std::size_t cols, const PrimeModulus& mod, std::vector<std::uint64_t> data);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const PrimeModulus& modulus() const noexcept { return mod_; }

    std::uint64_t& raw(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint64_t raw(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    FieldElement at(std::size_t r, std::size_t c) const { return FieldElement(mod_, raw(r, c)); }
    const std::vector<std::uint64_t>& data() const noexcept { return data_; }

    static FieldMatrix identity(std::size_t n, const PrimeModulus& mod);

private:
    std::size_t rows_, cols_;
    PrimeModulus mod_;
    std::vector<std::uint64_t> data_;
};

/// Substitutes X_v = alpha[v-1] into every row. alpha must have n entries.
FieldMatrix build(const VMatrixSpec& spec, std::span<const std::uint64_t> alpha, const PrimeModulus& mod);

/// Rank by fraction-free elimination, pivoting on the first nonzero entry of each column.
std::size_t rank(FieldMatrix m);
bool is_full_column_rank(const FieldMatrix& m);
/// Throws std::invalid_argument for non-square input.
std::uint64_t determinant(FieldMatrix m);

/// Stacked matrix of V_{k,|P_i|,I^{P_i},J^{P_i}} in part order.
struct BlockSpec {
    std::size_t k;
    MatchingPair pair;
    std::vector<IndexSet> parts;

    VMatrixSpec stacked() const;
};

FieldMatrix block_matrix(const BlockSpec& bspec, std::span<const std::uint64_t> alpha, const PrimeModulus& mod);

/// Values for a subset of X_1..X_n.
class PartialAssignment {
public:
    explicit PartialAssignment(Index n) : values_(n, 0), assigned_(n, false) {}

    static PartialAssignment none(Index n) { return PartialAssignment(n); }
    /// X_1..X_i assigned from alpha.
    static PartialAssignment prefix(std::span<const std::uint64_t> alpha, Index i);
    /// X_v for v in S assigned from alpha.
    static PartialAssignment subset(std::span<const std::uint64_t> alpha, const IndexSet& S);
    static PartialAssignment full(std::span<const std::uint64_t> alpha);

    Index ambient() const noexcept { return static_cast<Index>(values_.size()); }
    bool is_assigned(Index v) const { return assigned_.at(v - 1); }
    std::uint64_t value(Index v) const { return values_.at(v - 1); }
    void assign(Index v, std::uint64_t value);
    std::vector<std::uint64_t> assigned_values() const;

private:
    std::vector<std::uint64_t> values_;
    std::vector<bool> assigned_;
};

/// Exact determinant of a square spec as a polynomial in the unassigned
/// variables (permutation expansion; each term is a single monomial).
/// Supports dimension up to kMaxExactDim.
MultiPoly symbolic_determinant(const VMatrixSpec& square, const PartialAssignment& assignment, const PrimeModulus& mod);

inline constexpr std::size_t kAutoExactDim = 7;
inline constexpr std::size_t kMaxExactDim = 9;

enum class IdentityMode { Auto, Exact, Randomized };

/// Repetitions for randomized identity testing so that the one-sided error
/// (n * 2(k-1) / (q-n+1))^t is at most 2^-40. nullopt when q is too small.
std::optional<std::size_t> pit_repetitions(Index n, std::size_t k, std::uint64_t q);

/// True iff det(square | assignment) is the zero polynomial.
///
/// Auto uses exact expansion when 2k-1 <= 7 and randomized evaluation
/// otherwise. Randomized mode draws fresh values for the free variables,
/// distinct from each other and from all assigned values, and needs `rng`.
/// Throws std::invalid_argument for a non-square spec or when q is too small
/// for the randomized error target.
bool symbolically_zero(const VMatrixSpec& square, const PartialAssignment& assignment, const PrimeModulus& mod,
                       IdentityMode mode = IdentityMode::Auto, Rng* rng = nullptr);

}  // namespace rsinsdel
