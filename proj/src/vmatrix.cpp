#include "rsinsdel/vmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rsinsdel {

VMatrixSpec::VMatrixSpec(std::size_t k, const MatchingPair& pair) : k_(k), n_(pair.ambient()) {
    if (k == 0) throw std::invalid_argument("V-matrix needs k >= 1");
    if (pair.size() == 0) throw std::invalid_argument("V-matrix needs at least one row");
    rows_.reserve(pair.size());
    for (std::size_t i = 0; i < pair.size(); ++i) {
        rows_.push_back({pair.I().indices()[i], pair.J().indices()[i]});
    }
}

VMatrixSpec::VMatrixSpec(std::size_t k, Index n, std::vector<VRow> rows) : k_(k), n_(n), rows_(std::move(rows)) {
    if (k == 0) throw std::invalid_argument("V-matrix needs k >= 1");
    for (const auto& r : rows_) {
        if (r.i_var < 1 || r.i_var > n || r.j_var < 1 || r.j_var > n) {
            throw std::invalid_argument("V-matrix row references a variable outside [1, n]");
        }
    }
}

VMatrixSpec VMatrixSpec::delete_rows(const IndexSet& B) const {
    std::vector<VRow> kept;
    kept.reserve(rows_.size());
    for (const auto& r : rows_) {
        if (!B.contains(r.i_var) && !B.contains(r.j_var)) kept.push_back(r);
    }
    return VMatrixSpec(k_, n_, std::move(kept));
}

VMatrixSpec VMatrixSpec::top(std::size_t m) const {
    if (m > rows_.size()) throw std::invalid_argument("top: not enough rows");
    return VMatrixSpec(k_, n_, std::vector<VRow>(rows_.begin(), rows_.begin() + static_cast<std::ptrdiff_t>(m)));
}

IndexSet VMatrixSpec::variables() const {
    IndexSet vars;
    for (const auto& r : rows_) {
        vars.insert(r.i_var);
        vars.insert(r.j_var);
    }
    return vars;
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, const PrimeModulus& mod, std::vector<std::uint64_t> data)
    : rows_(rows), cols_(cols), mod_(mod), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("matrix data has wrong size");
    for (auto& x : data_) x = mod_.reduce(x);
}

FieldMatrix FieldMatrix::identity(std::size_t n, const PrimeModulus& mod) {
    FieldMatrix m(n, n, mod);
    for (std::size_t i = 0; i < n; ++i) m.raw(i, i) = 1 % mod.value();
    return m;
}

FieldMatrix build(const VMatrixSpec& spec, std::span<const std::uint64_t> alpha, const PrimeModulus& mod) {
    if (alpha.size() != spec.ambient()) {
        throw std::invalid_argument("assignment has " + std::to_string(alpha.size()) + " values, V-matrix needs " +
                                    std::to_string(spec.ambient()));
    }
    const std::size_t k = spec.k();
    FieldMatrix m(spec.rows(), spec.cols(), mod);
    for (std::size_t r = 0; r < spec.rows(); ++r) {
        const auto& row = spec.row_list()[r];
        const std::uint64_t x = mod.reduce(alpha[row.i_var - 1]);
        const std::uint64_t y = mod.reduce(alpha[row.j_var - 1]);
        m.raw(r, 0) = 1 % mod.value();
        std::uint64_t px = 1, py = 1;
        for (std::size_t d = 1; d < k; ++d) {
            px = mod.mul(px, x);
            py = mod.mul(py, y);
            m.raw(r, d) = px;
            m.raw(r, k - 1 + d) = py;
        }
    }
    return m;
}

std::size_t rank(FieldMatrix m) {
    const auto& mod = m.modulus();
    std::size_t rk = 0;
    for (std::size_t c = 0; c < m.cols() && rk < m.rows(); ++c) {
        std::size_t piv = rk;
        while (piv < m.rows() && m.raw(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != rk) {
            for (std::size_t j = c; j < m.cols(); ++j) std::swap(m.raw(piv, j), m.raw(rk, j));
        }
        const std::uint64_t p = m.raw(rk, c);
        for (std::size_t r = rk + 1; r < m.rows(); ++r) {
            const std::uint64_t f = m.raw(r, c);
            if (f == 0) continue;
            // row_r <- p * row_r - f * row_rk, no division needed.
            for (std::size_t j = c; j < m.cols(); ++j) {
                m.raw(r, j) = mod.sub(mod.mul(p, m.raw(r, j)), mod.mul(f, m.raw(rk, j)));
            }
        }
        ++rk;
    }
    return rk;
}

bool is_full_column_rank(const FieldMatrix& m) { return m.rows() >= m.cols() && rank(m) == m.cols(); }

std::uint64_t determinant(FieldMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const auto& mod = m.modulus();
    const std::size_t n = m.rows();
    std::uint64_t det = 1 % mod.value();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m.raw(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.raw(piv, j), m.raw(c, j));
            det = mod.neg(det);
        }
        det = mod.mul(det, m.raw(c, c));
        const std::uint64_t inv = mod.inv(m.raw(c, c));
        for (std::size_t r = c + 1; r < n; ++r) {
            const std::uint64_t f = mod.mul(m.raw(r, c), inv);
            if (f == 0) continue;
            for (std::size_t j = c; j < n; ++j) m.raw(r, j) = mod.sub(m.raw(r, j), mod.mul(f, m.raw(c, j)));
        }
    }
    return det;
}

VMatrixSpec BlockSpec::stacked() const {
    std::vector<VRow> rows;
    for (const auto& part : parts) {
        if (part.empty()) throw std::invalid_argument("block part is empty");
        for (Index p : part) {
            if (p < 1 || p > pair.size()) throw std::out_of_range("block part index outside [1, l]");
            rows.push_back({pair.I()(p), pair.J()(p)});
        }
    }
    return VMatrixSpec(k, pair.ambient(), std::move(rows));
}

FieldMatrix block_matrix(const BlockSpec& bspec, std::span<const std::uint64_t> alpha, const PrimeModulus& mod) {
    return build(bspec.stacked(), alpha, mod);
}

PartialAssignment PartialAssignment::prefix(std::span<const std::uint64_t> alpha, Index i) {
    if (i > alpha.size()) throw std::invalid_argument("prefix longer than the assignment");
    PartialAssignment pa(static_cast<Index>(alpha.size()));
    for (Index v = 1; v <= i; ++v) pa.assign(v, alpha[v - 1]);
    return pa;
}

PartialAssignment PartialAssignment::subset(std::span<const std::uint64_t> alpha, const IndexSet& S) {
    PartialAssignment pa(static_cast<Index>(alpha.size()));
    for (Index v : S) pa.assign(v, alpha[v - 1]);
    return pa;
}

PartialAssignment PartialAssignment::full(std::span<const std::uint64_t> alpha) {
    return prefix(alpha, static_cast<Index>(alpha.size()));
}

void PartialAssignment::assign(Index v, std::uint64_t value) {
    if (v < 1 || v > values_.size()) throw std::out_of_range("variable X_" + std::to_string(v) + " out of range");
    values_[v - 1] = value;
    assigned_[v - 1] = true;
}

std::vector<std::uint64_t> PartialAssignment::assigned_values() const {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (assigned_[i]) out.push_back(values_[i]);
    }
    return out;
}

namespace {

struct Cell {
    std::uint64_t coeff;
    Index var;  // 0 when the entry is a constant
    std::uint32_t exp;
};

void check_square(const VMatrixSpec& spec) {
    if (spec.rows() != spec.cols()) {
        throw std::invalid_argument("identity test needs a square (2k-1)x(2k-1) matrix, got " +
                                    std::to_string(spec.rows()) + "x" + std::to_string(spec.cols()));
    }
}

}  // namespace

MultiPoly symbolic_determinant(const VMatrixSpec& square, const PartialAssignment& assignment, const PrimeModulus& mod) {
    check_square(square);
    const std::size_t dim = square.rows();
    if (dim > kMaxExactDim) {
        throw std::invalid_argument("exact determinant expansion supports dimension <= " + std::to_string(kMaxExactDim));
    }
    if (assignment.ambient() != square.ambient()) throw std::invalid_argument("assignment/spec ambient n mismatch");
    const std::size_t k = square.k();

    std::vector<Cell> cells(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        const auto& row = square.row_list()[r];
        for (std::size_t c = 0; c < dim; ++c) {
            Index var = 0;
            std::uint32_t e = 0;
            if (c >= 1 && c < k) {
                var = row.i_var;
                e = static_cast<std::uint32_t>(c);
            } else if (c >= k) {
                var = row.j_var;
                e = static_cast<std::uint32_t>(c - k + 1);
            }
            Cell cell{1 % mod.value(), var, e};
            if (var != 0 && assignment.is_assigned(var)) {
                cell = {mod.pow(assignment.value(var), e), 0, 0};
            }
            cells[r * dim + c] = cell;
        }
    }

    MultiPoly det(mod);
    std::vector<std::size_t> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::pair<Index, std::uint32_t>> scratch;
    do {
        std::uint64_t coeff = 1 % mod.value();
        scratch.clear();
        for (std::size_t r = 0; r < dim && coeff != 0; ++r) {
            const Cell& cell = cells[r * dim + perm[r]];
            coeff = mod.mul(coeff, cell.coeff);
            if (cell.var != 0) scratch.emplace_back(cell.var, cell.exp);
        }
        if (coeff == 0) continue;
        std::size_t inversions = 0;
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = a + 1; b < dim; ++b) inversions += perm[a] > perm[b];
        }
        if (inversions & 1) coeff = mod.neg(coeff);
        std::sort(scratch.begin(), scratch.end());
        Monomial mono;
        for (const auto& [v, e] : scratch) {
            if (!mono.empty() && mono.back().first == v) mono.back().second += e;
            else mono.emplace_back(v, e);
        }
        det.add_term(mono, coeff);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

std::optional<std::size_t> pit_repetitions(Index n, std::size_t k, std::uint64_t q) {
    if (k <= 1) return 1;  // determinant is a nonzero constant or identically 1
    if (q < n + 1) return std::nullopt;
    const double e = static_cast<double>(n) * 2.0 * static_cast<double>(k - 1) / static_cast<double>(q - n + 1);
    if (e >= 1.0) return std::nullopt;
    const double t = std::ceil(40.0 / -std::log2(e));
    if (t > 256.0) return std::nullopt;
    return static_cast<std::size_t>(std::max(1.0, t));
}

bool symbolically_zero(const VMatrixSpec& square, const PartialAssignment& assignment, const PrimeModulus& mod,
                       IdentityMode mode, Rng* rng) {
    check_square(square);
    if (mode == IdentityMode::Auto) mode = square.rows() <= kAutoExactDim ? IdentityMode::Exact : IdentityMode::Randomized;
    if (mode == IdentityMode::Exact) return symbolic_determinant(square, assignment, mod).is_zero();

    if (rng == nullptr) throw std::invalid_argument("randomized identity testing needs an Rng");
    const Index n = square.ambient();
    auto reps = pit_repetitions(n, square.k(), mod.value());
    if (!reps) {
        throw std::invalid_argument("q = " + std::to_string(mod.value()) +
                                    " is too small for the 2^-40 randomized error target; use exact mode");
    }
    std::vector<Index> free_vars;
    for (Index v : square.variables()) {
        if (!assignment.is_assigned(v)) free_vars.push_back(v);
    }
    const auto taken = assignment.assigned_values();
    std::vector<std::uint64_t> values(n, 0);
    for (Index v = 1; v <= n; ++v) {
        if (assignment.is_assigned(v)) values[v - 1] = assignment.value(v);
    }
    for (std::size_t t = 0; t < *reps; ++t) {
        auto draw = sample_distinct_residues_avoiding(free_vars.size(), mod.value(), taken, *rng);
        for (std::size_t i = 0; i < free_vars.size(); ++i) values[free_vars[i] - 1] = draw[i];
        if (determinant(build(square, values, mod)) != 0) return false;
        if (free_vars.empty()) return true;
    }
    return true;
}

}  // namespace rsinsdel
