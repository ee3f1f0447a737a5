#include "rsinsdel/seq_align.hpp"

#include <sstream>
#include <stdexcept>

namespace rsinsdel {

IncreasingSubsequence::IncreasingSubsequence(std::vector<Index> indices, Index n) : idx_(std::move(indices)), n_(n) {
    for (std::size_t i = 0; i < idx_.size(); ++i) {
        if (idx_[i] < 1 || idx_[i] > n_) {
            throw std::invalid_argument("index " + std::to_string(idx_[i]) + " outside [1, " + std::to_string(n_) + "]");
        }
        if (i > 0 && idx_[i] <= idx_[i - 1]) {
            throw std::invalid_argument("index sequence is not strictly increasing");
        }
    }
}

MatchingPair::MatchingPair(IncreasingSubsequence i, IncreasingSubsequence j) : i_(std::move(i)), j_(std::move(j)) {
    if (i_.size() != j_.size()) throw std::invalid_argument("matching pair sides differ in length");
    if (i_.ambient() != j_.ambient()) throw std::invalid_argument("matching pair sides use different ambient n");
}

MatchingPair::MatchingPair(std::vector<Index> i, std::vector<Index> j, Index n)
    : MatchingPair(IncreasingSubsequence(std::move(i), n), IncreasingSubsequence(std::move(j), n)) {}

IncreasingSubsequence restrict(const IncreasingSubsequence& I, const IndexSet& P) {
    std::vector<Index> out;
    out.reserve(P.size());
    for (Index p : P) {
        if (p < 1 || p > I.size()) {
            throw std::out_of_range("restriction index " + std::to_string(p) + " outside [1, " +
                                    std::to_string(I.size()) + "]");
        }
        out.push_back(I(p));
    }
    return IncreasingSubsequence(std::move(out), I.ambient());
}

MatchingPair restrict(const MatchingPair& pair, const IndexSet& P) {
    return MatchingPair(restrict(pair.I(), P), restrict(pair.J(), P));
}

std::size_t agreement_count(const MatchingPair& pair) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < pair.size(); ++i) {
        if (pair.I().indices()[i] == pair.J().indices()[i]) ++count;
    }
    return count;
}

std::string to_string(const IncreasingSubsequence& I) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < I.size(); ++i) os << (i ? "," : "") << I.indices()[i];
    os << ')';
    return os.str();
}

}  // namespace rsinsdel
