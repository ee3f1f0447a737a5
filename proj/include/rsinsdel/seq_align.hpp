// Longest common subsequence, insertion/deletion edit distance and
// index-sequence utilities.
//
// Index conventions: positions in words and members of index sets P are
// 1-based, as in I = (I_1, ..., I_l) with 1 <= I_1 < ... < I_l <= n.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace rsinsdel {

using Index = std::uint32_t;
using IndexSet = std::set<Index>;

/// Strictly increasing sequence of 1-based indices into [n].
class IncreasingSubsequence {
public:
    IncreasingSubsequence() = default;
    /// Throws std::invalid_argument unless 1 <= idx_1 < ... < idx_l <= n.
    IncreasingSubsequence(std::vector<Index> indices, Index n);

    std::size_t size() const noexcept { return idx_.size(); }
    bool empty() const noexcept { return idx_.empty(); }
    Index ambient() const noexcept { return n_; }
    /// 1-based access, matching I_i.
    Index operator()(std::size_t i) const { return idx_.at(i - 1); }
    const std::vector<Index>& indices() const noexcept { return idx_; }

    friend bool operator==(const IncreasingSubsequence&, const IncreasingSubsequence&) = default;

private:
    std::vector<Index> idx_;
    Index n_ = 0;
};

/// Two increasing subsequences of equal length over the same [n].
class MatchingPair {
public:
    MatchingPair() = default;
    MatchingPair(IncreasingSubsequence i, IncreasingSubsequence j);
    MatchingPair(std::vector<Index> i, std::vector<Index> j, Index n);

    const IncreasingSubsequence& I() const noexcept { return i_; }
    const IncreasingSubsequence& J() const noexcept { return j_; }
    std::size_t size() const noexcept { return i_.size(); }
    Index ambient() const noexcept { return i_.ambient(); }

    friend bool operator==(const MatchingPair&, const MatchingPair&) = default;

private:
    IncreasingSubsequence i_, j_;
};

/// (I_{p_1}, ..., I_{p_m}) for P = {p_1 < ... < p_m}; throws on p outside [|I|].
IncreasingSubsequence restrict(const IncreasingSubsequence& I, const IndexSet& P);
MatchingPair restrict(const MatchingPair& pair, const IndexSet& P);

/// |{i : I_i = J_i}|
std::size_t agreement_count(const MatchingPair& pair);

struct LcsResult {
    std::size_t length = 0;
    /// Witness: I indexes into s, J into t, s_{I_i} = t_{J_i}.
    std::vector<Index> I, J;
};

namespace detail {

template <typename T>
std::vector<std::uint32_t> lcs_table(std::span<const T> s, std::span<const T> t) {
    const std::size_t cols = t.size() + 1;
    std::vector<std::uint32_t> dp((s.size() + 1) * cols, 0);
    for (std::size_t i = 1; i <= s.size(); ++i) {
        for (std::size_t j = 1; j <= t.size(); ++j) {
            if (s[i - 1] == t[j - 1]) {
                dp[i * cols + j] = dp[(i - 1) * cols + j - 1] + 1;
            } else {
                dp[i * cols + j] = std::max(dp[(i - 1) * cols + j], dp[i * cols + j - 1]);
            }
        }
    }
    return dp;
}

}  // namespace detail

/// LCS length only, O(|t|) memory.
template <typename T>
std::size_t lcs_length(std::span<const T> s, std::span<const T> t) {
    std::vector<std::uint32_t> prev(t.size() + 1, 0), cur(t.size() + 1, 0);
    for (std::size_t i = 1; i <= s.size(); ++i) {
        for (std::size_t j = 1; j <= t.size(); ++j) {
            cur[j] = s[i - 1] == t[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[t.size()];
}

/// LCS with the canonical witness: backtrack from (|s|, |t|), taking the
/// diagonal on a symbol match, else up when that keeps the optimum, else left.
template <typename T>
LcsResult lcs(std::span<const T> s, std::span<const T> t) {
    const auto dp = detail::lcs_table(s, t);
    const std::size_t cols = t.size() + 1;
    LcsResult out;
    out.length = dp[s.size() * cols + t.size()];
    std::size_t i = s.size(), j = t.size();
    while (i > 0 && j > 0) {
        if (s[i - 1] == t[j - 1]) {
            out.I.push_back(static_cast<Index>(i));
            out.J.push_back(static_cast<Index>(j));
            --i;
            --j;
        } else if (dp[(i - 1) * cols + j] == dp[i * cols + j]) {
            --i;
        } else {
            --j;
        }
    }
    std::reverse(out.I.begin(), out.I.end());
    std::reverse(out.J.begin(), out.J.end());
    return out;
}

/// Insertion/deletion distance computed by its own DP (not via LCS).
template <typename T>
std::size_t edit_distance(std::span<const T> s, std::span<const T> t) {
    std::vector<std::size_t> prev(t.size() + 1), cur(t.size() + 1);
    for (std::size_t j = 0; j <= t.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= s.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= t.size(); ++j) {
            std::size_t best = std::min(prev[j], cur[j - 1]) + 1;
            if (s[i - 1] == t[j - 1]) best = std::min(best, prev[j - 1]);
            cur[j] = best;
        }
        std::swap(prev, cur);
    }
    return prev[t.size()];
}

/// First `threshold` matches of the canonical witness when lcs >= threshold.
/// The returned pair lives over n = max(|s|, |t|).
template <typename T>
std::optional<MatchingPair> extract_matching(std::span<const T> s, std::span<const T> t, std::size_t threshold) {
    LcsResult r = lcs(s, t);
    if (r.length < threshold) return std::nullopt;
    r.I.resize(threshold);
    r.J.resize(threshold);
    const auto n = static_cast<Index>(std::max(s.size(), t.size()));
    return MatchingPair(std::move(r.I), std::move(r.J), n);
}

// Convenience overloads for character strings.
inline LcsResult lcs(const std::string& s, const std::string& t) {
    return lcs(std::span<const char>(s), std::span<const char>(t));
}
inline std::size_t edit_distance(const std::string& s, const std::string& t) {
    return edit_distance(std::span<const char>(s), std::span<const char>(t));
}

std::string to_string(const IncreasingSubsequence& I);

}  // namespace rsinsdel
