// Chain structure of matching pairs (I, J).
//
// A pair is a chain when its entries interleave, I_i = J_{i+1} for all i or
// I_{i+1} = J_i for all i; consecutive rows then share one variable. Any
// restriction (I^P, J^P) splits into maximal chains whose variable sets are
// pairwise disjoint, which is what lets the linear-alphabet certifier assign
// variables one chain at a time.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rsinsdel/rational.hpp"
#include "rsinsdel/seq_align.hpp"

namespace rsinsdel {

enum class ChainType { TypeI, TypeII };

/// IleadsJ: I_i = J_{i+1}.  JleadsI: I_{i+1} = J_i.
enum class Orientation { None, IleadsJ, JleadsI };

struct ChainKind {
    ChainType type;
    Orientation orientation;  // None for Type I

    friend bool operator==(const ChainKind&, const ChainKind&) = default;
};

/// Single-element Type II chains satisfy both identities; they are tagged IleadsJ.
/// Throws std::invalid_argument when |I| != |J| or the pair is empty.
std::optional<ChainKind> is_chain(const IncreasingSubsequence& I, const IncreasingSubsequence& J);
std::optional<ChainKind> is_chain(const MatchingPair& pair);

/// Var(I, J, P) = Set(I^P) u Set(J^P).
IndexSet var_set(const MatchingPair& pair, const IndexSet& P);

/// Whether (I^{sub}, J^{sub}) is a maximal chain with respect to
/// (I^{ambient}, J^{ambient}). Throws std::invalid_argument when `sub` is not
/// a chain or not contained in `ambient`.
bool is_maximal(const MatchingPair& pair, const IndexSet& ambient, const IndexSet& sub);

struct ChainPart {
    IndexSet members;
    ChainKind kind;

    friend bool operator==(const ChainPart&, const ChainPart&) = default;
};

struct ChainDecomposition {
    MatchingPair pair;
    IndexSet ground;
    std::vector<ChainPart> parts;

    std::vector<IndexSet> part_sets() const;
};

/// Partition of P into maximal chains: repeatedly take the smallest remaining
/// index and follow the unique successor whose I (or J) value continues the chain.
ChainDecomposition decompose(const MatchingPair& pair, const IndexSet& P);

/// Decomposes [l] into maximal chains, then cuts every part longer than
/// 1/eps by dropping its t-th, 2t-th, ... smallest members (t = floor(1/eps)+1).
/// The result's ground set is what remains. Throws unless 0 < eps < 1.
ChainDecomposition split_long_chains(const MatchingPair& pair, const Rational& eps);

/// Stable sort by (Type II?, size): Type I parts first, sizes nondecreasing.
ChainDecomposition order_parts(ChainDecomposition dec);

/// True when the given parts have pairwise disjoint Var sets.
bool mutually_disjoint(const MatchingPair& pair, const std::vector<IndexSet>& parts);

}  // namespace rsinsdel
