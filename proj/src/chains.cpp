#include "rsinsdel/chains.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace rsinsdel {

std::optional<ChainKind> is_chain(const IncreasingSubsequence& I, const IncreasingSubsequence& J) {
    if (I.size() != J.size()) throw std::invalid_argument("is_chain: |I| != |J|");
    if (I.empty()) throw std::invalid_argument("is_chain: empty pair");
    const auto& a = I.indices();
    const auto& b = J.indices();
    if (a.size() == 1) {
        if (a[0] == b[0]) return ChainKind{ChainType::TypeI, Orientation::None};
        return ChainKind{ChainType::TypeII, Orientation::IleadsJ};
    }
    bool i_leads = true, j_leads = true;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        i_leads = i_leads && a[i] == b[i + 1];
        j_leads = j_leads && a[i + 1] == b[i];
    }
    if (i_leads) return ChainKind{ChainType::TypeII, Orientation::IleadsJ};
    if (j_leads) return ChainKind{ChainType::TypeII, Orientation::JleadsI};
    return std::nullopt;
}

std::optional<ChainKind> is_chain(const MatchingPair& pair) { return is_chain(pair.I(), pair.J()); }

IndexSet var_set(const MatchingPair& pair, const IndexSet& P) {
    IndexSet vars;
    for (Index p : P) {
        if (p < 1 || p > pair.size()) throw std::out_of_range("index " + std::to_string(p) + " outside [1, l]");
        vars.insert(pair.I()(p));
        vars.insert(pair.J()(p));
    }
    return vars;
}

bool is_maximal(const MatchingPair& pair, const IndexSet& ambient, const IndexSet& sub) {
    if (sub.empty()) throw std::invalid_argument("is_maximal: empty chain");
    if (!std::includes(ambient.begin(), ambient.end(), sub.begin(), sub.end())) {
        throw std::invalid_argument("is_maximal: chain is not inside the ambient index set");
    }
    const MatchingPair chain = restrict(pair, sub);
    auto kind = is_chain(chain);
    if (!kind) throw std::invalid_argument("is_maximal: the selected rows do not form a chain");
    if (kind->type == ChainType::TypeI) return true;

    const auto& ci = chain.I().indices();
    const auto& cj = chain.J().indices();
    const Index lo = std::min(ci.front(), cj.front());
    const Index hi = std::max(ci.back(), cj.back());
    const auto set_i = restrict(pair.I(), ambient).indices();
    const auto set_j = restrict(pair.J(), ambient).indices();
    auto in_exactly_one = [&](Index v) {
        bool in_i = std::binary_search(set_i.begin(), set_i.end(), v);
        bool in_j = std::binary_search(set_j.begin(), set_j.end(), v);
        return in_i != in_j;
    };
    return in_exactly_one(lo) && in_exactly_one(hi);
}

std::vector<IndexSet> ChainDecomposition::part_sets() const {
    std::vector<IndexSet> out;
    out.reserve(parts.size());
    for (const auto& p : parts) out.push_back(p.members);
    return out;
}

ChainDecomposition decompose(const MatchingPair& pair, const IndexSet& P) {
    // value -> position, restricted to P
    std::map<Index, Index> pos_of_i, pos_of_j;
    for (Index p : P) {
        if (p < 1 || p > pair.size()) throw std::out_of_range("index " + std::to_string(p) + " outside [1, l]");
        pos_of_i[pair.I()(p)] = p;
        pos_of_j[pair.J()(p)] = p;
    }

    ChainDecomposition dec{pair, P, {}};
    IndexSet remaining = P;
    while (!remaining.empty()) {
        const Index start = *remaining.begin();
        IndexSet members{start};
        remaining.erase(start);
        ChainKind kind{ChainType::TypeI, Orientation::None};
        const Index si = pair.I()(start), sj = pair.J()(start);
        if (si != sj) {
            // I < J: the next row has I equal to the current J, else the mirror.
            const bool i_smaller = si < sj;
            Index cur = start;
            for (;;) {
                const auto& lookup = i_smaller ? pos_of_i : pos_of_j;
                const Index key = i_smaller ? pair.J()(cur) : pair.I()(cur);
                auto it = lookup.find(key);
                if (it == lookup.end()) break;
                if (!remaining.erase(it->second)) {
                    throw std::logic_error("decompose: successor already used by an earlier chain");
                }
                cur = it->second;
                members.insert(cur);
            }
            kind = {ChainType::TypeII,
                    members.size() == 1 || !i_smaller ? Orientation::IleadsJ : Orientation::JleadsI};
        }
        dec.parts.push_back({std::move(members), kind});
    }
    return dec;
}

ChainDecomposition split_long_chains(const MatchingPair& pair, const Rational& eps) {
    if (eps <= 0 || eps >= 1) throw std::invalid_argument("split_long_chains needs 0 < eps < 1");
    IndexSet all;
    for (Index i = 1; i <= pair.size(); ++i) all.insert(i);
    ChainDecomposition maximal = decompose(pair, all);

    const auto max_size = static_cast<std::size_t>(floor(1 / eps));
    const std::size_t t = max_size + 1;
    ChainDecomposition out{pair, {}, {}};
    for (auto& part : maximal.parts) {
        if (part.members.size() <= max_size) {
            out.ground.insert(part.members.begin(), part.members.end());
            out.parts.push_back(std::move(part));
            continue;
        }
        std::vector<Index> ordered(part.members.begin(), part.members.end());
        IndexSet block;
        auto flush = [&]() {
            if (block.empty()) return;
            auto kind = is_chain(restrict(pair, block));
            if (!kind) throw std::logic_error("split_long_chains: block is not a chain");
            out.ground.insert(block.begin(), block.end());
            out.parts.push_back({block, *kind});
            block.clear();
        };
        for (std::size_t rank = 1; rank <= ordered.size(); ++rank) {
            if (rank % t == 0) flush();
            else block.insert(ordered[rank - 1]);
        }
        flush();
    }
    return out;
}

ChainDecomposition order_parts(ChainDecomposition dec) {
    std::stable_sort(dec.parts.begin(), dec.parts.end(), [](const ChainPart& a, const ChainPart& b) {
        const bool a2 = a.kind.type == ChainType::TypeII, b2 = b.kind.type == ChainType::TypeII;
        if (a2 != b2) return !a2;
        return a.members.size() < b.members.size();
    });
    return dec;
}

bool mutually_disjoint(const MatchingPair& pair, const std::vector<IndexSet>& parts) {
    IndexSet seen;
    for (const auto& part : parts) {
        for (Index v : var_set(pair, part)) {
            if (!seen.insert(v).second) return false;
        }
    }
    return true;
}

}  // namespace rsinsdel
