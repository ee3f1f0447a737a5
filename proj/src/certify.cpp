#include "rsinsdel/certify.hpp"

#include <algorithm>
#include <numeric>

namespace rsinsdel {

std::string to_string(OutcomeKind kind) {
    switch (kind) {
        case OutcomeKind::Success: return "success";
        case OutcomeKind::Fail: return "fail";
        case OutcomeKind::Certificate: return "certificate";
    }
    return "unknown";
}

namespace {

struct FaultyScan {
    bool top_zero = false;  // det(A') is already the zero polynomial
    std::optional<Index> faulty;
};

FaultyScan scan_faulty(const VMatrixSpec& A, std::span<const std::uint64_t> alpha, const PrimeModulus& mod,
                       IdentityOptions opts) {
    const std::size_t dim = A.cols();
    if (A.rows() < dim) throw std::invalid_argument("faulty index: fewer than 2k-1 rows");
    const VMatrixSpec top = A.top(dim);
    const Index n = A.ambient();
    IdentityMode mode = opts.mode;
    if (mode == IdentityMode::Auto) mode = dim <= kAutoExactDim ? IdentityMode::Exact : IdentityMode::Randomized;

    FaultyScan out;
    if (mode == IdentityMode::Exact) {
        MultiPoly det = symbolic_determinant(top, PartialAssignment::none(n), mod);
        if (det.is_zero()) {
            out.top_zero = true;
            return out;
        }
        const IndexSet vars = top.variables();
        for (Index v : vars) {
            // Variables outside A' leave the determinant unchanged, so only
            // these can be transitions.
            det.substitute_in_place(v, alpha[v - 1]);
            if (det.is_zero()) {
                out.faulty = v;
                return out;
            }
        }
        return out;
    }

    auto zero_after = [&](Index i) {
        return symbolically_zero(top, PartialAssignment::prefix(alpha, i), mod, IdentityMode::Randomized, opts.rng);
    };
    if (zero_after(0)) {
        out.top_zero = true;
        return out;
    }
    if (!zero_after(n)) return out;
    Index lo = 0, hi = n;  // nonzero at lo, zero at hi
    while (hi - lo > 1) {
        Index mid = lo + (hi - lo) / 2;
        if (zero_after(mid)) hi = mid;
        else lo = mid;
    }
    out.faulty = hi;
    return out;
}

}  // namespace

std::optional<Index> faulty_index(const VMatrixSpec& A, std::span<const std::uint64_t> alpha, const PrimeModulus& mod,
                                  IdentityOptions opts) {
    if (alpha.size() != A.ambient()) throw std::invalid_argument("faulty index: assignment size != n");
    return scan_faulty(A, alpha, mod, opts).faulty;
}

CertifyOutcome certify_v1(std::size_t n, std::size_t k, std::size_t r, const Rational& eps, const MatchingPair& pair,
                          std::span<const std::uint64_t> alpha, const PrimeModulus& mod, IdentityOptions opts) {
    if (k == 0) throw std::invalid_argument("certify_v1: k must be positive");
    if (eps < 0) throw std::invalid_argument("certify_v1: eps must be nonnegative");
    if (pair.ambient() != n) throw std::invalid_argument("certify_v1: matching pair is not over [n]");
    if (alpha.size() != n) throw std::invalid_argument("certify_v1: need exactly n evaluation points");
    const Rational eps_n = eps * static_cast<std::int64_t>(n);
    const BigInt expected_len = BigInt(2 * k - 1) + floor(eps_n);
    if (BigInt(pair.size()) != expected_len) {
        throw std::invalid_argument("certify_v1: l = " + std::to_string(pair.size()) + " but 2k-1+floor(eps*n) = " +
                                    expected_len.str());
    }
    const BigInt r_max = ceil(eps_n / 2);
    if (r < 1 || BigInt(r) > r_max) {
        throw std::invalid_argument("certify_v1: r = " + std::to_string(r) + " outside [1, ceil(eps*n/2)] = [1, " +
                                    r_max.str() + "]");
    }
    if (agreement_count(pair) > k - 1) {
        throw std::invalid_argument("certify_v1: I and J agree on more than k-1 coordinates");
    }

    const VMatrixSpec V(k, pair);
    IndexSet B;
    CertifyOutcome out{OutcomeKind::Certificate, {}};
    for (std::size_t j = 1; j <= r; ++j) {
        const VMatrixSpec VB = V.delete_rows(B);
        if (VB.rows() < V.cols()) {
            throw InvariantViolation("certify_v1 FAIL: V^B has " + std::to_string(VB.rows()) + " < 2k-1 rows");
        }
        const FaultyScan scan = scan_faulty(VB, alpha, mod, opts);
        if (scan.top_zero) {
            throw InvariantViolation("certify_v1 FAIL: top square block of V^B is the zero polynomial");
        }
        if (!scan.faulty) return CertifyOutcome{OutcomeKind::Success, {}};
        out.indices.push_back(*scan.faulty);
        B.insert(*scan.faulty);
    }
    return out;
}

bool linear_condition_holds(std::size_t ell, std::size_t k, std::size_t r, const Rational& eps0) {
    if (eps0 <= 0 || eps0 >= 1) return false;
    const Rational lhs = (1 - eps0) * static_cast<std::int64_t>(ell);
    const Rational rhs = Rational(static_cast<std::int64_t>(2 * k - 1)) + Rational(static_cast<std::int64_t>(r + 1)) / eps0;
    return lhs >= rhs;
}

std::optional<std::size_t> select_bank(const std::vector<IndexSet>& parts, std::size_t r, const Rational& eps0) {
    const Rational lo = Rational(static_cast<std::int64_t>(r)) / eps0;
    const Rational hi = Rational(static_cast<std::int64_t>(r + 1)) / eps0;
    std::int64_t sum = 0;
    for (std::size_t m = 1; m <= parts.size(); ++m) {
        sum += static_cast<std::int64_t>(parts[parts.size() - m].size());
        const Rational s(sum);
        if (s >= lo && s <= hi) return m;
    }
    return std::nullopt;
}

CertifyV2Input prepare_v2_input(std::size_t n, std::size_t k, std::size_t r, const Rational& eps0,
                                const MatchingPair& pair) {
    ChainDecomposition dec = order_parts(split_long_chains(pair, eps0));
    return CertifyV2Input{n, k, r, eps0, pair, dec.part_sets()};
}

void validate_v2_input(const CertifyV2Input& in) {
    const std::size_t ell = in.pair.size();
    if (in.k == 0 || in.r == 0) throw std::invalid_argument("certify_v2: k and r must be positive");
    if (in.eps0 <= 0 || in.eps0 >= 1) throw std::invalid_argument("certify_v2: eps0 must lie in (0, 1)");
    if (in.pair.ambient() != in.n) throw std::invalid_argument("certify_v2: matching pair is not over [n]");
    if (agreement_count(in.pair) > in.k - 1) {
        throw std::invalid_argument("certify_v2: I and J agree on more than k-1 coordinates");
    }
    if (!linear_condition_holds(ell, in.k, in.r, in.eps0)) {
        throw std::invalid_argument("certify_v2: (1-eps0)*l >= 2k-1+(r+1)/eps0 fails for l=" + std::to_string(ell) +
                                    ", k=" + std::to_string(in.k) + ", r=" + std::to_string(in.r) +
                                    ", eps0=" + to_string(in.eps0));
    }
    std::size_t covered = 0;
    IndexSet seen;
    std::optional<ChainType> prev_type;
    std::size_t prev_size = 0;
    for (const auto& part : in.parts) {
        if (part.empty()) throw std::invalid_argument("certify_v2: empty part");
        for (Index p : part) {
            if (p < 1 || p > ell) throw std::invalid_argument("certify_v2: part index outside [1, l]");
            if (!seen.insert(p).second) throw std::invalid_argument("certify_v2: parts overlap");
        }
        auto kind = is_chain(restrict(in.pair, part));
        if (!kind) throw std::invalid_argument("certify_v2: a part is not a chain");
        if (Rational(static_cast<std::int64_t>(part.size())) * in.eps0 > 1) {
            throw std::invalid_argument("certify_v2: a part is longer than 1/eps0");
        }
        if (prev_type && ((*prev_type == ChainType::TypeII && kind->type == ChainType::TypeI) || part.size() < prev_size)) {
            throw std::invalid_argument("certify_v2: parts must list Type I chains first with nondecreasing sizes");
        }
        prev_type = kind->type;
        prev_size = part.size();
        covered += part.size();
    }
    if (!mutually_disjoint(in.pair, in.parts)) {
        throw std::invalid_argument("certify_v2: parts are not mutually (I,J)-disjoint");
    }
    if (Rational(static_cast<std::int64_t>(covered)) < (1 - in.eps0) * static_cast<std::int64_t>(ell)) {
        throw std::invalid_argument("certify_v2: parts cover fewer than (1-eps0)*l indices");
    }
    if (!select_bank(in.parts, in.r, in.eps0)) {
        throw std::invalid_argument("certify_v2: no bank size m satisfies the window [r/eps0, (r+1)/eps0]");
    }
}

namespace {

VMatrixSpec working_matrix(const CertifyV2Input& in, const std::vector<IndexSet>& Q, std::size_t active) {
    const std::size_t dim = 2 * in.k - 1;
    std::vector<VRow> rows;
    rows.reserve(dim);
    for (std::size_t i = 0; i < active && rows.size() < dim; ++i) {
        for (Index p : Q[i]) {
            if (rows.size() == dim) break;
            rows.push_back({in.pair.I()(p), in.pair.J()(p)});
        }
    }
    if (rows.size() < dim) throw InvariantViolation("certify_v2: fewer than 2k-1 rows outside the bank");
    return VMatrixSpec(in.k, static_cast<Index>(in.n), std::move(rows));
}

IndexSet smallest_elements(const IndexSet& from, std::size_t count) {
    IndexSet out;
    for (Index p : from) {
        if (out.size() == count) break;
        out.insert(p);
    }
    return out;
}

void require(bool ok, const char* what) {
    if (!ok) throw InvariantViolation(std::string("certify_v2: ") + what);
}

}  // namespace

CertifyOutcome certify_v2(const CertifyV2Input& in, std::span<const std::uint64_t> alpha, const PrimeModulus& mod,
                          CertifyV2Options opts) {
    validate_v2_input(in);
    if (alpha.size() != in.n) throw std::invalid_argument("certify_v2: need exactly n evaluation points");

    const std::size_t s = in.parts.size();
    const std::size_t dim = 2 * in.k - 1;
    const std::size_t m = *select_bank(in.parts, in.r, in.eps0);
    const std::size_t active = s - m;

    IndexSet S;
    IndexSet ever_offered;  // union of all S' formed so far
    std::size_t c = 0;
    std::size_t a = 1;
    std::size_t b = s - m + 1;
    std::vector<std::uint64_t> cert;
    std::vector<IndexSet> Q = in.parts;
    if (opts.trace) *opts.trace = CertifyV2Trace{m, 0, {}};

    while (c < dim) {
        if (opts.check_invariants) {
            for (std::size_t i = 0; i < active; ++i) require(Q[i].size() == in.parts[i].size(), "|Q_i| != |P_i| outside the bank");
            std::size_t sum = 0;
            for (std::size_t i = 0; i < active; ++i) sum += Q[i].size();
            require(sum >= dim, "non-bank parts hold fewer than 2k-1 rows");
            require(1 <= a && a <= active, "chain cursor a outside [1, s-m]");
            require(active + 1 <= b && b <= s, "bank cursor b outside [s-m+1, s]");
            require(Q[b - 1].size() >= Q[a - 1].size(), "|Q_b| < |Q_a|");
            require(mutually_disjoint(in.pair, Q), "working parts lost (I,J)-disjointness");
        }

        const VMatrixSpec M = working_matrix(in, Q, active);
        const IndexSet chain_vars = var_set(in.pair, Q[a - 1]);
        IndexSet S_next = S;
        S_next.insert(chain_vars.begin(), chain_vars.end());

        if (opts.check_invariants) {
            for (Index v : chain_vars) require(!ever_offered.contains(v), "variable of Q_a was offered before");
            require(!symbolically_zero(M, PartialAssignment::subset(alpha, S), mod, opts.identity.mode, opts.identity.rng),
                    "M is singular before assigning Q_a");
        }
        ever_offered.insert(chain_vars.begin(), chain_vars.end());

        const bool nonsingular =
            !symbolically_zero(M, PartialAssignment::subset(alpha, S_next), mod, opts.identity.mode, opts.identity.rng);
        if (opts.trace) {
            opts.trace->checkpoints.push_back(CheckPoint{cert.size(), cert, c, a, b, Q, nonsingular});
        }

        if (nonsingular) {
            S = std::move(S_next);
            c += Q[a - 1].size();
            ++a;
        } else {
            Q[a - 1] = smallest_elements(Q[b - 1], Q[a - 1].size());
            Q[b - 1].clear();
            ++b;
            cert.push_back(c);
            if (opts.trace) ++opts.trace->replacements;
            if (opts.check_invariants) {
                require(mutually_disjoint(in.pair, Q), "replacement broke (I,J)-disjointness");
            }
            if (cert.size() == in.r) return CertifyOutcome{OutcomeKind::Certificate, cert};
        }
    }
    return CertifyOutcome{OutcomeKind::Success, {}};
}

std::optional<ReconstructedState> reconstruct_state(const CertifyV2Input& in,
                                                    const std::vector<std::uint64_t>& certificate, std::size_t c_star) {
    validate_v2_input(in);
    const std::size_t s = in.parts.size();
    const std::size_t dim = 2 * in.k - 1;
    const std::size_t m = *select_bank(in.parts, in.r, in.eps0);
    const std::size_t j_star = certificate.size();

    std::vector<IndexSet> Q = in.parts;
    std::vector<std::uint64_t> cert;
    std::size_t c = 0, a = 1, b = s - m + 1;
    while (c < dim) {
        const std::size_t j = cert.size();
        if (j == j_star && c == c_star) return ReconstructedState{Q, a};
        // The outcome of each check is forced by the target values.
        const bool nonsingular = j < j_star ? c != certificate[j] : c != c_star;
        if (nonsingular) {
            c += Q[a - 1].size();
            ++a;
        } else {
            if (b > s) return std::nullopt;
            Q[a - 1] = smallest_elements(Q[b - 1], Q[a - 1].size());
            Q[b - 1].clear();
            ++b;
            cert.push_back(c);
            if (cert.size() > j_star || cert.size() == in.r) return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace rsinsdel
