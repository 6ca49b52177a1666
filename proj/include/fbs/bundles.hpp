#pragma once

// Integer-vector data attached to line bundles on flag Bott-Samelson
// varieties: the pullback vector a on the Bott-Samelson variety, the shift
// weight mu, and the flag Bott tower vectors for type-A Levis.

#include <algorithm>
#include <vector>

#include "rootsys.hpp"

namespace fbs {

/// Pullback vector a, one block per subset. a_k(l) is nonzero only when l is
/// the last occurrence of its letter s in block k, where it equals
/// <lambda_k, s> plus <lambda_j, s> for every later j reached before s
/// reappears in blocks k+1..j.
inline std::vector<std::vector<Coord>> pullback_vector(const RootSystem& rs, const SubsetSequence& seq,
                                                       const WordSequence& words, const std::vector<Weight>& lambdas)
{
    rs.check_compatible(seq, words);
    if (lambdas.size() != seq.size()) throw InvalidInput("need one weight per subset");
    for (const auto& l : lambdas) rs.check_weight(l);
    const std::size_t r = seq.size();
    std::vector<std::vector<Coord>> a(r);
    for (std::size_t k = 0; k < r; ++k) {
        const auto& block = words.blocks[k];
        a[k].assign(block.size(), 0);
        for (std::size_t l = 0; l < block.size(); ++l) {
            const int s = block[l];
            if (std::find(block.begin() + static_cast<std::ptrdiff_t>(l) + 1, block.end(), s) != block.end()) continue;
            Coord v = rs.pairing(lambdas[k], s);
            for (std::size_t j = k + 1; j < r; ++j) {
                const auto& later = words.blocks[j];
                if (std::find(later.begin(), later.end(), s) != later.end()) break;
                v += rs.pairing(lambdas[j], s);
            }
            a[k][l] = v;
        }
    }
    return a;
}

inline std::vector<Coord> flatten(const std::vector<std::vector<Coord>>& blocks)
{
    std::vector<Coord> out;
    for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
}

/// mu = sum_j sum_{s not among the letters of blocks 1..j} <lambda_j, s> w_s.
inline Weight mu_weight(const RootSystem& rs, const SubsetSequence& seq, const WordSequence& words,
                        const std::vector<Weight>& lambdas)
{
    rs.check_compatible(seq, words);
    if (lambdas.size() != seq.size()) throw InvalidInput("need one weight per subset");
    Weight mu(rs.rank());
    std::vector<bool> seen(rs.rank() + 1, false);
    for (std::size_t j = 0; j < seq.size(); ++j) {
        rs.check_weight(lambdas[j]);
        for (int letter : words.blocks[j]) seen[static_cast<std::size_t>(letter)] = true;
        for (int s = 1; s <= static_cast<int>(rs.rank()); ++s)
            if (!seen[static_cast<std::size_t>(s)]) mu[static_cast<std::size_t>(s - 1)] += rs.pairing(lambdas[j], s);
    }
    return mu;
}

/// Degeneration vectors a_k in Z^{m_k + 1}:
/// a_k(l) = <lambda_k + ... + lambda_r, u_{k,l}^vee + ... + u_{k,m_k}^vee>, a_k(m_k + 1) = 0.
inline std::vector<std::vector<Coord>> degeneration_vectors(const RootSystem& rs, const SubsetSequence& seq,
                                                            const std::vector<Weight>& lambdas)
{
    seq.validate(rs.rank());
    if (lambdas.size() != seq.size()) throw InvalidInput("need one weight per subset");
    const std::size_t r = seq.size();
    std::vector<std::vector<Coord>> out(r);
    Weight tail(rs.rank());
    std::vector<Weight> tails(r);
    for (std::size_t k = r; k-- > 0;) {
        rs.check_weight(lambdas[k]);
        tail += lambdas[k];
        tails[k] = tail;
    }
    for (std::size_t k = 0; k < r; ++k) {
        const auto u = rs.type_a_enumeration(seq.sets[k]);
        const std::size_t m = u.size();
        out[k].assign(m + 1, 0);
        Coord acc = 0;
        for (std::size_t l = m; l-- > 0;) {
            acc += rs.pairing(tails[k], u[l]);
            out[k][l] = acc;
        }
    }
    return out;
}

/// Flag Bott tower vectors a^{(k,j)}_l for 1 <= j < k <= r (1-based k, j, l).
struct BottTowerEntry {
    std::size_t k;
    std::size_t j;
    std::size_t l;
    std::vector<Coord> vector;
};

/// a^{(k,j)}_l(p) = <alpha_{u_{k,l}} + ... + alpha_{u_{k,m_k}}, alpha^vee_{u_{j,p}} + ... + alpha^vee_{u_{j,m_j}}>
/// for l <= m_k and p <= m_j, zero in the (m + 1)-th slots.
/// Entries are ordered by k, then j, then l.
inline std::vector<BottTowerEntry> flag_bott_vectors(const RootSystem& rs, const SubsetSequence& seq)
{
    seq.validate(rs.rank());
    const std::size_t r = seq.size();
    std::vector<std::vector<int>> u(r);
    for (std::size_t k = 0; k < r; ++k) u[k] = rs.type_a_enumeration(seq.sets[k]);
    std::vector<BottTowerEntry> out;
    for (std::size_t k = 1; k < r; ++k) {
        const std::size_t mk = u[k].size();
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t mj = u[j].size();
            for (std::size_t l = 0; l <= mk; ++l) {
                std::vector<Coord> v(mj + 1, 0);
                if (l < mk) {
                    Weight chi(rs.rank());
                    for (std::size_t t = l; t < mk; ++t) chi += rs.simple_root(u[k][t]);
                    Coord acc = 0;
                    for (std::size_t p = mj; p-- > 0;) {
                        acc += rs.pairing(chi, u[j][p]);
                        v[p] = acc;
                    }
                }
                out.push_back({k + 1, j + 1, l + 1, std::move(v)});
            }
        }
    }
    return out;
}

} // namespace fbs
