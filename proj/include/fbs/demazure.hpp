#pragma once

// Demazure crystals, generalized Demazure crystals and the generalized
// string parametrization Omega.
//
// Both shapes share one engine: factors F_1, ..., F_r with a word block per
// factor. Elements are the nonzero
//   f_{block 1}^{x_1} (b_{F_1} (x) f_{block 2}^{x_2} (b_{F_2} (x) ...)),
// where f_{block}^{x} = f_{j_1}^{x_1} ... f_{j_m}^{x_m} for block (j_1, ..., j_m).
// The shape (i, a) has F_k = B(a_k w_{i_k}) with the one-letter block (i_k);
// the shape (I, lambda) has F_k = B(lambda_k) with block k of the word sequence.

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "crystal.hpp"

namespace fbs {

using StringVector = std::vector<Coord>;

class GenDemazureCrystal {
public:
    GenDemazureCrystal(FactorList factors, WordSequence blocks, std::size_t budget = default_vertex_budget)
        : factors_(std::move(factors)), blocks_(std::move(blocks))
    {
        if (factors_.empty() || factors_.size() != blocks_.size())
            throw InvalidInput("one word block is needed per tensor factor");
        generate(budget);
        omega_.reserve(elements_.size());
        for (const auto& b : elements_) omega_.push_back(compute_omega(b));
        for (std::size_t k = 0; k < elements_.size(); ++k)
            if (!by_omega_.emplace(omega_[k], k).second)
                throw std::logic_error("string parametrization is not injective");
    }

    const FactorList& factors() const { return factors_; }
    const WordSequence& blocks() const { return blocks_; }
    std::size_t size() const { return elements_.size(); }

    /// Elements sorted lexicographically by factor vertex indices.
    const std::vector<TensorIndex>& elements() const { return elements_; }
    const StringVector& omega_at(std::size_t k) const { return omega_.at(k); }
    bool contains(const TensorIndex& b) const { return std::binary_search(elements_.begin(), elements_.end(), b); }

    std::size_t index_of(const TensorIndex& b) const
    {
        auto it = std::lower_bound(elements_.begin(), elements_.end(), b);
        if (it == elements_.end() || *it != b) throw InvalidInput("element is not in the crystal");
        return static_cast<std::size_t>(it - elements_.begin());
    }

    /// Omega(b): maximal e-exponents block by block, peeling one highest factor per block.
    StringVector omega(const TensorIndex& b) const { return omega_.at(index_of(b)); }

    /// Omega-image, sorted lexicographically.
    std::vector<StringVector> omega_points() const
    {
        std::vector<StringVector> pts(omega_);
        std::sort(pts.begin(), pts.end());
        return pts;
    }

    /// Inverse of omega: rebuilds the element from its exponents (innermost block first).
    std::optional<TensorIndex> reconstruct(const StringVector& x) const
    {
        if (x.size() != blocks_.total_length()) throw InvalidInput("string vector has the wrong length");
        const auto offs = blocks_.offsets();
        const std::size_t r = factors_.size();
        TensorIndex b(r, 0);
        for (std::size_t k = r; k-- > 0;) {
            b[k] = 0;
            const auto& w = blocks_.blocks[k];
            for (std::size_t l = w.size(); l-- > 0;) {
                const Coord reps = x[offs[k] + l];
                if (reps < 0) return std::nullopt;
                for (Coord t = 0; t < reps; ++t)
                    if (!tensor_ops::apply(suffix_factors(k), suffix(b, k), w[l], false)) return std::nullopt;
            }
        }
        return b;
    }

    std::optional<TensorIndex> element_for(const StringVector& x) const
    {
        auto it = by_omega_.find(x);
        if (it == by_omega_.end()) return std::nullopt;
        return elements_[it->second];
    }

    Weight wt(const TensorIndex& b) const { return tensor_ops::wt(factors_, b); }

    /// Highest weights of the connected components (requires e-closure).
    std::vector<Weight> decompose() const { return highest_weight_decompose(factors_, elements_); }

private:
    std::span<const std::shared_ptr<const PathCrystal>> suffix_factors(std::size_t k) const
    {
        return std::span<const std::shared_ptr<const PathCrystal>>(factors_).subspan(k);
    }
    static std::span<std::uint32_t> suffix(TensorIndex& b, std::size_t k)
    {
        return std::span<std::uint32_t>(b).subspan(k);
    }

    void generate(std::size_t budget)
    {
        const std::size_t r = factors_.size();
        std::set<TensorIndex> current{TensorIndex(r, 0)};
        for (std::size_t k = r; k-- > 0;) {
            // Elements of the previous stage already carry b_{F_k} = index 0 at slot k.
            const auto& w = blocks_.blocks[k];
            for (std::size_t l = w.size(); l-- > 0;) {
                std::set<TensorIndex> grown;
                for (const auto& s : current) {
                    TensorIndex c = s;
                    grown.insert(c);
                    while (tensor_ops::apply(suffix_factors(k), suffix(c, k), w[l], false)) {
                        if (!grown.insert(c).second) continue;
                        if (grown.size() > budget)
                            throw BudgetExceeded("generalized Demazure crystal exceeded the element budget of " +
                                                 std::to_string(budget));
                    }
                }
                current = std::move(grown);
            }
        }
        elements_.assign(current.begin(), current.end());
    }

    StringVector compute_omega(const TensorIndex& b) const
    {
        const std::size_t r = factors_.size();
        StringVector x;
        x.reserve(blocks_.total_length());
        TensorIndex c = b;
        for (std::size_t k = 0; k < r; ++k) {
            for (int letter : blocks_.blocks[k]) {
                const auto fs = suffix_factors(k);
                const Coord eps = tensor_ops::epsilon(fs, std::span<const std::uint32_t>(c).subspan(k), letter);
                for (Coord t = 0; t < eps; ++t) tensor_ops::apply(fs, suffix(c, k), letter, true);
                x.push_back(eps);
            }
            if (c[k] != 0) throw InvalidInput("peeling failed: element is not in the generalized Demazure crystal");
        }
        return x;
    }

    FactorList factors_;
    WordSequence blocks_;
    std::vector<TensorIndex> elements_;
    std::vector<StringVector> omega_;
    std::map<StringVector, std::size_t> by_omega_;
};

/// B_w(lambda) for the reduced word `word` of w.
inline GenDemazureCrystal demazure_crystal(CrystalFactory& factory, const Weight& lambda, const Word& word)
{
    const auto& rs = factory.root_system();
    rs.check_word(word);
    if (!rs.is_reduced(word)) throw InvalidInput("demazure_crystal needs a reduced word");
    return GenDemazureCrystal({factory.get(lambda)}, WordSequence{{word}}, factory.budget());
}

/// B_{i,a} inside B(a_1 w_{i_1}) (x) ... (x) B(a_r w_{i_r}).
inline GenDemazureCrystal gen_demazure_crystal(CrystalFactory& factory, const Word& i, const std::vector<Coord>& a)
{
    const auto& rs = factory.root_system();
    rs.check_word(i);
    if (i.empty()) throw InvalidInput("gen_demazure_crystal needs a nonempty word");
    if (i.size() != a.size()) throw InvalidInput("word and vector a must have the same length");
    FactorList factors;
    WordSequence blocks;
    for (std::size_t k = 0; k < i.size(); ++k) {
        if (a[k] < 0) throw InvalidInput("gen_demazure_crystal needs a >= 0");
        factors.push_back(factory.get(a[k] * rs.fundamental_weight(i[k])));
        blocks.blocks.push_back({i[k]});
    }
    return GenDemazureCrystal(std::move(factors), std::move(blocks), factory.budget());
}

/// B_{I, lambda_1, ..., lambda_r} inside B(lambda_1) (x) ... (x) B(lambda_r).
inline GenDemazureCrystal gen_demazure_crystal_weights(CrystalFactory& factory, const SubsetSequence& seq,
                                                       const WordSequence& words, const std::vector<Weight>& lambdas)
{
    const auto& rs = factory.root_system();
    rs.check_compatible(seq, words);
    if (lambdas.size() != seq.size()) throw InvalidInput("need one weight per subset");
    FactorList factors;
    for (const auto& l : lambdas) {
        rs.check_weight(l);
        if (!l.is_dominant()) throw InvalidInput("weights must be dominant");
        factors.push_back(factory.get(l));
    }
    return GenDemazureCrystal(std::move(factors), words, factory.budget());
}

} // namespace fbs
