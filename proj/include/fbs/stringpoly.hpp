#pragma once

// Lattice points of generalized string polytopes, the projected polytope
// (first block forgotten), multiplicities, component counts and fibers.
//
// Points are reported in the string orientation: they are the negatives of
// the corresponding Newton-Okounkov valuation vectors.

#include <map>
#include <set>
#include <vector>

#include "demazure.hpp"

namespace fbs {

struct LatticePointSet {
    WordSequence word;
    std::vector<StringVector> points; // sorted, distinct
    Coord level = 1;
};

/// Omega(B_{i, k a}); at level 1 these are the lattice points of Delta_{i,a}.
inline LatticePointSet lattice_points(CrystalFactory& factory, const Word& i, const std::vector<Coord>& a,
                                      Coord level = 1)
{
    if (level < 1) throw InvalidInput("level must be positive");
    std::vector<Coord> scaled(a);
    for (auto& v : scaled) v *= level;
    auto crystal = gen_demazure_crystal(factory, i, scaled);
    LatticePointSet out;
    for (int letter : i) out.word.blocks.push_back({letter});
    out.points = crystal.omega_points();
    out.level = level;
    return out;
}

/// Omega-points of B_{I, lambda_1, ..., lambda_r} in the word sequence's blocks.
inline std::vector<StringVector> weight_lattice_points(CrystalFactory& factory, const SubsetSequence& seq,
                                                       const WordSequence& words, const std::vector<Weight>& lambdas)
{
    return gen_demazure_crystal_weights(factory, seq, words, lambdas).omega_points();
}

namespace detail {

inline void require_full_first(const RootSystem& rs, const SubsetSequence& seq, const char* what)
{
    if (seq.sets.empty() || seq.sets[0].size() != rs.rank())
        throw InvalidInput(std::string(what) + " requires I_1 = [n]");
}

inline StringVector drop_first_block(const StringVector& x, std::size_t n1)
{
    return StringVector(x.begin() + static_cast<std::ptrdiff_t>(n1), x.end());
}

// lambda_1 + ... + lambda_r - sum over blocks >= 2 of x_{k,l} alpha_{i_{k,l}}.
inline Weight hat_weight(const RootSystem& rs, const WordSequence& words, const std::vector<Weight>& lambdas,
                         const StringVector& hat)
{
    Weight nu(rs.rank());
    for (const auto& l : lambdas) nu += l;
    const auto flat = words.flat();
    const std::size_t n1 = words.blocks[0].size();
    for (std::size_t q = 0; q < hat.size(); ++q) nu -= hat[q] * rs.simple_root(flat[n1 + q]);
    return nu;
}

} // namespace detail

/// pi_{>=2} of the Omega-image; one point per connected component.
inline std::vector<StringVector> hat_lattice_points(CrystalFactory& factory, const SubsetSequence& seq,
                                                    const WordSequence& words, const std::vector<Weight>& lambdas)
{
    detail::require_full_first(factory.root_system(), seq, "hat_lattice_points");
    const auto pts = weight_lattice_points(factory, seq, words, lambdas);
    const std::size_t n1 = words.blocks[0].size();
    std::set<StringVector> hat;
    for (const auto& x : pts) hat.insert(detail::drop_first_block(x, n1));
    return {hat.begin(), hat.end()};
}

using MultiplicityTable = std::map<Weight, std::int64_t>;

/// Multiplicities of every highest weight occurring, read off the hat points.
inline MultiplicityTable multiplicities(CrystalFactory& factory, const SubsetSequence& seq, const WordSequence& words,
                                        const std::vector<Weight>& lambdas)
{
    detail::require_full_first(factory.root_system(), seq, "multiplicity");
    MultiplicityTable table;
    for (const auto& x : hat_lattice_points(factory, seq, words, lambdas))
        ++table[detail::hat_weight(factory.root_system(), words, lambdas, x)];
    return table;
}

inline std::int64_t multiplicity(CrystalFactory& factory, const SubsetSequence& seq, const WordSequence& words,
                                 const std::vector<Weight>& lambdas, const Weight& nu)
{
    factory.root_system().check_weight(nu);
    const auto table = multiplicities(factory, seq, words, lambdas);
    auto it = table.find(nu);
    return it == table.end() ? 0 : it->second;
}

/// Decomposition of V(lambda_1) (x) ... (x) V(lambda_r) through I = ([n], ..., [n]).
inline MultiplicityTable tensor_decompose(CrystalFactory& factory, const std::vector<Weight>& lambdas)
{
    if (lambdas.empty()) throw InvalidInput("tensor_decompose needs at least one weight");
    const auto& rs = factory.root_system();
    std::vector<int> all;
    for (int s = 1; s <= static_cast<int>(rs.rank()); ++s) all.push_back(s);
    SubsetSequence seq{std::vector<std::vector<int>>(lambdas.size(), all)};
    return multiplicities(factory, seq, rs.longest_words(seq), lambdas);
}

/// Number of connected components of B_{I, lambda}; prepends ([n], 0) when I_1 != [n].
inline std::size_t component_count(CrystalFactory& factory, const SubsetSequence& seq, const WordSequence& words,
                                   const std::vector<Weight>& lambdas)
{
    const auto& rs = factory.root_system();
    rs.check_compatible(seq, words);
    if (!seq.sets.empty() && seq.sets[0].size() == rs.rank())
        return hat_lattice_points(factory, seq, words, lambdas).size();
    std::vector<int> all;
    for (int s = 1; s <= static_cast<int>(rs.rank()); ++s) all.push_back(s);
    SubsetSequence seq0 = seq;
    seq0.sets.insert(seq0.sets.begin(), all);
    WordSequence words0 = words;
    words0.blocks.insert(words0.blocks.begin(), rs.longest_word(all));
    std::vector<Weight> lambdas0 = lambdas;
    lambdas0.insert(lambdas0.begin(), Weight(rs.rank()));
    return hat_lattice_points(factory, seq0, words0, lambdas0).size();
}

/// First-block coordinates of the Omega-points lying over the hat point x.
inline std::vector<StringVector> fiber_string_points(CrystalFactory& factory, const SubsetSequence& seq,
                                                     const WordSequence& words, const std::vector<Weight>& lambdas,
                                                     const StringVector& x)
{
    detail::require_full_first(factory.root_system(), seq, "fiber_string_points");
    const std::size_t n1 = words.blocks[0].size();
    if (x.size() != words.total_length() - n1) throw InvalidInput("hat point has the wrong length");
    std::vector<StringVector> out;
    for (const auto& p : weight_lattice_points(factory, seq, words, lambdas))
        if (detail::drop_first_block(p, n1) == x)
            out.emplace_back(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(n1));
    if (out.empty()) throw InvalidInput("hat point is not attained");
    return out;
}

/// Highest weight of the component indexed by the hat point x.
inline Weight fiber_weight(const RootSystem& rs, const WordSequence& words, const std::vector<Weight>& lambdas,
                           const StringVector& x)
{
    return detail::hat_weight(rs, words, lambdas, x);
}

} // namespace fbs
