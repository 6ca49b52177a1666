#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fbs/rootsys.hpp"

using namespace fbs;

namespace {

// Brute force: all words of a given length over `letters` that send every
// positive root of the sub-system to a negative root.
std::vector<Word> longest_candidates(const RootSystem& rs, const std::vector<int>& letters, std::size_t len)
{
    std::vector<Word> out;
    Word w(len, letters[0]);
    std::vector<std::size_t> idx(len, 0);
    for (;;) {
        for (std::size_t k = 0; k < len; ++k) w[k] = letters[idx[k]];
        bool all_negative = true;
        for (const auto& beta : rs.positive_roots()) {
            bool inside = true;
            for (std::size_t k = 0; k < beta.size(); ++k)
                if (beta[k] != 0 && std::find(letters.begin(), letters.end(), static_cast<int>(k + 1)) == letters.end())
                    inside = false;
            if (inside && RootSystem::is_positive(rs.act(w, beta))) all_negative = false;
        }
        if (all_negative) out.push_back(w);
        std::size_t k = len;
        while (k > 0) {
            --k;
            if (++idx[k] < letters.size()) break;
            idx[k] = 0;
            if (k == 0) return out;
        }
        if (len == 0) return out;
    }
}

} // namespace

TEST(CartanMatrix, RejectsInvalidGrids)
{
    EXPECT_THROW(CartanMatrix(std::vector<std::vector<int>>{}), InvalidInput);
    EXPECT_THROW(CartanMatrix({{2, -1}}), InvalidInput);
    EXPECT_THROW(CartanMatrix({{3, -1}, {-1, 2}}), InvalidInput);
    EXPECT_THROW(CartanMatrix({{2, 1}, {1, 2}}), InvalidInput);
    EXPECT_THROW(CartanMatrix({{2, -1}, {0, 2}}), InvalidInput);
    // affine A1: symmetrizable but not positive definite
    EXPECT_THROW(CartanMatrix({{2, -2}, {-2, 2}}), InvalidInput);
    EXPECT_NO_THROW(CartanMatrix({{2, -2}, {-1, 2}}));
    EXPECT_NO_THROW(CartanMatrix({{2, -3}, {-1, 2}}));
}

TEST(RootSystem, Presets)
{
    EXPECT_EQ(RootSystem::preset("A1").rank(), 1u);
    EXPECT_EQ(RootSystem::preset("A4").rank(), 4u);
    EXPECT_THROW(RootSystem::preset("B2"), InvalidInput);
    EXPECT_THROW(RootSystem::preset("A0"), InvalidInput);
    EXPECT_THROW(RootSystem::preset("A2x"), InvalidInput);
}

TEST(RootSystem, Pairing)
{
    const auto a3 = RootSystem::preset("A3");
    EXPECT_EQ(a3.pairing(a3.fundamental_weight(2), 2), 1);
    EXPECT_EQ(a3.pairing(Weight{1, 4, 0}, 1), 1);
    const auto a2 = RootSystem::preset("A2");
    EXPECT_EQ(a2.pairing(Weight{2, -1}, 2), -1);
    EXPECT_THROW(a2.pairing(Weight{1, 0}, 3), InvalidInput);
    EXPECT_THROW(a2.pairing(Weight{1, 0}, 0), InvalidInput);
}

TEST(RootSystem, SimpleRootsAreCartanColumns)
{
    const auto a2 = RootSystem::preset("A2");
    EXPECT_EQ(a2.simple_root(1), (Weight{2, -1}));
    const auto a3 = RootSystem::preset("A3");
    EXPECT_EQ(a3.simple_root(2), (Weight{-1, 2, -1}));
    EXPECT_EQ(RootSystem::preset("A1").simple_root(1), (Weight{2}));
    EXPECT_THROW(a3.simple_root(4), InvalidInput);
    for (const auto& rs : {a2, a3, RootSystem(CartanMatrix({{2, -2}, {-1, 2}})), RootSystem(CartanMatrix({{2, -1}, {-3, 2}}))})
        for (int i = 1; i <= static_cast<int>(rs.rank()); ++i)
            for (int j = 1; j <= static_cast<int>(rs.rank()); ++j)
                EXPECT_EQ(rs.pairing(rs.simple_root(i), j), rs.cartan().entry(j, i));
}

TEST(RootSystem, PositiveRootCounts)
{
    for (int n = 1; n <= 4; ++n)
        EXPECT_EQ(RootSystem::preset("A" + std::to_string(n)).positive_roots().size(),
                  static_cast<std::size_t>(n * (n + 1) / 2));
    const auto a2 = RootSystem::preset("A2");
    const std::set<std::vector<Coord>> expected{{1, 0}, {0, 1}, {1, 1}};
    const auto& roots = a2.positive_roots();
    EXPECT_EQ(std::set<std::vector<Coord>>(roots.begin(), roots.end()), expected);
    EXPECT_EQ(RootSystem::preset("A1").positive_roots(), (std::vector<std::vector<Coord>>{{1}}));
    EXPECT_EQ(RootSystem(CartanMatrix({{2, -2}, {-1, 2}})).positive_roots().size(), 4u);
    EXPECT_EQ(RootSystem(CartanMatrix({{2, -1}, {-3, 2}})).positive_roots().size(), 6u);
}

TEST(RootSystem, LongestWordExamples)
{
    const auto a3 = RootSystem::preset("A3");
    EXPECT_EQ(a3.longest_word({1, 2}), (Word{1, 2, 1}));
    EXPECT_EQ(a3.longest_word({3}), (Word{3}));
    const auto a2 = RootSystem::preset("A2");
    EXPECT_EQ(a2.longest_word({1, 2}), (Word{1, 2, 1}));
    EXPECT_THROW(a2.longest_word({}), InvalidInput);
}

TEST(RootSystem, LongestWordMatchesBruteForce)
{
    const auto a2 = RootSystem::preset("A2");
    const auto cands = longest_candidates(a2, {1, 2}, 3);
    EXPECT_EQ(cands.size(), 2u);
    EXPECT_NE(std::find(cands.begin(), cands.end(), Word{1, 2, 1}), cands.end());
    EXPECT_TRUE(longest_candidates(a2, {1, 2}, 2).empty());
}

TEST(RootSystem, LongestWordProperties)
{
    std::vector<RootSystem> systems{RootSystem::preset("A3"), RootSystem::preset("A4"),
                                    RootSystem(CartanMatrix({{2, -2}, {-1, 2}})),
                                    RootSystem(CartanMatrix({{2, -1}, {-3, 2}}))};
    for (const auto& rs : systems) {
        const int n = static_cast<int>(rs.rank());
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> subset;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) subset.push_back(i + 1);
            const auto w = rs.longest_word(subset);
            EXPECT_EQ(w.size(), rs.positive_root_count(subset));
            EXPECT_TRUE(rs.is_reduced(w));
            for (const auto& beta : rs.positive_roots()) {
                bool inside = true;
                for (std::size_t k = 0; k < beta.size(); ++k)
                    if (beta[k] != 0 && std::find(subset.begin(), subset.end(), static_cast<int>(k + 1)) == subset.end())
                        inside = false;
                if (inside) {
                    EXPECT_FALSE(RootSystem::is_positive(rs.act(w, beta)));
                }
            }
        }
    }
}

TEST(RootSystem, ReducedWords)
{
    const auto a2 = RootSystem::preset("A2");
    EXPECT_TRUE(a2.is_reduced({}));
    EXPECT_TRUE(a2.is_reduced({2, 1}));
    EXPECT_TRUE(a2.is_reduced({2, 1, 2}));
    EXPECT_FALSE(a2.is_reduced({1, 1}));
    EXPECT_FALSE(a2.is_reduced({1, 2, 1, 2}));
}

TEST(RootSystem, TypeAEnumeration)
{
    const auto a3 = RootSystem::preset("A3");
    EXPECT_EQ(a3.type_a_enumeration({1, 2}), (std::vector<int>{1, 2}));
    EXPECT_EQ(a3.type_a_enumeration({2, 3}), (std::vector<int>{2, 3}));
    EXPECT_EQ(a3.type_a_enumeration({3, 1, 2}), (std::vector<int>{1, 2, 3}));
    EXPECT_THROW(a3.type_a_enumeration({1, 3}), UnsupportedInput);
    // a non-path diagram ordering: 2 - 1 - 3
    const RootSystem bent(CartanMatrix({{2, -1, -1}, {-1, 2, 0}, {-1, 0, 2}}));
    EXPECT_EQ(bent.type_a_enumeration({1, 2, 3}), (std::vector<int>{2, 1, 3}));
    const RootSystem b2(CartanMatrix({{2, -2}, {-1, 2}}));
    EXPECT_THROW(b2.type_a_enumeration({1, 2}), UnsupportedInput);
    const auto& u = bent.type_a_enumeration({1, 2, 3});
    for (std::size_t s = 0; s < u.size(); ++s)
        for (std::size_t t = 0; t < u.size(); ++t) {
            const int expected = s == t ? 2 : (s + 1 == t || t + 1 == s) ? -1 : 0;
            EXPECT_EQ(bent.cartan().entry(u[t], u[s]), expected);
        }
}

TEST(RootSystem, WeylDimension)
{
    const auto a2 = RootSystem::preset("A2");
    EXPECT_EQ(a2.weyl_dimension(Weight{1, 1}), 8);
    EXPECT_EQ(a2.weyl_dimension(Weight{0, 0}), 1);
    EXPECT_EQ(a2.weyl_dimension(Weight{3, 0}), 10);
    const auto a3 = RootSystem::preset("A3");
    EXPECT_EQ(a3.weyl_dimension(Weight{1, 0, 0}), 4);
    EXPECT_EQ(a3.weyl_dimension(Weight{0, 1, 0}), 6);
    EXPECT_THROW(a3.weyl_dimension(Weight{-1, 0, 0}), InvalidInput);
    // B2 / C2: the 5- and 4-dimensional representations and the adjoint
    const RootSystem b2(CartanMatrix({{2, -2}, {-1, 2}}));
    std::multiset<std::int64_t> dims{b2.weyl_dimension(Weight{1, 0}), b2.weyl_dimension(Weight{0, 1})};
    EXPECT_EQ(dims, (std::multiset<std::int64_t>{4, 5}));
    const RootSystem g2(CartanMatrix({{2, -1}, {-3, 2}}));
    std::multiset<std::int64_t> gd{g2.weyl_dimension(Weight{1, 0}), g2.weyl_dimension(Weight{0, 1})};
    EXPECT_EQ(gd, (std::multiset<std::int64_t>{7, 14}));
}

TEST(RootSystem, WeylDimensionMultiplicativeOverComponents)
{
    const RootSystem a1a2(CartanMatrix({{2, 0, 0}, {0, 2, -1}, {0, -1, 2}}));
    const auto a1 = RootSystem::preset("A1");
    const auto a2 = RootSystem::preset("A2");
    for (Coord p = 0; p <= 3; ++p)
        for (Coord q = 0; q <= 2; ++q)
            for (Coord r = 0; r <= 2; ++r)
                EXPECT_EQ(a1a2.weyl_dimension(Weight{p, q, r}),
                          a1.weyl_dimension(Weight{p}) * a2.weyl_dimension(Weight{q, r}));
}

TEST(WordSequence, SplitAndCompatibility)
{
    const auto a3 = RootSystem::preset("A3");
    const auto ws = WordSequence::split({1, 2, 1, 3}, {3, 1});
    EXPECT_EQ(ws.blocks, (std::vector<Word>{{1, 2, 1}, {3}}));
    EXPECT_EQ(ws.offsets(), (std::vector<std::size_t>{0, 3}));
    EXPECT_THROW(WordSequence::split({1, 2}, {3}), InvalidInput);
    SubsetSequence seq{{{1, 2}, {3}}};
    EXPECT_NO_THROW(a3.check_compatible(seq, ws));
    EXPECT_THROW(a3.check_compatible(seq, WordSequence{{{1, 2}, {3}}}), InvalidInput);
    EXPECT_THROW(a3.check_compatible(seq, WordSequence{{{1, 3, 1}, {3}}}), InvalidInput);
    EXPECT_THROW(a3.check_compatible(SubsetSequence{{{2, 1}}}, WordSequence{{{1, 2, 1}}}), InvalidInput);
    EXPECT_THROW(a3.check_compatible(SubsetSequence{{{1, 5}}}, WordSequence{{{1, 5, 1}}}), InvalidInput);
}
