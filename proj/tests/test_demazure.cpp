#include <gtest/gtest.h>

#include <set>

#include "fbs/bundles.hpp"
#include "fbs/demazure.hpp"

using namespace fbs;

namespace {

// Independent generation straight from the nested definition: enumerate
// exponent vectors up to a bound and apply f's innermost-first on tensor
// elements built from the path model.
std::set<TensorIndex> nested_by_exponents(CrystalFactory& fac, const Word& i, const std::vector<Coord>& a, Coord bound)
{
    const auto& rs = fac.root_system();
    FactorList factors;
    for (std::size_t k = 0; k < i.size(); ++k) factors.push_back(fac.get(a[k] * rs.fundamental_weight(i[k])));
    const std::size_t r = i.size();
    std::set<TensorIndex> out;
    std::vector<Coord> x(r, 0);
    for (;;) {
        // rebuild f^{x_1}(b_1 (x) f^{x_2}(b_2 (x) ...)) as a full tuple
        TensorIndex b(r, 0);
        bool alive = true;
        for (std::size_t k = r; k-- > 0 && alive;) {
            std::span<const std::shared_ptr<const PathCrystal>> fs(factors.data() + k, r - k);
            std::span<std::uint32_t> tail(b.data() + k, r - k);
            for (Coord t = 0; t < x[k] && alive; ++t) alive = tensor_ops::apply(fs, tail, i[k], false);
        }
        if (alive) out.insert(b);
        std::size_t k = 0;
        while (k < r && ++x[k] > bound) x[k++] = 0;
        if (k == r) return out;
    }
}

std::vector<Word> all_words(int n, std::size_t len)
{
    std::vector<Word> out;
    Word w(len, 1);
    for (;;) {
        out.push_back(w);
        std::size_t k = 0;
        while (k < len && ++w[k] > n) w[k++] = 1;
        if (k == len) return out;
    }
}

} // namespace

TEST(Demazure, Examples)
{
    const auto a2 = RootSystem::preset("A2");
    CrystalFactory fac(a2);
    EXPECT_EQ(demazure_crystal(fac, Weight{1, 1}, {2, 1}).size(), 5u);
    EXPECT_EQ(demazure_crystal(fac, Weight{1, 1}, {}).size(), 1u);
    EXPECT_EQ(demazure_crystal(fac, Weight{1, 1}, {1, 2, 1}).size(), 8u);
    EXPECT_EQ(demazure_crystal(fac, Weight{1, 1}, {2, 1, 2}).size(), 8u);
    EXPECT_THROW(demazure_crystal(fac, Weight{1, 1}, {1, 1}), InvalidInput);
}

TEST(Demazure, AdjointDemazureShape)
{
    const auto a2 = RootSystem::preset("A2");
    CrystalFactory fac(a2);
    const auto d = demazure_crystal(fac, Weight{1, 1}, {2, 1});
    const auto& g = d.factors()[0]->graph;
    // b, f1 b, f2 f1 b, f2^2 f1 b, f2 b
    std::set<std::uint32_t> expected{0};
    auto f1 = *g.f(0, 1);
    expected.insert(static_cast<std::uint32_t>(f1));
    expected.insert(static_cast<std::uint32_t>(*g.f(f1, 2)));
    expected.insert(static_cast<std::uint32_t>(*g.f(*g.f(f1, 2), 2)));
    expected.insert(static_cast<std::uint32_t>(*g.f(0, 2)));
    std::set<std::uint32_t> got;
    for (const auto& b : d.elements()) got.insert(b[0]);
    EXPECT_EQ(got, expected);
}

TEST(Demazure, IndependentOfReducedWord)
{
    for (const auto& name : {"A2", "A3"}) {
        const auto rs = RootSystem::preset(name);
        CrystalFactory fac(rs);
        const int n = static_cast<int>(rs.rank());
        const std::size_t maxlen = rs.positive_roots().size();
        const Weight lambda = rs.rank() == 2 ? Weight{2, 1} : Weight{1, 1, 1};
        // group reduced words by the Weyl group element they represent (its action on a regular weight)
        std::map<Weight, std::set<TensorIndex>> by_element;
        for (std::size_t len = 0; len <= maxlen; ++len)
            for (const auto& w : all_words(n, len)) {
                if (!rs.is_reduced(w)) continue;
                Weight key = Weight(std::vector<Coord>(rs.rank(), 1));
                for (auto it = w.rbegin(); it != w.rend(); ++it) key = rs.reflect(key, *it);
                const auto d = demazure_crystal(fac, lambda, w);
                std::set<TensorIndex> s(d.elements().begin(), d.elements().end());
                auto [it, fresh] = by_element.emplace(key, s);
                if (!fresh) {
                    EXPECT_EQ(it->second, s) << name;
                }
            }
        std::size_t weyl_order = 1;
        for (int k = 2; k <= n + 1; ++k) weyl_order *= static_cast<std::size_t>(k);
        EXPECT_EQ(by_element.size(), weyl_order);
    }
}

TEST(GenDemazure, TrivialShapes)
{
    const auto a2 = RootSystem::preset("A2");
    CrystalFactory fac(a2);
    for (Coord a = 0; a <= 4; ++a) EXPECT_EQ(gen_demazure_crystal(fac, {2}, {a}).size(), static_cast<std::size_t>(a + 1));
    EXPECT_EQ(gen_demazure_crystal(fac, {1, 2, 1}, {0, 0, 0}).size(), 1u);
    EXPECT_THROW(gen_demazure_crystal(fac, {1, 2}, {1, -1}), InvalidInput);
    EXPECT_THROW(gen_demazure_crystal(fac, {1, 2}, {1}), InvalidInput);
    EXPECT_THROW(gen_demazure_crystal(fac, {1, 3}, {1, 1}), InvalidInput);
}

TEST(GenDemazure, MatchesNestedDefinition)
{
    const auto a2 = RootSystem::preset("A2");
    CrystalFactory fac(a2);
    for (const auto& [i, a] : std::vector<std::pair<Word, std::vector<Coord>>>{
             {{1, 2}, {1, 1}}, {{1, 2, 1}, {1, 0, 2}}, {{2, 1, 2, 1}, {1, 1, 0, 1}}, {{1, 1, 2}, {1, 2, 1}}}) {
        const auto g = gen_demazure_crystal(fac, i, a);
        std::set<TensorIndex> got(g.elements().begin(), g.elements().end());
        EXPECT_EQ(got, nested_by_exponents(fac, i, a, 6));
    }
}

TEST(GenDemazure, SL3PullbackCrystal)
{
    const auto a2 = RootSystem::preset("A2");
    CrystalFactory fac(a2);
    const SubsetSequence seq{{{1, 2}, {1, 2}}};
    const WordSequence words{{{1, 2, 1}, {1, 2, 1}}};
    const std::vector<Weight> lambdas{{1, 1}, {1, 1}};
    const auto a = flatten(pullback_vector(a2, seq, words, lambdas));
    EXPECT_EQ(a, (std::vector<Coord>{0, 1, 1, 0, 1, 1}));
    const auto bia = gen_demazure_crystal(fac, words.flat(), a);
    const auto bil = gen_demazure_crystal_weights(fac, seq, words, lambdas);
    EXPECT_EQ(bia.size(), 64u);
    EXPECT_EQ(bil.size(), 64u);
    EXPECT_EQ(bia.omega_points(), bil.omega_points());
    // the (I, lambda) crystal is all of B(lambda) (x) B(mu) here
    EXPECT_EQ(bil.decompose(), (std::vector<Weight>{{0, 0}, {0, 3}, {1, 1}, {1, 1}, {2, 2}, {3, 0}}));
}

TEST(GenDemazure, WeightShapeExamples)
{
    const auto a2 = RootSystem::preset("A2");
    CrystalFactory fac(a2);
    const auto full = gen_demazure_crystal_weights(fac, SubsetSequence{{{1, 2}}}, WordSequence{{{1, 2, 1}}}, {{2, 1}});
    EXPECT_EQ(full.size(), 15u);
    const auto zero = gen_demazure_crystal_weights(fac, SubsetSequence{{{1}, {2}, {1, 2}}},
                                                   WordSequence{{{1}, {2}, {2, 1, 2}}}, {{0, 0}, {0, 0}, {0, 0}});
    EXPECT_EQ(zero.size(), 1u);
    EXPECT_THROW(gen_demazure_crystal_weights(fac, SubsetSequence{{{1, 2}}}, WordSequence{{{1, 2}}}, {{1, 1}}),
                 InvalidInput);
    EXPECT_THROW(gen_demazure_crystal_weights(fac, SubsetSequence{{{1, 2}}}, WordSequence{{{1, 2, 1}}}, {{-1, 1}}),
                 InvalidInput);
}

TEST(GenDemazure, SingleLetterBlocksAgreeWithWordShape)
{
    // I_k = {i_k} with lambda_k = a_k w_{i_k}: the two constructions coincide.
    const auto a3 = RootSystem::preset("A3");
    CrystalFactory fac(a3);
    const Word i{2, 1, 3, 2};
    const std::vector<Coord> a{1, 2, 1, 1};
    SubsetSequence seq;
    WordSequence words;
    std::vector<Weight> lambdas;
    for (std::size_t k = 0; k < i.size(); ++k) {
        seq.sets.push_back({i[k]});
        words.blocks.push_back({i[k]});
        lambdas.push_back(a[k] * a3.fundamental_weight(i[k]));
    }
    const auto x = gen_demazure_crystal(fac, i, a);
    const auto y = gen_demazure_crystal_weights(fac, seq, words, lambdas);
    EXPECT_EQ(x.elements(), y.elements());
    EXPECT_EQ(x.omega_points(), y.omega_points());
}

TEST(GenDemazure, OmegaRoundTripAndInjective)
{
    const auto a2 = RootSystem::preset("A2");
    CrystalFactory fac(a2);
    const auto g = gen_demazure_crystal(fac, {1, 2, 1, 1, 2, 1}, {0, 1, 1, 0, 1, 1});
    std::set<StringVector> seen;
    for (const auto& b : g.elements()) {
        const auto x = g.omega(b);
        for (auto v : x) EXPECT_GE(v, 0);
        EXPECT_TRUE(seen.insert(x).second);
        EXPECT_EQ(g.reconstruct(x), b);
        EXPECT_EQ(g.element_for(x), b);
    }
    EXPECT_EQ(g.omega(TensorIndex(6, 0)), StringVector(6, 0));
    const auto s = gen_demazure_crystal(fac, {2}, {3});
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto x = s.omega_at(k);
        // f_2^x b = element with omega (x)
        std::uint32_t v = 0;
        for (Coord t = 0; t < x[0]; ++t) v = static_cast<std::uint32_t>(*s.factors()[0]->graph.f(v, 2));
        EXPECT_EQ(s.elements()[k], TensorIndex{v});
    }
    EXPECT_THROW(g.omega(TensorIndex(6, 1)), InvalidInput);
}

TEST(GenDemazure, ComponentsAreFullCrystalsWhenFirstBlockIsFull)
{
    const auto a3 = RootSystem::preset("A3");
    CrystalFactory fac(a3);
    const SubsetSequence seq{{{1, 2, 3}, {1, 2}, {3}}};
    const auto words = a3.longest_words(seq);
    const auto g = gen_demazure_crystal_weights(fac, seq, words, {{0, 1, 0}, {1, 1, 0}, {0, 0, 1}});
    std::size_t total = 0;
    for (const auto& nu : g.decompose()) total += static_cast<std::size_t>(a3.weyl_dimension(nu));
    EXPECT_EQ(total, g.size());
}

TEST(GenDemazure, LevelSetsNestAfterScaling)
{
    // k * Omega(B_{i,a}) is contained in Omega(B_{i,ka}).
    const auto a2 = RootSystem::preset("A2");
    CrystalFactory fac(a2);
    const Word i{1, 2, 1, 2};
    const std::vector<Coord> a{1, 0, 1, 1};
    const auto base = gen_demazure_crystal(fac, i, a).omega_points();
    for (Coord k = 2; k <= 3; ++k) {
        std::vector<Coord> ka(a);
        for (auto& v : ka) v *= k;
        const auto lvl = gen_demazure_crystal(fac, i, ka).omega_points();
        const std::set<StringVector> lset(lvl.begin(), lvl.end());
        for (auto x : base) {
            for (auto& v : x) v *= k;
            EXPECT_TRUE(lset.count(x));
        }
    }
}

TEST(GenDemazure, Budget)
{
    const auto a2 = RootSystem::preset("A2");
    CrystalFactory fac(a2, 50);
    EXPECT_THROW(gen_demazure_crystal(fac, {1, 2, 1, 1, 2, 1}, {0, 2, 2, 0, 2, 2}), BudgetExceeded);
}
