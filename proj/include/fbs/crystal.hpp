#pragma once

// Crystals B(lambda) realized by Littelmann paths, tensor products with the
// Kashiwara rule, highest-weight decomposition and colored-graph utilities.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "path.hpp"
#include "rootsys.hpp"

namespace fbs {

inline constexpr std::size_t default_vertex_budget = 1'000'000;

struct CrystalEdge {
    std::size_t src;
    int label;
    std::size_t dst;

    friend bool operator==(const CrystalEdge&, const CrystalEdge&) = default;
};

/// [n]-colored digraph with b -i-> b' iff b' = f_i b, plus the derived
/// e_i, epsilon_i and phi_i tables. Labels are 1-based; -1 marks "none".
class CrystalGraph {
public:
    CrystalGraph() = default;

    CrystalGraph(std::size_t rank, std::vector<Weight> weights, std::vector<std::vector<std::int64_t>> f_table,
                 std::optional<std::size_t> highest = std::nullopt)
        : rank_(rank), weights_(std::move(weights)), f_(std::move(f_table)), highest_(highest)
    {
        const std::size_t nv = weights_.size();
        if (f_.size() != rank_) throw InvalidInput("f table needs one row per label");
        e_.assign(rank_, std::vector<std::int64_t>(nv, -1));
        for (std::size_t i = 0; i < rank_; ++i) {
            if (f_[i].size() != nv) throw InvalidInput("f table row has the wrong length");
            for (std::size_t v = 0; v < nv; ++v) {
                const auto t = f_[i][v];
                if (t < 0) continue;
                if (e_[i][static_cast<std::size_t>(t)] != -1)
                    throw std::logic_error("crystal graph has in-degree > 1 for a label");
                e_[i][static_cast<std::size_t>(t)] = static_cast<std::int64_t>(v);
            }
        }
        eps_.assign(rank_, std::vector<Coord>(nv, 0));
        phi_.assign(rank_, std::vector<Coord>(nv, 0));
        for (std::size_t i = 0; i < rank_; ++i)
            for (std::size_t v = 0; v < nv; ++v) {
                for (auto u = e_[i][v]; u >= 0; u = e_[i][static_cast<std::size_t>(u)]) ++eps_[i][v];
                for (auto u = f_[i][v]; u >= 0; u = f_[i][static_cast<std::size_t>(u)]) ++phi_[i][v];
            }
    }

    std::size_t size() const { return weights_.size(); }
    std::size_t rank() const { return rank_; }
    std::optional<std::size_t> highest() const { return highest_; }

    const Weight& wt(std::size_t v) const { return weights_.at(v); }
    std::optional<std::size_t> f(std::size_t v, int i) const { return lookup(f_, v, i); }
    std::optional<std::size_t> e(std::size_t v, int i) const { return lookup(e_, v, i); }
    Coord epsilon(std::size_t v, int i) const { return eps_.at(static_cast<std::size_t>(i - 1)).at(v); }
    Coord phi(std::size_t v, int i) const { return phi_.at(static_cast<std::size_t>(i - 1)).at(v); }

    /// Edges sorted by (src, label).
    std::vector<CrystalEdge> edges() const
    {
        std::vector<CrystalEdge> out;
        for (std::size_t v = 0; v < size(); ++v)
            for (std::size_t i = 0; i < rank_; ++i)
                if (f_[i][v] >= 0) out.push_back({v, static_cast<int>(i + 1), static_cast<std::size_t>(f_[i][v])});
        return out;
    }

    /// Vertices with epsilon_i = 0 for every i.
    std::vector<std::size_t> highest_vertices() const
    {
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < size(); ++v) {
            bool top = true;
            for (std::size_t i = 0; i < rank_ && top; ++i) top = e_[i][v] < 0;
            if (top) out.push_back(v);
        }
        return out;
    }

    /// Graphviz-compatible plain-text edge list.
    std::string to_dot() const
    {
        std::string s = "digraph crystal {\n";
        for (std::size_t v = 0; v < size(); ++v)
            s += "  " + std::to_string(v) + " [label=\"" + to_key(weights_[v]) + "\"];\n";
        for (const auto& e : edges())
            s += "  " + std::to_string(e.src) + " -> " + std::to_string(e.dst) + " [label=\"" +
                 std::to_string(e.label) + "\"];\n";
        s += "}\n";
        return s;
    }

private:
    std::optional<std::size_t> lookup(const std::vector<std::vector<std::int64_t>>& t, std::size_t v, int i) const
    {
        if (i < 1 || i > static_cast<int>(rank_)) throw InvalidInput("crystal label out of range");
        const auto r = t[static_cast<std::size_t>(i - 1)].at(v);
        if (r < 0) return std::nullopt;
        return static_cast<std::size_t>(r);
    }

    std::size_t rank_ = 0;
    std::vector<Weight> weights_;
    std::vector<std::vector<std::int64_t>> f_, e_;
    std::vector<std::vector<Coord>> eps_, phi_;
    std::optional<std::size_t> highest_;
};

/// B(lambda): path vertices with vertex 0 the straight-line highest element.
struct PathCrystal {
    Weight highest_weight;
    std::vector<LittelmannPath> paths;
    CrystalGraph graph;
};

/// Breadth-first closure of the straight-line path under all f_i
/// (labels ascending, FIFO frontier).
inline PathCrystal generate_crystal(const RootSystem& rs, const Weight& lambda,
                                    std::size_t budget = default_vertex_budget)
{
    rs.check_weight(lambda);
    if (!lambda.is_dominant()) throw InvalidInput("generate_crystal needs a dominant weight");
    const std::size_t n = rs.rank();
    std::vector<LittelmannPath> paths{LittelmannPath::straight(lambda)};
    std::map<LittelmannPath, std::size_t> index{{paths[0], 0}};
    std::vector<std::vector<std::int64_t>> f(n);
    for (std::size_t head = 0; head < paths.size(); ++head) {
        for (std::size_t i = 0; i < n; ++i) {
            auto next = path_f(rs, paths[head], static_cast<int>(i + 1));
            std::int64_t target = -1;
            if (next) {
                auto [it, fresh] = index.try_emplace(*next, paths.size());
                if (fresh) {
                    if (paths.size() >= budget)
                        throw BudgetExceeded("crystal generation exceeded the vertex budget of " +
                                             std::to_string(budget));
                    paths.push_back(*next);
                }
                target = static_cast<std::int64_t>(it->second);
            }
            f[i].resize(paths.size(), -1);
            f[i][head] = target;
        }
    }
    for (auto& row : f) row.resize(paths.size(), -1);
    std::vector<Weight> weights;
    weights.reserve(paths.size());
    for (const auto& p : paths) weights.push_back(p.endpoint());
    PathCrystal out{lambda, std::move(paths), {}};
    out.graph = CrystalGraph(n, std::move(weights), std::move(f), 0);
    return out;
}

/// Memoizes B(lambda) per highest weight for one root system.
class CrystalFactory {
public:
    explicit CrystalFactory(const RootSystem& rs, std::size_t budget = default_vertex_budget)
        : rs_(rs), budget_(budget)
    {
    }

    const RootSystem& root_system() const { return rs_; }
    std::size_t budget() const { return budget_; }

    std::shared_ptr<const PathCrystal> get(const Weight& lambda)
    {
        auto it = cache_.find(lambda);
        if (it != cache_.end()) return it->second;
        auto c = std::make_shared<const PathCrystal>(generate_crystal(rs_, lambda, budget_));
        cache_.emplace(lambda, c);
        return c;
    }

private:
    const RootSystem& rs_;
    std::size_t budget_;
    std::map<Weight, std::shared_ptr<const PathCrystal>> cache_;
};

namespace detail {

// Kashiwara rule on b_1 (x) ... (x) b_k: returns the factor f_i (or e_i)
// acts on. f goes to b_j iff phi(b_j) > epsilon(b_{j+1} (x) ... (x) b_k);
// e goes to b_j iff phi(b_j) >= epsilon(b_{j+1} (x) ... (x) b_k).
template <class Eps, class Phi, class Pair>
std::size_t kashiwara_position(std::size_t k, bool raising, Eps eps, Phi phi, Pair pair)
{
    std::vector<Coord> suffix_eps(k + 1, 0);
    suffix_eps[k - 1] = eps(k - 1);
    for (std::size_t j = k - 1; j-- > 0;)
        suffix_eps[j] = std::max(eps(j), suffix_eps[j + 1] - pair(j));
    for (std::size_t j = 0; j + 1 < k; ++j) {
        const Coord p = phi(j);
        if (raising ? p >= suffix_eps[j + 1] : p > suffix_eps[j + 1]) return j;
    }
    return k - 1;
}

template <class Eps, class Pair>
Coord tensor_epsilon_value(std::size_t k, Eps eps, Pair pair)
{
    Coord acc = eps(k - 1);
    for (std::size_t j = k - 1; j-- > 0;) acc = std::max(eps(j), acc - pair(j));
    return acc;
}

} // namespace detail

/// Element of B(lambda_1) (x) ... (x) B(lambda_k): one vertex index per factor.
using TensorIndex = std::vector<std::uint32_t>;
using FactorList = std::vector<std::shared_ptr<const PathCrystal>>;

/// Crystal operations on index tuples over a list of factor crystals.
/// The span overloads act on a suffix of factors; elem.size() must equal factors.size().
namespace tensor_ops {

inline void check_shape(std::span<const std::shared_ptr<const PathCrystal>> factors, std::span<const std::uint32_t> elem)
{
    if (factors.empty() || factors.size() != elem.size()) throw InvalidInput("tensor element shape mismatch");
}

inline Coord epsilon(std::span<const std::shared_ptr<const PathCrystal>> factors, std::span<const std::uint32_t> elem,
                     int i)
{
    check_shape(factors, elem);
    const std::size_t ii = static_cast<std::size_t>(i - 1);
    return detail::tensor_epsilon_value(
        factors.size(), [&](std::size_t j) { return factors[j]->graph.epsilon(elem[j], i); },
        [&](std::size_t j) { return factors[j]->graph.wt(elem[j])[ii]; });
}

inline Weight wt(std::span<const std::shared_ptr<const PathCrystal>> factors, std::span<const std::uint32_t> elem)
{
    check_shape(factors, elem);
    Weight w = factors[0]->graph.wt(elem[0]);
    for (std::size_t j = 1; j < factors.size(); ++j) w += factors[j]->graph.wt(elem[j]);
    return w;
}

inline Coord phi(std::span<const std::shared_ptr<const PathCrystal>> factors, std::span<const std::uint32_t> elem,
                 int i)
{
    return epsilon(factors, elem, i) + wt(factors, elem)[static_cast<std::size_t>(i - 1)];
}

/// Applies f_i (lowering) or e_i (raising) in place; false when the result is 0.
inline bool apply(std::span<const std::shared_ptr<const PathCrystal>> factors, std::span<std::uint32_t> elem, int i,
                  bool raising)
{
    check_shape(factors, std::span<const std::uint32_t>(elem.data(), elem.size()));
    const std::size_t ii = static_cast<std::size_t>(i - 1);
    const std::size_t pos = detail::kashiwara_position(
        factors.size(), raising, [&](std::size_t j) { return factors[j]->graph.epsilon(elem[j], i); },
        [&](std::size_t j) { return factors[j]->graph.phi(elem[j], i); },
        [&](std::size_t j) { return factors[j]->graph.wt(elem[j])[ii]; });
    const auto& g = factors[pos]->graph;
    auto r = raising ? g.e(elem[pos], i) : g.f(elem[pos], i);
    if (!r) return false;
    elem[pos] = static_cast<std::uint32_t>(*r);
    return true;
}

inline std::optional<TensorIndex> f(std::span<const std::shared_ptr<const PathCrystal>> factors, TensorIndex elem,
                                    int i)
{
    if (!apply(factors, elem, i, false)) return std::nullopt;
    return elem;
}

inline std::optional<TensorIndex> e(std::span<const std::shared_ptr<const PathCrystal>> factors, TensorIndex elem,
                                    int i)
{
    if (!apply(factors, elem, i, true)) return std::nullopt;
    return elem;
}

} // namespace tensor_ops

/// Path-level tensor element (leftmost factor first).
using TensorElement = std::vector<LittelmannPath>;

inline Weight tensor_wt(const TensorElement& b)
{
    if (b.empty()) throw InvalidInput("empty tensor element");
    Weight w = path_wt(b[0]);
    for (std::size_t j = 1; j < b.size(); ++j) w += path_wt(b[j]);
    return w;
}

inline Coord tensor_epsilon(const TensorElement& b, int i)
{
    if (b.empty()) throw InvalidInput("empty tensor element");
    const std::size_t ii = static_cast<std::size_t>(i - 1);
    return detail::tensor_epsilon_value(
        b.size(), [&](std::size_t j) { return path_epsilon(b[j], i); },
        [&](std::size_t j) { return path_wt(b[j])[ii]; });
}

inline Coord tensor_phi(const TensorElement& b, int i)
{
    return tensor_epsilon(b, i) + tensor_wt(b)[static_cast<std::size_t>(i - 1)];
}

inline TensorElement tensor(const TensorElement& left, const TensorElement& right)
{
    if (!left.empty() && !right.empty() &&
        left.front().segments().front().velocity.size() != right.front().segments().front().velocity.size())
        throw InvalidInput("tensor factors come from different root systems");
    TensorElement out = left;
    out.insert(out.end(), right.begin(), right.end());
    return out;
}

namespace detail {
inline std::optional<TensorElement> tensor_apply(const RootSystem& rs, TensorElement b, int i, bool raising)
{
    if (b.empty()) throw InvalidInput("empty tensor element");
    rs.check_index(i);
    const std::size_t ii = static_cast<std::size_t>(i - 1);
    const std::size_t pos = kashiwara_position(
        b.size(), raising, [&](std::size_t j) { return path_epsilon(b[j], i); },
        [&](std::size_t j) { return path_phi(b[j], i); }, [&](std::size_t j) { return path_wt(b[j])[ii]; });
    auto r = raising ? path_e(rs, b[pos], i) : path_f(rs, b[pos], i);
    if (!r) return std::nullopt;
    b[pos] = std::move(*r);
    return b;
}
} // namespace detail

inline std::optional<TensorElement> tensor_f(const RootSystem& rs, const TensorElement& b, int i)
{
    return detail::tensor_apply(rs, b, i, false);
}

inline std::optional<TensorElement> tensor_e(const RootSystem& rs, const TensorElement& b, int i)
{
    return detail::tensor_apply(rs, b, i, true);
}

/// Closure of seeds under all f_i in B(lambda_1) (x) ... (x) B(lambda_k), as
/// a colored graph; vertices in BFS order (labels ascending, FIFO).
struct TensorClosure {
    std::vector<TensorIndex> elements;
    CrystalGraph graph;
};

inline TensorClosure f_closure(const FactorList& factors, const std::vector<TensorIndex>& seeds,
                               std::size_t budget = default_vertex_budget)
{
    if (factors.empty()) throw InvalidInput("f_closure needs at least one factor");
    const std::size_t n = factors[0]->graph.rank();
    std::vector<TensorIndex> elems;
    std::map<TensorIndex, std::size_t> index;
    for (const auto& s : seeds)
        if (index.try_emplace(s, elems.size()).second) elems.push_back(s);
    std::vector<std::vector<std::int64_t>> f(n);
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (std::size_t i = 0; i < n; ++i) {
            auto next = tensor_ops::f(factors, elems[head], static_cast<int>(i + 1));
            std::int64_t target = -1;
            if (next) {
                auto [it, fresh] = index.try_emplace(*next, elems.size());
                if (fresh) {
                    if (elems.size() >= budget)
                        throw BudgetExceeded("tensor closure exceeded the vertex budget of " + std::to_string(budget));
                    elems.push_back(*next);
                }
                target = static_cast<std::int64_t>(it->second);
            }
            f[i].resize(elems.size(), -1);
            f[i][head] = target;
        }
    }
    for (auto& row : f) row.resize(elems.size(), -1);
    std::vector<Weight> weights;
    for (const auto& el : elems) weights.push_back(tensor_ops::wt(factors, el));
    TensorClosure out{std::move(elems), {}};
    out.graph = CrystalGraph(n, std::move(weights), std::move(f), seeds.size() == 1 ? std::optional<std::size_t>(0)
                                                                                    : std::nullopt);
    return out;
}

/// Highest weights (multiset, sorted) of an e-closed finite set of tensor elements.
inline std::vector<Weight> highest_weight_decompose(const FactorList& factors, const std::vector<TensorIndex>& elements)
{
    if (factors.empty()) throw InvalidInput("highest_weight_decompose needs at least one factor");
    const int n = static_cast<int>(factors[0]->graph.rank());
    std::set<TensorIndex> members(elements.begin(), elements.end());
    std::vector<Weight> out;
    for (const auto& b : elements) {
        bool top = true;
        for (int i = 1; i <= n; ++i) {
            auto up = tensor_ops::e(factors, b, i);
            if (up) {
                top = false;
                if (!members.count(*up)) throw InvalidInput("input set is not closed under e_i");
            }
        }
        if (top) out.push_back(tensor_ops::wt(factors, b));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Highest weights of a full crystal graph.
inline std::vector<Weight> highest_weight_decompose(const CrystalGraph& g)
{
    std::vector<Weight> out;
    for (auto v : g.highest_vertices()) out.push_back(g.wt(v));
    std::sort(out.begin(), out.end());
    return out;
}

/// Brute-force decomposition of B(lambda_1) (x) ... (x) B(lambda_r) by
/// scanning every tuple for highest elements.
inline std::vector<Weight> decompose_by_enumeration(CrystalFactory& factory, const std::vector<Weight>& lambdas,
                                                    std::size_t budget = default_vertex_budget)
{
    if (lambdas.empty()) throw InvalidInput("need at least one weight");
    FactorList factors;
    std::size_t total = 1;
    for (const auto& l : lambdas) {
        factors.push_back(factory.get(l));
        total *= factors.back()->graph.size();
        if (total > budget) throw BudgetExceeded("tensor product exceeds the element budget");
    }
    const int n = static_cast<int>(factory.root_system().rank());
    std::vector<Weight> out;
    TensorIndex cur(factors.size(), 0);
    for (;;) {
        bool top = true;
        for (int i = 1; i <= n && top; ++i) top = tensor_ops::epsilon(factors, cur, i) == 0;
        if (top) out.push_back(tensor_ops::wt(factors, cur));
        std::size_t k = factors.size();
        while (k > 0) {
            --k;
            if (++cur[k] < factors[k]->graph.size()) break;
            cur[k] = 0;
            if (k == 0) {
                std::sort(out.begin(), out.end());
                return out;
            }
        }
    }
}

/// All tuples of B(lambda_1) (x) ... (x) B(lambda_r) (lexicographic order).
inline std::vector<TensorIndex> all_elements(const FactorList& factors)
{
    std::vector<TensorIndex> out;
    TensorIndex cur(factors.size(), 0);
    for (;;) {
        out.push_back(cur);
        std::size_t k = factors.size();
        for (;;) {
            if (k == 0) return out;
            --k;
            if (++cur[k] < factors[k]->graph.size()) break;
            cur[k] = 0;
        }
    }
}

/// Colored-digraph isomorphism of the connected components of a at ra and b
/// at rb, pairing vertices along f and e edges; weights must agree.
inline bool isomorphic_components(const CrystalGraph& a, std::size_t ra, const CrystalGraph& b, std::size_t rb)
{
    if (a.rank() != b.rank()) return false;
    const int n = static_cast<int>(a.rank());
    std::map<std::size_t, std::size_t> fwd, bwd;
    std::deque<std::pair<std::size_t, std::size_t>> q{{ra, rb}};
    fwd[ra] = rb;
    bwd[rb] = ra;
    while (!q.empty()) {
        auto [u, v] = q.front();
        q.pop_front();
        if (a.wt(u) != b.wt(v)) return false;
        for (int i = 1; i <= n; ++i) {
            for (bool up : {false, true}) {
                auto nu = up ? a.e(u, i) : a.f(u, i);
                auto nv = up ? b.e(v, i) : b.f(v, i);
                if (nu.has_value() != nv.has_value()) return false;
                if (!nu) continue;
                auto it = fwd.find(*nu);
                auto jt = bwd.find(*nv);
                if (it == fwd.end() && jt == bwd.end()) {
                    fwd[*nu] = *nv;
                    bwd[*nv] = *nu;
                    q.emplace_back(*nu, *nv);
                } else if (it == fwd.end() || jt == bwd.end() || it->second != *nv) {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace fbs
