#pragma once

// Finite-type root systems given by a Cartan matrix, integral weights in the
// fundamental-weight basis, Weyl words and subset sequences.
//
// Conventions used throughout the library:
//   * simple-root indices (letters of words, members of subsets) are 1-based;
//   * weights store coordinates in the basis of fundamental weights, so the
//     coroot pairing <lambda, alpha_i^vee> is the i-th coordinate;
//   * roots are stored as integer combinations of simple roots.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace fbs {

using Coord = std::int64_t;

/// Integral weight in fundamental-weight coordinates.
struct Weight {
    std::vector<Coord> coords;

    Weight() = default;
    explicit Weight(std::size_t rank) : coords(rank, 0) {}
    explicit Weight(std::vector<Coord> c) : coords(std::move(c)) {}
    Weight(std::initializer_list<Coord> c) : coords(c) {}

    std::size_t size() const { return coords.size(); }
    Coord& operator[](std::size_t k) { return coords[k]; }
    Coord operator[](std::size_t k) const { return coords[k]; }

    bool is_zero() const
    {
        return std::all_of(coords.begin(), coords.end(), [](Coord c) { return c == 0; });
    }
    bool is_dominant() const
    {
        return std::all_of(coords.begin(), coords.end(), [](Coord c) { return c >= 0; });
    }

    Weight& operator+=(const Weight& o)
    {
        check_same(o);
        for (std::size_t k = 0; k < coords.size(); ++k) coords[k] += o.coords[k];
        return *this;
    }
    Weight& operator-=(const Weight& o)
    {
        check_same(o);
        for (std::size_t k = 0; k < coords.size(); ++k) coords[k] -= o.coords[k];
        return *this;
    }
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(Coord s, Weight a)
    {
        for (auto& c : a.coords) c *= s;
        return a;
    }

    friend bool operator==(const Weight&, const Weight&) = default;
    friend auto operator<=>(const Weight&, const Weight&) = default;

private:
    void check_same(const Weight& o) const
    {
        if (o.coords.size() != coords.size()) throw InvalidInput("weight rank mismatch");
    }
};

/// Comma-joined coordinates, e.g. "2,0,1"; used as JSON keys.
inline std::string to_key(const Weight& w)
{
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(w[k]);
    }
    return s;
}

/// A word over [n]; letters are 1-based simple-root indices.
using Word = std::vector<int>;

/// Cartan matrix with entries c[i][j] = <alpha_j, alpha_i^vee> (0-based storage).
class CartanMatrix {
public:
    CartanMatrix() = default;

    explicit CartanMatrix(std::vector<std::vector<int>> entries) : c_(std::move(entries))
    {
        const std::size_t n = c_.size();
        if (n == 0) throw InvalidInput("Cartan matrix must have positive rank");
        for (std::size_t i = 0; i < n; ++i) {
            if (c_[i].size() != n) throw InvalidInput("Cartan matrix must be square");
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j && c_[i][j] != 2) throw InvalidInput("Cartan matrix diagonal entries must be 2");
                if (i != j && c_[i][j] > 0) throw InvalidInput("Cartan matrix off-diagonal entries must be <= 0");
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if ((c_[i][j] == 0) != (c_[j][i] == 0))
                    throw InvalidInput("Cartan matrix must satisfy c[i][j] = 0 iff c[j][i] = 0");
        symmetrize();
        check_positive_definite();
    }

    /// Type A_n preset.
    static CartanMatrix type_a(int n)
    {
        if (n < 1) throw InvalidInput("type A rank must be positive");
        std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
        for (int i = 0; i < n; ++i) {
            c[i][i] = 2;
            if (i > 0) c[i][i - 1] = -1;
            if (i + 1 < n) c[i][i + 1] = -1;
        }
        return CartanMatrix(std::move(c));
    }

    std::size_t rank() const { return c_.size(); }

    /// <alpha_j, alpha_i^vee> with 1-based i, j.
    int entry(int i, int j) const { return c_.at(i - 1).at(j - 1); }

    const std::vector<std::vector<int>>& raw() const { return c_; }

    /// d_i = (alpha_i, alpha_i)/2 normalised so each component has min 1.
    const std::vector<BigRational>& symmetrizer() const { return d_; }

    friend bool operator==(const CartanMatrix& a, const CartanMatrix& b) { return a.c_ == b.c_; }

private:
    void symmetrize()
    {
        const std::size_t n = c_.size();
        d_.assign(n, BigRational(0));
        for (std::size_t start = 0; start < n; ++start) {
            if (d_[start] != 0) continue;
            std::vector<std::size_t> comp{start};
            d_[start] = 1;
            for (std::size_t q = 0; q < comp.size(); ++q) {
                const std::size_t i = comp[q];
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == i || c_[i][j] == 0) continue;
                    BigRational dj = d_[i] * c_[i][j] / c_[j][i];
                    if (d_[j] == 0) {
                        d_[j] = dj;
                        comp.push_back(j);
                    } else if (d_[j] != dj) {
                        throw InvalidInput("Cartan matrix is not symmetrizable");
                    }
                }
            }
            BigRational lo = d_[start];
            for (auto k : comp) lo = std::min(lo, d_[k]);
            for (auto k : comp) d_[k] /= lo;
        }
    }

    // Sylvester criterion on the symmetrized form, by exact elimination.
    void check_positive_definite() const
    {
        const std::size_t n = c_.size();
        std::vector<std::vector<BigRational>> b(n, std::vector<BigRational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b[i][j] = d_[i] * c_[i][j];
        for (std::size_t k = 0; k < n; ++k) {
            if (b[k][k] <= 0) throw InvalidInput("Cartan matrix is not of finite type");
            for (std::size_t i = k + 1; i < n; ++i) {
                BigRational f = b[i][k] / b[k][k];
                for (std::size_t j = k; j < n; ++j) b[i][j] -= f * b[k][j];
            }
        }
    }

    std::vector<std::vector<int>> c_;
    std::vector<BigRational> d_;
};

/// Ordered sequence (I_1, ..., I_r) of nonempty sorted subsets of [n].
struct SubsetSequence {
    std::vector<std::vector<int>> sets;

    std::size_t size() const { return sets.size(); }

    void validate(std::size_t rank) const
    {
        for (const auto& s : sets) {
            if (s.empty()) throw InvalidInput("subsets must be nonempty");
            for (std::size_t k = 0; k < s.size(); ++k) {
                if (s[k] < 1 || s[k] > static_cast<int>(rank))
                    throw InvalidInput("subset element " + std::to_string(s[k]) + " out of range");
                if (k > 0 && s[k] <= s[k - 1])
                    throw InvalidInput("subset elements must be strictly increasing");
            }
        }
    }
};

/// Blocks of a concatenated word i = (i_{1,1..N_1}, ..., i_{r,1..N_r}).
struct WordSequence {
    std::vector<Word> blocks;

    std::size_t size() const { return blocks.size(); }

    Word flat() const
    {
        Word w;
        for (const auto& b : blocks) w.insert(w.end(), b.begin(), b.end());
        return w;
    }

    /// Start index of each block in the flat word.
    std::vector<std::size_t> offsets() const
    {
        std::vector<std::size_t> off;
        std::size_t acc = 0;
        for (const auto& b : blocks) {
            off.push_back(acc);
            acc += b.size();
        }
        return off;
    }

    std::size_t total_length() const
    {
        std::size_t acc = 0;
        for (const auto& b : blocks) acc += b.size();
        return acc;
    }

    /// Split a flat word into blocks with the given lengths.
    static WordSequence split(const Word& flat, const std::vector<std::size_t>& lengths)
    {
        std::size_t total = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
        if (total != flat.size()) throw InvalidInput("word length does not match the block lengths");
        WordSequence ws;
        std::size_t pos = 0;
        for (auto len : lengths) {
            ws.blocks.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                                   flat.begin() + static_cast<std::ptrdiff_t>(pos + len));
            pos += len;
        }
        return ws;
    }
};

class RootSystem {
public:
    explicit RootSystem(CartanMatrix cartan) : cartan_(std::move(cartan)) { build_positive_roots(); }

    /// Presets "A1" .. "A4" (any "A<n>" with n >= 1 is accepted).
    static RootSystem preset(const std::string& name)
    {
        if (name.size() >= 2 && name[0] == 'A') {
            int n = 0;
            try {
                std::size_t used = 0;
                n = std::stoi(name.substr(1), &used);
                if (used != name.size() - 1) n = 0;
            } catch (...) {
                n = 0;
            }
            if (n >= 1) return RootSystem(CartanMatrix::type_a(n));
        }
        throw InvalidInput("unknown root system preset '" + name + "'");
    }

    std::size_t rank() const { return cartan_.rank(); }
    const CartanMatrix& cartan() const { return cartan_; }

    void check_index(int i) const
    {
        if (i < 1 || i > static_cast<int>(rank()))
            throw InvalidInput("simple root index " + std::to_string(i) + " out of range 1.." +
                               std::to_string(rank()));
    }
    void check_weight(const Weight& w) const
    {
        if (w.size() != rank()) throw InvalidInput("weight has wrong length for this root system");
    }
    void check_word(const Word& w) const
    {
        for (int i : w) check_index(i);
    }

    /// <lambda, alpha_i^vee>.
    Coord pairing(const Weight& lambda, int i) const
    {
        check_weight(lambda);
        check_index(i);
        return lambda[static_cast<std::size_t>(i - 1)];
    }

    /// alpha_i in fundamental-weight coordinates (column i of the Cartan matrix).
    Weight simple_root(int i) const
    {
        check_index(i);
        Weight w(rank());
        for (std::size_t j = 0; j < rank(); ++j) w[j] = cartan_.raw()[j][static_cast<std::size_t>(i - 1)];
        return w;
    }

    Weight fundamental_weight(int i) const
    {
        check_index(i);
        Weight w(rank());
        w[static_cast<std::size_t>(i - 1)] = 1;
        return w;
    }

    /// Positive roots as simple-root coefficient vectors, ordered by height.
    const std::vector<std::vector<Coord>>& positive_roots() const { return positive_; }

    /// Convert a root-lattice vector (simple-root coefficients) to weight coordinates.
    Weight root_to_weight(const std::vector<Coord>& beta) const
    {
        Weight w(rank());
        for (std::size_t j = 0; j < rank(); ++j)
            for (std::size_t k = 0; k < rank(); ++k) w[j] += beta[k] * cartan_.raw()[j][k];
        return w;
    }

    /// s_i(v) = v - <v, alpha_i^vee> alpha_i for a weight v.
    Weight reflect(const Weight& v, int i) const
    {
        const Coord p = v[static_cast<std::size_t>(i - 1)];
        if (p == 0) return v;
        Weight out = v;
        for (std::size_t j = 0; j < rank(); ++j) out[j] -= p * cartan_.raw()[j][static_cast<std::size_t>(i - 1)];
        return out;
    }

    /// s_i applied to a root-lattice vector.
    std::vector<Coord> reflect_root(std::vector<Coord> beta, int i) const
    {
        const std::size_t ii = static_cast<std::size_t>(i - 1);
        Coord p = 0;
        for (std::size_t k = 0; k < rank(); ++k) p += beta[k] * cartan_.raw()[ii][k];
        beta[ii] -= p;
        return beta;
    }

    /// w(beta) for w = s_{word[0]} ... s_{word[m-1]}.
    std::vector<Coord> act(const Word& word, std::vector<Coord> beta) const
    {
        for (auto it = word.rbegin(); it != word.rend(); ++it) beta = reflect_root(std::move(beta), *it);
        return beta;
    }

    static bool is_positive(const std::vector<Coord>& beta)
    {
        bool any = false;
        for (auto c : beta) {
            if (c < 0) return false;
            if (c > 0) any = true;
        }
        return any;
    }

    std::vector<Coord> simple_root_vector(int i) const
    {
        std::vector<Coord> e(rank(), 0);
        e[static_cast<std::size_t>(i - 1)] = 1;
        return e;
    }

    /// A word is reduced iff every right extension increases length,
    /// i.e. w(alpha_i) > 0 before appending letter i.
    bool is_reduced(const Word& word) const
    {
        check_word(word);
        Word prefix;
        for (int i : word) {
            if (!is_positive(act(prefix, simple_root_vector(i)))) return false;
            prefix.push_back(i);
        }
        return true;
    }

    /// Number of positive roots supported on I.
    std::size_t positive_root_count(const std::vector<int>& subset) const
    {
        std::size_t cnt = 0;
        for (const auto& beta : positive_) {
            bool inside = true;
            for (std::size_t k = 0; k < rank(); ++k)
                if (beta[k] != 0 && std::find(subset.begin(), subset.end(), static_cast<int>(k + 1)) == subset.end())
                    inside = false;
            if (inside) ++cnt;
        }
        return cnt;
    }

    /// Reduced word for the longest element of W_I: repeatedly append the
    /// smallest i in I with l(w s_i) > l(w).
    Word longest_word(const std::vector<int>& subset) const
    {
        if (subset.empty()) throw InvalidInput("longest_word needs a nonempty subset");
        std::vector<int> sorted(subset);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int i : sorted) check_index(i);
        Word w;
        for (;;) {
            bool extended = false;
            for (int i : sorted) {
                if (is_positive(act(w, simple_root_vector(i)))) {
                    w.push_back(i);
                    extended = true;
                    break;
                }
            }
            if (!extended) break;
        }
        return w;
    }

    /// Longest-element words for each subset of a sequence.
    WordSequence longest_words(const SubsetSequence& seq) const
    {
        seq.validate(rank());
        WordSequence ws;
        for (const auto& s : seq.sets) ws.blocks.push_back(longest_word(s));
        return ws;
    }

    /// Checks that block k is a reduced word for the longest element of W_{I_k}.
    void check_compatible(const SubsetSequence& seq, const WordSequence& words) const
    {
        seq.validate(rank());
        if (seq.size() != words.size())
            throw InvalidInput("word blocks and subsets differ in number");
        for (std::size_t k = 0; k < seq.size(); ++k) {
            const auto& block = words.blocks[k];
            const auto& set = seq.sets[k];
            for (int letter : block)
                if (std::find(set.begin(), set.end(), letter) == set.end())
                    throw InvalidInput("block " + std::to_string(k + 1) + " uses a letter outside its subset");
            if (!is_reduced(block) || block.size() != positive_root_count(set))
                throw InvalidInput("block " + std::to_string(k + 1) +
                                   " is not a reduced word for the longest element of W_I");
        }
    }

    /// Ordering u_1..u_m of I with the A_m path Cartan pattern; the endpoint
    /// with the smaller index comes first.
    std::vector<int> type_a_enumeration(const std::vector<int>& subset) const
    {
        if (subset.empty()) throw InvalidInput("type_a_enumeration needs a nonempty subset");
        std::vector<int> s(subset);
        std::sort(s.begin(), s.end());
        for (int i : s) check_index(i);
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InvalidInput("subset has repeated elements");
        const std::size_t m = s.size();
        std::vector<std::vector<std::size_t>> adj(m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                if (a == b) continue;
                const int cab = cartan_.entry(s[a], s[b]);
                if (cab == 0) continue;
                if (cab != -1 || cartan_.entry(s[b], s[a]) != -1)
                    throw UnsupportedInput("Levi subgroup on the given subset is not of type A");
                adj[a].push_back(b);
            }
        std::size_t edges = 0;
        for (const auto& nb : adj) {
            if (nb.size() > 2) throw UnsupportedInput("Levi subgroup on the given subset is not of type A");
            edges += nb.size();
        }
        if (edges / 2 != m - 1) throw UnsupportedInput("Levi subgroup on the given subset is not of irreducible type A");
        std::size_t start = m;
        for (std::size_t a = 0; a < m; ++a)
            if (adj[a].size() <= 1) {
                start = a;
                break;
            }
        if (start == m) throw UnsupportedInput("Levi subgroup on the given subset is not of type A");
        std::vector<int> order;
        std::size_t prev = m, cur = start;
        while (order.size() < m) {
            order.push_back(s[cur]);
            std::size_t next = m;
            for (auto nb : adj[cur])
                if (nb != prev) next = nb;
            if (next == m) break;
            prev = cur;
            cur = next;
        }
        if (order.size() != m) throw UnsupportedInput("Levi subgroup on the given subset is not of irreducible type A");
        return order;
    }

    /// Weyl dimension formula in exact arithmetic.
    std::int64_t weyl_dimension(const Weight& lambda) const
    {
        check_weight(lambda);
        if (!lambda.is_dominant()) throw InvalidInput("weyl_dimension needs a dominant weight");
        const auto& d = cartan_.symmetrizer();
        BigRational dim = 1;
        for (const auto& beta : positive_) {
            BigRational num = 0, den = 0;
            for (std::size_t k = 0; k < rank(); ++k) {
                num += BigRational(beta[k]) * d[k] * (lambda[k] + 1);
                den += BigRational(beta[k]) * d[k];
            }
            dim *= num / den;
        }
        if (boost::multiprecision::denominator(dim) != 1) throw std::logic_error("non-integral Weyl dimension");
        return boost::multiprecision::numerator(dim).convert_to<std::int64_t>();
    }

private:
    void build_positive_roots()
    {
        const std::size_t n = rank();
        std::set<std::vector<Coord>> known;
        std::vector<std::vector<Coord>> layer;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Coord> e(n, 0);
            e[i] = 1;
            layer.push_back(e);
            known.insert(e);
        }
        positive_ = layer;
        // alpha-string rule: beta + alpha_i is a root iff q > 0, where
        // q = p - <beta, alpha_i^vee> and p = max{k : beta - k alpha_i is a root}.
        while (!layer.empty()) {
            std::vector<std::vector<Coord>> next;
            for (const auto& beta : layer) {
                for (std::size_t i = 0; i < n; ++i) {
                    Coord p = 0;
                    for (;;) {
                        auto down = beta;
                        down[i] -= p + 1;
                        if (down[i] < 0 || !known.count(down)) break;
                        ++p;
                    }
                    Coord pair = 0;
                    for (std::size_t k = 0; k < n; ++k) pair += beta[k] * cartan_.raw()[i][k];
                    if (p - pair > 0) {
                        auto up = beta;
                        up[i] += 1;
                        if (known.insert(up).second) next.push_back(up);
                    }
                }
            }
            std::sort(next.begin(), next.end());
            positive_.insert(positive_.end(), next.begin(), next.end());
            layer = std::move(next);
        }
    }

    CartanMatrix cartan_;
    std::vector<std::vector<Coord>> positive_;
};

} // namespace fbs
