#pragma once

// Grossberg-Karshon twisted cubes: region and density, exact signed volume
// and pushforward moments, signed lattice counts, and seeded Monte-Carlo
// estimates and histograms of the projected signed measure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polynomial.hpp"
#include "rational.hpp"
#include "rootsys.hpp"

namespace fbs {

class TwistedCube {
public:
    TwistedCube(const RootSystem& rs, Word word, std::vector<Coord> a) : word_(std::move(word)), a_(std::move(a))
    {
        rs.check_word(word_);
        if (word_.empty()) throw InvalidInput("twisted cube needs a nonempty word");
        if (word_.size() != a_.size()) throw InvalidInput("word and vector a must have the same length");
        const std::size_t n = word_.size();
        constant_.assign(n, 0);
        coeff_.assign(n, std::vector<Coord>(n, 0));
        for (std::size_t l = 0; l < n; ++l) {
            for (std::size_t j = l; j < n; ++j)
                if (word_[j] == word_[l]) constant_[l] -= a_[j];
            for (std::size_t j = l + 1; j < n; ++j)
                coeff_[l][j] = -rs.pairing(rs.simple_root(word_[j]), word_[l]);
        }
    }

    std::size_t dim() const { return word_.size(); }
    const Word& word() const { return word_; }
    const std::vector<Coord>& a() const { return a_; }

    /// A_l = constant(l) + sum_{j > l} coefficient(l, j) x_j (0-based l, j).
    Coord constant(std::size_t l) const { return constant_.at(l); }
    Coord coefficient(std::size_t l, std::size_t j) const { return coeff_.at(l).at(j); }

    template <class T>
    T form(std::size_t l, const std::vector<T>& x) const
    {
        T v = T(constant_[l]);
        for (std::size_t j = l + 1; j < dim(); ++j)
            if (coeff_[l][j] != 0) v += T(coeff_[l][j]) * x[j];
        return v;
    }

    /// Density rho in {-1, 0, 1}: zero off C(i, a), otherwise (-1)^N prod sign(x_j)
    /// with sign(t) = -1 for t <= 0 and +1 for t > 0.
    template <class T>
    int density(const std::vector<T>& x) const
    {
        if (x.size() != dim()) throw InvalidInput("point has the wrong dimension");
        int s = (dim() % 2 == 0) ? 1 : -1;
        for (std::size_t l = dim(); l-- > 0;) {
            const T bound = form(l, x);
            const T zero(0);
            if (bound <= x[l] && x[l] <= zero)
                s = -s;
            else if (!(zero < x[l] && x[l] < bound))
                return 0;
        }
        return s;
    }

    /// Monomial variables x_1 .. x_N as an affine polynomial A_l.
    MVPolynomial form_polynomial(std::size_t l) const
    {
        std::vector<BigRational> c(dim(), BigRational(0));
        for (std::size_t j = l + 1; j < dim(); ++j) c[j] = BigRational(coeff_[l][j]);
        return MVPolynomial::affine(BigRational(constant_[l]), c);
    }

private:
    Word word_;
    std::vector<Coord> a_;
    std::vector<Coord> constant_;
    std::vector<std::vector<Coord>> coeff_;
};

/// 0/1 matrix sending column (k, l) to row offset_k + position of i_{k,l} in sorted I_k.
struct ProjectionMap {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<Coord>> entries;

    std::vector<double> apply(const std::vector<double>& x) const
    {
        std::vector<double> y(rows, 0.0);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (entries[r][c] != 0) y[r] += static_cast<double>(entries[r][c]) * x[c];
        return y;
    }

    static ProjectionMap identity(std::size_t n)
    {
        ProjectionMap p{n, n, std::vector<std::vector<Coord>>(n, std::vector<Coord>(n, 0))};
        for (std::size_t k = 0; k < n; ++k) p.entries[k][k] = 1;
        return p;
    }
};

inline ProjectionMap projection_map(const RootSystem& rs, const SubsetSequence& seq, const WordSequence& words)
{
    rs.check_compatible(seq, words);
    ProjectionMap p;
    p.cols = words.total_length();
    for (const auto& s : seq.sets) p.rows += s.size();
    p.entries.assign(p.rows, std::vector<Coord>(p.cols, 0));
    std::size_t row0 = 0, col = 0;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        std::vector<int> sorted(seq.sets[k]);
        std::sort(sorted.begin(), sorted.end());
        for (int letter : words.blocks[k]) {
            const auto pos = static_cast<std::size_t>(std::find(sorted.begin(), sorted.end(), letter) - sorted.begin());
            p.entries[row0 + pos][col++] = 1;
        }
        row0 += sorted.size();
    }
    return p;
}

/// Integral of (L x)^m rho(x) dx.
///
/// For any polynomial h and bound A, both branches of the region give
///   A <= 0:  int_A^0 sign(t) h(t) dt = -int_A^0 h = int_0^A h,
///   A > 0:   int_0^A sign(t) h(t) dt = int_0^A h,
/// so integrating x_1 first (A_1 depends only on later coordinates) turns the
/// integral into the recursion p_l = [antiderivative of p_{l-1} in x_l] at x_l = A_l,
/// and the result is (-1)^N p_N.
inline BigRational pushforward_moment(const TwistedCube& cube, const ProjectionMap& L,
                                      const std::vector<std::uint32_t>& m)
{
    const std::size_t n = cube.dim();
    if (L.cols != n) throw InvalidInput("projection map does not match the cube dimension");
    if (m.size() != L.rows) throw InvalidInput("moment multi-index needs one exponent per target coordinate");
    MVPolynomial p = MVPolynomial::constant(n, 1);
    for (std::size_t r = 0; r < L.rows; ++r) {
        if (m[r] == 0) continue;
        std::vector<BigRational> c(n);
        for (std::size_t j = 0; j < n; ++j) c[j] = BigRational(L.entries[r][j]);
        p = p * MVPolynomial::affine(0, c).pow(m[r]);
    }
    for (std::size_t l = 0; l < n; ++l) p = p.antiderivative(l).substitute(l, cube.form_polynomial(l));
    const BigRational v = p.constant_term();
    return n % 2 == 0 ? v : BigRational(-v);
}

inline BigRational signed_volume(const TwistedCube& cube)
{
    return pushforward_moment(cube, ProjectionMap::identity(cube.dim()),
                              std::vector<std::uint32_t>(cube.dim(), 0));
}

/// All multi-indices of total degree d over `vars` coordinates, lexicographically descending.
inline std::vector<std::vector<std::uint32_t>> multi_indices(std::size_t vars, std::uint32_t d)
{
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur(vars, 0);
    auto rec = [&](auto&& self, std::size_t k, std::uint32_t left) -> void {
        if (k + 1 == vars) {
            cur[k] = left;
            out.push_back(cur);
            return;
        }
        for (std::uint32_t t = left + 1; t-- > 0;) {
            cur[k] = t;
            self(self, k + 1, left - t);
        }
    };
    if (vars > 0) rec(rec, 0, d);
    return out;
}

/// Sum of rho over integer points, honoring the closed branch [A, 0] and open branch (0, A).
inline std::int64_t signed_lattice_count(const TwistedCube& cube, std::uint64_t budget = 100'000'000)
{
    const std::size_t n = cube.dim();
    std::vector<Coord> x(n, 0);
    std::uint64_t visited = 0;
    auto rec = [&](auto&& self, std::size_t l) -> std::int64_t {
        const Coord bound = cube.form(l, x);
        Coord lo, hi;
        std::int64_t sign;
        if (bound <= 0) {
            lo = bound, hi = 0, sign = -1;
        } else {
            lo = 1, hi = bound - 1, sign = 1;
        }
        std::int64_t total = 0;
        for (Coord v = lo; v <= hi; ++v) {
            if (++visited > budget) throw BudgetExceeded("signed lattice count exceeded its point budget");
            x[l] = v;
            total += sign * (l == 0 ? 1 : self(self, l - 1));
        }
        x[l] = 0;
        return total;
    };
    const std::int64_t s = rec(rec, n - 1);
    return n % 2 == 0 ? s : -s;
}

/// Axis-aligned box containing C(i, a): x_l ranges over [min(0, lo A_l), max(0, hi A_l)]
/// with A_l bounded by interval arithmetic over the later coordinates.
struct Box {
    std::vector<double> lo, hi;

    double volume() const
    {
        double v = 1.0;
        for (std::size_t k = 0; k < lo.size(); ++k) v *= hi[k] - lo[k];
        return v;
    }
};

inline Box bounding_box(const TwistedCube& cube)
{
    const std::size_t n = cube.dim();
    Box b{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    for (std::size_t l = n; l-- > 0;) {
        double alo = static_cast<double>(cube.constant(l)), ahi = alo;
        for (std::size_t j = l + 1; j < n; ++j) {
            const double c = static_cast<double>(cube.coefficient(l, j));
            alo += std::min(c * b.lo[j], c * b.hi[j]);
            ahi += std::max(c * b.lo[j], c * b.hi[j]);
        }
        b.lo[l] = std::min(0.0, alo);
        b.hi[l] = std::max(0.0, ahi);
    }
    return b;
}

/// Image of a box under a nonnegative projection.
inline Box project_box(const Box& b, const ProjectionMap& L)
{
    Box out{std::vector<double>(L.rows, 0.0), std::vector<double>(L.rows, 0.0)};
    for (std::size_t r = 0; r < L.rows; ++r)
        for (std::size_t c = 0; c < L.cols; ++c) {
            const double e = static_cast<double>(L.entries[r][c]);
            out.lo[r] += std::min(e * b.lo[c], e * b.hi[c]);
            out.hi[r] += std::max(e * b.lo[c], e * b.hi[c]);
        }
    return out;
}

namespace detail {

inline constexpr std::uint64_t shard_stride = 0x9E3779B97F4A7C15ULL;
inline constexpr std::size_t default_shards = 8;

inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Draws `samples` points uniformly in the box, split over fixed shards with
// seeds seed + (s + 1) * stride; visits (point, rho) in shard order.
template <class Visit>
void sample_box(const TwistedCube& cube, const Box& box, std::uint64_t samples, std::uint64_t seed, Visit visit,
                std::size_t shards = default_shards)
{
    if (samples == 0) throw InvalidInput("sample count must be positive");
    const std::size_t n = cube.dim();
    std::vector<double> x(n);
    for (std::size_t s = 0; s < shards; ++s) {
        std::mt19937_64 rng(seed + (s + 1) * shard_stride);
        const std::uint64_t count = samples / shards + (s < samples % shards ? 1 : 0);
        for (std::uint64_t t = 0; t < count; ++t) {
            for (std::size_t k = 0; k < n; ++k) x[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * unit_uniform(rng);
            visit(x, cube.density(x));
        }
    }
}

} // namespace detail

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Monte-Carlo estimates of the moments int (L x)^m rho dx, one per multi-index.
inline std::vector<McEstimate> mc_moments(const TwistedCube& cube, const ProjectionMap& L,
                                          const std::vector<std::vector<std::uint32_t>>& moments,
                                          std::uint64_t samples, std::uint64_t seed)
{
    if (L.cols != cube.dim()) throw InvalidInput("projection map does not match the cube dimension");
    for (const auto& m : moments)
        if (m.size() != L.rows) throw InvalidInput("moment multi-index needs one exponent per target coordinate");
    const Box box = bounding_box(cube);
    const double vol = box.volume();
    std::vector<double> sum(moments.size(), 0.0), sum2(moments.size(), 0.0);
    detail::sample_box(cube, box, samples, seed, [&](const std::vector<double>& x, int rho) {
        if (rho == 0) return;
        const auto y = L.apply(x);
        for (std::size_t q = 0; q < moments.size(); ++q) {
            double v = rho;
            for (std::size_t r = 0; r < y.size(); ++r) v *= std::pow(y[r], static_cast<double>(moments[q][r]));
            sum[q] += v;
            sum2[q] += v * v;
        }
    });
    const double ns = static_cast<double>(samples);
    std::vector<McEstimate> out(moments.size());
    for (std::size_t q = 0; q < moments.size(); ++q) {
        const double mean = sum[q] / ns;
        const double var = std::max(0.0, sum2[q] / ns - mean * mean);
        out[q] = {vol * mean, vol * std::sqrt(var / ns)};
    }
    return out;
}

/// Signed histogram of L_* (rho dx) on the chosen target axes.
struct Histogram {
    std::vector<std::size_t> axes; // 0-based target rows
    std::vector<double> lo, hi;    // per axis
    std::size_t bins = 0;          // per axis
    std::vector<double> values;    // first axis varies slowest

    std::size_t cell_count() const { return values.size(); }

    std::vector<std::size_t> cell_coords(std::size_t flat) const
    {
        std::vector<std::size_t> c(axes.size());
        for (std::size_t k = axes.size(); k-- > 0;) {
            c[k] = flat % bins;
            flat /= bins;
        }
        return c;
    }

    double center(std::size_t axis_pos, std::size_t cell) const
    {
        const double w = (hi[axis_pos] - lo[axis_pos]) / static_cast<double>(bins);
        return lo[axis_pos] + (static_cast<double>(cell) + 0.5) * w;
    }

    double total() const
    {
        double t = 0.0;
        for (double v : values) t += v;
        return t;
    }

    /// One row per cell: center coordinates, then the signed value.
    std::string to_csv() const
    {
        std::ostringstream os;
        os.precision(17);
        for (std::size_t k = 0; k < axes.size(); ++k) os << "y" << axes[k] + 1 << ',';
        os << "value\n";
        for (std::size_t f = 0; f < values.size(); ++f) {
            const auto c = cell_coords(f);
            for (std::size_t k = 0; k < axes.size(); ++k) os << center(k, c[k]) << ',';
            os << values[f] << '\n';
        }
        return os.str();
    }
};

inline Histogram mc_histogram(const TwistedCube& cube, const ProjectionMap& L, std::vector<std::size_t> axes,
                              std::size_t bins, std::uint64_t samples, std::uint64_t seed)
{
    if (bins == 0) throw InvalidInput("bin count must be positive");
    if (L.cols != cube.dim()) throw InvalidInput("projection map does not match the cube dimension");
    if (axes.empty())
        for (std::size_t r = 0; r < L.rows; ++r) axes.push_back(r);
    for (auto a : axes)
        if (a >= L.rows) throw InvalidInput("histogram axis out of range");
    const Box box = bounding_box(cube);
    const Box target = project_box(box, L);
    Histogram h;
    h.axes = axes;
    h.bins = bins;
    std::size_t cells = 1;
    for (auto a : axes) {
        double lo = target.lo[a], hi = target.hi[a];
        if (hi <= lo) hi = lo + 1.0;
        h.lo.push_back(lo);
        h.hi.push_back(hi);
        cells *= bins;
    }
    h.values.assign(cells, 0.0);
    const double weight = box.volume() / static_cast<double>(samples);
    detail::sample_box(cube, box, samples, seed, [&](const std::vector<double>& x, int rho) {
        if (rho == 0) return;
        const auto y = L.apply(x);
        std::size_t flat = 0;
        for (std::size_t k = 0; k < axes.size(); ++k) {
            const double t = (y[axes[k]] - h.lo[k]) / (h.hi[k] - h.lo[k]);
            auto cell = static_cast<std::size_t>(std::clamp(t, 0.0, 1.0) * static_cast<double>(bins));
            if (cell >= bins) cell = bins - 1;
            flat = flat * bins + cell;
        }
        h.values[flat] += weight * rho;
    });
    return h;
}

/// 2-D signed histogram rendered with a diverging scale (red positive, blue negative).
inline std::string histogram_svg(const Histogram& h, int size_px = 480)
{
    if (h.axes.size() != 2) throw InvalidInput("SVG rendering needs exactly two axes");
    double vmax = 0.0;
    for (double v : h.values) vmax = std::max(vmax, std::abs(v));
    const int margin = 40;
    const double cell = static_cast<double>(size_px) / static_cast<double>(h.bins);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px + 2 * margin << "\" height=\""
       << size_px + 2 * margin << "\">\n";
    os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size_px << "\" height=\"" << size_px
       << "\" fill=\"white\" stroke=\"black\"/>\n";
    for (std::size_t f = 0; f < h.values.size(); ++f) {
        const double v = h.values[f];
        if (v == 0.0 || vmax == 0.0) continue;
        const auto c = h.cell_coords(f);
        const double t = std::abs(v) / vmax;
        const int fade = static_cast<int>(std::lround(255.0 * (1.0 - t)));
        const int r = v > 0 ? 255 : fade, b = v > 0 ? fade : 255, g = fade;
        const double px = margin + static_cast<double>(c[0]) * cell;
        const double py = margin + static_cast<double>(h.bins - 1 - c[1]) * cell;
        os << "<rect class=\"cell\" x=\"" << px << "\" y=\"" << py << "\" width=\"" << cell << "\" height=\"" << cell
           << "\" fill=\"rgb(" << r << ',' << g << ',' << b << ")\" data-x=\"" << h.center(0, c[0]) << "\" data-y=\""
           << h.center(1, c[1]) << "\" data-value=\"" << v << "\"/>\n";
    }
    os << "<text x=\"" << margin << "\" y=\"" << size_px + margin + 25 << "\" font-size=\"12\">y" << h.axes[0] + 1
       << " [" << h.lo[0] << ", " << h.hi[0] << "]</text>\n";
    os << "<text x=\"5\" y=\"" << margin - 10 << "\" font-size=\"12\">y" << h.axes[1] + 1 << " [" << h.lo[1] << ", "
       << h.hi[1] << "]</text>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace fbs
