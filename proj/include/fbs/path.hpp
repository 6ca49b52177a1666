#pragma once

// Littelmann paths and root operators.
//
// A path is stored by its velocity profile: a list of (velocity, duration)
// segments with integral velocities and positive rational durations summing
// to 1. Equal adjacent velocities are merged, which makes the segment list a
// canonical form usable as a map key.

#include <optional>
#include <vector>

#include "rational.hpp"
#include "rootsys.hpp"

namespace fbs {

struct PathSegment {
    Weight velocity;
    Rational duration;
};

class LittelmannPath {
public:
    LittelmannPath() = default;

    explicit LittelmannPath(std::vector<PathSegment> segments) : segs_(std::move(segments)) { normalize(); }

    /// t -> t * lambda.
    static LittelmannPath straight(const Weight& lambda) { return LittelmannPath({{lambda, Rational(1)}}); }

    const std::vector<PathSegment>& segments() const { return segs_; }

    /// pi(1); integral for every path reachable from a straight line to an integral weight.
    Weight endpoint() const
    {
        if (segs_.empty()) return {};
        const std::size_t n = segs_.front().velocity.size();
        std::vector<Rational> acc(n, Rational(0));
        for (const auto& s : segs_)
            for (std::size_t k = 0; k < n; ++k) acc[k] += s.duration * Rational(s.velocity[k]);
        Weight w(n);
        for (std::size_t k = 0; k < n; ++k) {
            if (acc[k].denominator() != 1) throw std::logic_error("path endpoint is not integral");
            w[k] = acc[k].numerator();
        }
        return w;
    }

    friend bool operator==(const LittelmannPath& a, const LittelmannPath& b)
    {
        if (a.segs_.size() != b.segs_.size()) return false;
        for (std::size_t k = 0; k < a.segs_.size(); ++k)
            if (a.segs_[k].velocity != b.segs_[k].velocity || a.segs_[k].duration != b.segs_[k].duration)
                return false;
        return true;
    }

    friend bool operator<(const LittelmannPath& a, const LittelmannPath& b)
    {
        const std::size_t m = std::min(a.segs_.size(), b.segs_.size());
        for (std::size_t k = 0; k < m; ++k) {
            const auto& sa = a.segs_[k];
            const auto& sb = b.segs_[k];
            if (sa.velocity != sb.velocity) return sa.velocity < sb.velocity;
            if (sa.duration != sb.duration) return sa.duration < sb.duration;
        }
        return a.segs_.size() < b.segs_.size();
    }

private:
    void normalize()
    {
        std::vector<PathSegment> out;
        Rational total(0);
        for (auto& s : segs_) {
            if (s.duration < Rational(0)) throw InvalidInput("path segment with negative duration");
            if (s.duration == Rational(0)) continue;
            total += s.duration;
            if (!out.empty() && out.back().velocity == s.velocity)
                out.back().duration += s.duration;
            else
                out.push_back(std::move(s));
        }
        if (total != Rational(1)) throw InvalidInput("path durations must sum to 1");
        segs_ = std::move(out);
    }

    std::vector<PathSegment> segs_;
};

namespace detail {

// Values of h(t) = <pi(t), alpha_i^vee> at the segment breakpoints.
struct HeightProfile {
    std::vector<Rational> times;   // size m+1
    std::vector<Rational> heights; // size m+1
    Rational minimum{0};

    HeightProfile(const LittelmannPath& p, int i)
    {
        const std::size_t ii = static_cast<std::size_t>(i - 1);
        times.push_back(Rational(0));
        heights.push_back(Rational(0));
        for (const auto& s : p.segments()) {
            times.push_back(times.back() + s.duration);
            heights.push_back(heights.back() + s.duration * Rational(s.velocity[ii]));
            if (heights.back() < minimum) minimum = heights.back();
        }
        if (minimum.denominator() != 1) throw std::logic_error("path is not integral for root operators");
    }
};

// Replace velocities on the time window [t0, t1] by their s_i-reflections.
inline LittelmannPath reflect_window(const RootSystem& rs, const LittelmannPath& p, int i, Rational t0,
                                     Rational t1)
{
    std::vector<PathSegment> out;
    Rational start(0);
    for (const auto& s : p.segments()) {
        const Rational end = start + s.duration;
        const Rational lo = std::max(start, t0);
        const Rational hi = std::min(end, t1);
        if (hi <= lo) {
            out.push_back(s);
        } else {
            if (lo > start) out.push_back({s.velocity, lo - start});
            out.push_back({rs.reflect(s.velocity, i), hi - lo});
            if (end > hi) out.push_back({s.velocity, end - hi});
        }
        start = end;
    }
    return LittelmannPath(std::move(out));
}

} // namespace detail

/// epsilon_i(pi) = -min_t <pi(t), alpha_i^vee>.
inline Coord path_epsilon(const LittelmannPath& p, int i)
{
    return -detail::HeightProfile(p, i).minimum.numerator();
}

/// phi_i(pi) = <pi(1), alpha_i^vee> - min_t <pi(t), alpha_i^vee>.
inline Coord path_phi(const LittelmannPath& p, int i)
{
    detail::HeightProfile h(p, i);
    const Rational d = h.heights.back() - h.minimum;
    if (d.denominator() != 1) throw std::logic_error("path is not integral for root operators");
    return d.numerator();
}

inline Weight path_wt(const LittelmannPath& p) { return p.endpoint(); }

/// Root operator f_i: reflect the stretch where h climbs from its last
/// minimum Q to Q + 1; none when h(1) - Q < 1.
inline std::optional<LittelmannPath> path_f(const RootSystem& rs, const LittelmannPath& p, int i)
{
    rs.check_index(i);
    detail::HeightProfile h(p, i);
    const std::size_t m = h.heights.size() - 1;
    const Rational q = h.minimum;
    if (h.heights[m] - q < Rational(1)) return std::nullopt;
    std::size_t k0 = 0;
    for (std::size_t k = 0; k <= m; ++k)
        if (h.heights[k] == q) k0 = k;
    const Rational t0 = h.times[k0];
    const Rational target = q + Rational(1);
    const std::size_t ii = static_cast<std::size_t>(i - 1);
    for (std::size_t k = k0; k < m; ++k) {
        if (h.heights[k + 1] >= target) {
            const Rational slope(p.segments()[k].velocity[ii]);
            const Rational t1 = h.times[k] + (target - h.heights[k]) / slope;
            return detail::reflect_window(rs, p, i, t0, t1);
        }
    }
    throw std::logic_error("root operator f: no crossing found");
}

/// Root operator e_i: reflect the stretch where h falls from Q + 1 to its
/// first minimum Q; none when Q > -1.
inline std::optional<LittelmannPath> path_e(const RootSystem& rs, const LittelmannPath& p, int i)
{
    rs.check_index(i);
    detail::HeightProfile h(p, i);
    const Rational q = h.minimum;
    if (q > Rational(-1)) return std::nullopt;
    std::size_t k1 = 0;
    while (h.heights[k1] != q) ++k1;
    const Rational t1 = h.times[k1];
    const Rational target = q + Rational(1);
    const std::size_t ii = static_cast<std::size_t>(i - 1);
    for (std::size_t k = k1; k-- > 0;) {
        if (h.heights[k] >= target) {
            const Rational slope(p.segments()[k].velocity[ii]);
            const Rational t0 = h.heights[k] == target ? h.times[k] : h.times[k] + (target - h.heights[k]) / slope;
            return detail::reflect_window(rs, p, i, t0, t1);
        }
    }
    throw std::logic_error("root operator e: no crossing found");
}

} // namespace fbs
