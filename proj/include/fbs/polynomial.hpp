#pragma once

// Sparse multivariate polynomials with exact rational coefficients.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace fbs {

class MVPolynomial {
public:
    using Exponent = std::vector<std::uint32_t>;

    explicit MVPolynomial(std::size_t nvars = 0) : nvars_(nvars) {}

    static MVPolynomial constant(std::size_t nvars, const BigRational& c)
    {
        MVPolynomial p(nvars);
        p.add_term(Exponent(nvars, 0), c);
        return p;
    }

    /// c0 + sum_j coeffs[j] x_j.
    static MVPolynomial affine(const BigRational& c0, const std::vector<BigRational>& coeffs)
    {
        MVPolynomial p = constant(coeffs.size(), c0);
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            Exponent e(coeffs.size(), 0);
            e[j] = 1;
            p.add_term(e, coeffs[j]);
        }
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponent, BigRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponent& e, const BigRational& c)
    {
        if (e.size() != nvars_) throw InvalidInput("exponent length differs from variable count");
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Coefficient of the constant monomial.
    BigRational constant_term() const
    {
        auto it = terms_.find(Exponent(nvars_, 0));
        return it == terms_.end() ? BigRational(0) : it->second;
    }

    MVPolynomial& operator+=(const MVPolynomial& o)
    {
        check_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    friend MVPolynomial operator+(MVPolynomial a, const MVPolynomial& b) { return a += b; }

    friend MVPolynomial operator*(const MVPolynomial& a, const MVPolynomial& b)
    {
        a.check_same(b);
        MVPolynomial out(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e(ea);
                for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    friend MVPolynomial operator*(const BigRational& s, MVPolynomial p)
    {
        if (s == 0) return MVPolynomial(p.nvars_);
        for (auto& [e, c] : p.terms_) c *= s;
        return p;
    }

    MVPolynomial pow(std::uint32_t k) const
    {
        MVPolynomial out = constant(nvars_, 1);
        for (std::uint32_t t = 0; t < k; ++t) out = out * *this;
        return out;
    }

    /// Antiderivative in variable v that vanishes at x_v = 0.
    MVPolynomial antiderivative(std::size_t v) const
    {
        check_var(v);
        MVPolynomial out(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponent f(e);
            f[v] += 1;
            out.add_term(f, c / BigRational(f[v]));
        }
        return out;
    }

    /// Substitutes x_v := q (q must not involve x_v).
    MVPolynomial substitute(std::size_t v, const MVPolynomial& q) const
    {
        check_var(v);
        check_same(q);
        for (const auto& [e, c] : q.terms_)
            if (e[v] != 0) throw InvalidInput("substituted polynomial depends on the variable it replaces");
        std::vector<MVPolynomial> powers{constant(nvars_, 1)};
        MVPolynomial out(nvars_);
        for (const auto& [e, c] : terms_) {
            while (powers.size() <= e[v]) powers.push_back(powers.back() * q);
            Exponent rest(e);
            rest[v] = 0;
            MVPolynomial mono(nvars_);
            mono.add_term(rest, c);
            out += mono * powers[e[v]];
        }
        return out;
    }

    BigRational evaluate(const std::vector<BigRational>& x) const
    {
        if (x.size() != nvars_) throw InvalidInput("point has the wrong dimension");
        BigRational acc = 0;
        for (const auto& [e, c] : terms_) {
            BigRational term = c;
            for (std::size_t k = 0; k < nvars_; ++k)
                for (std::uint32_t t = 0; t < e[k]; ++t) term *= x[k];
            acc += term;
        }
        return acc;
    }

    friend bool operator==(const MVPolynomial&, const MVPolynomial&) = default;

private:
    void check_var(std::size_t v) const
    {
        if (v >= nvars_) throw InvalidInput("variable index out of range");
    }
    void check_same(const MVPolynomial& o) const
    {
        if (o.nvars_ != nvars_) throw InvalidInput("polynomials over different variable sets");
    }

    std::size_t nvars_;
    std::map<Exponent, BigRational> terms_;
};

} // namespace fbs
