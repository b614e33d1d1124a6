#pragma once

// Polynomials and controlled rational functions in x_1..x_N over the
// parameter field.  Denominators are kept as a factored multiset of
// two-term linear forms (x_i - c*x_j), the only class the operator
// coefficients ever produce; cancellation is exact division, equality is
// cross-multiplication.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dellns/param.hpp"

namespace dellns {

using XExp = std::vector<int>;  // exponent vector, one entry per variable

class XPoly {
public:
    using Terms = std::map<XExp, ParamScalar>;

    XPoly() : nvars_(0) {}
    explicit XPoly(std::size_t nvars) : nvars_(nvars) {}
    XPoly(std::size_t nvars, const ParamScalar& c) : nvars_(nvars) {
        if (!c.is_zero()) terms_[XExp(nvars, 0)] = c;
    }

    static XPoly var(std::size_t nvars, std::size_t i, int e = 1);
    static XPoly monomial(std::size_t nvars, const XExp& e, const ParamScalar& c);

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const XExp& e, const ParamScalar& c);

    XPoly operator-() const;
    XPoly operator+(const XPoly& o) const;
    XPoly operator-(const XPoly& o) const;
    XPoly operator*(const XPoly& o) const;
    XPoly& operator+=(const XPoly& o) { return *this = *this + o; }
    XPoly& operator*=(const XPoly& o) { return *this = *this * o; }
    bool operator==(const XPoly& o) const;
    bool operator!=(const XPoly& o) const { return !(*this == o); }
    bool operator<(const XPoly& o) const { return terms_ < o.terms_; }

    XPoly scaled(const ParamScalar& c) const;
    // substitute x_i -> x_{perm[i]}
    XPoly permuted(const std::vector<int>& perm) const;
    // substitute x_i -> q^{-m_i} x_i
    XPoly gamma_shifted(const std::vector<int>& m) const;
    // apply a map to every coefficient (e.g. w -> t^N)
    template <class Fn>
    XPoly mapped(Fn&& fn) const {
        XPoly r(nvars_);
        for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
        return r;
    }

    bool is_symmetric() const;
    int degree() const;  // total degree; -1 for zero

    // exact division (graded-lex leading-term elimination); nullopt if the
    // remainder is nonzero
    std::optional<XPoly> divide_exact(const XPoly& d) const;

    std::string str() const;

private:
    std::size_t nvars_;
    Terms terms_;
};

// power sum x_1^n + ... + x_N^n
XPoly power_sum(std::size_t nvars, int n);
// monomial symmetric polynomial of a partition (sum over distinct
// permutations of the exponent vector)
XPoly monomial_symmetric(std::size_t nvars, const std::vector<int>& partition);

// linear denominator factor x_i - c * x_j with i < j and c != 0, or the
// single variable x_i when j < 0
struct XFactor {
    int i;
    int j;  // -1 for the plain x_i factor
    ParamScalar c;
    XPoly poly(std::size_t nvars) const;
    bool operator<(const XFactor& o) const {
        if (i != o.i) return i < o.i;
        if (j != o.j) return j < o.j;
        return c < o.c;
    }
    bool operator==(const XFactor& o) const {
        return !(*this < o) && !(o < *this);
    }
};

class XRational {
public:
    XRational() = default;
    XRational(const XPoly& num) : num_(num) {}
    XRational(const XPoly& num, const std::multiset<XFactor>& den)
        : num_(num), den_(den) {
        if (num_.is_zero()) den_.clear();
    }

    const XPoly& num() const { return num_; }
    const std::multiset<XFactor>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    std::size_t nvars() const { return num_.nvars(); }

    XRational operator-() const;
    XRational operator+(const XRational& o) const;
    XRational operator-(const XRational& o) const { return *this + (-o); }
    XRational operator*(const XRational& o) const;
    XRational& operator+=(const XRational& o) { return *this = *this + o; }
    XRational& operator*=(const XRational& o) { return *this = *this * o; }
    bool operator==(const XRational& o) const;
    bool operator!=(const XRational& o) const { return !(*this == o); }
    bool operator<(const XRational& o) const;  // structural, for containers

    XRational scaled(const ParamScalar& c) const;
    XRational permuted(const std::vector<int>& perm) const;
    XRational gamma_shifted(const std::vector<int>& m) const;
    template <class Fn>
    XRational mapped(Fn&& fn) const {
        XRational r;
        r.num_ = num_.mapped(fn);
        for (XFactor f : den_) {
            f.c = fn(f.c);
            r.den_.insert(f);
        }
        r.cancel();
        return r;
    }

    // divide out denominator factors that divide the numerator exactly
    void cancel();
    // the value must be polynomial; throws NonPolynomialResult otherwise
    XPoly to_poly() const;

    std::string str() const;

private:
    // push a possibly misordered/miscaled linear form into the multiset,
    // folding the scalar adjustment into the numerator
    void push_factor(int i, int j, const ParamScalar& ci, const ParamScalar& cj);

    XPoly num_;
    std::multiset<XFactor> den_;
};

}  // namespace dellns
