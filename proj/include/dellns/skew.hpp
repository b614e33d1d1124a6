#pragma once

// The operator algebra on polynomials in x_1..x_N generated by
// multiplication by controlled rational functions, the multiplicative
// shifts x_i -> q^{-1} x_i, and variable permutations.  Every operator is
// kept in normal order (coefficients left, shifts middle, permutations
// right), which makes composition associative and equality decidable.
//
// On top of the algebra sit the named operators of the model: the
// two-term R-operators, the theta-weighted Cherednik operators, the
// covariant Z/U/V operators, the generating function built from the full
// multi-index sum, its determinant form at omega order zero, and the
// ratio generating function obtained by series inversion.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dellns/param.hpp"
#include "dellns/series.hpp"
#include "dellns/xpoly.hpp"

namespace dellns {

using Perm = std::vector<int>;

Perm identity_perm(std::size_t n);
// the transposition exchanging variables i and j (0-based)
Perm transposition(std::size_t n, int i, int j);

class SkewOp {
public:
    // key: (shift vector m, permutation), value: rational coefficient;
    // the term acts as f -> coeff * gamma^m(sigma(f)) where gamma^m
    // substitutes x_i -> q^{-m_i} x_i and sigma substitutes x_i -> x_{sigma(i)}
    using Key = std::pair<std::vector<int>, Perm>;
    using Terms = std::map<Key, XRational>;

    SkewOp() = default;  // the zero operator, compatible with any arity
    explicit SkewOp(std::size_t nvars) : nvars_(nvars) {}

    static SkewOp identity(std::size_t nvars);
    // multiplication by a rational function
    static SkewOp coeff_op(const XRational& c);
    // gamma_i^n: x_i -> q^{-n} x_i
    static SkewOp gamma(std::size_t nvars, int i, int n);
    static SkewOp permutation(const Perm& perm);

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const XRational& c, const std::vector<int>& shift, const Perm& perm);

    SkewOp operator-() const;
    SkewOp operator+(const SkewOp& o) const;
    SkewOp operator-(const SkewOp& o) const { return *this + (-o); }
    // composition (this applied after o is `*this * o` acting on f as
    // this(o(f))), re-normalized
    SkewOp operator*(const SkewOp& o) const;
    SkewOp& operator+=(const SkewOp& o) { return *this = *this + o; }
    SkewOp& operator*=(const SkewOp& o) { return *this = *this * o; }
    bool operator==(const SkewOp& o) const;
    bool operator!=(const SkewOp& o) const { return !(*this == o); }

    SkewOp scaled(const ParamScalar& c) const;
    // multiply every coefficient by a rational function on the left
    SkewOp left_scaled(const XRational& c) const;

    // action on a polynomial with the rational parts kept explicit
    XRational apply_rational(const XPoly& f) const;
    // polynomial action; throws NonPolynomialResult if the summed value
    // does not divide out
    XPoly apply(const XPoly& f) const;

    std::string str() const;

private:
    std::size_t nvars_ = 0;
    Terms terms_;
};

using SeriesOp = OmegaUSeries<SkewOp>;

// theta-weighted series of a per-exponent operator family
template <class Fn>
SeriesOp ptheta_op(std::size_t nvars, int omega_order, Fn&& layer) {
    (void)nvars;
    return ptheta_series<SkewOp>(omega_order, layer);
}

// substitute u -> u t^e: layer (k, n) picks up t^{e n}
template <class T>
OmegaUSeries<T> u_scaled_by_t(const OmegaUSeries<T>& s, int e) {
    OmegaUSeries<T> r = s.is_entire()
                            ? OmegaUSeries<T>::entire(s.omega_order())
                            : OmegaUSeries<T>::windowed(s.omega_order(), s.window_lo(),
                                                        s.window_hi());
    for (const auto& [key, v] : s.coeffs())
        r.set(key.first, key.second, v.scaled(ts(e * key.second)));
    return r;
}

// apply every stored layer of a series to the same polynomial
OmegaUSeries<XPoly> apply_series(const SeriesOp& s, const XPoly& f);
// convolution of an operator series with a layered polynomial
OmegaUSeries<XPoly> apply_series(const SeriesOp& s, const OmegaUSeries<XPoly>& f);
// apply the inverse of an entire operator series (identity leading
// layer) to a polynomial, exact on [lo, hi]
OmegaUSeries<XPoly> apply_inverse(const SeriesOp& s, const XPoly& f, int lo, int hi);

// rational building blocks: a_coeff = (x_i - t^n x_j)/(x_i - x_j),
// b_coeff = (t^n - 1) x_j / (x_i - x_j)
XRational a_coeff(std::size_t nvars, int i, int j, int n);
XRational b_coeff(std::size_t nvars, int i, int j, int n);
// divide r by the linear form ci*x_i - cj*x_j
XRational divided_by_linear(const XRational& r, int i, int j, const ParamScalar& ci,
                            const ParamScalar& cj);

// R_ij(t^n) = a_coeff + b_coeff * sigma_ij; the inverse is R_ij(t^{-n})
SkewOp r_op(std::size_t nvars, int i, int j, int n);
SkewOp r_op_inverse(std::size_t nvars, int i, int j, int n);

// single theta layer of the Cherednik operator: t^{n(i - offset)}
// R_{i,i+1}(t^n)...R_{i,N-1}(t^n) gamma_i^n R_{offset,i}(t^n)^{-1}...
// R_{i-1,i}(t^n)^{-1}, with all R factors confined to variables
// offset..N-1 (offset > 0 gives the operator acting on the tail
// variables only)
SkewOp cherednik_layer(std::size_t nvars, int i, int n, int offset = 0);
// the full theta-weighted Cherednik operator series
SeriesOp dell_cherednik(std::size_t nvars, int i, int omega_order, int offset = 0);

// covariant operators, single theta layer (t -> t^n throughout)
SkewOp z_op(std::size_t nvars, int i, int n);
SkewOp u_op(std::size_t nvars, int i, int n);
// V_1 = (t^n - 1) sum_i (prod_{l != i} a_coeff(i, l, n)) sigma_{0 i}
SkewOp v1_op(std::size_t nvars, int n);

// the generating function: full multi-index sum over shift vectors with
// total omega cost <= omega_order
SeriesOp d_n_generating(std::size_t nvars, int omega_order);

// omega-order-zero determinant form of the generating function:
// det[x_i^{N-1-j}(1 - u t^j gamma_i)] / det[x_i^{N-1-j}], expanded as a
// signed sum over permutations with row-ordered operator products
SeriesOp macdonald_determinant(std::size_t nvars);

// ratio generating function D(ut) * D(u)^{-1}, exact on u-window [lo, hi]
SeriesOp i_n_generating(std::size_t nvars, int omega_order, int lo, int hi);

}  // namespace dellns
