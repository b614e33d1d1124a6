#pragma once

// Exact coefficient arithmetic for the parameter field Q(q, t, w).
//
// ParamLaurent is a sparse Laurent polynomial in q, t, w with arbitrary
// precision rational coefficients.  ParamScalar is a quotient of two
// ParamLaurents with equality decided by cross-multiplication; the only
// normalization guaranteed is stripping of common monomial content and
// a monic leading coefficient of the denominator.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dellns {

using Rat = mpq_class;

// exponents of q, t, w
using Exps = std::array<int, 3>;

class ParamLaurent {
public:
    using Terms = std::map<Exps, Rat>;

    ParamLaurent() = default;
    explicit ParamLaurent(const Rat& c) {
        if (c != 0) terms_[{0, 0, 0}] = c;
    }
    ParamLaurent(long num, long den) : ParamLaurent(make_rat(num, den)) {}

    // mpq_class(n, d) does not reduce; always go through this helper
    static Rat make_rat(long num, long den) {
        Rat r(num, den);
        r.canonicalize();
        return r;
    }

    static ParamLaurent monomial(const Rat& c, int eq, int et, int ew = 0) {
        ParamLaurent p;
        if (c != 0) p.terms_[{eq, et, ew}] = c;
        return p;
    }
    static ParamLaurent one() { return ParamLaurent(Rat(1)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == Exps{0, 0, 0} &&
               terms_.begin()->second == 1;
    }
    bool is_monomial() const { return terms_.size() == 1; }
    std::size_t size() const { return terms_.size(); }

    ParamLaurent operator-() const;
    ParamLaurent operator+(const ParamLaurent& o) const;
    ParamLaurent operator-(const ParamLaurent& o) const;
    ParamLaurent operator*(const ParamLaurent& o) const;
    ParamLaurent& operator+=(const ParamLaurent& o) { return *this = *this + o; }
    ParamLaurent& operator*=(const ParamLaurent& o) { return *this = *this * o; }
    bool operator==(const ParamLaurent& o) const { return terms_ == o.terms_; }
    bool operator!=(const ParamLaurent& o) const { return !(*this == o); }
    bool operator<(const ParamLaurent& o) const { return terms_ < o.terms_; }

    ParamLaurent scaled(const Rat& c) const;
    // multiply every term by the monomial c * q^eq t^et w^ew
    ParamLaurent shifted(const Rat& c, int eq, int et, int ew) const;

    // A^{[n]}: q -> q^n, t -> t^n (and w -> w^n): all exponents scaled by n
    ParamLaurent reparam(int n) const;
    // substitute w -> t^N
    ParamLaurent subst_w(int N) const;
    // substitute t -> q (used by the Schur degeneration check)
    ParamLaurent subst_t_to_q() const;

    bool w_free() const;
    // componentwise minimum of exponent vectors (zero poly -> {0,0,0})
    Exps min_exps() const;

    // exact division; nullopt if the remainder is nonzero.  With
    // known_exact the step budget is lifted: safe only when divisibility
    // is guaranteed (otherwise Laurent division may not terminate).
    std::optional<ParamLaurent> divide_exact(const ParamLaurent& d,
                                             bool known_exact = false) const;

    std::string str() const;

    void add_term(const Exps& e, const Rat& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

private:
    Terms terms_;
};

// convenience generators
ParamLaurent q_pow(int n);
ParamLaurent t_pow(int n);
ParamLaurent w_pow(int n);

class ParamScalar {
public:
    ParamScalar() : num_(), den_(ParamLaurent::one()) {}
    ParamScalar(const ParamLaurent& n) : num_(n), den_(ParamLaurent::one()) {}
    ParamScalar(const Rat& c) : num_(ParamLaurent(c)), den_(ParamLaurent::one()) {}
    ParamScalar(long n) : ParamScalar(Rat(n)) {}
    ParamScalar(const ParamLaurent& n, const ParamLaurent& d);

    static ParamScalar one() { return ParamScalar(Rat(1)); }

    const ParamLaurent& num() const { return num_; }
    const ParamLaurent& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }

    ParamScalar operator-() const;
    ParamScalar operator+(const ParamScalar& o) const;
    ParamScalar operator-(const ParamScalar& o) const;
    ParamScalar operator*(const ParamScalar& o) const;
    ParamScalar operator/(const ParamScalar& o) const;
    ParamScalar& operator+=(const ParamScalar& o) { return *this = *this + o; }
    ParamScalar& operator-=(const ParamScalar& o) { return *this = *this - o; }
    ParamScalar& operator*=(const ParamScalar& o) { return *this = *this * o; }

    ParamScalar inv() const;
    // fully reduced representation (numerator and denominator divided by
    // their gcd); not done eagerly because gcd cost dominates on the hot
    // arithmetic paths
    ParamScalar reduced() const;
    ParamScalar reparam(int n) const;
    ParamScalar subst_w(int N) const;
    ParamScalar subst_t_to_q() const;
    bool w_free() const { return num_.w_free() && den_.w_free(); }

    // exact equality of the rational functions (cross-multiplication)
    bool operator==(const ParamScalar& o) const;
    bool operator!=(const ParamScalar& o) const { return !(*this == o); }
    // structural order on the normalized representation; used only as a
    // container key, consistent with == only for identical representations
    bool operator<(const ParamScalar& o) const {
        if (num_ < o.num_) return true;
        if (o.num_ < num_) return false;
        return den_ < o.den_;
    }

    bool is_monomial() const { return num_.is_monomial() && den_.is_one(); }

    std::string str() const;

private:
    void normalize();
    ParamLaurent num_, den_;
};

// q^a t^b w^c as a scalar
ParamScalar qs(int n);
ParamScalar ts(int n);
ParamScalar ws(int n);

// determinant by fraction-free (Bareiss) elimination; all divisions exact
ParamLaurent laurent_det(std::vector<std::vector<ParamLaurent>> m);

// gcd up to a unit (monomials are units in the Laurent ring).  Tries the
// evaluation-homomorphism heuristic first, then a dense modular
// (evaluate/interpolate mod prime, CRT-lift, certify by division)
// algorithm, and falls back to a primitive pseudo-remainder sequence
ParamLaurent laurent_gcd(const ParamLaurent& a, const ParamLaurent& b);

// solve the square system A x = b by one Gauss-Jordan elimination over
// polynomials, with gcd content removal per row in place of the Bareiss
// division (content removal is at least as strong and keeps the entries
// near their reduced size).  Throws on singular A.
std::vector<ParamScalar> laurent_solve(
    const std::vector<std::vector<ParamLaurent>>& A,
    const std::vector<ParamLaurent>& b);

struct NonPolynomialResult : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dellns
