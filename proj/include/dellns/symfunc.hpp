#pragma once

// The graded ring of symmetric functions in the power-sum basis, the
// perp-calculus, the Q / Q* coefficient families, projections onto N
// variables, and Macdonald polynomials.

#include <map>
#include <string>
#include <vector>

#include "dellns/param.hpp"
#include "dellns/report.hpp"
#include "dellns/xpoly.hpp"

namespace dellns {

// weakly decreasing positive parts
using Partition = std::vector<int>;

int partition_weight(const Partition& p);
// z_lambda = prod_k k^{m_k} m_k!
Rat z_factor(const Partition& p);
std::vector<Partition> partitions_of(int n);
// true if a is dominated by b (same weight assumed)
bool dominance_leq(const Partition& a, const Partition& b);
std::string partition_str(const Partition& p);

class SymFunc {
public:
    using Terms = std::map<Partition, ParamScalar>;

    SymFunc() = default;
    explicit SymFunc(const ParamScalar& c) {
        if (!c.is_zero()) terms_[{}] = c;
    }

    static SymFunc one() { return SymFunc(ParamScalar::one()); }
    // p_lambda
    static SymFunc p(const Partition& lam) {
        SymFunc f;
        f.terms_[lam] = ParamScalar::one();
        return f;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Partition& lam, const ParamScalar& c);

    SymFunc operator-() const;
    SymFunc operator+(const SymFunc& o) const;
    SymFunc operator-(const SymFunc& o) const;
    SymFunc operator*(const SymFunc& o) const;
    SymFunc& operator+=(const SymFunc& o) { return *this = *this + o; }
    SymFunc& operator-=(const SymFunc& o) { return *this = *this - o; }
    SymFunc& operator*=(const SymFunc& o) { return *this = *this * o; }
    bool operator==(const SymFunc& o) const;
    bool operator!=(const SymFunc& o) const { return !(*this == o); }

    SymFunc scaled(const ParamScalar& c) const;
    template <class Fn>
    SymFunc mapped(Fn&& fn) const {
        SymFunc r;
        for (const auto& [lam, c] : terms_) r.add_term(lam, fn(c));
        return r;
    }

    // multiply by p_n
    SymFunc p_mul(int n) const;
    // p_n^perp = n * d/dp_n
    SymFunc p_perp(int n) const;

    int max_weight() const;  // -1 for zero
    // part of pure weight d
    SymFunc weight_part(int d) const;
    bool w_free() const;

    std::string str() const;

private:
    Terms terms_;
};

// apply g with every p_n replaced by p_n^perp to f
SymFunc perp_apply(const SymFunc& g, const SymFunc& f);

// Hall pairing <p_lam, p_mu> = z_lam delta
ParamScalar hall_inner(const SymFunc& f, const SymFunc& g);
// Macdonald pairing <p_lam, p_mu> = z_lam delta prod (1-q^{lam_i})/(1-t^{lam_i})
ParamScalar qt_inner(const SymFunc& f, const SymFunc& g);

// weight-n coefficient of exp(sum_k (1-t^{mk})/k p_k v^k); cached
const SymFunc& q_coeff(int n, int m);
// the same family with t -> q, used through p^perp
const SymFunc& qstar_sf(int n, int m);
SymFunc qstar_apply(int n, int m, const SymFunc& f);

// [Q_m^{*[s]}, Q_n^{[r]}] = (1-q^s)(1-t^r) sum_{i>=1, j>=0, i+j<=min(m,n)}
//   (q^s t^r)^j Q_{n-i-j}^{[r]} Q_{m-i-j}^{*[s]}, on all p_lam up to degree
Report qstar_q_commutator_check(int m, int n, int s, int r, int degree);

// substitution p_n -> x_1^n + ... + x_N^n
XPoly pi_n(const SymFunc& f, std::size_t N);
// additionally w -> t^N (the coefficients may carry w)
XPoly tau_n(const SymFunc& f, std::size_t N);

// monomial symmetric function in the p-basis
SymFunc monomial_in_p(const Partition& lam);
// complete homogeneous h_n = sum_{lam |- n} p_lam / z_lam
SymFunc h_in_p(int n);
// Macdonald polynomial P_lambda, dominant monomial coefficient 1; cached
const SymFunc& macdonald_poly(const Partition& lam);

}  // namespace dellns
