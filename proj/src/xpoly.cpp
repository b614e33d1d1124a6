#include "dellns/xpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dellns {

XPoly XPoly::var(std::size_t nvars, std::size_t i, int e) {
    XExp ex(nvars, 0);
    ex.at(i) = e;
    return monomial(nvars, ex, ParamScalar::one());
}

XPoly XPoly::monomial(std::size_t nvars, const XExp& e, const ParamScalar& c) {
    XPoly p(nvars);
    p.add_term(e, c);
    return p;
}

void XPoly::add_term(const XExp& e, const ParamScalar& c) {
    if (e.size() != nvars_) throw std::invalid_argument("exponent arity mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

XPoly XPoly::operator-() const {
    XPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

XPoly XPoly::operator+(const XPoly& o) const {
    // the zero polynomial is arity-agnostic
    XPoly r = terms_.empty() ? XPoly(o.nvars_) : *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

XPoly XPoly::operator-(const XPoly& o) const {
    XPoly r = terms_.empty() ? XPoly(o.nvars_) : *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

XPoly XPoly::operator*(const XPoly& o) const {
    XPoly r(nvars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            XExp e = e1;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

bool XPoly::operator==(const XPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [e, c] : terms_) {
        if (it->first != e || !(it->second == c)) return false;
        ++it;
    }
    return true;
}

XPoly XPoly::scaled(const ParamScalar& c) const {
    XPoly r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [e, cc] : terms_) {
        ParamScalar p = cc * c;
        if (!p.is_zero()) r.terms_[e] = p;
    }
    return r;
}

XPoly XPoly::permuted(const std::vector<int>& perm) const {
    XPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        XExp ne(nvars_, 0);
        for (std::size_t i = 0; i < nvars_; ++i) ne[perm[i]] += e[i];
        r.add_term(ne, c);
    }
    return r;
}

XPoly XPoly::gamma_shifted(const std::vector<int>& m) const {
    XPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        long acc = 0;
        for (std::size_t i = 0; i < nvars_; ++i)
            acc -= static_cast<long>(m[i]) * e[i];
        r.add_term(e, c * qs(static_cast<int>(acc)));
    }
    return r;
}

bool XPoly::is_symmetric() const {
    std::vector<int> perm(nvars_);
    for (std::size_t k = 0; k + 1 < nvars_; ++k) {
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[k], perm[k + 1]);
        if (!(permuted(perm) == *this)) return false;
    }
    return true;
}

int XPoly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

std::optional<XPoly> XPoly::divide_exact(const XPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero XPoly");
    XPoly rem = *this;
    XPoly quot(nvars_);
    const auto& dl = *d.terms_.rbegin();
    while (!rem.is_zero()) {
        const auto& rl = *rem.terms_.rbegin();
        XExp e(nvars_, 0);
        for (std::size_t i = 0; i < nvars_; ++i) {
            e[i] = rl.first[i] - dl.first[i];
            if (e[i] < 0) return std::nullopt;
        }
        ParamScalar c = rl.second / dl.second;
        quot.add_term(e, c);
        XPoly sub = d * XPoly::monomial(nvars_, e, c);
        rem = rem - sub;
    }
    return quot;
}

std::string XPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (!e[i]) continue;
            os << "*x" << (i + 1);
            if (e[i] != 1) os << "^" << e[i];
        }
    }
    return os.str();
}

XPoly power_sum(std::size_t nvars, int n) {
    XPoly p(nvars);
    if (n == 0) return XPoly(nvars, ParamScalar(static_cast<long>(nvars)));
    for (std::size_t i = 0; i < nvars; ++i) p += XPoly::var(nvars, i, n);
    return p;
}

XPoly monomial_symmetric(std::size_t nvars, const std::vector<int>& partition) {
    XPoly p(nvars);
    if (partition.size() > nvars) return p;
    XExp e(nvars, 0);
    std::copy(partition.begin(), partition.end(), e.begin());
    std::sort(e.begin(), e.end());
    do {
        p.add_term(e, ParamScalar::one());
    } while (std::next_permutation(e.begin(), e.end()));
    return p;
}

XPoly XFactor::poly(std::size_t nvars) const {
    XPoly p = XPoly::var(nvars, i);
    if (j >= 0) p = p - XPoly::var(nvars, j).scaled(c);
    return p;
}

XRational XRational::operator-() const {
    XRational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

namespace {

XPoly factor_product(std::size_t nvars, const std::multiset<XFactor>& fs) {
    XPoly p(nvars, ParamScalar::one());
    for (const XFactor& f : fs) p *= f.poly(nvars);
    return p;
}

// factors of a not covered by b (multiset difference)
std::multiset<XFactor> factor_diff(const std::multiset<XFactor>& a,
                                   const std::multiset<XFactor>& b) {
    std::multiset<XFactor> d;
    auto ib = b.begin();
    for (const XFactor& f : a) {
        while (ib != b.end() && *ib < f) ++ib;
        if (ib != b.end() && *ib == f)
            ++ib;
        else
            d.insert(f);
    }
    return d;
}

}  // namespace

XRational XRational::operator+(const XRational& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    std::multiset<XFactor> only_o = factor_diff(o.den_, den_);
    std::multiset<XFactor> only_t = factor_diff(den_, o.den_);
    XRational r;
    r.num_ = num_ * factor_product(num_.nvars(), only_o) +
             o.num_ * factor_product(num_.nvars(), only_t);
    r.den_ = den_;
    for (const XFactor& f : only_o) r.den_.insert(f);
    if (r.num_.is_zero())
        r.den_.clear();
    else
        r.cancel();
    return r;
}

XRational XRational::operator*(const XRational& o) const {
    XRational r;
    r.num_ = num_ * o.num_;
    if (r.num_.is_zero()) return r;
    r.den_ = den_;
    for (const XFactor& f : o.den_) r.den_.insert(f);
    r.cancel();
    return r;
}

bool XRational::operator==(const XRational& o) const {
    std::multiset<XFactor> only_o = factor_diff(o.den_, den_);
    std::multiset<XFactor> only_t = factor_diff(den_, o.den_);
    return num_ * factor_product(num_.nvars(), only_o) ==
           o.num_ * factor_product(o.num_.nvars(), only_t);
}

bool XRational::operator<(const XRational& o) const {
    if (num_ < o.num_) return true;
    if (o.num_ < num_) return false;
    return den_ < o.den_;
}

XRational XRational::scaled(const ParamScalar& c) const {
    XRational r;
    r.num_ = num_.scaled(c);
    if (!r.num_.is_zero()) r.den_ = den_;
    return r;
}

void XRational::push_factor(int i, int j, const ParamScalar& ci, const ParamScalar& cj) {
    // the factor is ci*x_i - cj*x_j; normalize to x_a - c*x_b with a < b
    if (cj.is_zero()) {
        den_.insert({i, -1, ParamScalar::one()});
        num_ = num_.scaled(ci.inv());
        return;
    }
    if (i < j) {
        den_.insert({i, j, cj / ci});
        num_ = num_.scaled(ci.inv());
    } else {
        // ci*x_i - cj*x_j = (-cj)*(x_j - (ci/cj)*x_i)
        den_.insert({j, i, ci / cj});
        num_ = num_.scaled(-cj.inv());
    }
}

XRational XRational::permuted(const std::vector<int>& perm) const {
    XRational r;
    r.num_ = num_.permuted(perm);
    if (r.num_.is_zero()) return r;
    for (const XFactor& f : den_) {
        if (f.j < 0)
            r.den_.insert({perm[f.i], -1, ParamScalar::one()});
        else
            r.push_factor(perm[f.i], perm[f.j], ParamScalar::one(), f.c);
    }
    return r;
}

XRational XRational::gamma_shifted(const std::vector<int>& m) const {
    XRational r;
    r.num_ = num_.gamma_shifted(m);
    if (r.num_.is_zero()) return r;
    for (const XFactor& f : den_) {
        if (f.j < 0) {
            r.den_.insert(f);
            r.num_ = r.num_.scaled(qs(m[f.i]));
        } else {
            r.push_factor(f.i, f.j, qs(-m[f.i]), f.c * qs(-m[f.j]));
        }
    }
    return r;
}

void XRational::cancel() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    bool progress = true;
    while (progress && !den_.empty()) {
        progress = false;
        for (auto it = den_.begin(); it != den_.end(); ++it) {
            auto q = num_.divide_exact(it->poly(num_.nvars()));
            if (q) {
                num_ = *q;
                den_.erase(it);
                progress = true;
                break;
            }
        }
    }
}

XPoly XRational::to_poly() const {
    XRational r = *this;
    r.cancel();
    if (!r.den_.empty())
        throw NonPolynomialResult("rational value is not polynomial: " + str());
    return r.num_;
}

std::string XRational::str() const {
    if (den_.empty()) return num_.str();
    std::ostringstream os;
    os << "(" << num_.str() << ") / [";
    bool first = true;
    for (const XFactor& f : den_) {
        if (!first) os << " * ";
        first = false;
        if (f.j < 0)
            os << "x" << (f.i + 1);
        else
            os << "(x" << (f.i + 1) << " - (" << f.c.str() << ")*x" << (f.j + 1) << ")";
    }
    os << "]";
    return os.str();
}

}  // namespace dellns
