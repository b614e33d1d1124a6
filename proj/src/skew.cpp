#include "dellns/skew.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dellns {

Perm identity_perm(std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm transposition(std::size_t n, int i, int j) {
    Perm p = identity_perm(n);
    std::swap(p.at(i), p.at(j));
    return p;
}

SkewOp SkewOp::identity(std::size_t nvars) {
    SkewOp op(nvars);
    op.add_term(XRational(XPoly(nvars, ParamScalar::one())),
                std::vector<int>(nvars, 0), identity_perm(nvars));
    return op;
}

SkewOp SkewOp::coeff_op(const XRational& c) {
    SkewOp op(c.nvars());
    op.add_term(c, std::vector<int>(c.nvars(), 0), identity_perm(c.nvars()));
    return op;
}

SkewOp SkewOp::gamma(std::size_t nvars, int i, int n) {
    SkewOp op(nvars);
    std::vector<int> m(nvars, 0);
    m.at(i) = n;
    op.add_term(XRational(XPoly(nvars, ParamScalar::one())), m, identity_perm(nvars));
    return op;
}

SkewOp SkewOp::permutation(const Perm& perm) {
    SkewOp op(perm.size());
    op.add_term(XRational(XPoly(perm.size(), ParamScalar::one())),
                std::vector<int>(perm.size(), 0), perm);
    return op;
}

void SkewOp::add_term(const XRational& c, const std::vector<int>& shift,
                      const Perm& perm) {
    if (shift.size() != nvars_ || perm.size() != nvars_)
        throw std::invalid_argument("skew term arity mismatch");
    if (c.is_zero()) return;
    Key key{shift, perm};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SkewOp SkewOp::operator-() const {
    SkewOp r(nvars_);
    for (const auto& [key, c] : terms_) r.terms_[key] = -c;
    return r;
}

SkewOp SkewOp::operator+(const SkewOp& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (nvars_ != o.nvars_) throw std::invalid_argument("skew arity mismatch");
    SkewOp r = *this;
    for (const auto& [key, c] : o.terms_) r.add_term(c, key.first, key.second);
    return r;
}

SkewOp SkewOp::operator*(const SkewOp& o) const {
    if (is_zero() || o.is_zero()) return SkewOp();
    if (nvars_ != o.nvars_) throw std::invalid_argument("skew arity mismatch");
    SkewOp r(nvars_);
    for (const auto& [k1, c1] : terms_) {
        const auto& [m1, p1] = k1;
        for (const auto& [k2, c2] : o.terms_) {
            const auto& [m2, p2] = k2;
            // move the left term's permutation and shift rightward past
            // the right term's coefficient: sigma c = sigma(c) sigma and
            // gamma^m c = gamma^m(c) gamma^m
            XRational c = c1 * c2.permuted(p1).gamma_shifted(m1);
            std::vector<int> m = m1;
            for (std::size_t j = 0; j < nvars_; ++j) m[p1[j]] += m2[j];
            Perm p(nvars_);
            for (std::size_t j = 0; j < nvars_; ++j) p[j] = p1[p2[j]];
            r.add_term(c, m, p);
        }
    }
    return r;
}

bool SkewOp::operator==(const SkewOp& o) const {
    if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [key, c] : terms_) {
        if (it->first != key || !(it->second == c)) return false;
        ++it;
    }
    return true;
}

SkewOp SkewOp::scaled(const ParamScalar& c) const {
    SkewOp r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [key, v] : terms_) {
        XRational p = v.scaled(c);
        if (!p.is_zero()) r.terms_[key] = p;
    }
    return r;
}

SkewOp SkewOp::left_scaled(const XRational& c) const {
    SkewOp r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [key, v] : terms_) {
        XRational p = c * v;
        if (!p.is_zero()) r.terms_[key] = p;
    }
    return r;
}

XRational SkewOp::apply_rational(const XPoly& f) const {
    XRational acc;
    for (const auto& [key, c] : terms_)
        acc += c * XRational(f.permuted(key.second).gamma_shifted(key.first));
    return acc;
}

XPoly SkewOp::apply(const XPoly& f) const { return apply_rational(f).to_poly(); }

std::string SkewOp::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (std::size_t i = 0; i < nvars_; ++i)
            if (key.first[i]) os << "*g" << (i + 1) << "^" << key.first[i];
        if (key.second != identity_perm(nvars_)) {
            os << "*s[";
            for (std::size_t i = 0; i < nvars_; ++i)
                os << (i ? "," : "") << key.second[i] + 1;
            os << "]";
        }
    }
    return os.str();
}

OmegaUSeries<XPoly> apply_series(const SeriesOp& s, const XPoly& f) {
    OmegaUSeries<XPoly> r =
        s.is_entire() ? OmegaUSeries<XPoly>::entire(s.omega_order())
                      : OmegaUSeries<XPoly>::windowed(s.omega_order(), s.window_lo(),
                                                      s.window_hi());
    for (const auto& [key, op] : s.coeffs())
        r.set(key.first, key.second, op.apply(f));
    return r;
}

OmegaUSeries<XPoly> apply_series(const SeriesOp& s, const OmegaUSeries<XPoly>& f) {
    const int order = std::min(s.omega_order(), f.omega_order());
    OmegaUSeries<XPoly> r;
    if (s.is_entire() && f.is_entire()) {
        r = OmegaUSeries<XPoly>::entire(order);
    } else if ((s.is_entire() && s.coeffs().empty()) ||
               (f.is_entire() && f.coeffs().empty())) {
        return OmegaUSeries<XPoly>::entire(order);
    } else if (s.is_entire()) {
        auto [a, b] = s.support();
        r = OmegaUSeries<XPoly>::windowed(order, f.window_lo() + b, f.window_hi() + a);
    } else if (f.is_entire()) {
        auto [a, b] = f.support();
        r = OmegaUSeries<XPoly>::windowed(order, s.window_lo() + b, s.window_hi() + a);
    } else {
        throw std::domain_error("convolution of two windowed series");
    }
    if (!r.is_entire() && r.window_lo() > r.window_hi())
        throw std::domain_error("empty validity window in convolution");
    std::map<std::pair<int, int>, XPoly> acc;
    for (const auto& [k1, op] : s.coeffs())
        for (const auto& [k2, v] : f.coeffs()) {
            int k = k1.first + k2.first, n = k1.second + k2.second;
            if (k > order) continue;
            if (!r.is_entire() && (n < r.window_lo() || n > r.window_hi())) continue;
            XPoly p = op.apply(v);
            if (p.is_zero()) continue;
            auto [it, fresh] = acc.try_emplace({k, n}, std::move(p));
            if (!fresh) it->second += p;
        }
    for (const auto& [key, v] : acc) r.set(key.first, key.second, v);
    return r;
}

OmegaUSeries<XPoly> apply_inverse(const SeriesOp& s, const XPoly& f, int lo, int hi) {
    return layered_solve(s, f, lo, hi,
                         [](const SkewOp& op, const XPoly& v) { return op.apply(v); });
}

XRational divided_by_linear(const XRational& r, int i, int j, const ParamScalar& ci,
                            const ParamScalar& cj) {
    XPoly num = r.num();
    std::multiset<XFactor> den = r.den();
    if (cj.is_zero()) {
        den.insert({i, -1, ParamScalar::one()});
        num = num.scaled(ci.inv());
    } else if (i < j) {
        den.insert({i, j, cj / ci});
        num = num.scaled(ci.inv());
    } else {
        // ci*x_i - cj*x_j = (-cj) * (x_j - (ci/cj)*x_i)
        den.insert({j, i, ci / cj});
        num = num.scaled(-cj.inv());
    }
    XRational out(num, den);
    out.cancel();
    return out;
}

XRational a_coeff(std::size_t nvars, int i, int j, int n) {
    XPoly num = XPoly::var(nvars, i) - XPoly::var(nvars, j).scaled(ts(n));
    return divided_by_linear(XRational(num), i, j, ParamScalar::one(),
                             ParamScalar::one());
}

XRational b_coeff(std::size_t nvars, int i, int j, int n) {
    XPoly num = XPoly::var(nvars, j).scaled(ts(n) - ParamScalar::one());
    return divided_by_linear(XRational(num), i, j, ParamScalar::one(),
                             ParamScalar::one());
}

SkewOp r_op(std::size_t nvars, int i, int j, int n) {
    if (i == j) throw std::invalid_argument("r_op needs distinct indices");
    SkewOp op(nvars);
    op.add_term(a_coeff(nvars, i, j, n), std::vector<int>(nvars, 0),
                identity_perm(nvars));
    op.add_term(b_coeff(nvars, i, j, n), std::vector<int>(nvars, 0),
                transposition(nvars, i, j));
    return op;
}

SkewOp r_op_inverse(std::size_t nvars, int i, int j, int n) {
    // the two-term inverse is the operator with the reciprocal argument
    return r_op(nvars, i, j, -n);
}

SkewOp cherednik_layer(std::size_t nvars, int i, int n, int offset) {
    if (i < offset || i >= static_cast<int>(nvars))
        throw std::out_of_range("cherednik index out of range");
    SkewOp op = SkewOp::identity(nvars).scaled(ts(n * (i - offset)));
    for (int j = i + 1; j < static_cast<int>(nvars); ++j)
        op *= r_op(nvars, i, j, n);
    op *= SkewOp::gamma(nvars, i, n);
    for (int l = offset; l < i; ++l) op *= r_op_inverse(nvars, l, i, n);
    return op;
}

SeriesOp dell_cherednik(std::size_t nvars, int i, int omega_order, int offset) {
    return ptheta_series<SkewOp>(
        omega_order, [&](int n) { return cherednik_layer(nvars, i, n, offset); });
}

SkewOp z_op(std::size_t nvars, int i, int n) {
    SkewOp op(nvars);
    XRational diag(XPoly(nvars, ParamScalar::one()));
    for (int k = 0; k < static_cast<int>(nvars); ++k)
        if (k != i) diag *= a_coeff(nvars, i, k, n);
    std::vector<int> mi(nvars, 0);
    mi.at(i) = n;
    op.add_term(diag, mi, identity_perm(nvars));
    for (int j = 0; j < static_cast<int>(nvars); ++j) {
        if (j == i) continue;
        // (t^n - 1) x_j / (x_i - x_j); the x_j numerator (not x_i) is the
        // form consistent with the chain operators on tail-symmetric
        // polynomials and with the matrix form of these operators
        XRational c = b_coeff(nvars, i, j, n);
        for (int k = 0; k < static_cast<int>(nvars); ++k)
            if (k != i && k != j) c *= a_coeff(nvars, j, k, n);
        std::vector<int> mj(nvars, 0);
        mj.at(j) = n;
        op.add_term(c, mj, transposition(nvars, i, j));
    }
    return op;
}

SkewOp u_op(std::size_t nvars, int i, int n) {
    XRational c(XPoly(nvars, ts(n) - ParamScalar::one()));
    if (c.is_zero()) return SkewOp(nvars);
    for (int k = 0; k < static_cast<int>(nvars); ++k)
        if (k != i) c *= a_coeff(nvars, i, k, n);
    SkewOp op(nvars);
    std::vector<int> m(nvars, 0);
    m.at(i) = n;
    op.add_term(c, m, identity_perm(nvars));
    return op;
}

SkewOp v1_op(std::size_t nvars, int n) {
    SkewOp op(nvars);
    ParamScalar tn1 = ts(n) - ParamScalar::one();
    if (tn1.is_zero()) return op;
    for (int i = 0; i < static_cast<int>(nvars); ++i) {
        XRational c(XPoly(nvars, tn1));
        for (int l = 0; l < static_cast<int>(nvars); ++l)
            if (l != i) c *= a_coeff(nvars, i, l, n);
        op.add_term(c, std::vector<int>(nvars, 0),
                    i == 0 ? identity_perm(nvars) : transposition(nvars, 0, i));
    }
    return op;
}

SeriesOp d_n_generating(std::size_t nvars, int omega_order) {
    SeriesOp s = SeriesOp::entire(omega_order);
    const std::vector<ThetaWeight> ws = ptheta_weights(omega_order);
    std::vector<int> nv(nvars, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int budget) {
        if (pos == nvars) {
            int total = std::accumulate(nv.begin(), nv.end(), 0);
            int cost = omega_order - budget;
            XRational c(XPoly(nvars, ParamScalar::one()));
            for (std::size_t i = 0; i + 1 < nvars; ++i)
                for (std::size_t j = i + 1; j < nvars; ++j) {
                    XPoly num = XPoly::var(nvars, i).scaled(ts(nv[j])) -
                                XPoly::var(nvars, j).scaled(ts(nv[i]));
                    c *= divided_by_linear(XRational(num), static_cast<int>(i),
                                           static_cast<int>(j), ParamScalar::one(),
                                           ParamScalar::one());
                }
            SkewOp op(nvars);
            op.add_term(total % 2 ? -c : c, nv, identity_perm(nvars));
            s.add_to(cost, total, op);
            return;
        }
        for (const ThetaWeight& w : ws) {
            if (w.k > budget) continue;
            nv[pos] = w.n;
            rec(pos + 1, budget - w.k);
        }
        nv[pos] = 0;
    };
    rec(0, omega_order);
    return s;
}

SeriesOp macdonald_determinant(std::size_t nvars) {
    const int N = static_cast<int>(nvars);
    auto entry = [&](int i, int j) {
        // x_i^{N-1-j} (1 - u t^j gamma_i)
        XPoly mono = XPoly::var(nvars, i, N - 1 - j);
        if (N - 1 - j == 0) mono = XPoly(nvars, ParamScalar::one());
        SeriesOp e = SeriesOp::entire(0);
        e.set(0, 0, SkewOp::coeff_op(XRational(mono)));
        SkewOp shift(nvars);
        std::vector<int> m(nvars, 0);
        m.at(i) = 1;
        shift.add_term(XRational(mono.scaled(ts(j))), m, identity_perm(nvars));
        e.set(0, 1, -shift);
        return e;
    };
    SeriesOp det = SeriesOp::entire(0);
    Perm sigma = identity_perm(nvars);
    std::sort(sigma.begin(), sigma.end());
    do {
        int inversions = 0;
        for (int a = 0; a < N; ++a)
            for (int b = a + 1; b < N; ++b)
                if (sigma[a] > sigma[b]) ++inversions;
        SeriesOp prod = SeriesOp::one(0, SkewOp::identity(nvars));
        for (int i = 0; i < N; ++i) prod = prod * entry(i, sigma[i]);
        det = inversions % 2 ? det - prod : det + prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    // divide by the alternant det[x_i^{N-1-j}] = prod_{i<j} (x_i - x_j)
    std::multiset<XFactor> vand;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) vand.insert({i, j, ParamScalar::one()});
    XRational inv_v(XPoly(nvars, ParamScalar::one()), vand);
    SeriesOp r = SeriesOp::entire(0);
    for (const auto& [key, op] : det.coeffs())
        r.set(key.first, key.second, op.left_scaled(inv_v));
    return r;
}

SeriesOp i_n_generating(std::size_t nvars, int omega_order, int lo, int hi) {
    SeriesOp d = d_n_generating(nvars, omega_order);
    SeriesOp dt = u_scaled_by_t(d, 1);
    auto [a, b] = d.support();
    SeriesOp inv = series_invert(d, lo - b, hi - a, SkewOp::identity(nvars));
    return (dt * inv).restricted(lo, hi);
}

}  // namespace dellns
