#pragma once

// Truncated two-variable series used throughout: finitely many layers in
// omega (kept for 0 <= k <= omega order) and Laurent in u.
//
// A series is either "entire" (finite support, coefficients outside the
// stored support are exactly zero) or "windowed" (coefficients are exact
// for u-exponents inside [lo, hi] and unknown outside).  Products never
// drop terms: multiplying entire series is exact, multiplying a windowed
// series by an entire one shrinks the validity window by the entire
// factor's support, and multiplying two windowed series is rejected.
// This keeps arithmetic associative and every stored coefficient exact.
//
// The coefficient type T needs: default construction to zero, +, *,
// unary -, is_zero(), ==.

#include <cassert>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dellns {

// n-exponents appearing in the theta expansion at omega order K:
// (n, omega cost (n^2 - n)/2, sign (-1)^n) for all n with cost <= K
struct ThetaWeight {
    int n;
    int k;
    int sign;
};

inline std::vector<ThetaWeight> ptheta_weights(int omega_order) {
    std::vector<ThetaWeight> w;
    for (int n = -(omega_order + 2); n <= omega_order + 2; ++n) {
        long long k = (static_cast<long long>(n) * n - n) / 2;
        if (k <= omega_order) w.push_back({n, static_cast<int>(k), (n % 2 == 0) ? 1 : -1});
    }
    return w;
}

template <class T>
class OmegaUSeries {
public:
    using Key = std::pair<int, int>;  // (omega exponent k, u exponent n)

    static constexpr int kNoBound = 1 << 28;

    static OmegaUSeries entire(int omega_order) {
        OmegaUSeries s;
        s.order_ = omega_order;
        s.entire_ = true;
        return s;
    }
    static OmegaUSeries windowed(int omega_order, int lo, int hi) {
        OmegaUSeries s;
        s.order_ = omega_order;
        s.entire_ = false;
        s.lo_ = lo;
        s.hi_ = hi;
        return s;
    }
    static OmegaUSeries one(int omega_order, const T& unit) {
        OmegaUSeries s = entire(omega_order);
        s.set(0, 0, unit);
        return s;
    }

    int omega_order() const { return order_; }
    bool is_entire() const { return entire_; }
    int window_lo() const { return entire_ ? -kNoBound : lo_; }
    int window_hi() const { return entire_ ? kNoBound : hi_; }
    const std::map<Key, T>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    void set(int k, int n, const T& v) {
        if (k < 0) throw std::domain_error("negative omega exponent");
        if (k > order_) return;
        if (!entire_ && (n < lo_ || n > hi_))
            throw std::domain_error("coefficient outside validity window");
        if (v.is_zero())
            c_.erase({k, n});
        else
            c_[{k, n}] = v;
    }
    void add_to(int k, int n, const T& v) {
        if (k > order_ || v.is_zero()) return;
        set(k, n, coeff(k, n) + v);
    }

    T coeff(int k, int n) const {
        if (!entire_ && (n < lo_ || n > hi_))
            throw std::domain_error("coefficient outside validity window");
        auto it = c_.find({k, n});
        return it == c_.end() ? T() : it->second;
    }

    // n-support over all stored layers; {0, 0} for the zero series
    std::pair<int, int> support() const {
        if (c_.empty()) return {0, 0};
        int a = kNoBound, b = -kNoBound;
        for (const auto& [key, v] : c_) {
            a = std::min(a, key.second);
            b = std::max(b, key.second);
        }
        return {a, b};
    }

    OmegaUSeries operator+(const OmegaUSeries& o) const {
        OmegaUSeries r = combined_frame(o);
        for (const auto& [key, v] : c_) r.add_if_valid(key, v);
        for (const auto& [key, v] : o.c_) r.add_if_valid(key, v);
        return r;
    }
    OmegaUSeries operator-() const {
        OmegaUSeries r = *this;
        for (auto& [key, v] : r.c_) v = -v;
        return r;
    }
    OmegaUSeries operator-(const OmegaUSeries& o) const { return *this + (-o); }

    OmegaUSeries operator*(const OmegaUSeries& o) const {
        int order = std::min(order_, o.order_);
        OmegaUSeries r;
        if (entire_ && o.entire_) {
            r = entire(order);
        } else if ((entire_ && c_.empty()) || (o.entire_ && o.c_.empty())) {
            return entire(order);
        } else if (entire_) {
            auto [a, b] = support();
            r = windowed(order, clamp_add(o.window_lo(), b), clamp_add(o.window_hi(), a));
        } else if (o.entire_) {
            auto [a, b] = o.support();
            r = windowed(order, clamp_add(lo_, b), clamp_add(hi_, a));
        } else {
            throw std::domain_error("product of two windowed series");
        }
        if (r.lo_ > r.hi_ && !r.entire_)
            throw std::domain_error("empty validity window in product");
        for (const auto& [k1, v1] : c_)
            for (const auto& [k2, v2] : o.c_) {
                int k = k1.first + k2.first, n = k1.second + k2.second;
                if (k > order) continue;
                if (!r.entire_ && (n < r.lo_ || n > r.hi_)) continue;
                r.add_to(k, n, v1 * v2);
            }
        return r;
    }

    OmegaUSeries scaled(const T& x) const {
        OmegaUSeries r = *this;
        r.c_.clear();
        if (x.is_zero()) return r;
        for (const auto& [key, v] : c_) {
            T p = v * x;
            if (!p.is_zero()) r.c_[key] = p;
        }
        return r;
    }

    // multiply by the monomial omega^dk u^dn
    OmegaUSeries shifted(int dk, int dn) const {
        OmegaUSeries r;
        r.order_ = order_;
        r.entire_ = entire_;
        r.lo_ = clamp_add(lo_, dn);
        r.hi_ = clamp_add(hi_, dn);
        for (const auto& [key, v] : c_) {
            int k = key.first + dk;
            if (k < 0) throw std::domain_error("negative omega exponent in shift");
            if (k > order_) continue;
            r.c_[{k, key.second + dn}] = v;
        }
        return r;
    }

    // exact restriction onto [lo, hi]; the current validity must cover it
    OmegaUSeries restricted(int lo, int hi) const {
        if (lo < window_lo() || hi > window_hi())
            throw std::domain_error("restriction exceeds validity window");
        OmegaUSeries r = windowed(order_, lo, hi);
        for (const auto& [key, v] : c_)
            if (key.second >= lo && key.second <= hi) r.c_[key] = v;
        return r;
    }

    // truncate the omega order downward
    OmegaUSeries truncated(int order) const {
        OmegaUSeries r = *this;
        r.order_ = std::min(order_, order);
        std::erase_if(r.c_, [&](const auto& kv) { return kv.first.first > r.order_; });
        return r;
    }

    // exact agreement with o for all k <= min order and n in [lo, hi];
    // both validity windows must cover [lo, hi]
    bool agrees_with(const OmegaUSeries& o, int lo, int hi) const {
        int order = std::min(order_, o.order_);
        for (int k = 0; k <= order; ++k)
            for (int n = lo; n <= hi; ++n)
                if (!(coeff(k, n) == o.coeff(k, n))) return false;
        return true;
    }

private:
    OmegaUSeries combined_frame(const OmegaUSeries& o) const {
        int order = std::min(order_, o.order_);
        if (entire_ && o.entire_) return entire(order);
        return windowed(order, std::max(window_lo(), o.window_lo()),
                        std::min(window_hi(), o.window_hi()));
    }
    void add_if_valid(const Key& key, const T& v) {
        if (key.first > order_) return;
        if (!entire_ && (key.second < lo_ || key.second > hi_)) return;
        add_to(key.first, key.second, v);
    }
    static int clamp_add(int a, int b) {
        long long s = static_cast<long long>(a) + b;
        if (s > kNoBound) return kNoBound;
        if (s < -kNoBound) return -kNoBound;
        return static_cast<int>(s);
    }

    int order_ = 0;
    bool entire_ = true;
    int lo_ = -kNoBound, hi_ = kNoBound;
    std::map<Key, T> c_;
};

// theta-type generating series sum_n omega^{(n^2-n)/2} (-u)^n A_n where
// A_n is supplied per n (for a scalar a, pass A_n = a^n to get the series
// for the argument u*a)
template <class T, class Fn>
OmegaUSeries<T> ptheta_series(int omega_order, Fn&& power) {
    OmegaUSeries<T> s = OmegaUSeries<T>::entire(omega_order);
    for (const ThetaWeight& w : ptheta_weights(omega_order)) {
        T v = power(w.n);
        if (w.sign < 0) v = -v;
        s.add_to(w.k, w.n, v);
    }
    return s;
}

// inverse of an entire series whose omega^0 layer is unit + O(u) with
// support in n >= 0; the result is exact on [lo, hi].  Layer by layer in
// omega the inverse B solves S0 * B_k = delta_{k,0} - sum_{j>=1} S_j B_{k-j},
// a triangular system with a plain u-power recursion at each layer.
template <class T>
OmegaUSeries<T> series_invert(const OmegaUSeries<T>& s, int lo, int hi, const T& unit) {
    if (!s.is_entire()) throw std::domain_error("series_invert needs an entire series");
    const int order = s.omega_order();
    using Layer = std::map<int, T>;  // u-exponent -> coefficient
    std::vector<Layer> sl(static_cast<std::size_t>(order) + 1);
    int s_lo = 0;  // lowest u-exponent across omega^(>=1) layers
    for (const auto& [key, v] : s.coeffs()) {
        if (key.first == 0 && key.second < 0)
            throw std::domain_error("omega^0 layer has negative u-exponents");
        sl[key.first][key.second] = v;
        if (key.first >= 1) s_lo = std::min(s_lo, key.second);
    }
    {
        auto it = sl[0].find(0);
        if (it == sl[0].end() || !(it->second == unit))
            throw std::domain_error("constant term is not the unit");
    }
    // layer k must be exact up to top_k: producing layer k' > k through an
    // omega^(>=1) factor reads layer k as far right as top_{k'} - s_lo
    const int step = std::max(0, -s_lo);
    auto top_at = [&](int k) { return hi + (order - k) * step; };
    // the closing convolution with B_0 additionally reads B_0 as far right
    // as top_k - (k * s_lo)
    const int top = hi + 2 * order * step;
    std::vector<Layer> b(static_cast<std::size_t>(order) + 1);
    // omega^0: geometric recursion, supported on n >= 0
    b[0][0] = unit;
    for (int n = 1; n <= top; ++n) {
        T acc;
        for (const auto& [m, am] : sl[0]) {
            if (m < 1 || m > n) continue;
            if (auto it = b[0].find(n - m); it != b[0].end()) acc += am * it->second;
        }
        if (!acc.is_zero()) b[0][n] = -acc;
    }
    for (int k = 1; k <= order; ++k) {
        // g = sum_{j=1..k} S_j * B_{k-j}, finitely supported below top
        Layer g;
        const int top_k = top_at(k);
        for (int j = 1; j <= k; ++j)
            for (const auto& [e, se] : sl[j])
                for (const auto& [m, bm] : b[k - j]) {
                    if (e + m > top_k) continue;
                    T p = se * bm;
                    if (p.is_zero()) continue;
                    auto [it, fresh] = g.try_emplace(e + m, p);
                    if (!fresh) {
                        it->second += p;
                        if (it->second.is_zero()) g.erase(it);
                    }
                }
        if (g.empty()) continue;
        // B_k = -B_0 * g, ascending in n so earlier entries are final
        const int g_lo = g.begin()->first;
        for (int n = g_lo; n <= top_k; ++n) {
            T acc;
            for (const auto& [m, gm] : g) {
                if (m > n) break;
                if (auto it = b[0].find(n - m); it != b[0].end()) acc += it->second * gm;
            }
            if (!acc.is_zero()) b[k][n] = -acc;
        }
    }
    OmegaUSeries<T> result = OmegaUSeries<T>::windowed(order, lo, hi);
    for (int k = 0; k <= order; ++k)
        for (const auto& [n, v] : b[k])
            if (n >= lo && n <= hi) result.set(k, n, v);
    return result;
}

// inverse of a windowed series known to have its full u-support inside
// the window on the left (all true coefficients below window_lo are
// zero); the recursion reads coefficients up to
// hi + 2 * order * step, so the window must extend that far right.
// Preconditions otherwise mirror series_invert.
template <class T>
OmegaUSeries<T> series_invert_truncated(const OmegaUSeries<T>& s, int lo, int hi,
                                        const T& unit) {
    if (s.is_entire()) return series_invert(s, lo, hi, unit);
    const int order = s.omega_order();
    using Layer = std::map<int, T>;
    std::vector<Layer> sl(static_cast<std::size_t>(order) + 1);
    int s_lo = 0;
    for (const auto& [key, v] : s.coeffs()) {
        if (key.first == 0 && key.second < 0)
            throw std::domain_error("omega^0 layer has negative u-exponents");
        sl[key.first][key.second] = v;
        if (key.first >= 1) s_lo = std::min(s_lo, key.second);
    }
    if (s.window_lo() > std::min(0, s_lo))
        throw std::domain_error("inversion window does not cover the lower support");
    {
        auto it = sl[0].find(0);
        if (it == sl[0].end() || !(it->second == unit))
            throw std::domain_error("constant term is not the unit");
    }
    const int step = std::max(0, -s_lo);
    auto top_at = [&](int k) { return hi + (order - k) * step; };
    const int top = hi + 2 * order * step;
    if (s.window_hi() < top)
        throw std::domain_error("inversion window too narrow on the right");
    std::vector<Layer> b(static_cast<std::size_t>(order) + 1);
    b[0][0] = unit;
    for (int n = 1; n <= top; ++n) {
        T acc;
        for (const auto& [m, am] : sl[0]) {
            if (m < 1 || m > n) continue;
            if (auto it = b[0].find(n - m); it != b[0].end()) acc += am * it->second;
        }
        if (!acc.is_zero()) b[0][n] = -acc;
    }
    for (int k = 1; k <= order; ++k) {
        Layer g;
        const int top_k = top_at(k);
        for (int j = 1; j <= k; ++j)
            for (const auto& [e, se] : sl[j])
                for (const auto& [m, bm] : b[k - j]) {
                    if (e + m > top_k) continue;
                    T p = se * bm;
                    if (p.is_zero()) continue;
                    auto [it, fresh] = g.try_emplace(e + m, p);
                    if (!fresh) {
                        it->second += p;
                        if (it->second.is_zero()) g.erase(it);
                    }
                }
        if (g.empty()) continue;
        const int g_lo = g.begin()->first;
        for (int n = g_lo; n <= top_k; ++n) {
            T acc;
            for (const auto& [m, gm] : g) {
                if (m > n) break;
                if (auto it = b[0].find(n - m); it != b[0].end()) acc += it->second * gm;
            }
            if (!acc.is_zero()) b[k][n] = -acc;
        }
    }
    OmegaUSeries<T> result = OmegaUSeries<T>::windowed(order, lo, hi);
    for (int k = 0; k <= order; ++k)
        for (const auto& [n, v] : b[k])
            if (n >= lo && n <= hi) result.set(k, n, v);
    return result;
}

// apply the inverse of an entire operator series to a single right-hand
// side: h = s^{-1} rhs computed layer by layer without composing inverse
// operators.  Requirements mirror series_invert: the omega^0 layer is
// supported on u-exponents >= 0 and the (0, 0) coefficient acts as the
// identity (checked on rhs).  act(op, v) -> v applies one operator
// layer; the result is exact on [lo, hi].
template <class Op, class V, class Act>
OmegaUSeries<V> layered_solve(const OmegaUSeries<Op>& s, const V& rhs, int lo, int hi,
                              Act&& act) {
    if (!s.is_entire()) throw std::domain_error("layered_solve needs an entire series");
    const int order = s.omega_order();
    std::vector<std::map<int, Op>> sl(static_cast<std::size_t>(order) + 1);
    int s_lo = 0;
    bool have_unit = false;
    for (const auto& [key, v] : s.coeffs()) {
        if (key.first == 0 && key.second < 0)
            throw std::domain_error("omega^0 layer has negative u-exponents");
        if (key.first == 0 && key.second == 0) {
            if (!(act(v, rhs) == rhs))
                throw std::domain_error("leading layer is not the identity");
            have_unit = true;
            continue;
        }
        sl[key.first][key.second] = v;
        if (key.first >= 1) s_lo = std::min(s_lo, key.second);
    }
    if (!have_unit) throw std::domain_error("leading layer is not the identity");
    const int step = std::max(0, -s_lo);
    auto top_at = [&](int k) { return hi + (order - k) * step; };
    std::vector<std::map<int, V>> h(static_cast<std::size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) {
        const int lo_k = k == 0 ? 0 : k * s_lo;
        for (int n = lo_k; n <= top_at(k); ++n) {
            V acc;
            bool any = false;
            for (int j = 0; j <= k; ++j)
                for (const auto& [e, op] : sl[j]) {
                    auto it = h[k - j].find(n - e);
                    if (it == h[k - j].end()) continue;
                    V p = act(op, it->second);
                    if (p.is_zero()) continue;
                    if (any)
                        acc += p;
                    else
                        acc = std::move(p);
                    any = true;
                }
            if (k == 0 && n == 0) {
                V v = any ? rhs - acc : rhs;
                if (!v.is_zero()) h[0][0] = v;
            } else if (any && !acc.is_zero()) {
                h[k][n] = -acc;
            }
        }
    }
    OmegaUSeries<V> out = OmegaUSeries<V>::windowed(order, lo, hi);
    for (int k = 0; k <= order; ++k)
        for (const auto& [n, v] : h[k])
            if (n >= lo && n <= hi) out.set(k, n, v);
    return out;
}

}  // namespace dellns
