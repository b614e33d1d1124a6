#include "dellns/symfunc.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dellns {

int partition_weight(const Partition& p) {
    return std::accumulate(p.begin(), p.end(), 0);
}

Rat z_factor(const Partition& p) {
    std::map<int, int> mult;
    for (int a : p) ++mult[a];
    Rat z = 1;
    for (const auto& [k, m] : mult)
        for (int i = 1; i <= m; ++i) z *= Rat(k) * Rat(i);
    return z;
}

static void gen_partitions(int n, int max_part, Partition& cur,
                           std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(n, max_part); k >= 1; --k) {
        cur.push_back(k);
        gen_partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    Partition cur;
    if (n < 0) return out;
    gen_partitions(n, n == 0 ? 1 : n, cur, out);
    return out;
}

bool dominance_leq(const Partition& a, const Partition& b) {
    int sa = 0, sb = 0;
    std::size_t len = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < len; ++i) {
        sa += i < a.size() ? a[i] : 0;
        sb += i < b.size() ? b[i] : 0;
        if (sa > sb) return false;
    }
    return true;
}

std::string partition_str(const Partition& p) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) os << ",";
        os << p[i];
    }
    os << "]";
    return os.str();
}

void SymFunc::add_term(const Partition& lam, const ParamScalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(lam);
    if (it == terms_.end()) {
        terms_.emplace(lam, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SymFunc SymFunc::operator-() const {
    SymFunc r;
    for (const auto& [lam, c] : terms_) r.terms_[lam] = -c;
    return r;
}

SymFunc SymFunc::operator+(const SymFunc& o) const {
    SymFunc r = *this;
    for (const auto& [lam, c] : o.terms_) r.add_term(lam, c);
    return r;
}

SymFunc SymFunc::operator-(const SymFunc& o) const {
    SymFunc r = *this;
    for (const auto& [lam, c] : o.terms_) r.add_term(lam, -c);
    return r;
}

SymFunc SymFunc::operator*(const SymFunc& o) const {
    SymFunc r;
    for (const auto& [l1, c1] : terms_)
        for (const auto& [l2, c2] : o.terms_) {
            Partition lam = l1;
            lam.insert(lam.end(), l2.begin(), l2.end());
            std::sort(lam.begin(), lam.end(), std::greater<int>());
            r.add_term(lam, c1 * c2);
        }
    return r;
}

bool SymFunc::operator==(const SymFunc& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [lam, c] : terms_) {
        if (it->first != lam || !(it->second == c)) return false;
        ++it;
    }
    return true;
}

SymFunc SymFunc::scaled(const ParamScalar& c) const {
    SymFunc r;
    if (c.is_zero()) return r;
    for (const auto& [lam, cc] : terms_) {
        ParamScalar p = cc * c;
        if (!p.is_zero()) r.terms_[lam] = p;
    }
    return r;
}

SymFunc SymFunc::p_mul(int n) const {
    SymFunc r;
    for (const auto& [lam, c] : terms_) {
        Partition mu = lam;
        mu.insert(std::lower_bound(mu.begin(), mu.end(), n, std::greater<int>()), n);
        r.add_term(mu, c);
    }
    return r;
}

SymFunc SymFunc::p_perp(int n) const {
    SymFunc r;
    for (const auto& [lam, c] : terms_) {
        auto mult = std::count(lam.begin(), lam.end(), n);
        if (!mult) continue;
        Partition mu = lam;
        mu.erase(std::find(mu.begin(), mu.end(), n));
        r.add_term(mu, c * ParamScalar(Rat(static_cast<long>(n) * mult)));
    }
    return r;
}

int SymFunc::max_weight() const {
    int w = -1;
    for (const auto& [lam, c] : terms_) w = std::max(w, partition_weight(lam));
    return w;
}

SymFunc SymFunc::weight_part(int d) const {
    SymFunc r;
    for (const auto& [lam, c] : terms_)
        if (partition_weight(lam) == d) r.terms_[lam] = c;
    return r;
}

bool SymFunc::w_free() const {
    for (const auto& [lam, c] : terms_)
        if (!c.w_free()) return false;
    return true;
}

std::string SymFunc::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [lam, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*p" << partition_str(lam);
    }
    return os.str();
}

SymFunc perp_apply(const SymFunc& g, const SymFunc& f) {
    SymFunc r;
    for (const auto& [lam, c] : g.terms()) {
        SymFunc cur = f;
        for (int part : lam) {
            cur = cur.p_perp(part);
            if (cur.is_zero()) break;
        }
        r += cur.scaled(c);
    }
    return r;
}

ParamScalar hall_inner(const SymFunc& f, const SymFunc& g) {
    ParamScalar acc;
    for (const auto& [lam, c] : f.terms()) {
        auto it = g.terms().find(lam);
        if (it == g.terms().end()) continue;
        acc += c * it->second * ParamScalar(ParamLaurent(z_factor(lam)));
    }
    return acc;
}

ParamScalar qt_inner(const SymFunc& f, const SymFunc& g) {
    ParamScalar acc;
    for (const auto& [lam, c] : f.terms()) {
        auto it = g.terms().find(lam);
        if (it == g.terms().end()) continue;
        ParamScalar k(ParamLaurent(z_factor(lam)));
        for (int part : lam)
            k *= ParamScalar(ParamLaurent::one() - q_pow(part),
                             ParamLaurent::one() - t_pow(part));
        acc += c * it->second * k;
    }
    return acc;
}

namespace {

// weight-n coefficient of exp(sum_k c_k p_k v^k)
SymFunc exp_coeff(int n, const std::function<ParamScalar(int)>& ck) {
    SymFunc r;
    for (const Partition& lam : partitions_of(n)) {
        std::map<int, int> mult;
        for (int a : lam) ++mult[a];
        ParamScalar coeff = ParamScalar::one();
        for (const auto& [k, m] : mult) {
            ParamScalar c = ck(k);
            Rat fact = 1;
            for (int i = 1; i <= m; ++i) fact *= i;
            ParamScalar pw = ParamScalar::one();
            for (int i = 0; i < m; ++i) pw *= c;
            coeff *= pw * ParamScalar(Rat(1) / fact);
        }
        r.add_term(lam, coeff);
    }
    return r;
}

std::mutex g_cache_mutex;
std::map<std::pair<int, int>, SymFunc> g_q_cache;
std::map<std::pair<int, int>, SymFunc> g_qstar_cache;
std::map<Partition, SymFunc> g_monomial_cache;
std::map<Partition, SymFunc> g_macdonald_cache;

}  // namespace

const SymFunc& q_coeff(int n, int m) {
    if (n < 0) throw std::domain_error("negative weight");
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_q_cache.find({n, m});
    if (it == g_q_cache.end()) {
        SymFunc f = exp_coeff(n, [m](int k) {
            return ParamScalar(ParamLaurent::one() - t_pow(m * k),
                               ParamLaurent(Rat(k)));
        });
        it = g_q_cache.emplace(std::make_pair(n, m), std::move(f)).first;
    }
    return it->second;
}

const SymFunc& qstar_sf(int n, int m) {
    if (n < 0) throw std::domain_error("negative weight");
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_qstar_cache.find({n, m});
    if (it == g_qstar_cache.end()) {
        SymFunc f = exp_coeff(n, [m](int k) {
            return ParamScalar(ParamLaurent::one() - q_pow(m * k),
                               ParamLaurent(Rat(k)));
        });
        it = g_qstar_cache.emplace(std::make_pair(n, m), std::move(f)).first;
    }
    return it->second;
}

SymFunc qstar_apply(int n, int m, const SymFunc& f) {
    return perp_apply(qstar_sf(n, m), f);
}

Report qstar_q_commutator_check(int m, int n, int s, int r, int degree) {
    Report rep;
    rep.suite = "appendixD";
    rep.params = {{"m", std::to_string(m)},
                  {"n", std::to_string(n)},
                  {"s", std::to_string(s)},
                  {"r", std::to_string(r)},
                  {"degree", std::to_string(degree)}};
    ParamScalar front = (ParamScalar::one() - qs(s)) * (ParamScalar::one() - ts(r));
    for (int d = 0; d <= degree; ++d) {
        for (const Partition& lam : partitions_of(d)) {
            SymFunc f = SymFunc::p(lam);
            SymFunc lhs =
                qstar_apply(m, s, q_coeff(n, r) * f) - q_coeff(n, r) * qstar_apply(m, s, f);
            SymFunc rhs;
            int lim = std::min(m, n);
            for (int i = 1; i <= lim; ++i)
                for (int j = 0; i + j <= lim; ++j) {
                    ParamScalar c = front * qs(s * j) * ts(r * j);
                    rhs += (q_coeff(n - i - j, r) * qstar_apply(m - i - j, s, f)).scaled(c);
                }
            bool ok = lhs == rhs;
            rep.add(partition_str(lam), ok, {0, 0}, ok ? "" : lhs.str(),
                    ok ? "" : rhs.str());
        }
    }
    return rep;
}

XPoly pi_n(const SymFunc& f, std::size_t N) {
    XPoly out(N);
    for (const auto& [lam, c] : f.terms()) {
        XPoly m(N, c);
        for (int part : lam) m *= power_sum(N, part);
        out += m;
    }
    return out;
}

XPoly tau_n(const SymFunc& f, std::size_t N) {
    int nn = static_cast<int>(N);
    return pi_n(f.mapped([nn](const ParamScalar& c) { return c.subst_w(nn); }), N);
}

namespace {

// expansion of a symmetric function in the monomial basis, exact over Rat
using MVec = std::map<Partition, Rat>;

MVec p_mul_mvec(int n, const MVec& v) {
    MVec out;
    auto add = [&out](const Partition& mu, const Rat& c) {
        auto [it, fresh] = out.try_emplace(mu, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
    };
    for (const auto& [lam, c] : v) {
        // append n as a new part
        Partition mu = lam;
        mu.insert(std::lower_bound(mu.begin(), mu.end(), n, std::greater<int>()), n);
        add(mu, c * Rat(std::count(mu.begin(), mu.end(), n)));
        // merge n into one existing part of each distinct value
        int prev = -1;
        for (std::size_t idx = 0; idx < lam.size(); ++idx) {
            if (lam[idx] == prev) continue;
            prev = lam[idx];
            Partition nu = lam;
            nu[idx] += n;
            std::sort(nu.begin(), nu.end(), std::greater<int>());
            add(nu, c * Rat(std::count(nu.begin(), nu.end(), lam[idx] + n)));
        }
    }
    return out;
}

MVec p_in_m(const Partition& lam) {
    MVec v{{Partition{}, Rat(1)}};
    for (int part : lam) v = p_mul_mvec(part, v);
    return v;
}

// Gaussian elimination solve A x = b over Rat
std::vector<Rat> solve_rat(std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) throw std::domain_error("singular transition matrix");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        Rat d = A[col][col];
        for (std::size_t j = col; j < n; ++j) A[col][j] /= d;
        b[col] /= d;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || A[row][col] == 0) continue;
            Rat f = A[row][col];
            for (std::size_t j = col; j < n; ++j) A[row][j] -= f * A[col][j];
            b[row] -= f * b[col];
        }
    }
    return b;
}

}  // namespace

SymFunc monomial_in_p(const Partition& lam) {
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_monomial_cache.find(lam);
        if (it != g_monomial_cache.end()) return it->second;
    }
    const int n = partition_weight(lam);
    std::vector<Partition> parts = partitions_of(n);
    std::map<Partition, std::size_t> index;
    for (std::size_t i = 0; i < parts.size(); ++i) index[parts[i]] = i;
    // R[mu][nu] = coefficient of m_nu in p_mu; solve R^T x = e_lam so that
    // m_lam = sum_mu x_mu p_mu
    const std::size_t sz = parts.size();
    std::vector<std::vector<Rat>> AT(sz, std::vector<Rat>(sz));
    for (std::size_t mu = 0; mu < sz; ++mu)
        for (const auto& [nu, c] : p_in_m(parts[mu])) AT[index[nu]][mu] = c;
    std::vector<Rat> e(sz);
    e[index.at(lam)] = 1;
    std::vector<Rat> x = solve_rat(std::move(AT), std::move(e));
    SymFunc f;
    for (std::size_t mu = 0; mu < sz; ++mu)
        if (x[mu] != 0) f.add_term(parts[mu], ParamScalar(ParamLaurent(x[mu])));
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    return g_monomial_cache.emplace(lam, std::move(f)).first->second;
}

SymFunc h_in_p(int n) {
    SymFunc f;
    for (const Partition& lam : partitions_of(n))
        f.add_term(lam, ParamScalar(ParamLaurent(Rat(1) / z_factor(lam))));
    return f;
}

const SymFunc& macdonald_poly(const Partition& lam) {
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_macdonald_cache.find(lam);
        if (it != g_macdonald_cache.end()) return it->second;
    }
    const int n = partition_weight(lam);
    // ascending lexicographic order refines dominance from below: P_lam is
    // m_lam plus a combination of strictly lower m_mu, fixed by
    // orthogonality to those m_mu.  The coefficients come from one
    // fraction-free elimination of the Gram system and are gcd-reduced, so
    // downstream arithmetic works with small rational functions.
    std::vector<Partition> parts = partitions_of(n);
    std::sort(parts.begin(), parts.end());
    const std::size_t pos = static_cast<std::size_t>(
        std::find(parts.begin(), parts.end(), lam) - parts.begin());
    if (pos == parts.size()) throw std::invalid_argument("not a partition");

    // polynomial-valued Macdonald pairing: qt_inner with all (1-t^k)
    // denominators cleared by the fixed cofactor prod_k (1-t^k)^{floor(n/k)}
    auto gram_poly = [n](const SymFunc& f, const SymFunc& g) {
        ParamLaurent acc;
        for (const auto& [rho, cf] : f.terms()) {
            auto it = g.terms().find(rho);
            if (it == g.terms().end()) continue;
            ParamScalar prod = cf * it->second;
            if (prod.is_zero()) continue;
            // m-basis coordinates are plain rationals
            ParamLaurent k(z_factor(rho) * prod.num().terms().begin()->second);
            std::map<int, int> mult;
            for (int part : rho) ++mult[part];
            for (int part : rho) k *= ParamLaurent::one() - q_pow(part);
            for (int v = 1; v <= n; ++v) {
                int e = n / v - (mult.count(v) ? mult[v] : 0);
                for (int i = 0; i < e; ++i) k *= ParamLaurent::one() - t_pow(v);
            }
            acc += k;
        }
        return acc;
    };

    std::vector<SymFunc> lower;
    for (std::size_t i = 0; i < pos; ++i) lower.push_back(monomial_in_p(parts[i]));
    SymFunc mlam = monomial_in_p(lam);
    SymFunc result = mlam;
    const std::size_t k = lower.size();
    if (k > 0) {
        std::vector<std::vector<ParamLaurent>> A(k, std::vector<ParamLaurent>(k));
        std::vector<ParamLaurent> b(k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) A[i][j] = gram_poly(lower[i], lower[j]);
            b[i] = -gram_poly(lower[i], mlam);
        }
        std::vector<ParamScalar> x = laurent_solve(A, b);
        for (std::size_t j = 0; j < k; ++j) {
            if (x[j].is_zero()) continue;
            result += lower[j].scaled(x[j]);
        }
    }
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    return g_macdonald_cache.emplace(lam, std::move(result)).first->second;
}

}  // namespace dellns
