#include "dellns/param.hpp"

#include <algorithm>
#include <sstream>

namespace dellns {

ParamLaurent ParamLaurent::operator-() const {
    ParamLaurent r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

ParamLaurent ParamLaurent::operator+(const ParamLaurent& o) const {
    ParamLaurent r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

ParamLaurent ParamLaurent::operator-(const ParamLaurent& o) const {
    ParamLaurent r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

ParamLaurent ParamLaurent::operator*(const ParamLaurent& o) const {
    ParamLaurent r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_)
            r.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
    return r;
}

ParamLaurent ParamLaurent::scaled(const Rat& c) const {
    ParamLaurent r;
    if (c == 0) return r;
    for (const auto& [e, cc] : terms_) r.terms_[e] = cc * c;
    return r;
}

ParamLaurent ParamLaurent::shifted(const Rat& c, int eq, int et, int ew) const {
    ParamLaurent r;
    if (c == 0) return r;
    for (const auto& [e, cc] : terms_)
        r.terms_[{e[0] + eq, e[1] + et, e[2] + ew}] = cc * c;
    return r;
}

ParamLaurent ParamLaurent::reparam(int n) const {
    ParamLaurent r;
    for (const auto& [e, c] : terms_)
        r.add_term({e[0] * n, e[1] * n, e[2] * n}, c);
    return r;
}

ParamLaurent ParamLaurent::subst_w(int N) const {
    ParamLaurent r;
    for (const auto& [e, c] : terms_)
        r.add_term({e[0], e[1] + N * e[2], 0}, c);
    return r;
}

ParamLaurent ParamLaurent::subst_t_to_q() const {
    ParamLaurent r;
    for (const auto& [e, c] : terms_)
        r.add_term({e[0] + e[1], 0, e[2]}, c);
    return r;
}

bool ParamLaurent::w_free() const {
    for (const auto& [e, c] : terms_)
        if (e[2] != 0) return false;
    return true;
}

Exps ParamLaurent::min_exps() const {
    if (terms_.empty()) return {0, 0, 0};
    Exps m = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
        for (int i = 0; i < 3; ++i) m[i] = std::min(m[i], e[i]);
    return m;
}

std::optional<ParamLaurent> ParamLaurent::divide_exact(const ParamLaurent& d,
                                                       bool known_exact) const {
    if (d.is_zero()) throw std::domain_error("division by zero ParamLaurent");
    ParamLaurent rem = *this;
    ParamLaurent quot;
    // leading term = largest exponent vector in lex order (map is sorted)
    const auto& dl = *d.terms_.rbegin();
    // Laurent division does not terminate on inexact input (the leading
    // term walks down forever), so cap the number of steps; callers treat
    // a missed reduction as "not exactly divisible", which is always safe.
    std::size_t budget =
        known_exact ? SIZE_MAX : std::min<std::size_t>(64 + 4 * size() * d.size(), 512);
    while (!rem.is_zero()) {
        if (budget-- == 0) return std::nullopt;
        const Exps rle = rem.terms_.rbegin()->first;
        Exps e{rle[0] - dl.first[0], rle[1] - dl.first[1], rle[2] - dl.first[2]};
        Rat c = rem.terms_.rbegin()->second / dl.second;
        quot.add_term(e, c);
        // subtract c * x^e * d in place
        for (const auto& [de, dc] : d.terms_)
            rem.add_term({de[0] + e[0], de[1] + e[1], de[2] + e[2]}, -(c * dc));
        // every division step must strictly reduce the leading term
        if (!rem.is_zero() && !(rem.terms_.rbegin()->first < rle)) return std::nullopt;
    }
    return quot;
}

std::string ParamLaurent::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // render highest-order monomials last for stable, diffable output
    for (const auto& [e, c] : terms_) {
        Rat a = c;
        if (!first) {
            os << (a >= 0 ? " + " : " - ");
            if (a < 0) a = -a;
        }
        first = false;
        bool has_var = e[0] || e[1] || e[2];
        if (a != 1 || !has_var) {
            os << a.get_str();
            if (has_var) os << "*";
        }
        const char* names[3] = {"q", "t", "w"};
        bool firstv = true;
        for (int i = 0; i < 3; ++i) {
            if (!e[i]) continue;
            if (!firstv) os << "*";
            firstv = false;
            os << names[i];
            if (e[i] != 1) os << "^" << e[i];
        }
    }
    return os.str();
}

ParamLaurent q_pow(int n) { return ParamLaurent::monomial(1, n, 0, 0); }
ParamLaurent t_pow(int n) { return ParamLaurent::monomial(1, 0, n, 0); }
ParamLaurent w_pow(int n) { return ParamLaurent::monomial(1, 0, 0, n); }

ParamScalar::ParamScalar(const ParamLaurent& n, const ParamLaurent& d)
    : num_(n), den_(d) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    normalize();
}

void ParamScalar::normalize() {
    if (num_.is_zero()) {
        den_ = ParamLaurent::one();
        return;
    }
    if (den_.is_one()) return;
    // monomial denominators always clear
    if (den_.is_monomial()) {
        const auto& [e, c] = *den_.terms().begin();
        num_ = num_.shifted(1 / c, -e[0], -e[1], -e[2]);
        den_ = ParamLaurent::one();
        return;
    }
    // full reduction when the denominator divides the numerator exactly;
    // skipped for large operands, where equality by cross-multiplication
    // still holds without it
    if (num_.size() * den_.size() <= 256) {
        if (auto q = num_.divide_exact(den_)) {
            num_ = *q;
            den_ = ParamLaurent::one();
            return;
        }
    }
    // strip common monomial content
    Exps mn = num_.min_exps(), md = den_.min_exps();
    Exps m{std::min(mn[0], md[0]), std::min(mn[1], md[1]), std::min(mn[2], md[2])};
    if (m != Exps{0, 0, 0}) {
        num_ = num_.shifted(1, -m[0], -m[1], -m[2]);
        den_ = den_.shifted(1, -m[0], -m[1], -m[2]);
    }
    // make the denominator's leading coefficient 1
    Rat lead = den_.terms().rbegin()->second;
    if (lead != 1) {
        Rat inv = 1 / lead;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

ParamScalar ParamScalar::operator-() const {
    ParamScalar r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

ParamScalar ParamScalar::operator+(const ParamScalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return ParamScalar(num_ + o.num_, den_);
    return ParamScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

ParamScalar ParamScalar::operator-(const ParamScalar& o) const { return *this + (-o); }

ParamScalar ParamScalar::operator*(const ParamScalar& o) const {
    if (is_zero() || o.is_zero()) return ParamScalar();
    return ParamScalar(num_ * o.num_, den_ * o.den_);
}

ParamScalar ParamScalar::operator/(const ParamScalar& o) const { return *this * o.inv(); }

ParamScalar ParamScalar::inv() const {
    if (is_zero()) throw std::domain_error("inverting zero ParamScalar");
    return ParamScalar(den_, num_);
}

ParamScalar ParamScalar::reparam(int n) const {
    return ParamScalar(num_.reparam(n), den_.reparam(n));
}

ParamScalar ParamScalar::subst_w(int N) const {
    return ParamScalar(num_.subst_w(N), den_.subst_w(N));
}

ParamScalar ParamScalar::subst_t_to_q() const {
    return ParamScalar(num_.subst_t_to_q(), den_.subst_t_to_q());
}

bool ParamScalar::operator==(const ParamScalar& o) const {
    if (den_ == o.den_) return num_ == o.num_;
    return num_ * o.den_ == o.num_ * den_;
}

std::string ParamScalar::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

ParamScalar qs(int n) { return ParamScalar(q_pow(n)); }
ParamScalar ts(int n) { return ParamScalar(t_pow(n)); }
ParamScalar ws(int n) { return ParamScalar(w_pow(n)); }

namespace {

// helpers for gcd computation: inputs are true polynomials (all exponents
// nonnegative), viewed recursively as polynomials in variable v with
// coefficients in the variables below it

ParamLaurent to_primitive_position(const ParamLaurent& p);

int deg_in(const ParamLaurent& p, int v) {
    int d = 0;
    for (const auto& [e, c] : p.terms()) d = std::max(d, e[v]);
    return d;
}

// coefficient of x_v^k
ParamLaurent coeff_in(const ParamLaurent& p, int v, int k) {
    ParamLaurent r;
    for (const auto& [e, c] : p.terms())
        if (e[v] == k) r.add_term(e, c);  // keep x_v^k in place; stripped later
    return r;
}

// multiply by x_v^k
ParamLaurent shift_var(const ParamLaurent& p, int v, int k) {
    int s[3] = {0, 0, 0};
    s[v] = k;
    return p.shifted(1, s[0], s[1], s[2]);
}

ParamLaurent pgcd(ParamLaurent a, ParamLaurent b, int v);

// gcd of the x_v-coefficients of p (a polynomial in variables < v)
ParamLaurent content_in(const ParamLaurent& p, int v) {
    ParamLaurent g;
    int d = deg_in(p, v);
    for (int k = 0; k <= d; ++k) {
        ParamLaurent c = shift_var(coeff_in(p, v, k), v, -k);
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : pgcd(g, c, v - 1);
        if (g.is_monomial()) break;  // unit: content is trivial
    }
    return g;
}

// scale so the coefficients are coprime integers; rationals are units in
// the polynomial ring, and without this the pseudo-remainder sequence
// explodes to astronomically large numerators
ParamLaurent rat_primitive(const ParamLaurent& p) {
    if (p.is_zero()) return p;
    mpz_class g = 0, l = 1;
    for (const auto& [e, c] : p.terms()) {
        g = gcd(g, c.get_num());
        l = lcm(l, c.get_den());
    }
    Rat s(l, g);
    s.canonicalize();
    return p.scaled(s);
}

ParamLaurent prem(ParamLaurent a, const ParamLaurent& b, int v) {
    const int db = deg_in(b, v);
    const ParamLaurent lb = shift_var(coeff_in(b, v, db), v, -db);
    while (!a.is_zero() && deg_in(a, v) >= db) {
        int da = deg_in(a, v);
        ParamLaurent la = shift_var(coeff_in(a, v, da), v, -da);
        a = rat_primitive(a * lb - shift_var(b * la, v, da - db));
    }
    return a;
}

// primitive pseudo-remainder sequence; a, b nonzero polynomials in the
// variables <= v with nonnegative exponents
ParamLaurent pgcd(ParamLaurent a, ParamLaurent b, int v) {
    if (v < 0) return ParamLaurent::one();
    int da = deg_in(a, v), db = deg_in(b, v);
    if (da == 0 && db == 0) return pgcd(std::move(a), std::move(b), v - 1);
    if (da == 0) return pgcd(std::move(a), content_in(b, v), v - 1);
    if (db == 0) return pgcd(content_in(a, v), std::move(b), v - 1);
    ParamLaurent ca = content_in(a, v), cb = content_in(b, v);
    ParamLaurent g = pgcd(ca, cb, v - 1);
    // content may only be correct up to a monomial unit, so re-shift the
    // quotients to nonnegative exponents: deg_in and the pseudo-remainder
    // loop rely on true polynomial position
    a = rat_primitive(to_primitive_position(*a.divide_exact(ca, /*known_exact=*/true)));
    b = rat_primitive(to_primitive_position(*b.divide_exact(cb, /*known_exact=*/true)));
    while (true) {
        if (deg_in(a, v) < deg_in(b, v)) std::swap(a, b);
        ParamLaurent r = prem(a, b, v);
        if (r.is_zero()) return g * b;
        if (deg_in(r, v) == 0) return g;  // primitive parts are coprime in x_v
        a = std::move(b);
        b = to_primitive_position(
            *r.divide_exact(content_in(r, v), /*known_exact=*/true));
    }
}

// shift to nonnegative exponents with zero componentwise minimum
ParamLaurent to_primitive_position(const ParamLaurent& p) {
    Exps m = p.min_exps();
    return p.shifted(1, -m[0], -m[1], -m[2]);
}

}  // namespace

namespace {

// exact divisibility up to a monomial unit.  Both operands are shifted to
// nonnegative exponents with zero minimum per variable, where Laurent
// divisibility coincides with polynomial divisibility; the division loop
// then terminates unconditionally, either at a zero remainder or at a
// provably impossible negative quotient exponent.
bool divides_up_to_unit(const ParamLaurent& a, const ParamLaurent& d) {
    if (d.is_zero()) return a.is_zero();
    if (a.is_zero()) return true;
    ParamLaurent rem = to_primitive_position(a);
    const ParamLaurent dv = to_primitive_position(d);
    const auto& dl = *dv.terms().rbegin();
    while (!rem.is_zero()) {
        const Exps rle = rem.terms().rbegin()->first;
        Exps e{rle[0] - dl.first[0], rle[1] - dl.first[1], rle[2] - dl.first[2]};
        if (e[0] < 0 || e[1] < 0 || e[2] < 0) return false;
        Rat c = rem.terms().rbegin()->second / dl.second;
        for (const auto& [de, dc] : dv.terms())
            rem.add_term({de[0] + e[0], de[1] + e[1], de[2] + e[2]}, -(c * dc));
        if (!rem.is_zero() && !(rem.terms().rbegin()->first < rle)) return false;
    }
    return true;
}

// heuristic gcd: evaluate one variable at a large integer so the problem
// collapses to an integer gcd, then read the polynomial back off the
// balanced base-xi digits and verify by trial division.  Inputs must have
// nonnegative exponents and coprime integer coefficients.
std::optional<ParamLaurent> gcd_heu(const ParamLaurent& a, const ParamLaurent& b,
                                    std::vector<int> vars, bool verify) {
    if (vars.empty()) {
        mpz_class g = gcd(mpz_class(a.terms().begin()->second.get_num()),
                          mpz_class(b.terms().begin()->second.get_num()));
        return ParamLaurent(Rat(g));
    }
    const int v = vars.back();
    vars.pop_back();

    auto norm_inf = [](const ParamLaurent& p) {
        mpz_class m = 0;
        for (const auto& [e, c] : p.terms()) {
            mpz_class n = abs(c.get_num());
            if (n > m) m = n;
        }
        return m;
    };
    auto eval_at = [v](const ParamLaurent& p, const mpz_class& xi) {
        ParamLaurent r;
        for (const auto& [e, c] : p.terms()) {
            mpz_class pw;
            mpz_pow_ui(pw.get_mpz_t(), xi.get_mpz_t(), e[v]);
            Exps ne = e;
            ne[v] = 0;
            r.add_term(ne, Rat(c.get_num() * pw));
        }
        return r;
    };

    const int deg_bound = std::min(deg_in(a, v), deg_in(b, v));
    mpz_class xi = 2 * std::min(norm_inf(a), norm_inf(b)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt, xi = xi * 73794 / 27011 + 29) {
        ParamLaurent ea = eval_at(a, xi), eb = eval_at(b, xi);
        if (ea.is_zero() || eb.is_zero()) continue;
        auto gamma = gcd_heu(ea, eb, vars, /*verify=*/false);
        if (!gamma) continue;
        // balanced base-xi digits, coefficient-wise
        ParamLaurent g;
        ParamLaurent rem = *gamma;
        bool ok = true;
        for (int i = 0; !rem.is_zero(); ++i) {
            if (i > deg_bound) {
                ok = false;
                break;
            }
            ParamLaurent digit;
            ParamLaurent next;
            for (const auto& [e, c] : rem.terms()) {
                mpz_class d = c.get_num() % xi;  // sign follows dividend in GMP
                if (d < 0) d += xi;
                if (2 * d > xi) d -= xi;
                if (d != 0) digit.add_term(e, Rat(d));
                mpz_class carry = (c.get_num() - d) / xi;
                if (carry != 0) next.add_term(e, Rat(carry));
            }
            if (!digit.is_zero())
                g += digit.shifted(1, v == 0 ? i : 0, v == 1 ? i : 0,
                                   v == 2 ? i : 0);
            rem = std::move(next);
        }
        if (!ok || g.is_zero()) continue;
        // The candidate may carry a spurious integer factor from the
        // cofactors' evaluations.  Below the top level it must be kept
        // intact: stripping content computed on evaluated constants breaks
        // the digit structure the parent reconstruction depends on.  That
        // is harmless for the trial divisions, which run over rational
        // coefficients where integer factors are units.
        // Monomial factors picked up from the contents of the evaluations
        // are units; strip them (and the integer content) at the top level
        // so that e.g. a bare w^2 candidate is recognized as a trivial gcd.
        // Inner levels must return the candidate untouched: the parent's
        // digit reconstruction depends on its exact integer coefficients.
        if (verify) g = to_primitive_position(rat_primitive(g));
        const bool constant =
            g.size() == 1 && g.terms().begin()->first == Exps{0, 0, 0};
        if (!constant) {
            if (verify) {
                // fast necessary condition first: divisibility of the
                // integer values at a large point, so wrong candidates are
                // rejected without a polynomial trial division.  Only valid
                // on a content-free candidate, hence top level only.
                auto eval_all = [&xi](const ParamLaurent& p) {
                    mpz_class acc = 0;
                    for (const auto& [e, c] : p.terms()) {
                        mpz_class term = c.get_num();
                        for (int u = 0; u < 3; ++u) {
                            if (e[u] == 0) continue;
                            mpz_class pw, base = xi + 2 * u + 1;
                            mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), e[u]);
                            term *= pw;
                        }
                        acc += term;
                    }
                    return acc;
                };
                mpz_class gv = eval_all(g);
                if (gv != 0) {
                    if (eval_all(a) % gv != 0) continue;
                    if (eval_all(b) % gv != 0) continue;
                }
            }
            // verify at every level: an unverified wrong candidate from a
            // recursive call would poison every attempt of the caller
            if (!divides_up_to_unit(a, g)) continue;
            if (!divides_up_to_unit(b, g)) continue;
        }
        return g;
    }
    return std::nullopt;
}

ParamLaurent permute_vars(const ParamLaurent& p, const std::array<int, 3>& s) {
    ParamLaurent r;
    for (const auto& [e, c] : p.terms())
        r.add_term({e[s[0]], e[s[1]], e[s[2]]}, c);
    return r;
}

// ---------- modular gcd ----------
//
// Dense Brown-type modular gcd.  All variables except a main one are fixed
// on an interpolation grid modulo a 61-bit prime, the surviving univariate
// gcds are normalized by the evaluated leading-coefficient gcd and
// interpolated back, and the integer coefficients are recovered by balanced
// CRT lifting.  Every candidate is certified by exact trial division, so an
// unlucky prime or evaluation point only costs a retry.  This is the
// workhorse for operands rich in cyclotomic-like factors, where the
// evaluation-homomorphism heuristic fails systematically.

using u64 = std::uint64_t;

u64 mulmod_p(u64 a, u64 b, u64 p) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}

u64 powmod_p(u64 a, u64 e, u64 p) {
    u64 r = 1;
    for (a %= p; e; e >>= 1) {
        if (e & 1) r = mulmod_p(r, a, p);
        a = mulmod_p(a, a, p);
    }
    return r;
}

u64 invmod_p(u64 a, u64 p) { return powmod_p(a, p - 2, p); }

u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void trim_p(std::vector<u64>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// monic gcd in Z_p[x]; coefficient vectors are dense, lowest degree first
std::vector<u64> gcd_uni_p(std::vector<u64> a, std::vector<u64> b, u64 p) {
    trim_p(a);
    trim_p(b);
    while (!b.empty()) {
        const u64 linv = invmod_p(b.back(), p);
        while (a.size() >= b.size()) {
            const u64 f = mulmod_p(a.back(), linv, p);
            const std::size_t off = a.size() - b.size();
            for (std::size_t i = 0; i + 1 < b.size(); ++i)
                a[off + i] = (a[off + i] + p - mulmod_p(f, b[i], p)) % p;
            a.pop_back();
            trim_p(a);
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        const u64 linv = invmod_p(a.back(), p);
        for (u64& c : a) c = mulmod_p(c, linv, p);
    }
    return a;
}

// Newton interpolation through (x0 + i, y[i]) over Z_p; consecutive sample
// points keep the divided-difference denominators to the single values j
std::vector<u64> interp_consec_p(u64 x0, std::vector<u64> y, u64 p) {
    const std::size_t n = y.size();
    std::vector<u64> invj(n, 0);
    for (std::size_t j = 1; j < n; ++j) invj[j] = invmod_p(j % p, p);
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            y[i] = mulmod_p((y[i] + p - y[i - 1]) % p, invj[j], p);
            if (i == j) break;
        }
    std::vector<u64> c(n, 0);
    c[0] = y[n - 1];
    std::size_t len = 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        const u64 xi = (x0 + i) % p;
        for (std::size_t k = len; k >= 1; --k)
            c[k] = (c[k - 1] + mulmod_p(c[k], p - xi, p)) % p;
        c[0] = mulmod_p(c[0], p - xi, p);
        c[0] = (c[0] + y[i]) % p;
        ++len;
    }
    return c;
}

const std::vector<u64>& modgcd_primes() {
    static const std::vector<u64> ps = [] {
        std::vector<u64> v;
        mpz_class p = (mpz_class(1) << 61) - 2;
        for (int i = 0; i < 8; ++i) {
            mpz_class np;
            mpz_nextprime(np.get_mpz_t(), p.get_mpz_t());
            p = np;
            v.push_back(static_cast<u64>(mpz_get_ui(np.get_mpz_t())));
        }
        return v;
    }();
    return ps;
}

// divisibility test first, then the unbudgeted exact division; safe on
// arbitrary candidates because the test is sound, complete and terminating
std::optional<ParamLaurent> divide_checked(const ParamLaurent& a,
                                           const ParamLaurent& d) {
    if (!divides_up_to_unit(a, d)) return std::nullopt;
    return a.divide_exact(d, /*known_exact=*/true);
}

// coefficient of the highest power of x_m, a polynomial in the other vars
ParamLaurent slice_at(const ParamLaurent& p, int m, int k) {
    ParamLaurent s;
    for (const auto& [e, c] : p.terms())
        if (e[m] == k) {
            Exps e2 = e;
            e2[m] = 0;
            s.add_term(e2, c);
        }
    return s;
}

// content of p viewed as a polynomial in x_m: gcd of its coefficient
// slices; a unit content is returned as 1
ParamLaurent content_wrt(const ParamLaurent& p, int m) {
    std::map<int, ParamLaurent> slices;
    for (const auto& [e, c] : p.terms()) {
        Exps e2 = e;
        e2[m] = 0;
        slices[e[m]].add_term(e2, c);
    }
    ParamLaurent g;
    for (auto& [k, s] : slices) {
        g = g.is_zero() ? to_primitive_position(s) : laurent_gcd(g, s);
        if (g.is_monomial()) return ParamLaurent::one();
    }
    return g;
}

// honest gcd in the polynomial ring (not up to a unit): integer content,
// common monomial factor and primitive part all included.  Inputs must have
// integer coefficients with nonnegative exponents.
ParamLaurent poly_gcd_full(const ParamLaurent& A, const ParamLaurent& B) {
    auto int_content = [](const ParamLaurent& p) {
        mpz_class g = 0;
        for (const auto& [e, c] : p.terms()) g = gcd(g, mpz_class(c.get_num()));
        return g;
    };
    const mpz_class ic = gcd(int_content(A), int_content(B));
    const Exps ma = A.min_exps(), mb = B.min_exps();
    ParamLaurent g = rat_primitive(to_primitive_position(laurent_gcd(A, B)));
    if (g.terms().rbegin()->second < 0) g = -g;
    return g.shifted(Rat(ic), std::min(ma[0], mb[0]), std::min(ma[1], mb[1]),
                     std::min(ma[2], mb[2]));
}

std::optional<ParamLaurent> modgcd(const ParamLaurent& a0,
                                   const ParamLaurent& b0) {
    std::array<long, 3> mind{};
    for (int v = 0; v < 3; ++v)
        mind[v] = std::min<long>(deg_in(a0, v), deg_in(b0, v));
    int m = 0;
    for (int v = 1; v < 3; ++v)
        if (mind[v] > mind[m]) m = v;
    if (mind[m] == 0) return ParamLaurent::one();

    // split off the content in the main variable so the gcd to interpolate
    // is primitive in x_m
    ParamLaurent a = a0, b = b0;
    const ParamLaurent ca = content_wrt(a0, m), cb = content_wrt(b0, m);
    ParamLaurent gc = ParamLaurent::one();
    if (!ca.is_one()) {
        auto q = divide_checked(a, ca);
        if (!q) return std::nullopt;
        a = rat_primitive(to_primitive_position(*q));
    }
    if (!cb.is_one()) {
        auto q = divide_checked(b, cb);
        if (!q) return std::nullopt;
        b = rat_primitive(to_primitive_position(*q));
    }
    if (!ca.is_one() && !cb.is_one()) gc = laurent_gcd(ca, cb);

    const long dm_a = deg_in(a, m), dm_b = deg_in(b, m);
    const ParamLaurent lca = slice_at(a, m, static_cast<int>(dm_a));
    const ParamLaurent lcb = slice_at(b, m, static_cast<int>(dm_b));
    // the interpolated object is G * (L / lc(G)); L is the honest
    // polynomial gcd of the leading coefficients, so the cofactor is a
    // polynomial and the images stay polynomial images of one fixed
    // integer polynomial across all primes
    const ParamLaurent L = poly_gcd_full(lca, lcb);

    std::vector<int> ovars;
    for (int v = 0; v < 3; ++v)
        if (v != m && (deg_in(a, v) > 0 || deg_in(b, v) > 0)) ovars.push_back(v);
    const int vu = !ovars.empty() ? ovars[0] : -1;
    const int vv = ovars.size() > 1 ? ovars[1] : -1;
    auto grid_dim = [&](int v) -> std::size_t {
        if (v < 0) return 1;
        return static_cast<std::size_t>(std::min(deg_in(a, v), deg_in(b, v)) +
                                        deg_in(L, v) + 1);
    };
    const std::size_t nu = grid_dim(vu), nv = grid_dim(vv);
    std::array<long, 3> maxdeg{};
    for (int v = 0; v < 3; ++v)
        maxdeg[v] = std::max({deg_in(a, v), deg_in(b, v), deg_in(L, v)});

    mpz_class M = 0;                  // accumulated CRT modulus
    std::map<Exps, mpz_class> crt;    // residues modulo M
    long dimg_seen = -1;

    for (u64 p : modgcd_primes()) {
        auto residues_of = [p](const ParamLaurent& q) {
            std::vector<std::pair<Exps, u64>> r;
            for (const auto& [e, c] : q.terms()) {
                u64 cr = mpz_fdiv_ui(c.get_num().get_mpz_t(), p);
                if (cr) r.emplace_back(e, cr);
            }
            return r;
        };
        const auto ra = residues_of(a), rb = residues_of(b);
        const auto rla = residues_of(lca), rlb = residues_of(lcb);
        const auto rl = residues_of(L);

        std::map<Exps, u64> img_coeffs;
        long dimg = -1;
        for (int attempt = 0; attempt < 4 && dimg < 0; ++attempt) {
            u64 x0u = 1, x0v = 1;
            if (vu >= 0)
                x0u = splitmix64(p ^ (0x517cc1b7u * (attempt + 1)) ^ 11u) %
                          (p - nu - 2) + 1;
            if (vv >= 0)
                x0v = splitmix64(p ^ (0x2545f491u * (attempt + 1)) ^ 29u) %
                          (p - nv - 2) + 1;
            // power tables per grid point
            auto powers = [p](u64 x0, std::size_t n, long dmax) {
                std::vector<std::vector<u64>> pw(n, std::vector<u64>(dmax + 1));
                for (std::size_t i = 0; i < n; ++i) {
                    pw[i][0] = 1;
                    const u64 x = (x0 + i) % p;
                    for (long e = 1; e <= dmax; ++e)
                        pw[i][e] = mulmod_p(pw[i][e - 1], x, p);
                }
                return pw;
            };
            const auto pwu = vu >= 0 ? powers(x0u, nu, maxdeg[vu])
                                     : std::vector<std::vector<u64>>(1, {1});
            const auto pwv = vv >= 0 ? powers(x0v, nv, maxdeg[vv])
                                     : std::vector<std::vector<u64>>(1, {1});
            auto eval_scalar = [&](const std::vector<std::pair<Exps, u64>>& ts,
                                   std::size_t i, std::size_t j) {
                u64 acc = 0;
                for (const auto& [e, c] : ts) {
                    u64 t = c;
                    if (vu >= 0) t = mulmod_p(t, pwu[i][e[vu]], p);
                    if (vv >= 0) t = mulmod_p(t, pwv[j][e[vv]], p);
                    acc = (acc + t) % p;
                }
                return acc;
            };
            // reject grids where a leading coefficient vanishes: the image
            // degree would drop and the interpolation would be poisoned
            bool good = true;
            for (std::size_t i = 0; i < nu && good; ++i)
                for (std::size_t j = 0; j < nv && good; ++j)
                    if (eval_scalar(rla, i, j) == 0 || eval_scalar(rlb, i, j) == 0)
                        good = false;
            if (!good) continue;

            auto eval_uni = [&](const std::vector<std::pair<Exps, u64>>& ts,
                                long dm, std::size_t i, std::size_t j) {
                std::vector<u64> r(dm + 1, 0);
                for (const auto& [e, c] : ts) {
                    u64 t = c;
                    if (vu >= 0) t = mulmod_p(t, pwu[i][e[vu]], p);
                    if (vv >= 0) t = mulmod_p(t, pwv[j][e[vv]], p);
                    r[e[m]] = (r[e[m]] + t) % p;
                }
                return r;
            };
            std::vector<std::vector<std::vector<u64>>> img(
                nu, std::vector<std::vector<u64>>(nv));
            long d = -1;
            bool consistent = true;
            for (std::size_t i = 0; i < nu && consistent; ++i)
                for (std::size_t j = 0; j < nv && consistent; ++j) {
                    std::vector<u64> g = gcd_uni_p(eval_uni(ra, dm_a, i, j),
                                                   eval_uni(rb, dm_b, i, j), p);
                    const long dg = static_cast<long>(g.size()) - 1;
                    if (d < 0) d = dg;
                    if (dg != d) {
                        // an unlucky point inflates the image degree; a
                        // fresh grid almost surely avoids it
                        consistent = false;
                        break;
                    }
                    const u64 s = eval_scalar(rl, i, j);
                    for (u64& c : g) c = mulmod_p(c, s, p);
                    img[i][j] = std::move(g);
                }
            if (!consistent || d < 0) continue;
            if (d == 0) return gc;  // coprime primitive parts

            // tensor interpolation, one m-power at a time
            for (long k = 0; k <= d; ++k) {
                std::vector<std::vector<u64>> rows(nu);
                for (std::size_t i = 0; i < nu; ++i) {
                    if (vv >= 0) {
                        std::vector<u64> y(nv);
                        for (std::size_t j = 0; j < nv; ++j) y[j] = img[i][j][k];
                        rows[i] = interp_consec_p(x0v, std::move(y), p);
                    } else {
                        rows[i] = {img[i][0][k]};
                    }
                }
                for (std::size_t ev = 0; ev < (vv >= 0 ? nv : 1); ++ev) {
                    std::vector<u64> col;
                    if (vu >= 0) {
                        std::vector<u64> y(nu);
                        for (std::size_t i = 0; i < nu; ++i) y[i] = rows[i][ev];
                        col = interp_consec_p(x0u, std::move(y), p);
                    } else {
                        col = {rows[0][ev]};
                    }
                    for (std::size_t eu = 0; eu < col.size(); ++eu) {
                        if (col[eu] == 0) continue;
                        Exps e{0, 0, 0};
                        e[m] = static_cast<int>(k);
                        if (vu >= 0) e[vu] = static_cast<int>(eu);
                        if (vv >= 0) e[vv] = static_cast<int>(ev);
                        img_coeffs[e] = col[eu];
                    }
                }
            }
            dimg = d;
        }
        if (dimg < 0) continue;  // no usable grid under this prime

        if (dimg_seen >= 0 && dimg > dimg_seen) continue;  // unlucky prime
        if (dimg_seen < 0 || dimg < dimg_seen) {
            // first prime, or all earlier primes were unlucky: restart
            crt.clear();
            M = 0;
            dimg_seen = dimg;
        }
        // balanced CRT lift
        if (M == 0) {
            for (const auto& [e, c] : img_coeffs) crt[e] = c;
            M = p;
        } else {
            const u64 minv = invmod_p(mpz_fdiv_ui(M.get_mpz_t(), p), p);
            std::map<Exps, mpz_class> next;
            auto combine = [&](const Exps& e, const mpz_class& old, u64 np) {
                const u64 op = mpz_fdiv_ui(old.get_mpz_t(), p);
                const u64 delta = mulmod_p((np + p - op) % p, minv, p);
                mpz_class x = old + M * delta;
                if (x != 0) next[e] = x;
            };
            for (const auto& [e, c] : crt) {
                auto it = img_coeffs.find(e);
                combine(e, c, it != img_coeffs.end() ? it->second : 0);
            }
            for (const auto& [e, c] : img_coeffs)
                if (!crt.count(e)) combine(e, 0, c);
            crt = std::move(next);
            M *= p;
        }
        ParamLaurent cand;
        for (const auto& [e, c] : crt) {
            mpz_class bal = c;
            if (2 * bal > M) bal -= M;
            if (bal != 0) cand.add_term(e, Rat(bal));
        }
        if (cand.is_zero()) continue;
        cand = rat_primitive(to_primitive_position(cand));
        // the interpolated object carries the leading-coefficient cofactor
        // as content in the main variable; strip it before certifying
        const ParamLaurent cc = content_wrt(cand, m);
        std::optional<ParamLaurent> g = cand;
        if (!cc.is_one()) g = divide_checked(cand, cc);
        if (!g) continue;
        ParamLaurent gg = rat_primitive(to_primitive_position(*g));
        if (divides_up_to_unit(a, gg) && divides_up_to_unit(b, gg))
            return gc * gg;
        // otherwise the lift is not yet stable; take another prime
    }
    return std::nullopt;
}

}  // namespace

ParamLaurent laurent_gcd(const ParamLaurent& a, const ParamLaurent& b) {
    if (a.is_zero()) return b.is_zero() ? ParamLaurent() : to_primitive_position(b);
    if (b.is_zero()) return to_primitive_position(a);
    ParamLaurent pa = rat_primitive(to_primitive_position(a)),
                 pb = rat_primitive(to_primitive_position(b));
    std::array<long, 3> deg{};
    for (int v = 0; v < 3; ++v)
        deg[v] = std::min(deg_in(pa, v), deg_in(pb, v));
    ParamLaurent g;
    // heuristic gcd first: it collapses the problem to integer gcds and
    // succeeds almost always; the evaluated variable is vars.back()
    std::vector<int> vars;
    for (int v = 0; v < 3; ++v)
        if (deg_in(pa, v) > 0 || deg_in(pb, v) > 0) vars.push_back(v);
    std::sort(vars.begin(), vars.end(),
              [&](int u, int v) { return deg[u] < deg[v]; });
    std::optional<ParamLaurent> fast = gcd_heu(pa, pb, vars, /*verify=*/true);
    if (!fast) fast = modgcd(pa, pb);
    if (fast) {
        g = std::move(*fast);
    } else {
        // pseudo-remainder fallback; the loop runs in the last variable, so
        // put the variable of smallest combined degree there
        std::array<int, 3> perm{0, 1, 2};
        std::sort(perm.begin(), perm.end(),
                  [&](int u, int v) { return deg[u] > deg[v]; });
        std::array<int, 3> inv{};
        for (int v = 0; v < 3; ++v) inv[perm[v]] = v;
        g = pgcd(permute_vars(pa, perm), permute_vars(pb, perm), 2);
        g = permute_vars(g, inv);
    }
    g = to_primitive_position(g);
    Rat lead = g.terms().rbegin()->second;
    if (lead != 1) g = g.scaled(1 / lead);
    return g;
}

ParamScalar ParamScalar::reduced() const {
    if (num_.is_zero() || den_.is_one()) return *this;
    ParamLaurent g = laurent_gcd(num_, den_);
    if (g.is_monomial()) return *this;
    ParamScalar r;
    r.num_ = *num_.divide_exact(g, /*known_exact=*/true);
    r.den_ = *den_.divide_exact(g, /*known_exact=*/true);
    r.normalize();
    return r;
}

ParamLaurent laurent_det(std::vector<std::vector<ParamLaurent>> m) {
    const std::size_t n = m.size();
    if (n == 0) return ParamLaurent::one();
    int sign = 1;
    ParamLaurent prev_pivot = ParamLaurent::one();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k].is_zero()) ++piv;
        if (piv == n) return ParamLaurent();
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                ParamLaurent num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                auto q = num.divide_exact(prev_pivot, /*known_exact=*/true);
                if (!q) throw std::logic_error("Bareiss division not exact");
                m[i][j] = std::move(*q);
            }
        prev_pivot = m[k][k];
    }
    ParamLaurent det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

std::vector<ParamScalar> laurent_solve(
    const std::vector<std::vector<ParamLaurent>>& A,
    const std::vector<ParamLaurent>& b) {
    const std::size_t n = A.size();
    if (b.size() != n) throw std::invalid_argument("laurent_solve size mismatch");
    // Gauss-Jordan over the fraction field with gcd reduction after every
    // update: the reduced entries are ratios of adjacent minors and stay
    // close to the size of the final solution, unlike fraction-free
    // elimination whose minors accumulate every cleared denominator
    std::vector<std::vector<ParamScalar>> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i].emplace_back(A[i][j]);
        m[i].emplace_back(b[i]);
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("laurent_solve: singular matrix");
        if (piv != k) std::swap(m[piv], m[k]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m[i][k].is_zero()) continue;
            ParamScalar f = (m[i][k] / m[k][k]).reduced();
            for (std::size_t j = k + 1; j <= n; ++j) {
                if (m[k][j].is_zero()) continue;
                m[i][j] = (m[i][j] - f * m[k][j]).reduced();
            }
            m[i][k] = ParamScalar();
        }
    }
    std::vector<ParamScalar> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = (m[i][n] / m[i][i]).reduced();
    return x;
}

}  // namespace dellns
