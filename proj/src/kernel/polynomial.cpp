#include "twocy/polynomial.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace twocy {

RatPolynomial::RatPolynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) {
    for (const auto& x : c_)
        if (!x.is_rational()) throw FieldError("RatPolynomial requires rational coefficients");
    trim();
}

void RatPolynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

RatPolynomial RatPolynomial::monomial(const Scalar& c, int k) {
    std::vector<Scalar> v(static_cast<std::size_t>(k) + 1);
    v[static_cast<std::size_t>(k)] = c;
    return RatPolynomial(std::move(v));
}

Scalar RatPolynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Scalar();
    return c_[static_cast<std::size_t>(k)];
}

RatPolynomial RatPolynomial::operator-() const { return scaled(-1); }

RatPolynomial operator+(const RatPolynomial& a, const RatPolynomial& b) {
    std::vector<Scalar> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return RatPolynomial(std::move(v));
}

RatPolynomial operator-(const RatPolynomial& a, const RatPolynomial& b) { return a + (-b); }

RatPolynomial operator*(const RatPolynomial& a, const RatPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return RatPolynomial(std::move(v));
}

RatPolynomial RatPolynomial::scaled(const Scalar& s) const {
    std::vector<Scalar> v = c_;
    for (auto& x : v) x *= s;
    return RatPolynomial(std::move(v));
}

std::pair<RatPolynomial, RatPolynomial> RatPolynomial::divmod(const RatPolynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Scalar> r = c_;
    int dd = d.degree();
    std::vector<Scalar> q(std::max(0, degree() - dd + 1));
    Scalar inv = d.lead().inv();
    for (int k = degree(); k >= dd; --k) {
        Scalar f = r[static_cast<std::size_t>(k)] * inv;
        if (f.is_zero()) continue;
        q[static_cast<std::size_t>(k - dd)] = f;
        for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k - dd + j)] -= f * d.c_[static_cast<std::size_t>(j)];
    }
    return {RatPolynomial(std::move(q)), RatPolynomial(std::move(r))};
}

RatPolynomial RatPolynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Scalar> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Scalar(static_cast<long>(i));
    return RatPolynomial(std::move(v));
}

RatPolynomial RatPolynomial::monic() const { return is_zero() ? *this : scaled(lead().inv()); }

Scalar RatPolynomial::eval(const Scalar& x) const {
    Scalar r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

RatPolynomial RatPolynomial::pow(int e) const {
    RatPolynomial r = constant(1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

std::string RatPolynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        Scalar c = c_[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        bool neg = c < Scalar(0);
        Scalar a = neg ? -c : c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (k == 0 || !a.is_one()) os << a.str();
        if (k >= 1) os << var;
        if (k >= 2) os << "^" << k;
    }
    return os.str();
}

RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b) {
    RatPolynomial x = a, y = b;
    while (!y.is_zero()) {
        auto r = x.divmod(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

namespace {

using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

mpz_class zmod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

ZPoly reduce(ZPoly a, const mpz_class& m) {
    for (auto& x : a) x = zmod(x, m);
    ztrim(a);
    return a;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
    ZPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return m == 0 ? (ztrim(r), r) : reduce(std::move(r), m);
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
    ZPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return m == 0 ? (ztrim(r), r) : reduce(std::move(r), m);
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return m == 0 ? (ztrim(r), r) : reduce(std::move(r), m);
}

ZPoly zscale(const ZPoly& a, const mpz_class& s, const mpz_class& m) {
    ZPoly r = a;
    for (auto& x : r) x *= s;
    return m == 0 ? (ztrim(r), r) : reduce(std::move(r), m);
}

mpz_class zinv(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t())) throw std::domain_error("non-invertible residue");
    return r;
}

// Division by b whose leading coefficient is a unit mod m.
std::pair<ZPoly, ZPoly> zdivmod(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
    if (b.empty()) throw std::domain_error("division by zero polynomial");
    ZPoly r = reduce(a, m);
    int db = zdeg(b);
    mpz_class inv = zinv(b.back(), m);
    ZPoly q(static_cast<std::size_t>(std::max(0, zdeg(r) - db + 1)));
    for (int k = zdeg(r); k >= db; --k) {
        mpz_class f = zmod(r[static_cast<std::size_t>(k)] * inv, m);
        if (f == 0) continue;
        q[static_cast<std::size_t>(k - db)] = f;
        for (int j = 0; j <= db; ++j) {
            auto& x = r[static_cast<std::size_t>(k - db + j)];
            x = zmod(x - f * b[static_cast<std::size_t>(j)], m);
        }
    }
    ztrim(q);
    ztrim(r);
    return {q, r};
}

ZPoly zmonic(const ZPoly& a, const mpz_class& m) { return a.empty() ? a : zscale(a, zinv(a.back(), m), m); }

ZPoly zgcd(ZPoly a, ZPoly b, const mpz_class& p) {
    a = reduce(a, p);
    b = reduce(b, p);
    while (!b.empty()) {
        auto r = zdivmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return zmonic(a, p);
}

// s a + t b = 1 mod p, assuming gcd(a,b) = 1.
void zext_gcd(const ZPoly& a, const ZPoly& b, const mpz_class& p, ZPoly& s, ZPoly& t) {
    ZPoly r0 = reduce(a, p), r1 = reduce(b, p);
    ZPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = zdivmod(r0, r1, p);
        ZPoly s2 = zsub(s0, zmul(q, s1, p), p);
        ZPoly t2 = zsub(t0, zmul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (zdeg(r0) != 0) throw std::logic_error("extended gcd of non-coprime polynomials");
    mpz_class inv = zinv(r0[0], p);
    s = zscale(s0, inv, p);
    t = zscale(t0, inv, p);
}

ZPoly zderiv(const ZPoly& a) {
    if (a.size() <= 1) return {};
    ZPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<unsigned long>(i);
    return r;
}

ZPoly zpowmod(ZPoly base, mpz_class e, const ZPoly& f, const mpz_class& p) {
    ZPoly result{1};
    base = zdivmod(base, f, p).second;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = zdivmod(zmul(result, base, p), f, p).second;
        base = zdivmod(zmul(base, base, p), f, p).second;
        e >>= 1;
    }
    return result;
}

std::vector<ZPoly> equal_degree(const ZPoly& g, int d, const mpz_class& p, std::mt19937_64& rng) {
    if (zdeg(g) == d) return {g};
    mpz_class pd;
    mpz_pow_ui(pd.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
    mpz_class e = (pd - 1) / 2;
    const unsigned long pl = p.get_ui();
    for (;;) {
        ZPoly a(static_cast<std::size_t>(zdeg(g)));
        for (auto& x : a) x = static_cast<unsigned long>(rng() % pl);
        ztrim(a);
        if (zdeg(a) < 1) continue;
        ZPoly b = zsub(zpowmod(a, e, g, p), ZPoly{1}, p);
        ZPoly u = zgcd(b, g, p);
        if (zdeg(u) > 0 && zdeg(u) < zdeg(g)) {
            auto left = equal_degree(u, d, p, rng);
            auto right = equal_degree(zdivmod(g, u, p).first, d, p, rng);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
}

// Monic irreducible factors of a monic square-free polynomial over F_p, p odd.
std::vector<ZPoly> factor_mod_p(ZPoly f, const mpz_class& p) {
    std::mt19937_64 rng(0x5eed5eedULL);
    std::vector<ZPoly> out;
    ZPoly x{0, 1};
    ZPoly h = x;
    for (int i = 1; 2 * i <= zdeg(f); ++i) {
        h = zpowmod(h, p, f, p);
        ZPoly g = zgcd(zsub(h, x, p), f, p);
        if (zdeg(g) > 0) {
            auto parts = equal_degree(g, i, p, rng);
            out.insert(out.end(), parts.begin(), parts.end());
            f = zdivmod(f, g, p).first;
            h = zdivmod(h, f, p).second;
        }
    }
    if (zdeg(f) > 0) out.push_back(f);
    std::sort(out.begin(), out.end());
    return out;
}

// Lift f = g h mod p to mod p^k. f monic mod p^k; g, h monic mod p.
std::pair<ZPoly, ZPoly> hensel_pair(const ZPoly& f, const ZPoly& g, const ZPoly& h, const mpz_class& p, unsigned k) {
    ZPoly s, t;
    zext_gcd(g, h, p, s, t);
    mpz_class pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    ZPoly G = g, H = h;
    mpz_class pj = p;
    for (unsigned j = 1; j < k; ++j) {
        ZPoly diff = zsub(f, zmul(G, H, pk), pk);
        ZPoly e(diff.size());
        for (std::size_t i = 0; i < diff.size(); ++i) {
            if (zmod(diff[i], pj) != 0) throw std::logic_error("Hensel step lost divisibility");
            e[i] = zmod(diff[i] / pj, p);
        }
        ztrim(e);
        auto [q, a] = zdivmod(zmul(e, t, p), g, p);
        ZPoly b = zadd(zmul(e, s, p), zmul(q, h, p), p);
        G = zadd(G, zscale(a, pj, 0), pk);
        H = zadd(H, zscale(b, pj, 0), pk);
        pj *= p;
    }
    return {G, H};
}

std::vector<ZPoly> hensel_multi(const ZPoly& f, std::vector<ZPoly> gs, const mpz_class& p, unsigned k) {
    if (gs.size() == 1) return {f};
    ZPoly g = gs[0];
    ZPoly h{1};
    for (std::size_t i = 1; i < gs.size(); ++i) h = zmul(h, gs[i], p);
    auto [G, H] = hensel_pair(f, g, h, p, k);
    std::vector<ZPoly> rest(gs.begin() + 1, gs.end());
    auto lifted = hensel_multi(H, rest, p, k);
    lifted.insert(lifted.begin(), G);
    return lifted;
}

ZPoly primitive(ZPoly a) {
    ztrim(a);
    if (a.empty()) return a;
    mpz_class g = 0;
    for (const auto& x : a) g = gcd(g, x);
    for (auto& x : a) x /= g;
    if (a.back() < 0)
        for (auto& x : a) x = -x;
    return a;
}

std::optional<ZPoly> zdiv_exact(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    int db = zdeg(b);
    if (zdeg(r) < db) return r.empty() ? std::optional<ZPoly>(ZPoly{}) : std::nullopt;
    ZPoly q(static_cast<std::size_t>(zdeg(r) - db + 1));
    for (int k = zdeg(r); k >= db; --k) {
        const mpz_class& c = r[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        if (c % b.back() != 0) return std::nullopt;
        mpz_class f = c / b.back();
        q[static_cast<std::size_t>(k - db)] = f;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b[static_cast<std::size_t>(j)];
    }
    ztrim(r);
    if (!r.empty()) return std::nullopt;
    ztrim(q);
    return q;
}

ZPoly to_zpoly(const RatPolynomial& p) {
    mpz_class l = 1;
    for (const auto& c : p.coeffs()) l = lcm(l, c.q().get_den());
    ZPoly z;
    for (const auto& c : p.coeffs()) {
        mpq_class v = c.q() * l;
        z.push_back(v.get_num());
    }
    return primitive(z);
}

RatPolynomial to_rat(const ZPoly& z) {
    std::vector<Scalar> v;
    for (const auto& c : z) v.emplace_back(mpq_class(c));
    return RatPolynomial(std::move(v));
}

mpz_class symmetric(const mpz_class& a, const mpz_class& m) {
    mpz_class r = zmod(a, m);
    if (2 * r > m) r -= m;
    return r;
}

// Irreducible factors of a primitive square-free integer polynomial.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    int n = zdeg(f);
    if (n <= 1) return {f};
    const mpz_class lc = f.back();
    // Pick among the first few admissible primes the one with fewest modular factors.
    std::vector<ZPoly> best;
    mpz_class best_p = 0;
    int tried = 0;
    for (unsigned long cand = 3; tried < 5 && cand < 100000; cand += 2) {
        if (!is_prime(cand)) continue;
        mpz_class p = cand;
        if (zmod(lc, p) == 0) continue;
        ZPoly fp = reduce(f, p);
        if (zdeg(zgcd(fp, zderiv(fp), p)) != 0) continue;
        auto facs = factor_mod_p(zmonic(fp, p), p);
        ++tried;
        if (best_p == 0 || facs.size() < best.size()) {
            best = std::move(facs);
            best_p = p;
        }
        if (best.size() == 1) break;
    }
    if (best_p == 0) throw std::logic_error("no admissible prime for factorization");
    if (best.size() == 1) return {f};
    const mpz_class& p = best_p;

    // Mignotte-type bound on coefficients of lc * (any factor).
    mpz_class norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    mpz_class norm;
    mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
    norm += 1;
    mpz_class bound = norm * abs(lc);
    bound <<= static_cast<unsigned>(n + 1);
    unsigned k = 1;
    mpz_class pk = p;
    while (pk <= 2 * bound) {
        pk *= p;
        ++k;
    }
    ZPoly fmonic = zscale(f, zinv(lc, pk), pk);
    auto lifted = hensel_multi(fmonic, best, p, k);

    std::vector<ZPoly> result;
    ZPoly rem = f;
    std::size_t s = 1;
    while (2 * s <= lifted.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        for (;;) {
            ZPoly cand{rem.back()};
            for (auto i : idx) cand = zmul(cand, lifted[i], pk);
            for (auto& c : cand) c = symmetric(c, pk);
            ztrim(cand);
            cand = primitive(cand);
            if (auto q = zdiv_exact(rem, cand)) {
                result.push_back(cand);
                rem = *q;
                std::vector<ZPoly> keep;
                for (std::size_t i = 0; i < lifted.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(lifted[i]);
                lifted = std::move(keep);
                found = true;
                break;
            }
            // next combination
            std::size_t pos = s;
            while (pos > 0 && idx[pos - 1] == lifted.size() - s + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t i = pos; i < s; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found) ++s;
    }
    if (zdeg(rem) > 0) result.push_back(primitive(rem));
    return result;
}

using FactorList = std::vector<std::pair<RatPolynomial, int>>;

void sort_factors(FactorList& out) {
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        const auto& ca = a.first.coeffs();
        const auto& cb = b.first.coeffs();
        for (std::size_t i = ca.size(); i-- > 0;)
            if (ca[i] != cb[i]) return ca[i] < cb[i];
        return a.second < b.second;
    });
}

std::vector<mpz_class> divisors(mpz_class v) {
    v = abs(v);
    std::vector<mpz_class> ds;
    if (v == 0) return ds;
    if (v > mpz_class("1000000000000")) throw std::range_error("value too large for divisor search");
    for (mpz_class d = 1; d * d <= v; ++d)
        if (v % d == 0) {
            ds.push_back(d);
            if (d * d != v) ds.push_back(v / d);
        }
    return ds;
}

// A factor of degree exactly k, or nullopt.
std::optional<ZPoly> kronecker_factor(const ZPoly& f, int k) {
    auto ev = [&](long x) {
        mpz_class r = 0;
        for (std::size_t i = f.size(); i-- > 0;) r = r * x + f[i];
        return r;
    };
    if (k == 1) {
        if (f[0] == 0) return ZPoly{0, 1};
        for (const auto& a : divisors(f[0]))
            for (const auto& b : divisors(f.back()))
                for (int sg : {1, -1}) {
                    ZPoly cand = primitive(ZPoly{-sg * a, b});
                    if (zdiv_exact(f, cand)) return cand;
                }
        return std::nullopt;
    }
    std::vector<long> xs;
    std::vector<std::vector<mpz_class>> vals;
    std::size_t combos = 1;
    for (long x = 0; static_cast<int>(xs.size()) <= k; x = x > 0 ? -x : -x + 1) {
        mpz_class v = ev(x);
        if (v == 0) continue;
        xs.push_back(x);
        std::vector<mpz_class> ds;
        for (const auto& d : divisors(v)) {
            ds.push_back(d);
            if (xs.size() > 1) ds.push_back(-d);
        }
        combos *= ds.size();
        if (combos > 4000000) throw std::range_error("Kronecker search too large");
        vals.push_back(std::move(ds));
    }
    std::vector<std::size_t> pick(xs.size(), 0);
    for (;;) {
        RatPolynomial interp;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            RatPolynomial term = RatPolynomial::constant(Scalar(mpq_class(vals[j][pick[j]])));
            for (std::size_t m = 0; m < xs.size(); ++m) {
                if (m == j) continue;
                term = term * RatPolynomial(std::vector<Scalar>{Scalar(-xs[m]), Scalar(1)});
                term = term.scaled(Scalar::ratio(1, xs[j] - xs[m]));
            }
            interp = interp + term;
        }
        if (interp.degree() == k) {
            bool integral = true;
            for (const auto& c : interp.coeffs())
                if (c.q().get_den() != 1) integral = false;
            if (integral) {
                ZPoly cand = primitive(to_zpoly(interp));
                if (zdiv_exact(f, cand)) return cand;
            }
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == vals[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return std::nullopt;
}

}  // namespace

FactorList factor_by_search(const RatPolynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
    ZPoly f = to_zpoly(p);
    std::vector<ZPoly> irreducibles;
    while (zdeg(f) > 0) {
        bool split = false;
        for (int k = 1; 2 * k <= zdeg(f); ++k) {
            if (auto g = kronecker_factor(f, k)) {
                irreducibles.push_back(*g);
                f = *zdiv_exact(f, *g);
                split = true;
                break;
            }
        }
        if (!split) {
            irreducibles.push_back(primitive(f));
            break;
        }
    }
    std::sort(irreducibles.begin(), irreducibles.end());
    FactorList out;
    for (const auto& g : irreducibles) {
        RatPolynomial r = to_rat(g);
        if (!out.empty() && out.back().first == r)
            ++out.back().second;
        else
            out.emplace_back(r, 1);
    }
    sort_factors(out);
    return out;
}

FactorList factor_rational_poly(const RatPolynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
    FactorList out;
    if (p.degree() == 0) return out;
    // Yun square-free decomposition over the rationals.
    RatPolynomial f = p.monic();
    RatPolynomial a0 = gcd(f, f.derivative());
    RatPolynomial b = f.divmod(a0).first;
    RatPolynomial c = f.derivative().divmod(a0).first;
    RatPolynomial d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        RatPolynomial a = gcd(b, d);
        b = b.divmod(a).first;
        c = d.divmod(a).first;
        d = c - b.derivative();
        if (a.degree() > 0)
            for (const auto& g : zassenhaus(to_zpoly(a))) out.emplace_back(to_rat(g), i);
    }
    sort_factors(out);

    // Multiply back.
    RatPolynomial prod = RatPolynomial::constant(1);
    for (const auto& [g, m] : out) prod = prod * g.pow(m);
    if (prod.monic() != p.monic()) throw std::logic_error("factorization does not multiply back");

    if (p.degree() < 5) {
        try {
            if (factor_by_search(p) != out) throw std::logic_error("factorization disagrees with exhaustive search");
        } catch (const std::range_error&) {
            // coefficients too large for the exhaustive cross-check
        }
    }
    return out;
}

}  // namespace twocy
