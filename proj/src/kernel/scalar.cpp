#include "twocy/scalar.hpp"

#include <cctype>
#include <ostream>

namespace twocy {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldCtx FieldCtx::prime(std::uint64_t p) {
    if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
    if (p >= (1ull << 31)) throw FieldError("prime too large for residue arithmetic");
    return FieldCtx{p};
}

std::string FieldCtx::name() const { return p ? "fp:" + std::to_string(p) : "rationals"; }

namespace {

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r);
}

std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
    mpz_class r = z % static_cast<unsigned long>(p);
    if (r < 0) r += static_cast<unsigned long>(p);
    return r.get_ui();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    if (a == 0) throw std::domain_error("division by zero in F_" + std::to_string(p));
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

}  // namespace

Scalar Scalar::ratio(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::mod(std::uint64_t p, std::int64_t v) {
    Scalar s;
    s.p_ = p;
    s.r_ = reduce_signed(v, p);
    s.q_ = 0;
    return s;
}

Scalar Scalar::parse(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("malformed scalar '" + raw + "'");
    if (num[0] == '+') num = num.substr(1);
    if (den[0] == '+') den = den.substr(1);
    mpz_class n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in scalar '" + raw + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return Scalar(q);
}

const mpq_class& Scalar::q() const {
    if (p_) throw FieldError("rational value requested from a residue");
    return q_;
}

Scalar Scalar::in(const FieldCtx& f) const {
    if (f.p == p_) return *this;
    if (p_ != 0) throw FieldError("cannot move a residue mod " + std::to_string(p_) + " into " + f.name());
    std::uint64_t den = reduce_mpz(q_.get_den(), f.p);
    if (den == 0) throw FieldError("denominator divisible by " + std::to_string(f.p));
    std::uint64_t num = reduce_mpz(q_.get_num(), f.p);
    Scalar s;
    s.p_ = f.p;
    s.r_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(num) * inv_mod(den, f.p)) % f.p);
    return s;
}

void Scalar::unify(Scalar& other) {
    if (p_ == other.p_) return;
    if (p_ == 0)
        *this = in(other.field());
    else if (other.p_ == 0)
        other = other.in(field());
    else
        throw FieldError("mixing F_" + std::to_string(p_) + " and F_" + std::to_string(other.p_));
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    if (p_)
        s.r_ = r_ ? p_ - r_ : 0;
    else
        s.q_ = -q_;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (p_ == o.p_) {
        if (p_)
            r_ = (r_ + o.r_) % p_;
        else
            q_ += o.q_;
        return *this;
    }
    Scalar b = o;
    unify(b);
    return *this += b;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (p_ == o.p_) {
        if (p_)
            r_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r_) * o.r_) % p_);
        else
            q_ *= o.q_;
        return *this;
    }
    Scalar b = o;
    unify(b);
    return *this *= b;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (p_) return mod(p_, static_cast<std::int64_t>(inv_mod(r_, p_)));
    mpq_class r = 1 / q_;
    return Scalar(r);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inv(); }

Scalar Scalar::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Scalar result = Scalar::one_in(field()), base = *this;
    while (e) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

bool Scalar::operator==(const Scalar& o) const {
    if (p_ == o.p_) return p_ ? r_ == o.r_ : q_ == o.q_;
    Scalar a = *this, b = o;
    a.unify(b);
    return a == b;
}

bool Scalar::operator<(const Scalar& o) const {
    if (p_ || o.p_) {
        Scalar a = *this, b = o;
        a.unify(b);
        return a.r_ < b.r_;
    }
    return q_ < o.q_;
}

std::string Scalar::str() const {
    if (p_) return std::to_string(r_);
    return q_.get_str();
}

mpz_class Scalar::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q().get_num_mpz_t(), q().get_den_mpz_t());
    return r;
}

mpz_class Scalar::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q().get_num_mpz_t(), q().get_den_mpz_t());
    return r;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace twocy
