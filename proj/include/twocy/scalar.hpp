#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace twocy {

/// Ground field: the rationals, or F_p for a prime p.
struct FieldCtx {
    std::uint64_t p = 0;  // 0 means rationals

    static FieldCtx rationals() { return {}; }
    static FieldCtx prime(std::uint64_t p);

    bool is_rational() const { return p == 0; }
    std::string name() const;
    bool operator==(const FieldCtx& o) const { return p == o.p; }
    bool operator!=(const FieldCtx& o) const { return p != o.p; }
};

bool is_prime(std::uint64_t n);

class FieldError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Exact scalar: a reduced rational or a residue mod p.
///
/// Mixed arithmetic between a rational and a residue reduces the rational
/// into F_p (its denominator must be prime to p); two residues with different
/// moduli never mix.
class Scalar {
   public:
    Scalar() = default;
    Scalar(int v) : q_(v) {}
    Scalar(long v) : q_(v) {}
    Scalar(long long v) : q_(static_cast<long>(v)) {}
    explicit Scalar(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    static Scalar ratio(long num, long den);
    static Scalar mod(std::uint64_t p, std::int64_t v);
    static Scalar zero_in(const FieldCtx& f) { return f.is_rational() ? Scalar() : mod(f.p, 0); }
    static Scalar one_in(const FieldCtx& f) { return f.is_rational() ? Scalar(1) : mod(f.p, 1); }

    /// Parses "n", "n/d" or "-n/d". Throws std::invalid_argument on zero
    /// denominators or junk.
    static Scalar parse(const std::string& s);

    std::uint64_t modulus() const { return p_; }
    FieldCtx field() const { return FieldCtx{p_}; }
    bool is_rational() const { return p_ == 0; }
    const mpq_class& q() const;
    std::uint64_t residue() const { return r_; }

    bool is_zero() const { return p_ ? r_ == 0 : sgn(q_) == 0; }
    bool is_one() const { return p_ ? r_ == 1 : q_ == 1; }

    /// Reduce into the given field (identity if already there).
    Scalar in(const FieldCtx& f) const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar inv() const;
    Scalar pow(long e) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    /// Total order on rationals; for residues compares representatives.
    bool operator<(const Scalar& o) const;
    bool operator>(const Scalar& o) const { return o < *this; }
    bool operator<=(const Scalar& o) const { return !(o < *this); }
    bool operator>=(const Scalar& o) const { return !(*this < o); }

    /// "n" or "n/d" for rationals, "v" for residues.
    std::string str() const;

    /// Floor of a rational.
    mpz_class floor() const;
    mpz_class ceil() const;

   private:
    mpq_class q_{0};
    std::uint64_t p_ = 0;
    std::uint64_t r_ = 0;

    void unify(Scalar& other);
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

inline Scalar sign_of(bool negative) { return negative ? Scalar(-1) : Scalar(1); }
inline Scalar parity_sign(long k) { return (k & 1) ? Scalar(-1) : Scalar(1); }

}  // namespace twocy
