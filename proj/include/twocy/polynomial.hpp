#pragma once

#include <string>
#include <utility>
#include <vector>

#include "twocy/scalar.hpp"

namespace twocy {

/// Univariate polynomial with rational coefficients; c[k] is the coefficient of t^k.
class RatPolynomial {
   public:
    RatPolynomial() = default;
    explicit RatPolynomial(std::vector<Scalar> coeffs);
    static RatPolynomial monomial(const Scalar& c, int k);
    static RatPolynomial constant(const Scalar& c) { return monomial(c, 0); }
    static RatPolynomial t() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(int k) const;
    Scalar lead() const { return c_.empty() ? Scalar() : c_.back(); }

    RatPolynomial operator-() const;
    friend RatPolynomial operator+(const RatPolynomial& a, const RatPolynomial& b);
    friend RatPolynomial operator-(const RatPolynomial& a, const RatPolynomial& b);
    friend RatPolynomial operator*(const RatPolynomial& a, const RatPolynomial& b);
    RatPolynomial scaled(const Scalar& s) const;
    bool operator==(const RatPolynomial& o) const { return c_ == o.c_; }
    bool operator!=(const RatPolynomial& o) const { return !(c_ == o.c_); }

    /// Euclidean division: *this = q*d + r with deg r < deg d.
    std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& d) const;
    RatPolynomial derivative() const;
    RatPolynomial monic() const;
    Scalar eval(const Scalar& x) const;
    RatPolynomial pow(int e) const;

    /// "t^2 - 5t + 6" style rendering, highest degree first.
    std::string str(const std::string& var = "t") const;

   private:
    std::vector<Scalar> c_;
    void trim();
};

RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b);  // monic, or zero

/// Factor over the rationals. Factors are primitive integer polynomials with
/// positive leading coefficient, sorted by (degree, coefficients).
/// The product of factor^mult equals p up to a nonzero rational constant.
std::vector<std::pair<RatPolynomial, int>> factor_rational_poly(const RatPolynomial& p);

/// Exhaustive Kronecker factorization; only for small degree (used as a
/// cross-check and by tests). Same normalization as factor_rational_poly.
std::vector<std::pair<RatPolynomial, int>> factor_by_search(const RatPolynomial& p);

}  // namespace twocy
