#pragma once

#include <climits>
#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "sentinel/scalar.hpp"

namespace sentinel {

// Polynomial degree with a distinguished value for the zero polynomial.
// The sentinel compares below every finite degree and absorbs addition.
class Degree {
 public:
  constexpr explicit Degree(int value) : value_(value) {}
  static constexpr Degree neg_infinity() { return Degree(kNegInf); }

  constexpr bool is_neg_infinity() const { return value_ == kNegInf; }
  int value() const;

  constexpr auto operator<=>(const Degree&) const = default;
  constexpr Degree operator+(Degree other) const {
    if (is_neg_infinity() || other.is_neg_infinity()) return neg_infinity();
    return Degree(value_ + other.value_);
  }

 private:
  static constexpr int kNegInf = INT_MIN;
  int value_;
};

// Univariate polynomial in ξ with coefficients in ascending powers. Trailing
// zeros are trimmed on construction; in tolerant mode "zero" means
// |c| <= eps_zero * scale.
template <Scalar F>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<F> coefficients, double eps_zero = kDefaultEpsZero);
  // `scale` is the magnitude of the operands that produced `coefficients`.
  Polynomial(std::vector<F> coefficients, double eps_zero, double scale);

  static Polynomial constant(const F& c, double eps_zero = kDefaultEpsZero);
  static Polynomial monomial(const F& c, int power, double eps_zero = kDefaultEpsZero);
  static Polynomial indeterminate(double eps_zero = kDefaultEpsZero);

  bool is_zero() const { return coefficients_.empty(); }
  Degree degree() const;
  bool is_constant() const { return coefficients_.size() <= 1; }
  bool is_nonzero_constant() const { return coefficients_.size() == 1; }

  std::span<const F> coefficients() const { return coefficients_; }
  F coefficient(std::size_t power) const;
  const F& leading_coefficient() const;
  double eps_zero() const { return eps_zero_; }
  // Largest coefficient magnitude (0 for the zero polynomial).
  double magnitude() const;

  Polynomial monic() const;
  F evaluate(const F& x) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const F& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const F& s) { return a *= s; }
  friend Polynomial operator*(const F& s, Polynomial a) { return a *= s; }

  // Coefficient-exact comparison; eps is not part of the value.
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coefficients_ == b.coefficients_;
  }

  // Every coefficient of a - b within rel_tol * max(|a|, |b|).
  bool approx_equal(const Polynomial& other, double rel_tol) const;

 private:
  void trim(double scale);

  std::vector<F> coefficients_;
  double eps_zero_ = kDefaultEpsZero;
};

template <Scalar F>
struct DivMod {
  Polynomial<F> quotient;
  Polynomial<F> remainder;
};

// Long division; the remainder has degree < deg b. Throws DegenerateInput if b
// is zero.
template <Scalar F>
DivMod<F> divmod(const Polynomial<F>& a, const Polynomial<F>& b);

template <Scalar F>
struct Bezout {
  Polynomial<F> gcd;
  Polynomial<F> p;
  Polynomial<F> q;
};

// Extended Euclid: p·a + q·b = gcd with gcd monic. When gcd = 1 the pair is
// the minimal-degree one (deg p < deg b, deg q < deg a).
template <Scalar F>
Bezout<F> ext_gcd(const Polynomial<F>& a, const Polynomial<F>& b);

extern template class Polynomial<Rational>;
extern template class Polynomial<double>;

}  // namespace sentinel
