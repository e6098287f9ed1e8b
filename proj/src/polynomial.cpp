#include "sentinel/polynomial.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "sentinel/errors.hpp"

namespace sentinel {

int Degree::value() const {
  if (is_neg_infinity()) throw std::logic_error("degree of the zero polynomial has no value");
  return value_;
}

template <Scalar F>
Polynomial<F>::Polynomial(std::vector<F> coefficients, double eps_zero)
    : coefficients_(std::move(coefficients)), eps_zero_(eps_zero) {
  trim(0.0);
}

template <Scalar F>
Polynomial<F>::Polynomial(std::vector<F> coefficients, double eps_zero, double scale)
    : coefficients_(std::move(coefficients)), eps_zero_(eps_zero) {
  trim(scale);
}

template <Scalar F>
Polynomial<F> Polynomial<F>::constant(const F& c, double eps_zero) {
  return Polynomial(std::vector<F>{c}, eps_zero);
}

template <Scalar F>
Polynomial<F> Polynomial<F>::monomial(const F& c, int power, double eps_zero) {
  if (power < 0) throw std::invalid_argument("negative monomial power");
  std::vector<F> coefficients(static_cast<std::size_t>(power) + 1, F(0));
  coefficients.back() = c;
  return Polynomial(std::move(coefficients), eps_zero);
}

template <Scalar F>
Polynomial<F> Polynomial<F>::indeterminate(double eps_zero) {
  return monomial(F(1), 1, eps_zero);
}

template <Scalar F>
void Polynomial<F>::trim(double scale) {
  if constexpr (is_exact_v<F>) {
    while (!coefficients_.empty() && sgn(coefficients_.back()) == 0) coefficients_.pop_back();
  } else {
    const double threshold_scale = std::max(scale, magnitude());
    while (!coefficients_.empty() &&
           ScalarTraits<F>::is_zero(coefficients_.back(), eps_zero_, threshold_scale)) {
      coefficients_.pop_back();
    }
  }
}

template <Scalar F>
Degree Polynomial<F>::degree() const {
  if (coefficients_.empty()) return Degree::neg_infinity();
  return Degree(static_cast<int>(coefficients_.size()) - 1);
}

template <Scalar F>
F Polynomial<F>::coefficient(std::size_t power) const {
  return power < coefficients_.size() ? coefficients_[power] : F(0);
}

template <Scalar F>
const F& Polynomial<F>::leading_coefficient() const {
  if (coefficients_.empty()) throw Error(ErrorKind::DegenerateInput, "zero polynomial has no leading coefficient");
  return coefficients_.back();
}

template <Scalar F>
double Polynomial<F>::magnitude() const {
  double m = 0.0;
  for (const F& c : coefficients_) m = std::max(m, ScalarTraits<F>::magnitude(c));
  return m;
}

template <Scalar F>
Polynomial<F> Polynomial<F>::monic() const {
  if (is_zero()) return *this;
  const F inv = F(1) / leading_coefficient();
  std::vector<F> out(coefficients_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = coefficients_[k] * inv;
  out.back() = F(1);
  return Polynomial(std::move(out), eps_zero_);
}

template <Scalar F>
F Polynomial<F>::evaluate(const F& x) const {
  F acc(0);
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

template <Scalar F>
Polynomial<F> Polynomial<F>::operator-() const {
  Polynomial out = *this;
  for (F& c : out.coefficients_) c = -c;
  return out;
}

template <Scalar F>
Polynomial<F>& Polynomial<F>::operator+=(const Polynomial& other) {
  const double scale = std::max(magnitude(), other.magnitude());
  if (other.coefficients_.size() > coefficients_.size()) coefficients_.resize(other.coefficients_.size(), F(0));
  for (std::size_t k = 0; k < other.coefficients_.size(); ++k) coefficients_[k] += other.coefficients_[k];
  eps_zero_ = std::max(eps_zero_, other.eps_zero_);
  trim(scale);
  return *this;
}

template <Scalar F>
Polynomial<F>& Polynomial<F>::operator-=(const Polynomial& other) {
  const double scale = std::max(magnitude(), other.magnitude());
  if (other.coefficients_.size() > coefficients_.size()) coefficients_.resize(other.coefficients_.size(), F(0));
  for (std::size_t k = 0; k < other.coefficients_.size(); ++k) coefficients_[k] -= other.coefficients_[k];
  eps_zero_ = std::max(eps_zero_, other.eps_zero_);
  trim(scale);
  return *this;
}

template <Scalar F>
Polynomial<F>& Polynomial<F>::operator*=(const Polynomial& other) {
  eps_zero_ = std::max(eps_zero_, other.eps_zero_);
  if (is_zero() || other.is_zero()) {
    coefficients_.clear();
    return *this;
  }
  const double scale = magnitude() * other.magnitude();
  std::vector<F> out(coefficients_.size() + other.coefficients_.size() - 1, F(0));
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if constexpr (is_exact_v<F>) {
      if (sgn(coefficients_[i]) == 0) continue;
    }
    for (std::size_t j = 0; j < other.coefficients_.size(); ++j) out[i + j] += coefficients_[i] * other.coefficients_[j];
  }
  coefficients_ = std::move(out);
  trim(scale);
  return *this;
}

template <Scalar F>
Polynomial<F>& Polynomial<F>::operator*=(const F& scalar) {
  const double scale = magnitude() * ScalarTraits<F>::magnitude(scalar);
  for (F& c : coefficients_) c *= scalar;
  trim(scale);
  return *this;
}

template <Scalar F>
bool Polynomial<F>::approx_equal(const Polynomial& other, double rel_tol) const {
  const double scale = std::max(magnitude(), other.magnitude());
  const std::size_t n = std::max(coefficients_.size(), other.coefficients_.size());
  for (std::size_t k = 0; k < n; ++k) {
    const double diff = ScalarTraits<F>::magnitude(F(coefficient(k) - other.coefficient(k)));
    if (diff > rel_tol * scale) return false;
  }
  return true;
}

template <Scalar F>
DivMod<F> divmod(const Polynomial<F>& a, const Polynomial<F>& b) {
  if (b.is_zero()) throw Error(ErrorKind::DegenerateInput, "division by the zero polynomial");
  const double eps = std::max(a.eps_zero(), b.eps_zero());
  if (a.degree() < b.degree()) return {Polynomial<F>({}, eps), a};

  const auto bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  std::vector<F> rem(a.coefficients().begin(), a.coefficients().end());
  std::vector<F> quot(rem.size() - db, F(0));
  const F inv_lead = F(1) / bc.back();
  for (std::size_t k = rem.size(); k-- > db;) {
    const F factor = rem[k] * inv_lead;
    quot[k - db] = factor;
    for (std::size_t i = 0; i < db; ++i) rem[k - db + i] -= factor * bc[i];
    rem[k] = F(0);
  }
  rem.resize(db);
  Polynomial<F> quotient(std::move(quot), eps);
  const double scale = std::max(a.magnitude(), quotient.magnitude() * b.magnitude());
  return {std::move(quotient), Polynomial<F>(std::move(rem), eps, scale)};
}

template <Scalar F>
Bezout<F> ext_gcd(const Polynomial<F>& a, const Polynomial<F>& b) {
  if (a.is_zero() && b.is_zero()) throw Error(ErrorKind::DegenerateInput, "gcd of two zero polynomials");
  const double eps = std::max(a.eps_zero(), b.eps_zero());
  Polynomial<F> r0 = a, r1 = b;
  Polynomial<F> s0 = Polynomial<F>::constant(F(1), eps), s1({}, eps);
  Polynomial<F> t0({}, eps), t1 = Polynomial<F>::constant(F(1), eps);
  while (!r1.is_zero()) {
    DivMod<F> qr = divmod(r0, r1);
    Polynomial<F> s2 = s0 - qr.quotient * s1;
    Polynomial<F> t2 = t0 - qr.quotient * t1;
    r0 = std::move(r1);
    r1 = std::move(qr.remainder);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const F inv = F(1) / r0.leading_coefficient();
  return {r0.monic(), s0 * inv, t0 * inv};
}

template class Polynomial<Rational>;
template class Polynomial<double>;
template DivMod<Rational> divmod(const Polynomial<Rational>&, const Polynomial<Rational>&);
template DivMod<double> divmod(const Polynomial<double>&, const Polynomial<double>&);
template Bezout<Rational> ext_gcd(const Polynomial<Rational>&, const Polynomial<Rational>&);
template Bezout<double> ext_gcd(const Polynomial<double>&, const Polynomial<double>&);

}  // namespace sentinel
