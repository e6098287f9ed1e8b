#pragma once

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

namespace sentinel {

using Rational = mpq_class;

inline constexpr double kDefaultEpsZero = 1e-9;
inline constexpr double kDefaultEpsSig = 1e-6;

enum class CoefficientMode { exact, tolerant };

// The two coefficient fields: exact rationals and tolerant doubles. A single
// computation is instantiated on exactly one of them.
template <typename F>
concept Scalar = std::same_as<F, Rational> || std::same_as<F, double>;

template <Scalar F>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr CoefficientMode mode = CoefficientMode::exact;
  static bool is_zero(const Rational& c, double /*eps*/, double /*scale*/) { return sgn(c) == 0; }
  static double magnitude(const Rational& c) { return std::fabs(c.get_d()); }
  static Rational from_double(double v) { return Rational(v); }
  static double to_double(const Rational& c) { return c.get_d(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr CoefficientMode mode = CoefficientMode::tolerant;
  static bool is_zero(double c, double eps, double scale) { return std::fabs(c) <= eps * scale; }
  static double magnitude(double c) { return std::fabs(c); }
  static double from_double(double v) { return v; }
  static double to_double(double c) { return c; }
};

template <Scalar F>
inline constexpr bool is_exact_v = ScalarTraits<F>::mode == CoefficientMode::exact;

// Accepts integers, decimals with optional exponent, and p/q fractions.
// Decimal text converts exactly ("0.1" is 1/10).
Rational parse_rational(std::string_view text);
double parse_real(std::string_view text);

template <Scalar F>
F parse_scalar(std::string_view text);
template <>
Rational parse_scalar<Rational>(std::string_view text);
template <>
double parse_scalar<double>(std::string_view text);

// Rational: "p" or "p/q". Double: shortest round-trip decimal.
std::string format_scalar(const Rational& value);
std::string format_scalar(double value);

// Shortest decimal spelling of `value`, read back as an exact rational.
Rational rational_from_double(double value);

// Exact-mode rational from a double: bit-exact (dyadic) conversion.
template <Scalar F>
F scalar_from_double(double value) {
  return ScalarTraits<F>::from_double(value);
}

template <Scalar F>
double to_double(const F& value) {
  return ScalarTraits<F>::to_double(value);
}

}  // namespace sentinel
