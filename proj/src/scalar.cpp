#include "sentinel/scalar.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "sentinel/errors.hpp"

namespace sentinel {
namespace {

std::string trimmed(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorKind::ParseError, "malformed number '" + std::string(text) + "'");
}

// [+-]digits[.digits][(e|E)[+-]digits]
Rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long exponent = 0;
  bool any_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits.push_back(text[pos++]);
    any_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits.push_back(text[pos++]);
      --exponent;
      any_digit = true;
    }
  }
  if (!any_digit) bad_number(text);
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    long e = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos + (text[pos] == '+' ? 1 : 0),
                                     text.data() + text.size(), e);
    if (ec != std::errc() || ptr != text.data() + text.size()) bad_number(text);
    exponent += e;
    pos = text.size();
  }
  if (pos != text.size()) bad_number(text);

  mpz_class mantissa(digits, 10);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational value = exponent < 0 ? Rational(mantissa, power) : Rational(mantissa * power);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view raw) {
  const std::string text = trimmed(raw);
  if (text.empty()) bad_number(raw);
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_decimal(text);
  const Rational num = parse_decimal(std::string_view(text).substr(0, slash));
  const Rational den = parse_decimal(std::string_view(text).substr(slash + 1));
  if (sgn(den) == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
  Rational out = num / den;
  out.canonicalize();
  return out;
}

double parse_real(std::string_view raw) {
  const std::string text = trimmed(raw);
  if (text.find('/') != std::string::npos) return parse_rational(text).get_d();
  double value = 0.0;
  const char* begin = text.data() + (!text.empty() && text[0] == '+' ? 1 : 0);
  auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) bad_number(raw);
  return value;
}

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  return parse_rational(text);
}

template <>
double parse_scalar<double>(std::string_view text) {
  return parse_real(text);
}

std::string format_scalar(const Rational& value) {
  return value.get_str();
}

std::string format_scalar(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

Rational rational_from_double(double value) {
  return parse_rational(format_scalar(value));
}

}  // namespace sentinel
