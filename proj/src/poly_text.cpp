#include "sentinel/poly_text.hpp"

#include <cctype>
#include <map>

#include "sentinel/errors.hpp"

namespace sentinel {
namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

[[noreturn]] void bad_polynomial(std::string_view text, const std::string& why) {
  throw Error(ErrorKind::ParseError, "malformed polynomial '" + std::string(text) + "': " + why);
}

// Length of the numeric coefficient starting at `pos` (digits, '.', exponent,
// '/' denominators).
std::size_t scan_number(const std::string& s, std::size_t pos) {
  std::size_t i = pos;
  auto digits = [&] {
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
  };
  auto exponent = [&] {
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
      if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
        i = j;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
    }
  };
  digits();
  exponent();
  if (i > pos && i < s.size() && s[i] == '/') {
    ++i;
    digits();
    exponent();
  }
  return i - pos;
}

}  // namespace

template <Scalar F>
Polynomial<F> parse_polynomial(std::string_view raw, double eps_zero) {
  const std::string s = strip_spaces(raw);
  if (s.empty()) bad_polynomial(raw, "empty");
  std::map<int, F> terms;
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
      if (pos >= s.size() || s[pos] == '+' || s[pos] == '-') bad_polynomial(raw, "dangling sign");
    } else if (pos > 0) {
      bad_polynomial(raw, "missing operator between terms");
    }
    F coefficient(1);
    const std::size_t len = scan_number(s, pos);
    const bool has_number = len > 0;
    if (has_number) {
      coefficient = parse_scalar<F>(std::string_view(s).substr(pos, len));
      pos += len;
    }
    int power = 0;
    if (pos < s.size() && s[pos] == '*') {
      if (!has_number) bad_polynomial(raw, "dangling '*'");
      ++pos;
      if (pos >= s.size() || s[pos] != 'x') bad_polynomial(raw, "expected x after '*'");
    }
    if (pos < s.size() && s[pos] == 'x') {
      ++pos;
      power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t end = pos;
        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
        if (end == pos) bad_polynomial(raw, "expected exponent after '^'");
        power = std::stoi(s.substr(pos, end - pos));
        pos = end;
      }
    } else if (!has_number) {
      bad_polynomial(raw, "unexpected character '" + std::string(1, pos < s.size() ? s[pos] : '?') + "'");
    }
    if (negative) coefficient = -coefficient;
    auto [it, inserted] = terms.emplace(power, coefficient);
    if (!inserted) it->second += coefficient;
  }
  const int top = terms.empty() ? 0 : terms.rbegin()->first;
  std::vector<F> coefficients(static_cast<std::size_t>(top) + 1, F(0));
  for (const auto& [power, c] : terms) coefficients[static_cast<std::size_t>(power)] = c;
  return Polynomial<F>(std::move(coefficients), eps_zero);
}

template <Scalar F>
std::string format_polynomial(const Polynomial<F>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto c = p.coefficients();
  for (std::size_t k = c.size(); k-- > 0;) {
    const F& value = c[k];
    if constexpr (is_exact_v<F>) {
      if (sgn(value) == 0) continue;
    } else {
      if (value == 0.0) continue;
    }
    const bool negative = value < 0;
    const F magnitude = negative ? F(-value) : value;
    if (negative) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    const bool unit = magnitude == F(1);
    std::string coef = format_scalar(magnitude);
    if (k == 0) {
      out += coef;
      continue;
    }
    if (!unit) {
      out += coef;
      // keep "1e-05*x" readable
      if (coef.find_first_of("eE") != std::string::npos) out += "*";
    }
    out += "x";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

template <Scalar F>
F scalar_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_scalar<F>(j.get<std::string>());
  if (j.is_number_integer()) return F(static_cast<long>(j.get<long long>()));
  if (j.is_number()) {
    if constexpr (is_exact_v<F>) {
      return rational_from_double(j.get<double>());
    } else {
      return j.get<double>();
    }
  }
  throw Error(ErrorKind::ParseError, "expected a number, got " + j.dump());
}

template <Scalar F>
PolyMatrix<F> poly_matrix_from_json(const nlohmann::json& j, double eps_zero) {
  if (!j.is_array() || j.empty() || !j.front().is_array() || j.front().empty()) {
    throw Error(ErrorKind::ParseError, "matrix must be a non-empty array of non-empty arrays");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().size();
  PolyMatrix<F> out(rows, cols, eps_zero);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw Error(ErrorKind::ParseError, "ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) {
      const auto& e = j[i][k];
      if (e.is_string()) {
        out(i, k) = parse_polynomial<F>(e.get<std::string>(), eps_zero);
      } else {
        out(i, k) = Polynomial<F>::constant(scalar_from_json<F>(e), eps_zero);
      }
    }
  }
  return out;
}

template <Scalar F>
nlohmann::json poly_matrix_to_json(const PolyMatrix<F>& m) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(format_polynomial(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

#define SENTINEL_INSTANTIATE(F)                                                       \
  template Polynomial<F> parse_polynomial<F>(std::string_view, double);               \
  template std::string format_polynomial(const Polynomial<F>&);                       \
  template F scalar_from_json<F>(const nlohmann::json&);                              \
  template PolyMatrix<F> poly_matrix_from_json<F>(const nlohmann::json&, double);     \
  template nlohmann::json poly_matrix_to_json(const PolyMatrix<F>&);
SENTINEL_INSTANTIATE(Rational)
SENTINEL_INSTANTIATE(double)
#undef SENTINEL_INSTANTIATE

}  // namespace sentinel
