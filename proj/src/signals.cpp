#include "sentinel/signals.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "sentinel/errors.hpp"

namespace sentinel {

template <Scalar F>
SignalVector<F>::SignalVector(std::vector<std::vector<F>> components, std::size_t valid_from)
    : components_(std::move(components)), valid_from_(valid_from) {
  horizon_ = components_.empty() ? 0 : components_.front().size();
  for (const auto& c : components_) {
    if (c.size() != horizon_) throw Error(ErrorKind::DegenerateInput, "signal components differ in horizon");
  }
  if (valid_from_ > horizon_) throw Error(ErrorKind::DegenerateInput, "valid_from beyond horizon");
}

template <Scalar F>
SignalVector<F> SignalVector<F>::zeros(std::size_t components, std::size_t horizon) {
  return SignalVector(std::vector<std::vector<F>>(components, std::vector<F>(horizon, F(0))));
}

template <Scalar F>
SignalVector<F> SignalVector<F>::select(std::span<const std::size_t> components) const {
  std::vector<std::vector<F>> out;
  out.reserve(components.size());
  for (std::size_t i : components) {
    if (i >= components_.size()) throw Error(ErrorKind::ShapeError, "signal component out of range");
    out.push_back(components_[i]);
  }
  SignalVector s(std::move(out), 0);
  s.horizon_ = horizon_;
  s.valid_from_ = valid_from_;
  return s;
}

template <Scalar F>
SignalVector<F> SignalVector<F>::truncated(std::size_t horizon) const {
  if (horizon > horizon_) throw Error(ErrorKind::HorizonTooShort, "cannot extend a signal by truncation");
  std::vector<std::vector<F>> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.emplace_back(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(horizon));
  SignalVector s(std::move(out), 0);
  s.horizon_ = horizon;
  s.valid_from_ = std::min(valid_from_, horizon);
  return s;
}

template <Scalar F>
SignalVector<F> SignalVector<F>::with_valid_from(std::size_t valid_from) const {
  if (valid_from > horizon_) throw Error(ErrorKind::HorizonTooShort, "watermark beyond horizon");
  SignalVector s = *this;
  s.valid_from_ = valid_from;
  return s;
}

template <Scalar F>
double SignalVector<F>::magnitude() const {
  double m = 0.0;
  for (const auto& c : components_)
    for (std::size_t t = valid_from_; t < horizon_; ++t) m = std::max(m, ScalarTraits<F>::magnitude(c[t]));
  return m;
}

template <Scalar F>
SignalVector<F> SignalVector<F>::combine(const SignalVector& a, const SignalVector& b, int sign) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeError, "signal component counts differ");
  const std::size_t horizon = std::min(a.horizon_, b.horizon_);
  std::vector<std::vector<F>> out(a.size(), std::vector<F>(horizon));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t t = 0; t < horizon; ++t) {
      out[i][t] = sign > 0 ? F(a.components_[i][t] + b.components_[i][t]) : F(a.components_[i][t] - b.components_[i][t]);
    }
  }
  SignalVector s(std::move(out), 0);
  s.horizon_ = horizon;
  s.valid_from_ = std::min(std::max(a.valid_from_, b.valid_from_), horizon);
  return s;
}

template <Scalar F>
std::vector<F> apply_poly(const Polynomial<F>& p, std::span<const F> u) {
  const std::size_t deg = p.is_zero() ? 0 : static_cast<std::size_t>(p.degree().value());
  if (u.size() < deg + 1) {
    throw Error(ErrorKind::HorizonTooShort, "signal of length " + std::to_string(u.size()) +
                                                " is too short for an operator of degree " + std::to_string(deg));
  }
  const std::size_t horizon = u.size() - deg;
  std::vector<F> out(horizon, F(0));
  const auto c = p.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if constexpr (is_exact_v<F>) {
      if (sgn(c[k]) == 0) continue;
    }
    for (std::size_t t = 0; t < horizon; ++t) out[t] += c[k] * u[t + k];
  }
  return out;
}

template <Scalar F>
SignalVector<F> apply_poly_matrix(const PolyMatrix<F>& p, const SignalVector<F>& u) {
  if (p.cols() != u.size()) throw Error(ErrorKind::ShapeError, "operator columns must match signal components");
  const Degree max_deg = p.max_degree();
  const std::size_t deg = max_deg.is_neg_infinity() ? 0 : static_cast<std::size_t>(max_deg.value());
  if (u.horizon() < deg + 1) {
    throw Error(ErrorKind::HorizonTooShort, "signal of length " + std::to_string(u.horizon()) +
                                                " is too short for an operator of degree " + std::to_string(deg));
  }
  const std::size_t horizon = u.horizon() - deg;
  std::vector<std::vector<F>> out(p.rows(), std::vector<F>(horizon, F(0)));
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (p(i, j).is_zero()) continue;
      const std::vector<F> term = apply_poly(p(i, j), u.component(j));
      for (std::size_t t = 0; t < horizon; ++t) out[i][t] += term[t];
    }
  }
  return SignalVector<F>(std::move(out), std::min(u.valid_from(), horizon));
}

template <Scalar F>
SupportProfile support(const SignalVector<F>& signal, double eps_sig, double scale) {
  SupportProfile profile;
  if (scale < 0.0) scale = signal.magnitude();
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const auto c = signal.component(i);
    for (std::size_t t = signal.valid_from(); t < signal.horizon(); ++t) {
      bool nonzero = false;
      if constexpr (is_exact_v<F>) {
        nonzero = sgn(c[t]) != 0;
      } else {
        nonzero = std::abs(c[t]) > eps_sig * scale;
      }
      if (nonzero) {
        profile.support.push_back(i);
        break;
      }
    }
  }
  return profile;
}

namespace {

template <Scalar F>
bool same_on_window(const SignalVector<F>& a, const SignalVector<F>& b, std::size_t from, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t t = from; t < a.horizon(); ++t) {
      if constexpr (is_exact_v<F>) {
        if (a(i, t) != b(i, t)) return false;
      } else {
        if (std::abs(a(i, t) - b(i, t)) > tol) return false;
      }
    }
  }
  return true;
}

}  // namespace

template <Scalar F>
VoteResult majority_vote(std::span<const SignalVector<F>> candidates, std::size_t valid_from, double eps_sig) {
  if (candidates.empty()) throw Error(ErrorKind::DegenerateInput, "majority vote over no candidates");
  const std::size_t horizon = candidates.front().horizon();
  const std::size_t width = candidates.front().size();
  double scale = 0.0;
  for (const auto& c : candidates) {
    if (c.horizon() != horizon || c.size() != width) {
      throw Error(ErrorKind::DegenerateInput, "vote candidates must share horizon and width");
    }
    if constexpr (!is_exact_v<F>) scale = std::max(scale, c.with_valid_from(std::min(valid_from, horizon)).magnitude());
  }
  if (valid_from >= horizon) throw Error(ErrorKind::HorizonTooShort, "vote window is empty");
  const double tol = eps_sig * scale;

  VoteResult result;
  std::vector<std::size_t> representative;
  result.class_of.resize(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    std::size_t cls = representative.size();
    for (std::size_t c = 0; c < representative.size(); ++c) {
      if (same_on_window(candidates[k], candidates[representative[c]], valid_from, tol)) {
        cls = c;
        break;
      }
    }
    if (cls == representative.size()) {
      representative.push_back(k);
      result.class_sizes.push_back(0);
    }
    ++result.class_sizes[cls];
    result.class_of[k] = cls;
  }
  const auto best = std::max_element(result.class_sizes.begin(), result.class_sizes.end());
  if (std::count(result.class_sizes.begin(), result.class_sizes.end(), *best) > 1) {
    throw Error(ErrorKind::MajorityTie, "no strict plurality among " + std::to_string(candidates.size()) + " candidates",
                {}, result.class_sizes);
  }
  result.winner_class = static_cast<std::size_t>(best - result.class_sizes.begin());
  result.winner = representative[result.winner_class];
  return result;
}

template <Scalar F>
VoteResult majority_vote(std::span<const std::vector<F>> candidates, std::size_t valid_from, double eps_sig) {
  std::vector<SignalVector<F>> wrapped;
  wrapped.reserve(candidates.size());
  for (const auto& c : candidates) wrapped.emplace_back(std::vector<std::vector<F>>{c}, 0);
  return majority_vote(std::span<const SignalVector<F>>(wrapped), valid_from, eps_sig);
}

template <Scalar F>
void write_csv(std::ostream& out, const SignalVector<F>& signal) {
  out << "t";
  for (std::size_t i = 0; i < signal.size(); ++i) out << ",y" << (i + 1);
  out << "\n";
  for (std::size_t t = 0; t < signal.horizon(); ++t) {
    out << t;
    for (std::size_t i = 0; i < signal.size(); ++i) out << "," << format_scalar(signal(i, t));
    out << "\n";
  }
}

template <Scalar F>
SignalVector<F> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 2 || header[0] != "t") throw Error(ErrorKind::ParseError, "CSV header must be t,y1,...,yN");
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i] != "y" + std::to_string(i)) throw Error(ErrorKind::ParseError, "unexpected CSV column '" + header[i] + "'");
  }
  const std::size_t n = header.size() - 1;
  std::vector<std::vector<F>> components(n);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != n + 1) {
      throw Error(ErrorKind::ParseError, "CSV row " + std::to_string(row + 1) + " has " + std::to_string(cells.size()) +
                                             " cells, expected " + std::to_string(n + 1));
    }
    if (cells[0] != std::to_string(row)) throw Error(ErrorKind::ParseError, "CSV time column must count 0,1,2,...");
    for (std::size_t i = 0; i < n; ++i) components[i].push_back(parse_scalar<F>(cells[i + 1]));
    ++row;
  }
  return SignalVector<F>(std::move(components));
}

#define SENTINEL_INSTANTIATE(F)                                                                              \
  template class SignalVector<F>;                                                                            \
  template std::vector<F> apply_poly(const Polynomial<F>&, std::span<const F>);                              \
  template SignalVector<F> apply_poly_matrix(const PolyMatrix<F>&, const SignalVector<F>&);                  \
  template SupportProfile support(const SignalVector<F>&, double, double);                                   \
  template VoteResult majority_vote(std::span<const SignalVector<F>>, std::size_t, double);                  \
  template VoteResult majority_vote(std::span<const std::vector<F>>, std::size_t, double);                   \
  template void write_csv(std::ostream&, const SignalVector<F>&);                                            \
  template SignalVector<F> read_csv<F>(std::istream&);
SENTINEL_INSTANTIATE(Rational)
SENTINEL_INSTANTIATE(double)
#undef SENTINEL_INSTANTIATE

}  // namespace sentinel
