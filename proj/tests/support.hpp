#pragma once

#include <cstddef>
#include <random>
#include <string_view>
#include <vector>

#include "sentinel/poly_text.hpp"
#include "sentinel/sim.hpp"

namespace sentinel::testing {

using Q = Rational;
using PolyQ = Polynomial<Rational>;
using MatQ = PolyMatrix<Rational>;

inline PolyQ px(std::string_view text) { return parse_polynomial<Rational>(text); }

// Row-major matrix from polynomial strings.
inline MatQ matq(std::size_t rows, std::size_t cols, std::initializer_list<const char*> entries) {
  std::vector<PolyQ> out;
  for (const char* e : entries) out.push_back(px(e));
  return MatQ(rows, cols, std::move(out));
}

inline std::vector<Q> example1_a() { return {0, 1, 0, 0, 0, 1, Q(1, 2), Q(-3, 2), Q(3, 2)}; }

inline std::vector<double> example2_continuous() {
  const double l1 = 4.3e-3, r1 = 83.1e-3, l2 = 2.4e-3, r2 = 67.3e-3, c0 = 18e-6;
  const double w = 100.0 * 3.14159265358979323846;
  return {-r1 / l1, w,        0,        0,        -1 / l1, 0,        //
          -w,       -r1 / l1, 0,        0,        0,       -1 / l1,  //
          0,        0,        -r2 / l2, w,        1 / l2,  0,        //
          0,        0,        -w,       -r2 / l2, 0,       1 / l2,   //
          1 / c0,   0,        -1 / c0,  0,        0,       w,        //
          0,        1 / c0,   0,        -1 / c0,  -w,      0};
}
inline constexpr double kExample2Period = 200e-6;

// Plain coefficient-vector arithmetic, independent of Polynomial.
namespace raw {

using Coeffs = std::vector<Q>;

inline void trim(Coeffs& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, Q(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

inline Coeffs add(const Coeffs& a, const Coeffs& b, int sign = 1) {
  Coeffs out(std::max(a.size(), b.size()), Q(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += sign * b[i];
  trim(out);
  return out;
}

inline Coeffs rem(Coeffs a, const Coeffs& b) {
  while (a.size() >= b.size()) {
    const Q f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline Coeffs gcd(Coeffs a, Coeffs b) {
  while (!b.empty()) {
    Coeffs r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Coeffs of(const PolyQ& p) { return Coeffs(p.coefficients().begin(), p.coefficients().end()); }

// Laplace expansion along the first row.
inline Coeffs det(const std::vector<std::vector<Coeffs>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return {Q(1)};
  if (n == 1) return m[0][0];
  Coeffs out;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Coeffs>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Coeffs> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    out = add(out, mul(m[0][j], det(minor)), j % 2 == 0 ? 1 : -1);
  }
  return out;
}

// Left unimodular iff the maximal minors have a constant nonzero GCD.
inline bool minors_oracle(const MatQ& m) {
  const std::size_t r = m.rows(), c = m.cols();
  Coeffs g;
  std::vector<std::size_t> pick(c);
  std::vector<bool> mask(r, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(c), true);
  do {
    std::vector<std::vector<Coeffs>> sub;
    for (std::size_t i = 0; i < r; ++i) {
      if (!mask[i]) continue;
      std::vector<Coeffs> row;
      for (std::size_t j = 0; j < c; ++j) row.push_back(of(m(i, j)));
      sub.push_back(std::move(row));
    }
    g = gcd(g, det(sub));
    if (g.size() == 1) return true;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return g.size() == 1;
}

}  // namespace raw

// y(t) = Σ_k p_k u(t+k), computed directly.
template <Scalar F>
std::vector<F> shift_apply(const std::vector<F>& p, const std::vector<F>& u) {
  if (u.size() < p.size()) return {};
  std::vector<F> out(u.size() - p.size() + 1, F(0));
  for (std::size_t t = 0; t < out.size(); ++t)
    for (std::size_t k = 0; k < p.size(); ++k) out[t] += p[k] * u[t + k];
  return out;
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  std::mt19937_64& engine() { return rng_; }

  Q small_rational() {
    Q q(integer(-6, 6), integer(1, 3));
    q.canonicalize();
    return q;
  }
  Q nonzero_rational() {
    Q q(0);
    while (sgn(q) == 0) q = small_rational();
    return q;
  }

  PolyQ poly(int max_degree) {
    const int d = integer(0, max_degree);
    std::vector<Q> c;
    for (int k = 0; k <= d; ++k) c.push_back(Q(integer(-3, 3)));
    return PolyQ(std::move(c));
  }

  PolyQ monic(int degree) {
    std::vector<Q> c;
    for (int k = 0; k < degree; ++k) c.push_back(Q(integer(-3, 3)));
    c.push_back(Q(1));
    return PolyQ(std::move(c));
  }

  MatQ matrix(std::size_t rows, std::size_t cols, int max_degree) {
    MatQ m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = poly(max_degree);
    return m;
  }

  // Product of elementary row operations with multipliers of degree <= 1.
  MatQ unimodular(std::size_t n, int operations) {
    MatQ v = MatQ::identity(n);
    if (n < 2) return v;
    for (int k = 0; k < operations; ++k) {
      const std::size_t i = static_cast<std::size_t>(integer(0, static_cast<int>(n) - 1));
      std::size_t j = static_cast<std::size_t>(integer(0, static_cast<int>(n) - 2));
      if (j >= i) ++j;
      switch (integer(0, 2)) {
        case 0:
          v.subtract_row_multiple(i, j, poly(1));
          break;
        case 1:
          v.swap_rows(i, j);
          break;
        default:
          v.scale_row(i, nonzero_rational());
      }
    }
    return v;
  }

  // Entries in [-2, 2]; sparse matrices tend to have a lower security index.
  std::vector<Q> state_matrix(std::size_t n, bool sparse = false) {
    std::vector<Q> a(n * n);
    for (auto& x : a) x = sparse && integer(0, 2) != 0 ? Q(0) : Q(integer(-2, 2));
    return a;
  }

  // [I, -c; 0, a] with every c_j coprime to a, mixed by a unimodular factor.
  MatQ maximally_secure(std::size_t n, int degree, int mixing) {
    const PolyQ a = monic(degree);
    MatQ r = MatQ::identity(n);
    r(n - 1, n - 1) = a;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      PolyQ c;
      do {
        c = poly(degree - 1);
      } while (c.is_zero() || raw::gcd(raw::of(c), raw::of(a)).size() != 1);
      r(j, n - 1) = -c;
    }
    return unimodular(n, mixing) * r;
  }

  std::vector<Q> samples(std::size_t count) {
    std::vector<Q> out(count);
    for (auto& x : out) x = small_rational();
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

// Attack of the given support with random nonzero rational samples.
inline SignalVector<Q> random_attack(Random& rnd, std::size_t sensors, std::size_t horizon,
                                     const std::vector<std::size_t>& support) {
  SignalVector<Q> eta = SignalVector<Q>::zeros(sensors, horizon);
  for (std::size_t j : support)
    for (std::size_t t = 0; t < horizon; ++t) eta(j, t) = rnd.nonzero_rational();
  return eta;
}

inline std::vector<std::size_t> random_support(Random& rnd, std::size_t sensors, std::size_t weight) {
  std::vector<std::size_t> all(sensors);
  for (std::size_t i = 0; i < sensors; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rnd.engine());
  all.resize(weight);
  std::sort(all.begin(), all.end());
  return all;
}

// Clean trajectory of the behavior of kernel r, seeded with random data.
inline SignalVector<Q> random_trajectory(Random& rnd, const MatQ& r, std::size_t horizon) {
  const auto spec = SystemSpec<Q>::from_kernel(r);
  const std::vector<Q> init = rnd.samples(initial_size(spec));
  return simulate(spec, std::span<const Q>(init), horizon);
}

template <Scalar F>
bool all_zero_from(const SignalVector<F>& s, std::size_t from) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t t = from; t < s.horizon(); ++t)
      if (s(i, t) != F(0)) return false;
  return true;
}

}  // namespace sentinel::testing
