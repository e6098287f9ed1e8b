#include <doctest.h>

#include <sstream>

#include "sentinel/errors.hpp"
#include "printers.hpp"

using namespace sentinel;
using namespace sentinel::testing;

namespace {

SignalVector<Q> example1_clean(std::size_t horizon) {
  const auto spec = SystemSpec<Q>::from_state_space(3, example1_a());
  const std::vector<Q> x0{1, 1, 1};
  return simulate(spec, std::span<const Q>(x0), horizon);
}

std::vector<Q> seq(std::initializer_list<int> v) { return std::vector<Q>(v.begin(), v.end()); }

}  // namespace

TEST_CASE("apply_poly uses forward shifts") {
  const std::vector<Q> u = seq({1, 2, 4, 8, 16});
  CHECK(apply_poly(px("1"), std::span<const Q>(u)) == u);
  CHECK(apply_poly(px("x"), std::span<const Q>(u)) == seq({2, 4, 8, 16}));
  CHECK(apply_poly(px("x-2"), std::span<const Q>(u)) == seq({0, 0, 0, 0}));
  CHECK(apply_poly(px("x-1"), std::span<const Q>(seq({3, 3, 3}))) == seq({0, 0}));
  CHECK(apply_poly(PolyQ(), std::span<const Q>(u)) == seq({0, 0, 0, 0, 0}));
  CHECK_THROWS_AS(apply_poly(px("x^5"), std::span<const Q>(u)), Error);

  Random rnd(41);
  for (int k = 0; k < 30; ++k) {
    const PolyQ p = rnd.poly(3);
    if (p.is_zero()) continue;
    const std::vector<Q> v = rnd.samples(12);
    CHECK(apply_poly(p, std::span<const Q>(v)) == shift_apply(raw::of(p), v));
  }
}

TEST_CASE("Example 1 observers reproduce y3 on the clean trajectory") {
  const SignalVector<Q> y = example1_clean(20);
  const std::vector<Q> o1 = apply_poly(px("x^2"), y.component(0));
  const std::vector<Q> o2 = apply_poly(px("x"), y.component(1));
  for (std::size_t t = 0; t < o1.size(); ++t) {
    CHECK(o1[t] == y(2, t));
    CHECK(o2[t] == y(2, t));
  }
}

TEST_CASE("apply_poly_matrix annihilates the behavior") {
  const SignalVector<Q> y = example1_clean(30);
  const MatQ r = MatQ::shift_minus(3, example1_a());
  const SignalVector<Q> s = apply_poly_matrix(r, y);
  CHECK(s.horizon() == 29);
  CHECK(all_zero_from(s, 0));
  CHECK(apply_poly_matrix(MatQ::identity(3), y) == y);

  SignalVector<Q> eta = SignalVector<Q>::zeros(3, 30);
  for (std::size_t t = 0; t < 30; ++t) eta(2, t) = Q(static_cast<int>(t % 5) - 2) / 3;
  const SignalVector<Q> attacked = apply_poly_matrix(r, y + eta);
  CHECK(attacked == apply_poly_matrix(r, eta));
  CHECK_FALSE(all_zero_from(attacked, 0));
}

TEST_CASE("signal vector arithmetic") {
  SignalVector<Q> a({seq({1, 2, 3}), seq({4, 5, 6})}, 1);
  SignalVector<Q> b({seq({1, 1}), seq({1, 1})});
  const SignalVector<Q> sum = a + b;
  CHECK(sum.horizon() == 2);
  CHECK(sum.valid_from() == 1);
  CHECK(sum(1, 1) == Q(6));
  CHECK((a - a).magnitude() == 0.0);
  CHECK(a.magnitude() == 6.0);
  const std::vector<std::size_t> second{1};
  CHECK(a.select(second).component(0)[0] == Q(4));
  CHECK_THROWS_AS(SignalVector<Q>({seq({1, 2}), seq({1})}), Error);
}

TEST_CASE("support profile") {
  SignalVector<Q> s({seq({0, 0, 0}), seq({0, 1, 0}), seq({5, 0, 0})}, 1);
  CHECK(support(s).support == std::vector<std::size_t>{1});

  SignalVector<double> d({{0.0, 1e-12}, {0.0, 0.5}});
  CHECK(support(d, 1e-6).support == std::vector<std::size_t>{1});
  CHECK(support(d, 1e-6, 1e-7).support == std::vector<std::size_t>{0, 1});
}

TEST_CASE("majority vote") {
  const std::vector<std::vector<Q>> uuv{seq({1, 2, 3}), seq({1, 2, 3}), seq({1, 2, 4})};
  VoteResult v = majority_vote(std::span<const std::vector<Q>>(uuv), 0);
  CHECK(v.winner == 0);
  CHECK(v.class_sizes == std::vector<std::size_t>{2, 1});
  CHECK(v.class_of == std::vector<std::size_t>{0, 0, 1});

  const std::vector<std::vector<Q>> one{seq({7})};
  CHECK(majority_vote(std::span<const std::vector<Q>>(one), 0).class_sizes == std::vector<std::size_t>{1});

  // Disagreement before valid_from is ignored.
  const std::vector<std::vector<Q>> late{seq({9, 2, 3}), seq({1, 2, 3}), seq({0, 5, 5})};
  CHECK(majority_vote(std::span<const std::vector<Q>>(late), 1).class_sizes == std::vector<std::size_t>{2, 1});

  const std::vector<std::vector<Q>> tie{seq({1}), seq({2}), seq({1}), seq({2})};
  try {
    majority_vote(std::span<const std::vector<Q>>(tie), 0);
    FAIL("expected MajorityTie");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MajorityTie);
    CHECK(e.tally() == std::vector<std::size_t>{2, 2});
  }
  CHECK_THROWS_AS(majority_vote(std::span<const std::vector<Q>>(), 0), Error);

  const std::vector<std::vector<double>> close{{1.0, 2.0}, {1.0 + 1e-12, 2.0}, {1.5, 2.0}};
  CHECK(majority_vote(std::span<const std::vector<double>>(close), 0).class_sizes == std::vector<std::size_t>{2, 1});
}

TEST_CASE("Example 1 vote under a sensor 3 attack") {
  const SignalVector<Q> y = example1_clean(30);
  SignalVector<Q> r = y;
  Random rnd(42);
  for (std::size_t t = 0; t < 30; ++t) r(2, t) += rnd.nonzero_rational();
  std::vector<std::vector<Q>> candidates{apply_poly(px("x^2"), r.component(0)), apply_poly(px("x"), r.component(1)),
                                         std::vector<Q>(r.component(2).begin(), r.component(2).end())};
  for (auto& c : candidates) c.resize(28);
  const VoteResult v = majority_vote(std::span<const std::vector<Q>>(candidates), 2);
  CHECK(v.class_sizes == std::vector<std::size_t>{2, 1});
  for (std::size_t t = 0; t < 28; ++t) CHECK(candidates[v.winner][t] == y(2, t));
}

TEST_CASE("CSV round trip") {
  SignalVector<Q> s({{Q(1, 3), Q(-2)}, {Q(0), Q(5, 7)}});
  std::stringstream io;
  write_csv(io, s);
  CHECK(io.str() == "t,y1,y2\n0,1/3,0\n1,-2,5/7\n");
  CHECK(read_csv<Q>(io) == s);

  SignalVector<double> d({{0.1, -2.5e-7}});
  std::stringstream dio;
  write_csv(dio, d);
  CHECK(read_csv<double>(dio) == d);

  for (const char* bad : {"", "t,y2\n0,1\n", "t,y1\n1,1\n", "t,y1\n0,abc\n", "t,y1,y2\n0,1\n"}) {
    const std::string text = bad;
    CAPTURE(text);
    std::stringstream in(bad);
    CHECK_THROWS_AS(read_csv<Q>(in), Error);
  }
}
