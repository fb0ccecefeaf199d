#include <gtest/gtest.h>

#include <random>

#include "charmom/laurent.hpp"
#include "charmom/scalar.hpp"

using namespace charmom;

namespace {

Laurent<Q> z_plus(int s) {  // z + s z^{-1}
  Laurent<Q> f(1);
  f.add(LExp{1}, 1);
  f.add(LExp{-1}, s);
  return f;
}

Laurent<Q> one_minus(int k) {  // 1 - z^k
  Laurent<Q> f(1, Q(1));
  f.add(LExp{static_cast<int16_t>(k)}, -1);
  return f;
}

RationalFunction q_() { return RationalFunction::param(params_qt(), "q"); }
RationalFunction t_() { return RationalFunction::param(params_qt(), "t"); }

}  // namespace

TEST(Laurent, DifferenceOfSquares) {
  auto p = z_plus(1) * z_plus(-1);
  Laurent<Q> want(1);
  want.add(LExp{2}, 1);
  want.add(LExp{-2}, -1);
  EXPECT_EQ(p, want);
}

TEST(Laurent, TorusModulusSquared) {
  auto p = one_minus(1) * one_minus(1).reflected();
  EXPECT_EQ(p.constant_term(), 2);
  EXPECT_EQ(p.coeff(LExp{1}), -1);
  EXPECT_EQ(p.coeff(LExp{-1}), -1);
  EXPECT_EQ(p.size(), 3u);
  auto r = one_minus(2) * one_minus(2).reflected();
  EXPECT_EQ(r.constant_term(), 2);
  EXPECT_EQ(r.coeff(LExp{2}), -1);
  EXPECT_EQ(r.coeff(LExp{-2}), -1);
}

TEST(Laurent, ConstantTerm) {
  auto w = one_minus(1) * one_minus(1).reflected();
  EXPECT_EQ(constant_term(w), 2);
  auto plus = z_plus(1) + Laurent<Q>(1, Q(2));  // (1+z)(1+z^{-1})
  EXPECT_EQ(constant_term(plus * w), 2);
  EXPECT_EQ(constant_term_of_product(plus, w), 2);
  EXPECT_EQ(constant_term(Laurent<Q>::var(1, 0, 3)), 0);
}

TEST(Laurent, MultiplicationIsCommutativeAndSupportBounded) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> e(-3, 3), c(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    Laurent<Q> a(2), b(2);
    for (int k = 0; k < 5; ++k) {
      a.add(LExp{static_cast<int16_t>(e(rng)), static_cast<int16_t>(e(rng))}, c(rng));
      b.add(LExp{static_cast<int16_t>(e(rng)), static_cast<int16_t>(e(rng))}, c(rng));
    }
    EXPECT_EQ(a * b, b * a);
    auto ab = a * b;
    EXPECT_LE(ab.size(), a.size() * b.size());
    for (auto& [k, v] : ab.terms()) EXPECT_NE(sgn(v), 0);
  }
}

TEST(Laurent, CTBilinearAndSymmetric) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> e(-2, 2), c(-3, 3);
  auto rnd = [&] {
    Laurent<Q> a(2);
    for (int k = 0; k < 4; ++k) a.add(LExp{static_cast<int16_t>(e(rng)), static_cast<int16_t>(e(rng))}, c(rng));
    return a;
  };
  for (int trial = 0; trial < 10; ++trial) {
    auto f = rnd(), g = rnd(), h = rnd();
    EXPECT_EQ(constant_term((f + h) * g), constant_term(f * g) + constant_term(h * g));
    EXPECT_EQ(constant_term(f * g.reflected()), constant_term(g * f.reflected()));
  }
}

TEST(Laurent, Evaluate) {
  EXPECT_EQ(z_plus(1).evaluate(std::vector<Q>{Q(-1)}), -2);
  EXPECT_THROW(z_plus(1).evaluate(std::vector<Q>{Q(0)}), std::domain_error);
  EXPECT_THROW(z_plus(1).evaluate(std::vector<Q>{}), std::invalid_argument);
  Laurent<Q> a(1), b(2);
  EXPECT_THROW(a + b, std::invalid_argument);
}

TEST(RationalFunction, EvaluateExamples) {
  RationalFunction one(1);
  auto f = (one + q_()) * (one - t_()) / (one - q_() * t_());
  EXPECT_EQ(f.eval(std::vector<Q>{Q(0), Q(0)}), 1);
  EXPECT_EQ(f.eval(std::vector<Q>{make_q(1, 2), make_q(1, 3)}), make_q(6, 5));
  EXPECT_THROW(f.eval(std::vector<Q>{Q(1), Q(1)}), std::domain_error);
}

TEST(RationalFunction, ReducedCanonicalForm) {
  RationalFunction one(1);
  auto a = (one - q_() * q_()) / (one - q_());
  EXPECT_EQ(a, one + q_());
  auto b = (q_() * t_() - t_()) / (t_() * t_() - t_());
  EXPECT_EQ(b, (q_() - one) / (t_() - one));
  EXPECT_TRUE(b.den().lc() == 1);
  // cancellation back to zero
  EXPECT_TRUE((b - b).is_zero());
}

TEST(RationalFunction, ReductionInvariance) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> e(0, 3), c(-5, 5);
  for (int trial = 0; trial < 15; ++trial) {
    Poly p, r;
    for (int k = 0; k < 4; ++k) {
      p += Poly::monomial(PExp{static_cast<int16_t>(e(rng)), static_cast<int16_t>(e(rng))}, c(rng));
      r += Poly::monomial(PExp{static_cast<int16_t>(e(rng)), static_cast<int16_t>(e(rng))}, c(rng));
    }
    if (p.is_zero() || r.is_zero()) continue;
    RationalFunction a(p, r, params_qt()), b(r, p, params_qt());
    EXPECT_EQ(a * b, RationalFunction(1));
  }
}

TEST(RationalFunction, EvaluationHomomorphism) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-4, 4);
  RationalFunction one(1);
  for (int trial = 0; trial < 20; ++trial) {
    RationalFunction x = q_() * Q(c(rng)) + t_() * Q(c(rng)) + Q(c(rng));
    RationalFunction y = one + q_() * t_() * Q(c(rng) == 0 ? 1 : 2) + t_() * t_();
    RationalFunction z = one - q_() * Q(c(rng)) * t_();
    RationalFunction expr = (x * y + z) / y - x * z;
    std::vector<Q> pt{make_q(2, 7), make_q(-3, 5)};
    Q xv = x.eval(pt), yv = y.eval(pt), zv = z.eval(pt);
    EXPECT_EQ(expr.eval(pt), (xv * yv + zv) / yv - xv * zv);
  }
}

TEST(Poly, GcdThreeVariables) {
  auto u = Poly::var(2), q = Poly::var(0), t = Poly::var(1);
  Poly g = Poly(1) - q * u;
  Poly a = g * (t + Poly(2)), b = g * (u - t) * (u - t);
  EXPECT_EQ(gcd(a, b), monic(g));
}

TEST(Scalar, ExactAndDemotion) {
  Scalar a(make_q(1, 3)), b(make_q(1, 6));
  EXPECT_TRUE((a + b).exact());
  EXPECT_EQ((a + b).q(), make_q(1, 2));
  Scalar c = Scalar::approx(0.5, 1e-9);
  auto d = a * c;
  EXPECT_FALSE(d.exact());
  EXPECT_NEAR(d.value(), 1.0 / 6, 1e-15);
  EXPECT_GE(d.error(), 1e-9 / 3);
  EXPECT_EQ(parse_q("0.3"), make_q(3, 10));
  EXPECT_EQ(parse_q("-3/4"), make_q(-3, 4));
}
