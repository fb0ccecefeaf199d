#include <gtest/gtest.h>

#include "charmom/ensembles.hpp"

using namespace charmom;

namespace {
VerifyOptions exact_only() {
  VerifyOptions o;
  o.methods = {OracleMethod::ct};
  return o;
}
}  // namespace

TEST(Catalog, Parameters) {
  EXPECT_EQ(make_ensemble("B").k(), BCParameters(1, 0, 1));
  EXPECT_EQ(make_ensemble("AIII(2)").k(), BCParameters(2, Q(1, 2), 1));
  EXPECT_EQ(make_ensemble("BDI(1)").k(), BCParameters(Q(1, 2), 0, Q(1, 2)));
  EXPECT_EQ(make_ensemble("CII(1)").k(), BCParameters(2, Q(3, 2), 2));
  EXPECT_EQ(make_ensemble("DIII_odd").mult, 2);
  EXPECT_EQ(make_ensemble("CSE").beta, 4);
  EXPECT_EQ(make_ensemble("CBETA(3/2)").beta, Q(3, 2));
  EXPECT_EQ(make_ensemble("CII(1)").rho, 2);
  EXPECT_THROW(make_ensemble("E8"), std::invalid_argument);
  EXPECT_THROW(make_ensemble("B(1)"), std::invalid_argument);
  for (auto& s : bc_catalog()) EXPECT_EQ(expected_literal_mismatch(s), sgn(s.k().k1) != 0) << s.label;
}

TEST(TypeA, AverageProductExamples) {
  // n=1, L=K=1: 1 + eta2/eta1
  Q e1(2, 3), e2(1, 5);
  EXPECT_EQ(typeA_average_product<Q>(Q(2), 1, 1, 1, {e1, e2}), 1 + e2 / e1);
  EXPECT_EQ(typeA_average_product<Q>(Q(1), 1, 1, 1, {e1, e2}), 1 + e2 / e1);
  EXPECT_EQ(typeA_average_product<Q>(Q(2), 1, 0, 1, {e2}), 1);
  EXPECT_THROW(typeA_average_product<Q>(Q(2), 1, 1, 1, {Q(0), e2}), std::domain_error);
  EXPECT_NEAR(qt_average_product<double>(1, 1, 1, {0.5, 0.2}, 0.3, 0.3), 1.4, 1e-13);
}

TEST(TypeA, ExactCTMatchesJackEvaluation) {
  for (int beta : {2, 4}) {
    auto s = make_ensemble(beta == 2 ? "CUE" : "CSE");
    for (int n = 1; n <= 3; ++n)
      for (int L = 1; L <= 2; ++L) {
        std::vector<Q> eta{Q(1), Q(1, 2), Q(3, 10), Q(7, 10)};
        eta.resize(2 * L);
        auto o = oracle_average(s, n, typeA_statistic(L, L, eta), OracleMethod::ct);
        EXPECT_EQ(o.value.q(), typeA_average_product<Q>(Q(beta), n, L, L, eta)) << beta << n << L;
      }
  }
}

TEST(TypeA, MomentExamples) {
  EXPECT_NEAR(typeA_moment(2, 2, 1), 3, 1e-12);
  EXPECT_NEAR(typeA_moment(1, 1, 1), 2, 1e-12);
  EXPECT_NEAR(typeA_moment(4, 1, 2), 6, 1e-12);
  EXPECT_NEAR(typeA_moment(1, 2, 1), 10.0 / 3, 1e-12);
  EXPECT_EQ(typeA_moment_exact(Q(4), 1, 2), 6);
  EXPECT_EQ(typeA_moment_exact(Q(1), 2, 1), Q(10, 3));
  EXPECT_EQ(typeA_moment_asymptotic(2, 1).second, 1);
  EXPECT_EQ(typeA_moment_asymptotic(1, 1).second, 2);
  EXPECT_EQ(typeA_moment_asymptotic(4, 1).second, 0.5);
  for (int n = 0; n <= 4; ++n)
    for (int m = 0; m <= 3; ++m) EXPECT_EQ(cue_moment_product(n, m), typeA_moment_exact(Q(2), n, m));
}

TEST(TypeA, AsymptoticDisplaysMatchGammaForm) {
  for (int m = 1; m <= 3; ++m) {
    auto [c1, e1] = typeA_moment_asymptotic(2, m);
    auto [d1, f1] = moment_asymptotic_display(make_ensemble("CUE"), m);
    EXPECT_NEAR(c1 / d1, 1, 1e-12);
    EXPECT_EQ(e1, f1);
    auto [c2, e2] = typeA_moment_asymptotic(1, m);
    auto [d2, f2] = moment_asymptotic_display(make_ensemble("COE"), m);
    EXPECT_NEAR(c2 / d2, 1, 1e-12);
    EXPECT_EQ(e2, f2);
    // CSE: |det(I+M)|^{2m} is the 2m-th Psi moment
    auto [c4, e4] = typeA_moment_asymptotic(4, 2 * m);
    auto [d4, f4] = moment_asymptotic_display(make_ensemble("CSE"), m);
    EXPECT_NEAR(c4 / d4, 1, 1e-12);
    EXPECT_EQ(e4, f4);
  }
}

TEST(QMoment, ThreeFormsAgree) {
  for (auto [q, beta] : std::vector<std::pair<double, double>>{{0.3, 1}, {0.4, 2}, {0.5, 4}}) {
    double t = std::pow(q, beta / 2);
    for (int n = 1; n <= 3; ++n)
      for (int k = 0; k <= 2; ++k) {
        double p = qt_moment_product(n, k, q, t), g = qt_moment_gamma(n, k, q, beta);
        auto s = qt_moment_2phi1(n, k, q, t);
        EXPECT_TRUE(s.terminating);
        EXPECT_NEAR(g / p, 1, 1e-12) << q << n << k;
        EXPECT_NEAR(s.value / p, 1, 1e-12) << q << n << k;
      }
  }
  // n=1, k=1, t=q: 1+q
  EXPECT_NEAR(qt_moment_product(1, 1, 0.3, 0.3), 1.3, 1e-14);
}

TEST(QMoment, AveragePatternReproducesMoment) {
  double q = 0.3, t = 0.5;
  for (int n = 1; n <= 2; ++n)
    for (int k = 1; k <= 2; ++k) {
      std::vector<double> eta;
      for (int i = 0; i < k; ++i) eta.push_back(std::pow(q, -(i + 0.5)));
      for (int i = 0; i < k; ++i) eta.push_back(std::pow(q, i + 0.5));
      EXPECT_NEAR(qt_average_product<double>(n, k, k, eta, q, t) / qt_moment_product(n, k, q, t), 1, 1e-10) << n << k;
    }
}

TEST(Hypergeometric, TwoF1MomentMatchesGammaForm) {
  // gamma = k integer: terminating, and at |eta| = 1 it gives the moment
  for (double beta : {1.0, 2.0, 4.0})
    for (int n = 1; n <= 3; ++n)
      for (int k = 1; k <= 2; ++k) {
        auto s = typeA_moment_2F1(beta, n, k, 1.0);
        EXPECT_TRUE(s.terminating && s.converged);
        EXPECT_NEAR(s.value / typeA_moment(beta, n, k), 1, 1e-11) << beta << n << k;
      }
  // n=1: (1-x)-binomial, |1+eta z|^{2 gamma} average = 2F1(-g,-g;1;|eta|^2)
  SeriesOptions o;
  o.cap = 40;
  auto s = typeA_moment_2F1(2, 1, 0.5, 0.5, o);
  EXPECT_FALSE(s.terminating);
  EXPECT_TRUE(s.converged);
  double direct = torus_integrate([](const std::vector<double>& th) { return std::abs(1.0 + 0.5 * std::polar(1.0, th[0])); }, {1}).value;
  EXPECT_NEAR(s.value, direct, 1e-12);
}

TEST(Hypergeometric, ZeroDenominatorRejected) {
  EXPECT_THROW(hyper_2F1_alpha(0.5, 0.5, 0, {0.1}, 1), std::domain_error);
}

TEST(BCClosed, AverageExamples) {
  auto B = make_ensemble("B"), C = make_ensemble("C");
  auto lit = bc_closed_form(B, 1, 1, BCForm::literal).polynomial();
  auto sa = bc_closed_form(B, 1, 1, BCForm::sign_adjusted).polynomial();
  auto x = Laurent<Q>::var(1, 0);
  Laurent<Q> one(1, Q(1));
  EXPECT_EQ(lit, one + x * Q(2) + x.pow(2) * Q(2) + x.pow(3));
  EXPECT_EQ(sa, one + x.pow(3));
  EXPECT_EQ(bc_closed_form(C, 1, 1, BCForm::literal).polynomial(), one + x.pow(2));
  EXPECT_EQ(bc_closed_form(C, 1, 1, BCForm::sign_adjusted).polynomial(), one + x.pow(2));
  EXPECT_NEAR(bc_average_product(B, 1, {0.5}, BCForm::sign_adjusted), 1.125, 1e-14);
}

TEST(BCClosed, DegreeIsMatrixDimension) {
  for (auto l : {"B", "C", "D", "AIII(1)", "BDI(1)", "CI"})
    for (int n = 1; n <= 2; ++n) {
      auto s = make_ensemble(l);
      auto cf = bc_closed_form(s, n, 1, BCForm::sign_adjusted);
      if (!cf.exact()) continue;
      int deg = 0;
      auto poly = cf.polynomial();
      for (auto& [e, c] : poly.terms()) deg = std::max(deg, static_cast<int>(e[0]));
      EXPECT_EQ(deg, s.matrix_dim(n)) << l << n;
    }
}

TEST(BCMoment, Examples) {
  auto B = make_ensemble("B"), C = make_ensemble("C"), D = make_ensemble("D");
  for (int n = 1; n <= 4; ++n) {
    EXPECT_NEAR(bc_moment(C, n, 1, BCForm::literal), n + 1, 1e-10);
    EXPECT_NEAR(bc_moment(D, n, 1, BCForm::literal), 2, 1e-10);
  }
  EXPECT_NEAR(bc_moment(B, 1, 1, BCForm::literal), 6, 1e-12);
  EXPECT_EQ(bc_moment_exact(B, 1, 1, BCForm::sign_adjusted), 2);
  EXPECT_EQ(bc_moment_asymptotic(C, 1).second, 1);
  EXPECT_EQ(bc_moment_asymptotic(make_ensemble("DIII_even"), 1).second, 0);
}

TEST(BCMoment, DisplaysAgreeWithGeneralAndExactForms) {
  for (auto& s : bc_catalog())
    for (int n = 1; n <= 3; ++n)
      for (int m = 1; m <= 2; ++m) {
        double disp = bc_moment_display(s, n, m);
        EXPECT_NEAR(disp / bc_moment_general(s, n, m), 1, 1e-12) << s.label << n << m;
        EXPECT_NEAR(disp / bc_moment_exact(s, n, m, BCForm::literal).get_d(), 1, 1e-12) << s.label << n << m;
      }
}

TEST(BCMoment, AsymptoticDisplaysMatchScriptF) {
  for (auto& s : bc_catalog())
    for (int m = 1; m <= 3; ++m) {
      auto [c, e] = bc_moment_asymptotic(s, m);
      auto [d, f] = moment_asymptotic_display(s, m);
      EXPECT_NEAR(c / d, 1, 1e-12) << s.label << m;
      EXPECT_NEAR(e, f, 1e-12) << s.label << m;
    }
}

// the reflected-parameter evaluation against the constructed polynomial at -1
TEST(BCMoment, SignAdjustedMatchesPolynomialAtMinusOne) {
  for (auto l : {"B", "C", "D", "AIII(1)", "BDI(1)", "CI"})
    for (int n = 1; n <= 2; ++n)
      for (int m = 1; m <= 2; ++m) {
        auto s = make_ensemble(l);
        auto cf = bc_closed_form(s, n, m * s.mult, BCForm::sign_adjusted);
        double viaP = cf.eval(std::vector<double>(m * s.mult, 1.0));
        EXPECT_NEAR(viaP / bc_moment_exact(s, n, m, BCForm::sign_adjusted).get_d(), 1, 1e-8) << l << n << m;
      }
}

TEST(Oracle, Examples) {
  auto B = make_ensemble("B"), D = make_ensemble("D");
  EXPECT_EQ(oracle_average(B, 1, bc_statistic(B, {Q(1)}), OracleMethod::ct).value.q(), 2);
  EXPECT_EQ(oracle_average(D, 1, bc_statistic(D, {Q(1)}), OracleMethod::ct).value.q(), 2);
  auto A0 = make_ensemble("AIII(0)");
  auto q = oracle_average(A0, 1, bc_statistic(A0, {Q(1)}), OracleMethod::quadrature);
  EXPECT_NEAR(q.value.value(), bc_moment_exact(A0, 1, 1, BCForm::sign_adjusted).get_d(), 1e-6);
  EXPECT_THROW(oracle_average(A0, 1, bc_statistic(A0, {Q(1)}), OracleMethod::ct), std::invalid_argument);
  // quadrature agrees with ct on an integer case
  auto qb = oracle_average(B, 2, bc_statistic(B, {Q(3, 10), Q(7, 10)}), OracleMethod::quadrature);
  auto cb = oracle_average(B, 2, bc_statistic(B, {Q(3, 10), Q(7, 10)}), OracleMethod::ct);
  EXPECT_NEAR(qb.value.value(), cb.value.value(), 1e-10);
}

TEST(Oracle, CUEExactMoments) {
  auto s = make_ensemble("CUE");
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 3; ++m)
      EXPECT_EQ(oracle_average(s, n, typeA_statistic(m, m, std::vector<Q>(2 * m, Q(1))), OracleMethod::ct).value.q(),
                cue_moment_product(n, m));
}

TEST(Oracle, CSEExactMoments) {
  auto s = make_ensemble("CSE");
  EXPECT_EQ(oracle_average(s, 1, typeA_statistic(2, 2, std::vector<Q>(4, Q(1))), OracleMethod::ct).value.q(), 6);
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 2; ++m) {
      int k = typeA_psi_power(s, m);
      EXPECT_EQ(oracle_average(s, n, typeA_statistic(k, k, std::vector<Q>(2 * k, Q(1))), OracleMethod::ct).value.q(),
                typeA_moment_exact(Q(4), n, k));
    }
}

TEST(Oracle, COEQuadrature) {
  auto s = make_ensemble("COE");
  auto r = oracle_average(s, 2, typeA_statistic(1, 1, {Q(1), Q(1)}), OracleMethod::quadrature);
  EXPECT_NEAR(r.value.value(), 10.0 / 3, 1e-6);
}

TEST(Verify, DocumentedExamples) {
  auto c = verify_identity(make_ensemble("C"), 2, 2, exact_only());
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.verdict("literal"), "match");
  auto b = verify_identity(make_ensemble("B"), 1, 1, exact_only());
  EXPECT_TRUE(b.pass);
  EXPECT_TRUE(b.expected_literal_mismatch);
  EXPECT_EQ(b.verdict("literal"), "mismatch");
  EXPECT_EQ(b.verdict("sign_adjusted"), "match");
  auto cue = verify_identity(make_ensemble("CUE"), 3, 2, exact_only());
  EXPECT_TRUE(cue.pass);
  for (auto& ch : cue.checks) EXPECT_TRUE(ch.exact);
}

TEST(Verify, ForcedValues) {
  auto B = make_ensemble("B");
  auto x = Laurent<Q>::var(1, 0);
  EXPECT_EQ(bc_closed_form(B, 1, 1, BCForm::sign_adjusted).polynomial(), Laurent<Q>(1, Q(1)) + x.pow(3));
  for (auto l : {"C", "D"}) {
    auto s = make_ensemble(l);
    EXPECT_EQ(oracle_average(s, 1, bc_statistic(s, {Q(1)}), OracleMethod::ct).value.q(), 2);
  }
}

TEST(Verify, FractionalKOneZeroByQuadrature) {
  VerifyOptions o;
  o.methods = {OracleMethod::quadrature};
  auto r = verify_identity(make_ensemble("AIII(0)"), 1, 1, o);
  EXPECT_TRUE(r.pass) << r.note;
}

TEST(Verify, JsonAndCsv) {
  auto r = verify_identity(make_ensemble("B"), 1, 1, exact_only());
  auto j = to_json(r);
  EXPECT_EQ(j["ensemble"], "B");
  EXPECT_EQ(j["verdicts"]["sign_adjusted"], "match");
  EXPECT_NE(csv_rows(r).find("B,1,1,literal,ct"), std::string::npos);
}
