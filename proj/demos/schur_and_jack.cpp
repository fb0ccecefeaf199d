// Schur and Jack polynomials in the monomial basis, and the CUE/CSE moments
// they produce, checked against a constant-term computation.
#include <iostream>

#include "charmom/charmom.hpp"

using namespace charmom;

int main() {
  Partition lam{2, 1};
  std::cout << "s_" << lam.str() << " =";
  for (auto& [mu, c] : detail::jack_engine_at(Q(1)).P(lam).coeffs) std::cout << " + " << c << " m_" << mu.str();
  std::cout << "\nP_" << lam.str() << "(alpha) =";
  for (auto& [mu, c] : jack_P(lam).coeffs) std::cout << " + [" << c.str() << "] m_" << mu.str();
  std::cout << "\n\n";

  std::cout << "n  m  CUE formula  CUE ct  CSE formula  CSE ct\n";
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 2; ++m) {
      auto cue = make_ensemble("CUE"), cse = make_ensemble("CSE");
      int kc = typeA_psi_power(cue, m), ks = typeA_psi_power(cse, m);
      auto oc = oracle_average(cue, n, typeA_statistic(kc, kc, std::vector<Q>(2 * kc, Q(1))), OracleMethod::ct);
      auto os = oracle_average(cse, n, typeA_statistic(ks, ks, std::vector<Q>(2 * ks, Q(1))), OracleMethod::ct);
      std::cout << n << "  " << m << "  " << cue_moment_product(n, m) << "  " << oc.value.q() << "  "
                << typeA_moment_exact(Q(4), n, ks) << "  " << os.value.q() << "\n";
    }
}
