// Run the sign audit over the BC catalog at n = m = 1 and print one line per ensemble.
#include <iomanip>
#include <iostream>

#include "charmom/charmom.hpp"

using namespace charmom;

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 1, m = argc > 2 ? std::atoi(argv[2]) : 1;
  VerifyOptions o;
  o.methods = {OracleMethod::ct, OracleMethod::quadrature};
  std::cout << std::left << std::setw(11) << "ensemble" << std::setw(10) << "literal" << std::setw(15) << "sign_adjusted"
            << std::setw(20) << "dual_corrected" << "pass\n";
  for (auto& s : bc_catalog()) {
    auto r = verify_bc(s, n, m, o);
    std::cout << std::setw(11) << s.label << std::setw(10) << r.verdict("literal") << std::setw(15)
              << r.verdict("sign_adjusted") << std::setw(20) << r.verdict("dual_corrected") << (r.pass ? "yes" : "NO")
              << (r.expected_literal_mismatch ? "  (k1 != 0)" : "") << "\n";
  }
}
