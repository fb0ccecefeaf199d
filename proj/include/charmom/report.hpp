#pragma once

// Verification records shared by the BC engine, the ensemble harness and the CLI.

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace charmom {

struct Check {
  std::string form;    // literal, sign_adjusted, dual_corrected, formula, ...
  std::string method;  // ct, quadrature, montecarlo, exact, ...
  std::vector<double> x;
  double closed = 0;
  double oracle = 0;
  double error_bar = 0;  // oracle uncertainty (s.e. for Monte Carlo)
  double tol = 0;
  bool exact = false;
  bool match = false;

  double abs_err() const { return std::abs(closed - oracle); }
};

struct VerificationReport {
  std::string label;
  int n = 0, m = 0;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> verdicts;  // form -> match / mismatch / diagnostic
  bool pass = false;
  bool expected_literal_mismatch = false;
  std::string note;

  std::string verdict(const std::string& form) const {
    for (auto& [f, v] : verdicts)
      if (f == form) return v;
    return "n/a";
  }
};

inline nlohmann::json to_json(const Check& c) {
  return {{"form", c.form},       {"method", c.method}, {"x", c.x},     {"closed", c.closed},
          {"oracle", c.oracle},   {"error_bar", c.error_bar},           {"tol", c.tol},
          {"abs_err", c.abs_err()}, {"exact", c.exact}, {"match", c.match}};
}

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (auto& c : r.checks) checks.push_back(to_json(c));
  nlohmann::json verdicts = nlohmann::json::object();
  for (auto& [f, v] : r.verdicts) verdicts[f] = v;
  return {{"ensemble", r.label}, {"n", r.n}, {"m", r.m}, {"checks", checks}, {"verdicts", verdicts},
          {"pass", r.pass}, {"expected_literal_mismatch", r.expected_literal_mismatch}, {"note", r.note}};
}

inline std::string csv_header() { return "label,n,m,form,method,closed,oracle,abs_err,verdict"; }

inline std::string csv_rows(const VerificationReport& r) {
  std::ostringstream os;
  os << std::setprecision(15);
  for (auto& c : r.checks) {
    os << r.label << ',' << r.n << ',' << r.m << ',' << c.form << ',' << c.method << ',' << c.closed << ','
       << c.oracle << ',' << c.abs_err() << ',' << (c.match ? "match" : "mismatch") << '\n';
  }
  return os.str();
}

}  // namespace charmom
