#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "charmom/charmom.hpp"

using namespace charmom;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

std::vector<Q> parse_q_list(const std::string& s) {
  std::vector<Q> v;
  for (auto& t : split(s)) v.push_back(parse_q(t));
  return v;
}

Partition parse_partition(const std::string& s) {
  std::vector<int> p;
  for (auto& t : split(s)) {
    int v = std::stoi(t);
    if (v < 0) throw UsageError("partition parts must be nonnegative");
    p.push_back(v);
  }
  return Partition(p);
}

json exact_or_number(const Scalar& s) {
  if (s.exact()) return s.q().get_str();
  return s.value();
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(15) << x;
  return os.str();
}

// one shared option set; each verb reads the fields it needs
struct Config {
  std::string verb;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  std::string ensemble;
  int n = 1, m = 1, L = -1;
  std::string family, lambda, params, mode = "auto", x, check, form = "both", methods = "ct,quadrature,montecarlo";
  std::string ns = "5,10,20,40", method = "toeplitz";
  double eta = 0.5, gamma = 1;
  long samples = 1000000, burn_in = 20000;
  int thin = 10;

  json to_json() const {
    json j{{"verb", verb}, {"format", format}, {"seed", seed}, {"tol", tol}};
    if (!out.empty()) j["out"] = out;
    if (verb == "poly") {
      j.update({{"family", family}, {"lambda", lambda}, {"params", params}, {"n", n}, {"mode", mode}});
    } else if (verb == "avg") {
      j.update({{"ensemble", ensemble}, {"n", n}, {"x", x}, {"L", L}, {"check", check}});
    } else if (verb == "moment") {
      j.update({{"ensemble", ensemble}, {"n", n}, {"m", m}, {"check", check}});
    } else if (verb == "verify") {
      j.update({{"ensemble", ensemble.empty() ? "catalog" : ensemble}, {"n", n}, {"m", m}, {"methods", methods},
                {"samples", samples}, {"thin", thin}, {"burn_in", burn_in}});
    } else if (verb == "szego") {
      j.update({{"ensemble", ensemble}, {"eta", eta}, {"gamma", gamma}, {"ns", ns}, {"method", method},
                {"samples", samples}, {"thin", thin}, {"burn_in", burn_in}});
    } else if (verb == "mc") {
      j.update({{"ensemble", ensemble}, {"n", n}, {"m", m}, {"samples", samples}, {"thin", thin}, {"burn_in", burn_in}});
    } else if (verb == "table") {
      j.update({{"m", m}});
    }
    return j;
  }
  MCOptions mc() const {
    MCOptions o;
    o.samples = samples;
    o.thin = thin;
    o.burn_in = burn_in;
    o.seed = seed;
    return o;
  }
};

struct Output {
  json reports = json::array();
  std::string csv_head;
  std::vector<std::string> csv;
  bool ok = true;
};

// ---- verbs ---------------------------------------------------------------

template <class F>
json expansion_json(const std::map<Partition, F>& c) {
  json e = json::object();
  for (auto& [mu, v] : c) {
    if constexpr (std::is_same_v<F, double>)
      e[mu.str()] = v;
    else if constexpr (std::is_same_v<F, Q>)
      e[mu.str()] = v.get_str();
    else
      e[mu.str()] = v.str();
  }
  return e;
}

template <class F>
void emit_expansion(Output& o, const std::string& basis, const std::map<Partition, F>& c) {
  json e = expansion_json(c);
  o.reports.push_back({{"basis", basis}, {"expansion", e}});
  o.csv_head = "partition,coefficient";
  for (auto& [k, v] : e.items()) o.csv.push_back("\"" + k + "\"," + (v.is_string() ? v.template get<std::string>() : fmt(v.template get<double>())));
}

void run_poly(const Config& c, Output& o) {
  Partition lam = parse_partition(c.lambda);
  auto ps = split(c.params);
  if (c.family == "schur") {
    if (!ps.empty()) throw UsageError("schur takes no --params");
    emit_expansion(o, "monomial", detail::jack_engine_at(Q(1)).P(lam).coeffs);
  } else if (c.family == "jack") {
    if (ps.empty()) emit_expansion(o, "monomial", jack_P(lam).coeffs);
    else if (ps.size() == 1) emit_expansion(o, "monomial", detail::jack_engine_at(parse_q(ps[0])).P(lam).coeffs);
    else throw UsageError("jack takes --params alpha");
  } else if (c.family == "macdonald") {
    if (ps.empty()) emit_expansion(o, "monomial", macdonald_P(lam).coeffs);
    else if (ps.size() == 2) emit_expansion(o, "monomial", macdonald_P<Q>(lam, parse_q(ps[0]), parse_q(ps[1])).coeffs);
    else throw UsageError("macdonald takes --params q,t");
  } else if (c.family == "ho") {
    if (ps.size() != 3) throw UsageError("ho needs --params k1,k2,k3");
    BCParameters k(parse_q(ps[0]), parse_q(ps[1]), parse_q(ps[2]));
    HOMode mode = c.mode == "exact"     ? HOMode::exact
                  : c.mode == "numeric" ? HOMode::numeric
                  : k.integral()        ? HOMode::exact
                                        : HOMode::numeric;
    auto& P = ho_jacobi_P(lam, k, c.n, mode);
    if (P.mode == HOMode::exact) emit_expansion(o, "bc-monomial", P.exact.coeffs);
    else emit_expansion(o, "bc-monomial", P.expansion.coeffs);
  } else {
    throw UsageError("--family must be macdonald, jack, schur or ho");
  }
}

bool forms_pass(const EnsembleSpec& s, const std::map<std::string, bool>& ok) {
  if (s.family != Family::BC) return ok.at("formula");
  return expected_literal_mismatch(s) ? ok.at("literal") || ok.at("sign_adjusted")
                                      : ok.at("literal") && ok.at("sign_adjusted");
}

// closed values per form, then an optional oracle check of each
void finish_closed(const Config& c, Output& o, const EnsembleSpec& s, int n, const std::vector<Q>& pt,
                   const std::vector<std::pair<std::string, Scalar>>& closed, const Statistic& stat) {
  json r{{"ensemble", s.label}, {"n", n}, {"x", detail::to_doubles(pt)}};
  json cl = json::object();
  for (auto& [f, v] : closed) cl[f] = exact_or_number(v);
  r["closed"] = cl;
  o.csv_head = "label,n,form,closed,oracle,method,verdict";
  if (c.check.empty()) {
    for (auto& [f, v] : closed) o.csv.push_back(s.label + "," + std::to_string(n) + "," + f + "," + fmt(v.value()) + ",,,");
    o.reports.push_back(r);
    return;
  }
  auto orc = oracle_average(s, n, stat, parse_method(c.check), c.mc());
  r["oracle"] = {{"method", orc.method}, {"value", exact_or_number(orc.value)}, {"error", orc.value.error()}};
  std::map<std::string, bool> ok;
  json verdicts = json::object();
  for (auto& [f, v] : closed) {
    auto ch = detail::make_check(f, pt, v, orc, c.tol);
    ok[f] = ch.match;
    verdicts[f] = ch.match ? "match" : "mismatch";
    o.csv.push_back(s.label + "," + std::to_string(n) + "," + f + "," + fmt(v.value()) + "," + fmt(orc.value.value()) +
                    "," + orc.method + "," + (ch.match ? "match" : "mismatch"));
  }
  r["verdicts"] = verdicts;
  r["pass"] = forms_pass(s, ok);
  r["expected_literal_mismatch"] = expected_literal_mismatch(s);
  o.ok = o.ok && r["pass"].get<bool>();
  o.reports.push_back(r);
}

void run_avg(const Config& c, Output& o) {
  auto s = make_ensemble(c.ensemble);
  auto pt = parse_q_list(c.x);
  if (pt.empty()) throw UsageError("--x needs at least one point");
  if (s.family == Family::BC) {
    int m = static_cast<int>(pt.size());
    std::vector<std::pair<std::string, Scalar>> closed;
    for (auto f : {BCForm::literal, BCForm::sign_adjusted}) {
      auto cf = bc_closed_form(s, c.n, m, f);
      closed.push_back({to_string(f), cf.exact() ? Scalar(cf.eval(pt)) : Scalar::approx(cf.eval(detail::to_doubles(pt)), 1e-9)});
    }
    finish_closed(c, o, s, c.n, pt, closed, bc_statistic(s, pt));
    return;
  }
  int L = c.L < 0 ? static_cast<int>(pt.size()) / 2 : c.L, K = static_cast<int>(pt.size()) - L;
  if (K < 0) throw UsageError("--L exceeds the number of points");
  Scalar v = s.family == Family::A ? Scalar(typeA_average_product<Q>(s.beta, c.n, L, K, pt))
                                   : Scalar::approx(qt_average_product<double>(c.n, L, K, detail::to_doubles(pt), s.q, s.t), 1e-12);
  finish_closed(c, o, s, c.n, pt, {{"formula", v}}, typeA_statistic(L, K, pt));
}

void run_moment(const Config& c, Output& o) {
  auto s = make_ensemble(c.ensemble);
  if (s.family == Family::BC) {
    std::vector<Q> pt(s.mult * c.m, Q(1));
    std::vector<std::pair<std::string, Scalar>> closed;
    for (auto f : {BCForm::literal, BCForm::sign_adjusted}) closed.push_back({to_string(f), Scalar(bc_moment_exact(s, c.n, c.m, f))});
    finish_closed(c, o, s, c.n, pt, closed, bc_statistic(s, pt));
    return;
  }
  int k = typeA_psi_power(s, c.m);
  std::vector<Q> pt(2 * k, Q(1));
  Scalar v = s.family == Family::A ? Scalar(typeA_moment_exact(s.beta, c.n, k))
                                   : Scalar::approx(qt_moment_product(c.n, k, s.q, s.t), 1e-12);
  finish_closed(c, o, s, c.n, pt, {{"formula", v}}, typeA_statistic(k, k, pt));
}

void run_verify(const Config& c, Output& o) {
  std::vector<EnsembleSpec> ens;
  if (c.ensemble.empty()) ens = bc_catalog();
  else ens.push_back(make_ensemble(c.ensemble));
  VerifyOptions vo;
  vo.methods.clear();
  for (auto& m : split(c.methods)) vo.methods.push_back(parse_method(m));
  vo.mc = c.mc();
  vo.tol = c.tol;
  o.csv_head = csv_header();
  for (auto& s : ens) {
    auto r = verify_identity(s, c.n, c.m, vo);
    o.ok = o.ok && r.pass;
    o.reports.push_back(to_json(r));
    std::istringstream rows(csv_rows(r));
    for (std::string line; std::getline(rows, line);) o.csv.push_back(line);
  }
}

void run_szego(const Config& c, Output& o) {
  auto s = make_ensemble(c.ensemble);
  auto sym = power_symbol(c.eta, c.gamma);
  std::vector<int> ns;
  for (auto& t : split(c.ns)) ns.push_back(std::stoi(t));
  auto method = parse_szego_method(c.method);
  auto seq = szego_lhs_sequence(sym, s, ns, method, c.mc());
  SzegoLimit rhs = s.family == Family::Macdonald ? szego_rhs(sym, s.q, s.t) : szego_rhs_jack(sym, s.beta.get_d());
  json rows = json::array();
  o.csv_head = "n,lhs,error,rhs,gap";
  for (auto& t : seq) {
    rows.push_back({{"n", t.n}, {"lhs", t.value}, {"error", t.error}, {"gap", std::abs(t.value - rhs.value)}});
    o.csv.push_back(std::to_string(t.n) + "," + fmt(t.value) + "," + fmt(t.error) + "," + fmt(rhs.value) + "," +
                    fmt(std::abs(t.value - rhs.value)));
  }
  o.reports.push_back({{"ensemble", s.label}, {"method", to_string(method)}, {"rhs", rhs.value},
                       {"rhs_converged", rhs.converged}, {"sequence", rows},
                       {"gap_strictly_decreasing", gap_strictly_decreasing(seq, rhs.value)}});
}

void run_mc(const Config& c, Output& o) {
  auto s = make_ensemble(c.ensemble);
  auto ch = ensemble_chain(s, c.n, c.mc());
  Statistic stat;
  if (s.family == Family::BC) {
    stat = bc_statistic(s, std::vector<Q>(s.mult * c.m, Q(1)));
  } else {
    int k = typeA_psi_power(s, c.m);
    stat = typeA_statistic(k, k, std::vector<Q>(2 * k, Q(1)));
  }
  auto e = estimate_average(ch.samples, [&](const std::vector<double>& th) { return stat.on_angles(th); });
  o.reports.push_back({{"ensemble", s.label}, {"n", c.n}, {"m", c.m}, {"mean", e.mean}, {"se", e.se}, {"ess", e.ess},
                       {"acceptance", ch.acceptance}, {"sigma", ch.sigma}, {"samples", ch.samples.size()}});
  o.csv_head = "label,n,m,mean,se,ess,acceptance,sigma";
  o.csv.push_back(s.label + "," + std::to_string(c.n) + "," + std::to_string(c.m) + "," + fmt(e.mean) + "," + fmt(e.se) +
                  "," + fmt(e.ess) + "," + fmt(ch.acceptance) + "," + fmt(ch.sigma));
}

void run_table(const Config& c, Output& o) {
  o.csv_head = "label,k1,k2,k3,mult,rho,dual_k1,dual_k2,dual_k3,C,e";
  for (auto& s : bc_catalog()) {
    auto kt = tilde_params(s.k());
    auto [C, e] = moment_asymptotic_display(s, c.m);
    o.reports.push_back({{"ensemble", s.label}, {"k", {s.k().k1.get_str(), s.k().k2.get_str(), s.k().k3.get_str()}},
                         {"mult", s.mult}, {"rho", s.rho},
                         {"dual", {kt.k1.get_str(), kt.k2.get_str(), kt.k3.get_str()}}, {"C", C}, {"e", e}});
    o.csv.push_back(s.label + "," + s.k().k1.get_str() + "," + s.k().k2.get_str() + "," + s.k().k3.get_str() + "," +
                    std::to_string(s.mult) + "," + std::to_string(s.rho) + "," + kt.k1.get_str() + "," +
                    kt.k2.get_str() + "," + kt.k3.get_str() + "," + fmt(C) + "," + fmt(e));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"characteristic-polynomial moments: closed forms and oracles"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Config c;
  app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", c.out, "output file (relative to $CHARMOM_OUT_DIR when set)");
  app.add_option("--seed", c.seed, "Monte Carlo seed");
  app.add_option("--tol", c.tol, "relative tolerance for numeric oracles");

  auto add_mc = [&](CLI::App* s) {
    s->add_option("--samples", c.samples)->check(CLI::PositiveNumber);
    s->add_option("--thin", c.thin)->check(CLI::PositiveNumber);
    s->add_option("--burn-in", c.burn_in)->check(CLI::NonNegativeNumber);
  };
  const auto methods = CLI::IsMember({"ct", "quadrature", "montecarlo", "mc"});

  auto* poly = app.add_subcommand("poly", "expansion of P_lambda in the monomial basis");
  poly->add_option("--family", c.family)->required()->check(CLI::IsMember({"macdonald", "jack", "schur", "ho"}));
  poly->add_option("--lambda", c.lambda, "parts, comma separated")->required();
  poly->add_option("--params", c.params, "q,t | alpha | k1,k2,k3");
  poly->add_option("--n", c.n, "variables (ho)")->check(CLI::NonNegativeNumber);
  poly->add_option("--mode", c.mode)->check(CLI::IsMember({"auto", "exact", "numeric"}));

  auto* avg = app.add_subcommand("avg", "closed form of an average product");
  avg->add_option("--ensemble", c.ensemble)->required();
  avg->add_option("--n", c.n)->check(CLI::NonNegativeNumber);
  avg->add_option("--x", c.x, "points (BC) or eta values (type A)")->required();
  avg->add_option("--L", c.L, "number of conjugate factors, type A");
  avg->add_option("--check", c.check, "oracle")->check(methods);
  add_mc(avg);

  auto* mom = app.add_subcommand("moment", "closed form of <det(I+M)^m> or <|det(I+M)|^{2m}>");
  mom->add_option("--ensemble", c.ensemble)->required();
  mom->add_option("--n", c.n)->check(CLI::NonNegativeNumber);
  mom->add_option("--m", c.m)->check(CLI::PositiveNumber);
  mom->add_option("--check", c.check, "oracle")->check(methods);
  add_mc(mom);

  auto* ver = app.add_subcommand("verify", "audit closed forms against oracles");
  ver->add_option("--ensemble", c.ensemble, "default: the BC catalog");
  ver->add_option("--n", c.n)->check(CLI::NonNegativeNumber);
  ver->add_option("--m", c.m)->check(CLI::PositiveNumber);
  ver->add_option("--methods", c.methods);
  add_mc(ver);

  auto* sz = app.add_subcommand("szego", "Szego limit table for |1+eta z|^{2 gamma}");
  sz->add_option("--ensemble", c.ensemble, "CUE, CBETA(b) or MACDONALD(q,t)");
  sz->add_option("--eta", c.eta);
  sz->add_option("--gamma", c.gamma);
  sz->add_option("--ns", c.ns);
  sz->add_option("--method", c.method)->check(CLI::IsMember({"toeplitz", "quadrature", "montecarlo", "mc"}));
  add_mc(sz);

  auto* mc = app.add_subcommand("mc", "run a Metropolis chain and estimate the m-th moment");
  mc->add_option("--ensemble", c.ensemble)->required();
  mc->add_option("--n", c.n)->check(CLI::PositiveNumber);
  mc->add_option("--m", c.m)->check(CLI::PositiveNumber);
  add_mc(mc);

  auto* table = app.add_subcommand("table", "BC catalog constants");
  table->add_option("--m", c.m)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  c.verb = app.get_subcommands().front()->get_name();
  if (c.verb == "szego" && c.ensemble.empty()) c.ensemble = "CUE";
  if (c.verb == "table" && !app.get_option("--format")->count()) c.format = "csv";

  Output o;
  try {
    if (c.verb == "poly") run_poly(c, o);
    else if (c.verb == "avg") run_avg(c, o);
    else if (c.verb == "moment") run_moment(c, o);
    else if (c.verb == "verify") run_verify(c, o);
    else if (c.verb == "szego") run_szego(c, o);
    else if (c.verb == "mc") run_mc(c, o);
    else if (c.verb == "table") run_table(c, o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  std::ostringstream text;
  if (c.format == "json") {
    json doc{{"version", version}, {"config", c.to_json()}, {"reports", o.reports}};
    text << doc.dump(2) << "\n";
  } else {
    text << "# config " << c.to_json().dump() << "\n" << o.csv_head << "\n";
    for (auto& l : o.csv) text << l << "\n";
  }
  if (c.out.empty()) {
    std::cout << text.str();
  } else {
    std::filesystem::path p(c.out);
    if (const char* dir = std::getenv("CHARMOM_OUT_DIR"); dir && p.is_relative()) p = std::filesystem::path(dir) / p;
    std::ofstream f(p);
    if (!f) {
      std::cerr << "cannot write " << p << "\n";
      return 2;
    }
    f << text.str();
  }
  return o.ok ? 0 : 1;
}
