#include "overdet/io.hpp"

#include "overdet/errors.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace overdet {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

Json vector_json(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const Json& j, const char* key) {
  if (!j.contains(key)) return Eigen::VectorXd();
  const auto& arr = j.at(key);
  if (!arr.is_array()) throw InvalidDomain(std::string("'") + key + "' must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  return v;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json tolerances_json(const Tolerances& t) {
  return Json{{"eq4_rel", t.eq4_rel},
              {"eq9_rel", t.eq9_rel},
              {"lemma1_rel", t.lemma1_rel},
              {"eq3_rel", t.eq3_rel},
              {"eq5_rel", t.eq5_rel},
              {"phi_boundary", t.phi_boundary},
              {"hessian", t.hessian},
              {"harmonicity", t.harmonicity},
              {"cn_excess", t.cn_excess},
              {"deficit", t.deficit},
              {"remark4", t.remark4},
              {"fd_step", t.fd_step},
              {"fd_samples", t.fd_samples},
              {"hessian_samples", t.hessian_samples},
              {"interior_radial", t.interior_radial},
              {"interior_angular", t.interior_angular}};
}

}  // namespace

Json domain_to_json(const StarDomain2D& domain) {
  return Json{{"a0", domain.a0()},
              {"cos", vector_json(domain.cos_coeffs())},
              {"sin", vector_json(domain.sin_coeffs())}};
}

StarDomain2D domain_from_json(const Json& j, int quad_points) {
  if (!j.is_object() || !j.contains("a0")) throw InvalidDomain("domain JSON needs an 'a0' field");
  const Eigen::VectorXd cos_in = vector_from_json(j, "cos"), sin_in = vector_from_json(j, "sin");
  // The shorter list is zero-padded, so either may be omitted.
  const Eigen::Index K = std::max(cos_in.size(), sin_in.size());
  Eigen::VectorXd a = Eigen::VectorXd::Zero(K), b = Eigen::VectorXd::Zero(K);
  a.head(cos_in.size()) = cos_in;
  b.head(sin_in.size()) = sin_in;
  const int m = j.contains("quad_points") ? j.at("quad_points").get<int>() : quad_points;
  return StarDomain2D(j.at("a0").get<double>(), a, b, m);
}

Json solution_to_json(const PoissonSolution2D& sol) {
  return Json{{"alpha", sol.alpha()},
              {"k_basis", sol.k_basis()},
              {"particular_coeff", sol.particular_coeff()},
              {"harmonic_coeffs", vector_json(sol.harmonic_coeffs())},
              {"domain", domain_to_json(sol.domain())},
              {"fit_residual", sol.fit_residual()}};
}

PoissonSolution2D solution_from_json(const Json& j) {
  return PoissonSolution2D(domain_from_json(j.at("domain")), j.at("alpha").get<double>(),
                           vector_from_json(j, "harmonic_coeffs"),
                           j.at("fit_residual").get<double>());
}

Json report_to_json(const IdentityReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"pass", c.pass}});
  return Json{{"alpha", r.alpha},
              {"law", r.law},
              {"seed", r.seed},
              {"c_star", r.c_star},
              {"cN", r.cN},
              {"lemma1_lhs", r.lemma1_lhs},
              {"lemma1_rhs", r.lemma1_rhs},
              {"lemma1_residual", r.lemma1_residual},
              {"eq3_lhs", r.eq3_lhs},
              {"eq3_rhs", r.eq3_rhs},
              {"eq3_residual", r.eq3_residual},
              {"eq4_check", r.eq4_check},
              {"eq5_closed_form", r.eq5_closed_form},
              {"eq5_check", r.eq5_check},
              {"phi_integral", r.phi_integral},
              {"eq9_rhs", r.eq9_rhs},
              {"eq9_residual", r.eq9_residual},
              {"phi_boundary_max", r.phi_boundary_max},
              {"phi_interior_max", r.phi_interior_max},
              {"hessian_margin", r.hessian_margin},
              {"deficit", r.deficit},
              {"h_harmonicity", r.h_harmonicity},
              {"v_harmonicity", optional_json(r.v_harmonicity)},
              {"v_boundary_max", optional_json(r.v_boundary_max)},
              {"fit_residual", r.fit_residual},
              {"dirichlet_residual", r.dirichlet_residual},
              {"remark3_dist_check", r.remark3_dist_check},
              {"tolerances", tolerances_json(r.tol)},
              {"checks", checks},
              {"pass", r.all_pass()}};
}

std::string report_csv_header() {
  return "seed,alpha,law,c_star,cN,lemma1_lhs,lemma1_rhs,lemma1_residual,eq3_lhs,eq3_rhs,"
         "eq3_residual,eq4_check,eq5_closed_form,eq5_check,phi_integral,eq9_rhs,eq9_residual,"
         "phi_boundary_max,phi_interior_max,hessian_margin,deficit,h_harmonicity,v_harmonicity,"
         "v_boundary_max,fit_residual,dirichlet_residual,remark3_dist_check,pass\n";
}

std::string report_csv_row(const IdentityReport& r) {
  const auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  std::ostringstream os;
  os << r.seed << ',' << format_double(r.alpha) << ',' << r.law;
  for (const double v : {r.c_star, r.cN, r.lemma1_lhs, r.lemma1_rhs, r.lemma1_residual, r.eq3_lhs,
                         r.eq3_rhs, r.eq3_residual, r.eq4_check, r.eq5_closed_form, r.eq5_check,
                         r.phi_integral, r.eq9_rhs, r.eq9_residual, r.phi_boundary_max,
                         r.phi_interior_max, r.hessian_margin, r.deficit, r.h_harmonicity})
    os << ',' << format_double(v);
  os << ',' << opt(r.v_harmonicity) << ',' << opt(r.v_boundary_max);
  for (const double v : {r.fit_residual, r.dirichlet_residual, r.remark3_dist_check})
    os << ',' << format_double(v);
  os << ',' << (r.all_pass() ? 1 : 0) << '\n';
  return os.str();
}

Json trace_to_json(const RecoveryTrace& trace) {
  Json iterates = Json::array();
  for (const auto& it : trace.iterates)
    iterates.push_back({{"domain", domain_to_json(it.domain)},
                        {"deficit", it.deficit},
                        {"c_star", it.c_star},
                        {"cN", it.cN},
                        {"relaxation", it.relaxation}});
  return Json{{"converged", trace.converged},
              {"rejected_steps", trace.rejected_steps},
              {"final_fourier_energy", trace.final_fourier_energy},
              {"iterates", iterates}};
}

std::string trace_csv(const RecoveryTrace& trace) {
  std::ostringstream os;
  os << "iter,deficit,cN,a0,fourier_energy\n";
  for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
    const auto& it = trace.iterates[i];
    os << i << ',' << format_double(it.deficit) << ',' << format_double(it.cN) << ','
       << format_double(it.domain.a0()) << ',' << format_double(it.domain.fourier_energy()) << '\n';
  }
  return os.str();
}

std::string landscape_csv(int mode_k, const std::vector<LandscapePoint>& points) {
  std::ostringstream os;
  os << "mode_k,amplitude,deficit,valid\n";
  for (const auto& p : points)
    os << mode_k << ',' << format_double(p.amplitude) << ',' << format_double(p.deficit) << ','
       << (p.valid ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace overdet
