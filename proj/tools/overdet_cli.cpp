// overdet: command-line driver for the solver, identity report, radial
// closed forms, shape recovery and deficit sweeps.
//
// Exit codes: 0 success, 1 identity violation / no convergence,
// 2 configuration error, 3 numerical failure.

#include "overdet/errors.hpp"
#include "overdet/io.hpp"
#include "overdet/radial.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace overdet;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> k_basis;
  std::optional<int> quad;
  // radial only
  std::optional<int> dim;
  std::optional<std::string> radius, alpha, c0;
};

struct RunConfig {
  Json doc = Json::object();
  fs::path out;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  int k_basis = 32;
  int quad_points = StarDomain2D::kDefaultQuadPoints;
};

const std::set<std::string> kTopKeys = {"domain", "alpha",      "law",       "law_alpha",
                                        "k_basis", "quad_points", "collocation", "seed",
                                        "tolerances", "prop2",   "boundary_points", "radial",
                                        "recover", "sweep"};

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(std::string("bad value for '") + key + "'");
  }
}

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

RunConfig load(const Flags& flags) {
  RunConfig cfg;
  if (!flags.config.empty()) {
    std::ifstream in(flags.config);
    if (!in) throw ConfigError("cannot read config '" + flags.config + "'");
    try {
      cfg.doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw ConfigError(std::string("config parse error: ") + e.what());
    }
    check_keys(cfg.doc, kTopKeys, "config");
  }
  cfg.seed = get_or<std::uint64_t>(cfg.doc, "seed", cfg.seed);
  cfg.k_basis = get_or<int>(cfg.doc, "k_basis", cfg.k_basis);
  cfg.quad_points = get_or<int>(cfg.doc, "quad_points", cfg.quad_points);
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.k_basis) cfg.k_basis = *flags.k_basis;
  if (flags.quad) cfg.quad_points = *flags.quad;
  cfg.tol = flags.tol;
  cfg.out = flags.out;
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec || !fs::is_directory(cfg.out))
    throw ConfigError("cannot create output directory '" + cfg.out.string() + "'");
  return cfg;
}

StarDomain2D domain_of(const RunConfig& cfg) {
  if (!cfg.doc.contains("domain")) return StarDomain2D::circle(1.0, cfg.quad_points);
  try {
    return domain_from_json(cfg.doc.at("domain"), cfg.quad_points);
  } catch (const Error& e) {
    throw ConfigError(std::string("domain: ") + e.what());
  }
}

BoundaryLaw law_of(const RunConfig& cfg) {
  const auto name = get_or<std::string>(cfg.doc, "law", "linear-cr");
  BoundaryLaw::Kind kind;
  try {
    kind = parse_law_kind(name);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  switch (kind) {
    case BoundaryLaw::Kind::Constant: return BoundaryLaw::constant();
    case BoundaryLaw::Kind::Linear: return BoundaryLaw::linear();
    case BoundaryLaw::Kind::Power: return BoundaryLaw::power(get_or<double>(cfg.doc, "law_alpha", 1.0));
    case BoundaryLaw::Kind::General: break;
  }
  throw ConfigError("the general-f law is only available through the library");
}

Tolerances tolerances_of(const RunConfig& cfg) {
  Tolerances t;
  if (cfg.doc.contains("tolerances")) {
    const Json& j = cfg.doc.at("tolerances");
    check_keys(j, {"eq4_rel", "eq9_rel", "lemma1_rel", "eq3_rel", "eq5_rel", "phi_boundary",
                   "hessian", "harmonicity", "cn_excess", "deficit", "remark4", "fd_step",
                   "fd_samples", "hessian_samples", "interior_radial", "interior_angular"},
               "tolerances");
    t.eq4_rel = get_or(j, "eq4_rel", t.eq4_rel);
    t.eq9_rel = get_or(j, "eq9_rel", t.eq9_rel);
    t.lemma1_rel = get_or(j, "lemma1_rel", t.lemma1_rel);
    t.eq3_rel = get_or(j, "eq3_rel", t.eq3_rel);
    t.eq5_rel = get_or(j, "eq5_rel", t.eq5_rel);
    t.phi_boundary = get_or(j, "phi_boundary", t.phi_boundary);
    t.hessian = get_or(j, "hessian", t.hessian);
    t.harmonicity = get_or(j, "harmonicity", t.harmonicity);
    t.cn_excess = get_or(j, "cn_excess", t.cn_excess);
    t.deficit = get_or(j, "deficit", t.deficit);
    t.remark4 = get_or(j, "remark4", t.remark4);
    t.fd_step = get_or(j, "fd_step", t.fd_step);
    t.fd_samples = get_or(j, "fd_samples", t.fd_samples);
    t.hessian_samples = get_or(j, "hessian_samples", t.hessian_samples);
    t.interior_radial = get_or(j, "interior_radial", t.interior_radial);
    t.interior_angular = get_or(j, "interior_angular", t.interior_angular);
  }
  if (cfg.tol) t.deficit = *cfg.tol;
  return t;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

PoissonSolution2D solve_from(const RunConfig& cfg, const StarDomain2D& domain) {
  return solve(domain, get_or<double>(cfg.doc, "alpha", 0.0), cfg.k_basis,
               get_or<int>(cfg.doc, "collocation", 0));
}

int cmd_solve(const RunConfig& cfg) {
  const auto domain = domain_of(cfg);
  const int m = get_or<int>(cfg.doc, "boundary_points", 256);
  if (m < 8) throw ConfigError("boundary_points must be at least 8");
  const auto sol = solve_from(cfg, domain);
  const auto nodes = boundary_nodes(domain, m);
  const auto dn = normal_derivative(sol, nodes);

  std::string csv = "theta,x,y,r,u,dudn\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    csv += format_double(n.theta) + ',' + format_double(n.position.x()) + ',' +
           format_double(n.position.y()) + ',' + format_double(n.r) + ',' +
           format_double(sol.u(n.position)) + ',' + format_double(dn[i]) + '\n';
  }
  write_file(cfg.out / "solution.json", solution_to_json(sol).dump(2) + '\n');
  write_file(cfg.out / "boundary.csv", csv);
  std::cout << "fit_residual = " << format_double(sol.fit_residual()) << '\n';
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  const auto domain = domain_of(cfg);
  ReportOptions opts;
  opts.law = law_of(cfg);
  opts.tol = tolerances_of(cfg);
  opts.seed = cfg.seed;
  if (cfg.doc.contains("prop2")) {
    const Json& p = cfg.doc.at("prop2");
    check_keys(p, {"c0", "c1"}, "prop2");
    opts.prop2 = Prop2Params{get_or<double>(p, "c0", 1.0), get_or<double>(p, "c1", 0.0)};
  }
  const auto sol = solve_from(cfg, domain);
  const auto rep = build_report(sol, opts);
  write_file(cfg.out / "report.json", report_to_json(rep).dump(2) + '\n');
  write_file(cfg.out / "report.csv", report_csv_header() + report_csv_row(rep));
  for (const auto& c : rep.checks)
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ' ' << format_double(c.value)
              << " (limit " << format_double(c.limit) << ")\n";
  std::cout << "cN = " << format_double(rep.cN) << '\n';
  return rep.all_pass() ? kOk : kViolation;
}

// "3", "-3/4" -> exact; anything else -> nullopt.
std::optional<Rational> parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  auto parse_int = [](std::string_view v) -> std::optional<std::int64_t> {
    std::int64_t x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size()) return std::nullopt;
    return x;
  };
  const std::string_view sv(s);
  const auto num = parse_int(sv.substr(0, slash));
  if (!num) return std::nullopt;
  if (slash == std::string::npos) return Rational(*num);
  const auto den = parse_int(sv.substr(slash + 1));
  if (!den || *den == 0) return std::nullopt;
  return Rational(*num, *den);
}

double parse_real(const std::string& s, const char* what) {
  if (const auto q = parse_rational(s)) return boost::rational_cast<double>(*q);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError(std::string("cannot parse ") + what + " = '" + s + "'");
  return x;
}

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q.numerator();
  if (q.denominator() != 1) os << '/' << q.denominator();
  return os.str();
}

int cmd_radial(const RunConfig& cfg, const Flags& flags) {
  Json r = cfg.doc.value("radial", Json::object());
  check_keys(r, {"N", "R", "alpha", "c0"}, "radial");
  auto text = [&](const char* key, const std::optional<std::string>& flag, const char* fallback) {
    if (flag) return *flag;
    if (!r.contains(key)) return std::string(fallback);
    const Json& v = r.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return format_double(v.get<double>());
    throw ConfigError(std::string("bad value for radial.") + key);
  };
  const int dim = flags.dim ? *flags.dim : get_or<int>(r, "N", 2);
  const std::string R = text("R", flags.radius, "1"), alpha = text("alpha", flags.alpha, "0"),
                    c0 = text("c0", flags.c0, "1/2");
  if (dim < 2) throw ConfigError("N must be at least 2");
  const double Rd = parse_real(R, "R"), alphad = parse_real(alpha, "alpha"),
               c0d = parse_real(c0, "c0");
  if (!(Rd > 0.0)) throw ConfigError("R must be positive");
  if (alphad < 0.0) throw ConfigError("alpha must be non-negative");

  Json out;
  out["N"] = dim;
  out["R"] = Rd;
  out["alpha"] = alphad;
  out["c0"] = c0d;
  const auto p1 = radial_p1(dim, Rd);
  out["p1"] = {{"u0", p1.u0}, {"c", p1.c}};
  const auto lemma = lemma1_exact(dim, Rd);
  out["lemma1"] = {{"lhs", lemma.lhs}, {"rhs", lemma.rhs}};

  const auto p2 = radial_p2(dim, Rd, alphad, c0d);
  std::cout << "N = " << dim << "\nR = " << format_double(Rd) << "\nalpha = " << format_double(alphad)
            << "\nc0 = " << format_double(c0d) << "\np1.u0 = " << format_double(p1.u0)
            << "\np1.c = " << format_double(p1.c) << "\nbeta = " << format_double(p2.beta)
            << "\nc1 = " << format_double(p2.c1) << "\nu0 = " << format_double(p2.u0)
            << "\nlemma1.lhs = " << format_double(lemma.lhs)
            << "\nlemma1.rhs = " << format_double(lemma.rhs) << '\n';
  out["p2"] = {{"beta", p2.beta}, {"c1", p2.c1}, {"u0", p2.u0}};

  const auto qR = parse_rational(R), qa = parse_rational(alpha), qc = parse_rational(c0);
  if (qR && qa && qc && qa->denominator() == 1) {
    const auto e = radial_p2<Rational>(dim, *qR, *qa, *qc);
    std::cout << "exact.beta = " << rational_str(e.beta) << "\nexact.c1 = " << rational_str(e.c1)
              << "\nexact.u0 = " << rational_str(e.u0) << '\n';
    out["exact"] = {{"beta", rational_str(e.beta)}, {"c1", rational_str(e.c1)},
                    {"u0", rational_str(e.u0)}};
  }
  write_file(cfg.out / "radial.json", out.dump(2) + '\n');
  return kOk;
}

int cmd_recover(const RunConfig& cfg) {
  const auto domain = domain_of(cfg);
  RecoveryConfig rc;
  rc.k_basis = cfg.k_basis;
  const Json r = cfg.doc.value("recover", Json::object());
  check_keys(r, {"law", "relaxation", "max_iters", "deficit_tol", "renormalize_area", "k_geom",
                 "mode1_damping", "increase_tol", "max_halvings", "projection_points"},
             "recover");
  try {
    rc.law = parse_law_kind(get_or<std::string>(r, "law", get_or<std::string>(cfg.doc, "law", "linear-cr")));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  rc.relaxation = get_or(r, "relaxation", rc.relaxation);
  rc.max_iters = get_or(r, "max_iters", rc.max_iters);
  rc.deficit_tol = get_or(r, "deficit_tol", rc.deficit_tol);
  rc.renormalize_area = get_or(r, "renormalize_area", rc.renormalize_area);
  rc.k_geom = get_or(r, "k_geom", rc.k_geom);
  rc.mode1_damping = get_or(r, "mode1_damping", rc.mode1_damping);
  rc.increase_tol = get_or(r, "increase_tol", rc.increase_tol);
  rc.max_halvings = get_or(r, "max_halvings", rc.max_halvings);
  rc.projection_points = get_or(r, "projection_points", rc.projection_points);
  if (cfg.tol) rc.deficit_tol = *cfg.tol;
  try {
    rc.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  const auto trace = recover(domain, rc);
  write_file(cfg.out / "trace.json", trace_to_json(trace).dump(2) + '\n');
  write_file(cfg.out / "trace.csv", trace_csv(trace));
  std::cout << "iterations = " << trace.iterates.size() - 1
            << "\ndeficit = " << format_double(trace.iterates.back().deficit)
            << "\nfourier_energy = " << format_double(trace.final_fourier_energy)
            << "\nconverged = " << (trace.converged ? "true" : "false") << '\n';
  return trace.converged ? kOk : kViolation;
}

int cmd_sweep(const RunConfig& cfg) {
  const auto base = domain_of(cfg);
  const auto law = law_of(cfg);
  const Json s = cfg.doc.value("sweep", Json::object());
  check_keys(s, {"modes", "amplitudes", "alphas"}, "sweep");
  const auto modes = get_or<std::vector<int>>(s, "modes", {2});
  const auto amps = get_or<std::vector<double>>(s, "amplitudes", {0.0, 0.025, 0.05, 0.1});
  for (int k : modes)
    if (k < 2) throw ConfigError("sweep modes must be at least 2");

  std::string csv;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto block = landscape_csv(modes[i], deficit_landscape(base, modes[i], amps, law, cfg.k_basis));
    csv += i == 0 ? block : block.substr(block.find('\n') + 1);
  }
  write_file(cfg.out / "sweep.csv", csv);

  if (s.contains("alphas")) {
    ReportOptions opts;
    opts.law = law;
    opts.tol = tolerances_of(cfg);
    opts.seed = cfg.seed;
    std::string rows = report_csv_header();
    for (double a : get_or<std::vector<double>>(s, "alphas", {}))
      rows += report_csv_row(build_report(solve(base, a, cfg.k_basis), opts));
    write_file(cfg.out / "sweep_alpha.csv", rows);
  }
  return kOk;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON configuration file")->check(CLI::ExistingFile);
  sub->add_option("--out", f.out, "output directory")->capture_default_str();
  sub->add_option("--seed", f.seed, "seed for interior sample points");
  sub->add_option("--tol", f.tol, "deficit tolerance");
  sub->add_option("--k-basis", f.k_basis, "harmonic basis degree")->check(CLI::PositiveNumber);
  sub->add_option("--quad", f.quad, "boundary quadrature points")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Overdetermined Poisson problems on star-shaped domains"};
  app.require_subcommand(1);
  Flags flags;
  auto* solve_cmd = app.add_subcommand("solve", "solve and write solution.json, boundary.csv");
  auto* verify_cmd = app.add_subcommand("verify", "identity report: report.json, report.csv");
  auto* radial_cmd = app.add_subcommand("radial", "closed-form radial constants");
  auto* recover_cmd = app.add_subcommand("recover", "shape recovery: trace.json, trace.csv");
  auto* sweep_cmd = app.add_subcommand("sweep", "deficit landscape: sweep.csv");
  for (auto* sub : {solve_cmd, verify_cmd, radial_cmd, recover_cmd, sweep_cmd}) add_common(sub, flags);
  radial_cmd->add_option("--N", flags.dim, "dimension");
  radial_cmd->add_option("--R", flags.radius, "ball radius (integer, p/q or decimal)");
  radial_cmd->add_option("--alpha", flags.alpha, "source exponent");
  radial_cmd->add_option("--c0", flags.c0, "boundary coefficient");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    const RunConfig cfg = load(flags);
    if (*solve_cmd) return cmd_solve(cfg);
    if (*verify_cmd) return cmd_verify(cfg);
    if (*radial_cmd) return cmd_radial(cfg, flags);
    if (*recover_cmd) return cmd_recover(cfg);
    return cmd_sweep(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}
