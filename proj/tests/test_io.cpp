#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "overdet/errors.hpp"
#include "overdet/io.hpp"

#include <algorithm>
#include <random>

using namespace overdet;

TEST_CASE("domain JSON round trip on random domains") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coeff(-0.03, 0.03);
  for (int trial = 0; trial < 25; ++trial) {
    const int K = 1 + trial % 6;
    Eigen::VectorXd a(K), b(K);
    for (int k = 0; k < K; ++k) a[k] = coeff(rng), b[k] = coeff(rng);
    const StarDomain2D d(0.5 + trial * 0.1, a, b);
    const auto back = domain_from_json(Json::parse(domain_to_json(d).dump()));
    CHECK(back.a0() == d.a0());
    CHECK(back.cos_coeffs() == d.cos_coeffs());
    CHECK(back.sin_coeffs() == d.sin_coeffs());
  }
}

TEST_CASE("domain JSON format") {
  const auto j = domain_to_json(StarDomain2D(1.0, Eigen::Vector2d(0.0, 0.1), Eigen::Vector2d::Zero()));
  CHECK(j.dump() == R"({"a0":1.0,"cos":[0.0,0.1],"sin":[0.0,0.0]})");

  const auto d = domain_from_json(Json::parse(R"({"a0": 2, "cos": [0, 0.1], "quad_points": 64})"));
  CHECK(d.modes() == 2);
  CHECK(d.sin_coeffs().isZero());
  CHECK(d.quad_points() == 64);
  CHECK(domain_from_json(Json::parse(R"({"a0": 1})")).modes() == 0);

  CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"cos": [0.1]})")), InvalidDomain);
  CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"a0": 1, "cos": 3})")), InvalidDomain);
  CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"a0": 1, "cos": [2.0]})")), InvalidDomain);
}

TEST_CASE("solution JSON round trip reproduces evaluations") {
  const auto sol = solve(StarDomain2D(1.0, Eigen::Vector2d(0.05, 0.1), Eigen::Vector2d(0.0, 0.02)),
                         1.5, 16);
  const auto back = solution_from_json(Json::parse(solution_to_json(sol).dump()));
  CHECK(back.alpha() == sol.alpha());
  CHECK(back.fit_residual() == sol.fit_residual());
  for (const auto& x : sample_interior(sol.domain(), 10, 1)) CHECK(back.u(x) == sol.u(x));
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(0.0625) == "0.0625");
  CHECK(format_double(-0.75) == "-0.75");
  CHECK(format_double(12.0) == "12");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(format_double(1.0 / 3) == "0.33333333333333331");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("report CSV row matches the header") {
  const auto rep = build_report(solve(StarDomain2D::circle(1.0), 0.0, 12));
  const auto header = report_csv_header();
  const auto row = report_csv_row(rep);
  CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));
  CHECK(row.back() == '\n');
  CHECK(row.find('\r') == std::string::npos);
  CHECK(row.rfind("42,", 0) == 0);

  const auto j = report_to_json(rep);
  CHECK(j["pass"] == true);
  CHECK(j["v_harmonicity"].is_null());
  CHECK(j["checks"].size() == rep.checks.size());
}

TEST_CASE("trace CSV") {
  const auto trace = recover(StarDomain2D::circle(1.0));
  const auto csv = trace_csv(trace);
  CHECK(csv.rfind("iter,deficit,cN,a0,fourier_energy\n0,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(trace_to_json(trace)["converged"] == true);
}
