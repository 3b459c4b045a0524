#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "sgt/harness.hpp"

using namespace sgt;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("power-law fit recovers a synthetic 3 h^2") {
    const std::vector<double> h{0.25, 0.125, 0.0625, 0.03125};
    std::vector<double> err;
    for (double x : h) err.push_back(3.0 * x * x);
    const FitResult fit = fit_power_law(h, err);
    CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.prefactor == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.residual < 1e-12);
    CHECK(fit.points == 4);
    CHECK(fit.quadratic[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(fit.quadratic[1] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(fit.quadratic[2] == doctest::Approx(3.0).epsilon(1e-10));
  }

  TEST_CASE("power-law fit input validation") {
    const std::vector<double> h{0.5, 0.25}, e{0.1, 0.02};
    CHECK_THROWS_AS(fit_power_law(h, e), Error);
    const std::vector<double> h3{0.5, 0.25, 0.125}, e3{0.1, 0.0, 0.01};
    CHECK_THROWS_AS(fit_power_law(h3, e3), Error);
    const std::vector<double> e2{0.1, 0.02};
    CHECK_THROWS_AS(fit_power_law(h3, e2), Error);
  }

  TEST_CASE("CSV layout round-trips") {
    std::vector<ConvergenceRecord> records{{3, ActionKind::L, 4, 0.25, 0.4, 0.5000321, 0.2000641},
                                           {4, ActionKind::J, 8, 0.125, 0.5, 0.5, 0.0}};
    const std::string csv = format_csv(records);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == kCsvHeader);
    for (const auto& r : records) {
      REQUIRE(std::getline(in, line));
      const auto cols = split(line, ',');
      REQUIRE(cols.size() == 7);
      CHECK(std::stoi(cols[0]) == r.case_id);
      CHECK(cols[1] == to_string(r.action));
      CHECK(std::stoi(cols[2]) == r.n);
      CHECK(std::stod(cols[3]) == r.h);
      CHECK(std::stod(cols[4]) == r.s_discrete);
      CHECK(std::stod(cols[5]) == r.s_exact);
      CHECK(std::stod(cols[6]) == r.rel_err);
    }
    CHECK_FALSE(std::getline(in, line));
  }

  TEST_CASE("writing to an unusable path fails loudly") {
    const std::vector<ConvergenceRecord> records(1);
    CHECK_THROWS_AS(emit_csv(records, "/nonexistent-dir/out.csv"), Error);
    const std::vector<ConvergenceRun> runs(1);
    CHECK_THROWS_AS(emit_report(runs, "/nonexistent-dir/report.txt"), Error);
  }

  TEST_CASE("convergence records") {
    const std::vector<int> ns{2, 3, 4};
    const ConvergenceRun run = run_convergence(2, ns, ActionKind::L);
    REQUIRE(run.records.size() == 3);
    for (std::size_t k = 0; k < ns.size(); ++k) {
      const auto& r = run.records[k];
      CHECK(r.n == ns[k]);
      CHECK(r.h == doctest::Approx(1.0 / ns[k]));
      CHECK(r.s_exact == 1.0);
      CHECK(r.rel_err == doctest::Approx(std::abs(r.s_discrete - r.s_exact) / r.s_exact));
    }
    CHECK(run.strictly_decreasing);
    CHECK(run.fit.points == 3);
    CHECK_THROWS_AS(run_convergence(5, ns, ActionKind::L), Error);
  }

  TEST_CASE("J is exact on the constant commutator field") {
    const std::vector<int> ns{2, 3, 4};
    const ConvergenceRun run = run_convergence(4, ns, ActionKind::J);
    for (const auto& r : run.records) CHECK(r.rel_err < 1e-13);
  }

  TEST_CASE("report mentions every run") {
    const std::vector<int> ns{2, 3, 4};
    const std::vector<ConvergenceRun> runs{run_convergence(4, ns, ActionKind::L), run_convergence(4, ns, ActionKind::J)};
    const std::string text = format_report(runs);
    CHECK(text.find("case 4 action L") != std::string::npos);
    CHECK(text.find("case 4 action J") != std::string::npos);
    CHECK(text.find("power law: p=") != std::string::npos);
  }

  TEST_CASE("gauge invariance driver") {
    const GaugeInvarianceResult r = run_gauge_invariance(2, 2, 0.2, 1);
    CHECK(r.trials == 2);
    CHECK(r.deviation_L <= 1e-12);
    CHECK(r.deviation_scalar_L <= 1e-12);
    CHECK(r.deviation_I > 1e-6);
    CHECK(r.deviation_scalar_F > 1e-6);
  }
}
