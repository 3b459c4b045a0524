// sgt: convergence sweeps, gauge-invariance checks and oracle suites.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "sgt/error.hpp"
#include "sgt/harness.hpp"
#include "sgt/oracle.hpp"

namespace {

std::vector<int> parse_cases(const std::string& text) {
  if (text == "all") return {1, 2, 3, 4};
  try {
    const int id = std::stoi(text);
    sgt::test_field(id);
    return {id};
  } catch (const std::invalid_argument&) {
    throw sgt::Error(sgt::ErrorKind::UnknownCase, "case must be 1, 2, 3, 4 or all, got '" + text + "'");
  }
}

int converge(const std::string& cases, const std::string& kind, const std::vector<int>& ns, const std::string& out,
             const std::string& report) {
  const sgt::ActionKind action = sgt::parse_action_kind(kind);
  std::vector<sgt::ConvergenceRun> runs;
  std::vector<sgt::ConvergenceRecord> records;
  bool ok = true;
  for (int id : parse_cases(cases)) {
    sgt::ConvergenceRun run = sgt::run_convergence(id, ns, action);
    const bool fitted = run.fit.points >= 3;
    const bool slope = fitted && run.fit.exponent >= 1.8 && run.fit.exponent <= 2.2;
    ok = ok && run.strictly_decreasing && slope;
    std::printf("case %d %s:", id, sgt::to_string(action));
    for (const auto& r : run.records) std::printf(" N=%d err=%.3e", r.n, r.rel_err);
    if (fitted) std::printf("  p=%.3f", run.fit.exponent);
    std::printf("  %s\n", run.strictly_decreasing && slope ? "ok" : "FAIL");
    records.insert(records.end(), run.records.begin(), run.records.end());
    runs.push_back(std::move(run));
  }
  if (!out.empty()) sgt::emit_csv(records, out);
  if (!report.empty()) sgt::emit_report(runs, report);
  if (!ok) std::printf("convergence: errors not strictly decreasing or exponent outside [1.8, 2.2]\n");
  return ok ? 0 : 1;
}

int gauge_test(int n, int seeds, double amplitude, int fields) {
  const sgt::GaugeInvarianceResult r = sgt::run_gauge_invariance(n, seeds, amplitude, fields);
  std::printf("trials            %d\n", r.trials);
  std::printf("S^L deviation     %.3e  (<= 1e-10)\n", r.deviation_L);
  std::printf("S^I deviation     %.3e  (> 1e-6, positive control)\n", r.deviation_I);
  std::printf("S^J deviation     %.3e\n", r.deviation_J);
  std::printf("scalar S^L dev.   %.3e  (<= 1e-10)\n", r.deviation_scalar_L);
  std::printf("scalar S^F dev.   %.3e\n", r.deviation_scalar_F);
  const bool ok = r.deviation_L <= 1e-10 && r.deviation_scalar_L <= 1e-10 && r.deviation_I > 1e-6;
  std::printf("%s\n", ok ? "gauge invariance: ok" : "gauge invariance: FAIL");
  return ok ? 0 : 1;
}

int oracle() {
  int failures = 0;
  auto print = [&](const std::vector<sgt::oracle::Check>& checks) {
    for (const auto& c : checks) {
      std::printf("%-4s %-58s %.3e %s %.3e\n", c.pass() ? "ok" : "FAIL", c.name.c_str(), c.value,
                  c.at_least ? ">=" : "<=", c.tolerance);
      if (!c.pass()) ++failures;
    }
  };
  print(sgt::oracle::lie_kernel_suite());
  print(sgt::oracle::feec_suite());
  if (failures) std::printf("%d oracle check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

int mesh_dump(int n, int nt, const std::string& out) {
  const sgt::SpacetimeMesh mesh(n, nt);
  if (out.empty() || out == "-") {
    mesh.dump(std::cout);
    return 0;
  }
  std::ofstream file(out);
  if (!file) throw sgt::Error(sgt::ErrorKind::IOFailure, "cannot open '" + out + "'");
  mesh.dump(file);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simplicial gauge theory on periodic Kuhn meshes"};
  app.require_subcommand(1);

  std::string cases = "all", kind = "L", out, report;
  std::vector<int> ns{4, 8, 16, 32};
  auto* conv = app.add_subcommand("converge", "Relative action error against the exact values under refinement");
  conv->add_option("--case", cases, "1, 2, 3, 4 or all")->capture_default_str();
  conv->add_option("--action", kind, "J, I or L")->capture_default_str();
  conv->add_option("--n", ns, "Comma-separated lattice sizes")->delimiter(',')->capture_default_str();
  conv->add_option("--out", out, "CSV output path");
  conv->add_option("--report", report, "Fit report output path");

  int gn = 4, seeds = 10, fields = 2;
  double amplitude = 0.2;
  auto* gauge = app.add_subcommand("gauge-test", "Action changes under random local gauge transforms");
  gauge->add_option("--n", gn, "Lattice size")->capture_default_str();
  gauge->add_option("--seeds", seeds, "Transforms per field")->capture_default_str();
  gauge->add_option("--fields", fields, "Random fields")->capture_default_str();
  gauge->add_option("--amplitude", amplitude, "Amplitude of fields and transforms")->capture_default_str();

  auto* orc = app.add_subcommand("oracle", "Run the reference-value oracle suites");

  int mn = 2, mnt = 2;
  std::string mout;
  auto* dump = app.add_subcommand("mesh-dump", "Print the entity tables of a mesh");
  dump->add_option("--n", mn, "Lattice size")->capture_default_str();
  dump->add_option("--nt", mnt, "Time nodes")->capture_default_str();
  dump->add_option("--out", mout, "Output path, '-' for stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*conv) return converge(cases, kind, ns, out, report);
    if (*gauge) return gauge_test(gn, seeds, amplitude, fields);
    if (*orc) return oracle();
    if (*dump) return mesh_dump(mn, mnt, mout);
  } catch (const sgt::Error& e) {
    std::fprintf(stderr, "sgt: %s\n", e.what());
    return 2;
  }
  return 0;
}
