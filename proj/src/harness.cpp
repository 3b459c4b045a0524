#include "sgt/harness.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sgt/error.hpp"

namespace sgt {

namespace {

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IOFailure, "cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw Error(ErrorKind::IOFailure, "failed writing '" + path + "'");
}

double relative_change(double before, double after) { return std::abs(after - before) / (1.0 + std::abs(before)); }

}  // namespace

FitResult fit_power_law(std::span<const double> h, std::span<const double> err) {
  if (h.size() != err.size() || h.size() < 3) {
    throw Error(ErrorKind::InvalidSize, "power-law fit needs at least 3 (h, err) pairs");
  }
  const auto n = static_cast<Eigen::Index>(h.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  Eigen::MatrixXd q(n, 3);
  Eigen::VectorXd e(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!(h[k] > 0.0) || !(err[k] > 0.0)) throw Error(ErrorKind::InvalidSize, "power-law fit needs positive data");
    a(k, 0) = 1.0;
    a(k, 1) = std::log(h[k]);
    b(k) = std::log(err[k]);
    q(k, 0) = 1.0;
    q(k, 1) = h[k];
    q(k, 2) = h[k] * h[k];
    e(k) = err[k];
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(b);
  const Eigen::Vector3d p = q.colPivHouseholderQr().solve(e);
  FitResult out;
  out.prefactor = std::exp(c(0));
  out.exponent = c(1);
  out.residual = std::sqrt((a * c - b).squaredNorm() / static_cast<double>(n));
  out.quadratic = {p(0), p(1), p(2)};
  out.points = static_cast<int>(n);
  return out;
}

ConvergenceRun run_convergence(int case_id, std::span<const int> ns, ActionKind kind, int quadrature_points) {
  const TestField tf = test_field(case_id);
  const QuadratureRule rule = QuadratureRule::gauss_legendre(quadrature_points);
  ConvergenceRun run;
  run.case_id = case_id;
  run.action = kind;
  for (int n : ns) {
    const SpacetimeMesh mesh(n, n);
    const MassData mass = assemble_mass(mesh);
    const DiscreteGaugeField field = sample(tf, mesh, rule);
    ConvergenceRecord r;
    r.case_id = case_id;
    r.action = kind;
    r.n = n;
    r.h = mesh.h();
    r.s_discrete = action(kind, field, mesh, mass).gauge();
    r.s_exact = tf.exact_action;
    r.rel_err = std::abs(r.s_discrete - r.s_exact) / std::abs(r.s_exact);
    run.records.push_back(r);
  }
  run.strictly_decreasing = !run.records.empty();
  for (std::size_t k = 1; k < run.records.size(); ++k) {
    if (!(run.records[k].rel_err < run.records[k - 1].rel_err)) run.strictly_decreasing = false;
  }
  // An exactly reproduced value (rel_err == 0) has no power law to fit.
  std::vector<double> h, err;
  for (const auto& r : run.records) {
    if (r.rel_err > 0.0) {
      h.push_back(r.h);
      err.push_back(r.rel_err);
    }
  }
  if (h.size() >= 3 && h.size() == run.records.size()) run.fit = fit_power_law(h, err);
  return run;
}

GaugeInvarianceResult run_gauge_invariance(int n, int seeds, double amplitude, int fields, std::uint64_t base_seed) {
  const SpacetimeMesh mesh(n, n);
  const MassData mass = assemble_mass(mesh);
  GaugeInvarianceResult out;
  for (int k = 0; k < fields; ++k) {
    const std::uint64_t field_seed = base_seed + 1000003ULL * static_cast<std::uint64_t>(k + 1);
    const DiscreteGaugeField a = random_field(mesh, field_seed, amplitude);
    const ScalarField phi = random_scalar(mesh, field_seed + 17, 1.0);
    const double l0 = action_L(a, mesh, mass).gauge();
    const double i0 = action_I(a, mesh, mass).gauge();
    const double j0 = action_J(a, mesh, mass).gauge();
    const double sl0 = scalar_action_L(phi, a, mesh, mass).scalar();
    const double sf0 = scalar_action_F(phi, a, mesh, mass).scalar();
    for (int s = 0; s < seeds; ++s) {
      const GaugeTransform g = random_gauge(mesh, field_seed + 7919ULL * static_cast<std::uint64_t>(s + 1), amplitude);
      const DiscreteGaugeField ag = apply_gauge(a, g, mesh);
      const ScalarField phig = apply_gauge(phi, g);
      out.deviation_L = std::max(out.deviation_L, relative_change(l0, action_L(ag, mesh, mass).gauge()));
      out.deviation_I = std::max(out.deviation_I, relative_change(i0, action_I(ag, mesh, mass).gauge()));
      out.deviation_J = std::max(out.deviation_J, relative_change(j0, action_J(ag, mesh, mass).gauge()));
      out.deviation_scalar_L =
          std::max(out.deviation_scalar_L, relative_change(sl0, scalar_action_L(phig, ag, mesh, mass).scalar()));
      out.deviation_scalar_F =
          std::max(out.deviation_scalar_F, relative_change(sf0, scalar_action_F(phig, ag, mesh, mass).scalar()));
      ++out.trials;
    }
  }
  return out;
}

std::string format_csv(std::span<const ConvergenceRecord> records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.case_id) + ',' + to_string(r.action) + ',' + std::to_string(r.n) + ',' + g17(r.h) + ',' +
           g17(r.s_discrete) + ',' + g17(r.s_exact) + ',' + g17(r.rel_err) + '\n';
  }
  return out;
}

void emit_csv(std::span<const ConvergenceRecord> records, const std::string& path) {
  write_file(path, format_csv(records));
}

std::string format_report(std::span<const ConvergenceRun> runs) {
  std::ostringstream out;
  for (const auto& run : runs) {
    out << "case " << run.case_id << " action " << to_string(run.action) << '\n';
    for (const auto& r : run.records) {
      out << "  N=" << r.n << " S=" << g17(r.s_discrete) << " rel_err=" << g17(r.rel_err) << '\n';
    }
    if (run.fit.points >= 3) {
      out << "  power law: p=" << g17(run.fit.exponent) << " C=" << g17(run.fit.prefactor)
          << " residual=" << g17(run.fit.residual) << '\n';
      out << "  quadratic: " << g17(run.fit.quadratic[0]) << " + " << g17(run.fit.quadratic[1]) << " h + "
          << g17(run.fit.quadratic[2]) << " h^2\n";
    }
    out << "  strictly decreasing: " << (run.strictly_decreasing ? "yes" : "no") << '\n';
  }
  return out.str();
}

void emit_report(std::span<const ConvergenceRun> runs, const std::string& path) {
  write_file(path, format_report(runs));
}

}  // namespace sgt
