#pragma once

// Convergence and gauge-invariance drivers behind the sgt command line tool.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sgt/action.hpp"

namespace sgt {

struct ConvergenceRecord {
  int case_id = 0;
  ActionKind action = ActionKind::L;
  int n = 0;
  double h = 0.0;
  double s_discrete = 0.0;
  double s_exact = 0.0;
  double rel_err = 0.0;
};

/// rel_err ~ prefactor * h^exponent by least squares in log-log, plus the
/// quadratic rel_err ~ c0 + c1 h + c2 h^2 for comparison.
struct FitResult {
  double exponent = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;  // RMS of the log-log residuals
  std::array<double, 3> quadratic{};
  int points = 0;
};

/// Throws InvalidSize with fewer than 3 points or non-positive values.
FitResult fit_power_law(std::span<const double> h, std::span<const double> err);

struct ConvergenceRun {
  int case_id = 0;
  ActionKind action = ActionKind::L;
  std::vector<ConvergenceRecord> records;
  FitResult fit;
  bool strictly_decreasing = false;
};

/// One record per N with N_t = N. The fit is computed when there are at least 3
/// points, all with nonzero error; otherwise fit.points stays 0.
ConvergenceRun run_convergence(int case_id, std::span<const int> ns, ActionKind kind,
                               int quadrature_points = kDefaultQuadraturePoints);

struct GaugeInvarianceResult {
  int trials = 0;
  // max over trials of |S(A^g) - S(A)| / (1 + |S(A)|)
  double deviation_L = 0.0;
  double deviation_I = 0.0;
  double deviation_J = 0.0;
  double deviation_scalar_L = 0.0;
  double deviation_scalar_F = 0.0;
};

/// `fields` random fields, each against `seeds` random transforms.
GaugeInvarianceResult run_gauge_invariance(int n, int seeds, double amplitude, int fields = 2,
                                           std::uint64_t base_seed = 1);

inline constexpr const char* kCsvHeader = "case,action,N,h,S_discrete,S_exact,rel_err";

std::string format_csv(std::span<const ConvergenceRecord> records);
/// Throws IOFailure.
void emit_csv(std::span<const ConvergenceRecord> records, const std::string& path);
std::string format_report(std::span<const ConvergenceRun> runs);
void emit_report(std::span<const ConvergenceRun> runs, const std::string& path);

}  // namespace sgt
