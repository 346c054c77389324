#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polymer/cosmo/model.hpp"

namespace polymer::cosmo {

inline constexpr double kCurvatureBound = 256.0 / 81.0;
inline constexpr double kCurvatureTolerance = 1e-9;
inline constexpr int kProductLevel = 100;
inline constexpr double kProductTolerance = 5e-4;

enum class CheckStatus { pass, fail, skipped };

const char* status_name(CheckStatus status);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  double value = 0.0;   ///< measured quantity (sup b, |a b - 1|, ...)
  double margin = 0.0;  ///< tolerance minus deviation; negative on failure
  std::optional<int> location;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  std::vector<double> wdw_residuals;

  /// True when every check that ran passed.
  bool passed() const;
  const CheckResult* find(const std::string& name) const;
};

/// A smooth (or deliberately non-smooth) function of the continuous scale
/// factor, with its first two derivatives.
struct TestFunction {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;
  bool smooth = true;

  static TestFunction sine();
  static TestFunction zero();
  static TestFunction step(double at);
};

struct WdwResult {
  bool skipped = false;
  bool decreasing = false;
  bool flagged_nonsmooth = false;
  std::vector<double> gammas;
  std::vector<double> residuals;
  std::string note;
};

/// For each gamma, regenerates the model's declared lattice family, applies
/// the difference operator to the test function sampled at the nodes, and
/// returns the sup-norm discrepancy against F'' + F'/a on the family's
/// continuous window. Gammas must be positive and strictly decreasing.
WdwResult wdw_limit_residual(const CoefficientModel& model, const TestFunction& test, std::span<const double> gammas);

/// Gamma sequence used by validate_model for the continuum-limit check.
std::vector<double> default_wdw_gammas();

/// Runs every check; failures are report entries, never exceptions.
ValidationReport validate_model(const CoefficientModel& model);

}  // namespace polymer::cosmo
