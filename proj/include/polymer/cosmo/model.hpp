#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace polymer::cosmo {

/// Parameters of the illustrative lattice quantization used to regenerate a
/// model at other values of gamma (the continuum-limit check needs this).
///
/// Nodes sit at x_n = sign(n) sqrt(kappa |n|) with kappa = kappa_per_gamma * gamma.
/// The difference operator approximates F'' + F'/x on those nodes, plus a
/// residue-class potential that vanishes as gamma -> 0 and a core term
/// localized within eps = eps_factor * sqrt(kappa) of x = 0.
struct LatticeFamily {
  double kappa_per_gamma = 1.0;
  double reference_gamma = 1.0;  ///< gamma at which the class potential has full strength
  double eps_factor = 2.0;
  double core_strength = 0.1;
  std::array<double, 4> class_potential{0.0, 1.0, 2.0, 3.0};
  double potential_width = 2.0;
  double window_lo = 1.0;  ///< continuous scale-factor window of the limit check
  double window_hi = 2.0;
};

struct Coefficients {
  double c = 0.0;
  double d = 0.0;
  double e = 0.0;
  double f = 0.0;
  double g = 0.0;
};

/// Tabulated recurrence
///
///   c_n psi_{n+8} + d_n psi_{n+4} + e_n psi_n + f_n psi_{n-4} + g_n psi_{n-8} = gamma h(n) psi_n
///
/// on levels [n_min, n_max], with scale-factor and curvature eigenvalues.
/// Immutable once built.
class CoefficientModel {
 public:
  struct Tables {
    std::vector<double> c, d, e, f, g, a_eig, b_eig;
  };

  CoefficientModel(double gamma, int n_min, int n_max, Tables tables, std::set<int> decoupled = {},
                   std::optional<LatticeFamily> continuum = std::nullopt, std::string description = {});

  double gamma() const noexcept { return gamma_; }
  int n_min() const noexcept { return n_min_; }
  int n_max() const noexcept { return n_max_; }
  bool contains(int n) const noexcept { return n >= n_min_ && n <= n_max_; }

  /// Throws InvalidArgument outside [n_min, n_max].
  Coefficients at(int n) const;
  double a_eig(int n) const;
  double b_eig(int n) const;

  const Tables& tables() const noexcept { return tables_; }
  const std::set<int>& decoupled_levels() const noexcept { return decoupled_; }
  bool is_decoupled(int n) const { return decoupled_.contains(n); }
  const std::optional<LatticeFamily>& continuum() const noexcept { return continuum_; }
  const std::string& description() const noexcept { return description_; }

  /// Same model with every recurrence coefficient multiplied by `factor`.
  CoefficientModel scaled(double factor) const;

 private:
  std::size_t index(int n) const;

  double gamma_;
  int n_min_;
  int n_max_;
  Tables tables_;
  std::set<int> decoupled_;
  std::optional<LatticeFamily> continuum_;
  std::string description_;
};

/// Parses model JSON. Physics is not checked here; see validate_model.
/// Throws ModelFormatError naming the offending field.
CoefficientModel parse_model(std::string_view json_text);
CoefficientModel load_model(const std::filesystem::path& path);

/// Serialized form accepted by parse_model.
std::string model_to_json(const CoefficientModel& model);

}  // namespace polymer::cosmo
