#include <filesystem>
#include <iostream>

#include "polymer/cosmo/lattice_family.hpp"
#include "polymer/cosmo/model.hpp"
#include "polymer/io/csv.hpp"

using namespace polymer::cosmo;

namespace {

CoefficientModel edited(const CoefficientModel& base, const std::string& description, auto&& edit) {
  CoefficientModel::Tables t = base.tables();
  edit(t);
  return CoefficientModel(base.gamma(), base.n_min(), base.n_max(), std::move(t), base.decoupled_levels(),
                          base.continuum(), description);
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "models";
  std::filesystem::create_directories(dir);

  const LatticeFamily fam = example_family();
  const double gamma = fam.reference_gamma;
  const int lo = -200, hi = 200;
  const CoefficientModel base =
      build_lattice_model(fam, gamma, lo, hi, "sqrt lattice, bounded curvature, gamma = ln2/(sqrt3 pi)");
  auto at = [&](int n) { return static_cast<std::size_t>(n - lo); };

  const auto curvature = edited(base, "curvature eigenvalue raised above the bound at n = 4",
                                [&](CoefficientModel::Tables& t) { t.b_eig[at(4)] = 300.0 / 81.0; });
  const auto product = edited(base, "b perturbed by 1e-3 for n >= 100", [&](CoefficientModel::Tables& t) {
    for (int n = 100; n <= hi; ++n) t.b_eig[at(n)] *= 1.0 + 1e-3;
  });
  const auto singular = edited(base, "g vanishes at undeclared level 12",
                               [&](CoefficientModel::Tables& t) { t.g[at(12)] = 0.0; });

  polymer::io::write_file(dir / "example.json", model_to_json(base));
  polymer::io::write_file(dir / "counterexample_curvature.json", model_to_json(curvature));
  polymer::io::write_file(dir / "counterexample_product.json", model_to_json(product));
  polymer::io::write_file(dir / "counterexample_singular.json", model_to_json(singular));
  std::cout << "wrote 4 models to " << dir.string() << '\n';
}
