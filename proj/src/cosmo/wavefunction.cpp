#include "polymer/cosmo/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "polymer/errors.hpp"

namespace polymer::cosmo {

WaveFunction::WaveFunction(int lo, int hi) : lo_(lo), hi_(hi) {
  if (lo > hi) throw InvalidArgument("wave function range must satisfy lo <= hi");
  const auto n = static_cast<std::size_t>(hi - lo + 1);
  amplitudes_.assign(n, Amplitude{});
  undetermined_.assign(n, false);
}

std::size_t WaveFunction::index(int n) const {
  if (!contains(n)) {
    throw InvalidArgument("level " + std::to_string(n) + " outside wave function support [" + std::to_string(lo_) +
                          ", " + std::to_string(hi_) + "]");
  }
  return static_cast<std::size_t>(n - lo_);
}

Amplitude WaveFunction::operator[](int n) const { return amplitudes_[index(n)]; }

void WaveFunction::set(int n, Amplitude value) {
  const auto i = index(n);
  amplitudes_[i] = value;
  undetermined_[i] = false;
}

bool WaveFunction::determined(int n) const { return !undetermined_[index(n)]; }

void WaveFunction::mark_undetermined(int n) {
  const auto i = index(n);
  amplitudes_[i] = Amplitude{};
  undetermined_[i] = true;
}

std::vector<Amplitude> WaveFunction::common_scale(double* log_scale_out) const {
  std::array<bool, 4> present{};
  for (int n = lo_; n <= hi_; ++n) {
    if (amplitudes_[index(n)] != Amplitude{}) present[static_cast<std::size_t>(residue_of(n))] = true;
  }
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < 4; ++r) {
    if (present[r]) top = std::max(top, log_scale_[r]);
  }
  if (!std::isfinite(top)) top = 0.0;
  std::array<double, 4> factor{};
  for (std::size_t r = 0; r < 4; ++r) factor[r] = std::exp(log_scale_[r] - top);

  std::vector<Amplitude> out(amplitudes_.size());
  for (int n = lo_; n <= hi_; ++n) {
    out[index(n)] = amplitudes_[index(n)] * factor[static_cast<std::size_t>(residue_of(n))];
  }
  if (log_scale_out) *log_scale_out = top;
  return out;
}

void WaveFunction::rescale_class(int residue, double shift) {
  const double factor = std::exp(-shift);
  for (int n = lo_; n <= hi_; ++n) {
    if (residue_of(n) == residue) amplitudes_[index(n)] *= factor;
  }
  log_scale_.at(static_cast<std::size_t>(residue)) += shift;
}

double ray_distance(const WaveFunction& u, const WaveFunction& v, int lo, int hi) {
  if (lo > hi || !u.contains(lo) || !u.contains(hi) || !v.contains(lo) || !v.contains(hi)) {
    throw InvalidArgument("ray distance window outside the common support");
  }
  const auto us = u.common_scale();
  const auto vs = v.common_scale();
  const auto ui = static_cast<std::size_t>(lo - u.lo());
  const auto vi = static_cast<std::size_t>(lo - v.lo());
  const auto len = static_cast<std::size_t>(hi - lo + 1);

  double nu = 0.0, nv = 0.0;
  Amplitude overlap{};
  for (std::size_t i = 0; i < len; ++i) {
    nu += std::norm(us[ui + i]);
    nv += std::norm(vs[vi + i]);
    overlap += std::conj(us[ui + i]) * vs[vi + i];
  }
  if (nu == 0.0 || nv == 0.0) throw InvalidArgument("ray distance of a vanishing wave function");
  const Amplitude phase = std::abs(overlap) > 0.0 ? std::conj(overlap) / std::abs(overlap) : Amplitude{1.0};
  const double su = 1.0 / std::sqrt(nu);
  const double sv = 1.0 / std::sqrt(nv);
  double dist = 0.0;
  for (std::size_t i = 0; i < len; ++i) dist += std::norm(us[ui + i] * su - vs[vi + i] * sv * phase);
  return std::sqrt(dist);
}

}  // namespace polymer::cosmo
