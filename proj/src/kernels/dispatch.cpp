#include "polymer/kernels/dispatch.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace polymer::kernels {
namespace {

Isa probe() noexcept {
#if defined(POLYMER_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
  return Isa::scalar;
}

Isa initial() noexcept {
  Isa isa = probe();
  if (const char* env = std::getenv("POLYMER_ISA")) {
    if (std::string(env) == "scalar") isa = Isa::scalar;
  }
  return isa;
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{initial()};
  return isa;
}

}  // namespace

Isa detected_isa() noexcept {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) noexcept {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) isa = Isa::scalar;
  current().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

}  // namespace polymer::kernels
