#pragma once

#include <string_view>

namespace polymer::kernels {

/// Instruction-set variants a kernel may be dispatched to.
enum class Isa { scalar, avx2 };

/// Best variant this binary and CPU both support.
Isa detected_isa() noexcept;

/// Variant currently used by the dispatching entry points. Starts as
/// detected_isa(), lowered to scalar when POLYMER_ISA=scalar is set.
Isa active_isa() noexcept;

/// Forces a variant (clamped to what is available). Used by the
/// equivalence tests; not thread-safe with respect to running kernels.
void set_active_isa(Isa isa) noexcept;

std::string_view isa_name(Isa isa) noexcept;

/// RAII override of the active variant.
class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa) noexcept : previous_(active_isa()) { set_active_isa(isa); }
  ~ScopedIsa() { set_active_isa(previous_); }
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa previous_;
};

}  // namespace polymer::kernels
