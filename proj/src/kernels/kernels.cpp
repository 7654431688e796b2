#include "carrylab/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "carrylab/errors.hpp"

namespace carrylab::kernels {

const std::vector<const KernelSet*>& available_kernels() {
  static const std::vector<const KernelSet*> sets = [] {
    std::vector<const KernelSet*> v{&scalar_kernels()};
    if (const KernelSet* k = avx2_kernels()) v.push_back(k);
    if (const KernelSet* k = neon_kernels()) v.push_back(k);
    return v;
  }();
  return sets;
}

const KernelSet& active_kernels() {
  static const KernelSet* chosen = []() -> const KernelSet* {
    if (const char* env = std::getenv("CARRYLAB_KERNEL")) {
      for (const KernelSet* k : available_kernels()) {
        if (std::strcmp(k->name, env) == 0) return k;
      }
      raise(Errc::DomainViolation, std::string("unknown kernel variant: ") + env);
    }
    return available_kernels().back();
  }();
  return *chosen;
}

}  // namespace carrylab::kernels
