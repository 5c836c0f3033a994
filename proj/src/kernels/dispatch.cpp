#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "cuboid/errors.hpp"
#include "cuboid/kernels.hpp"

namespace cuboid {

#ifdef CUBOID_HAVE_AVX2
void avx2_shell(const SeriesPlan&, int, ShellSums&);
#endif
#ifdef CUBOID_HAVE_AVX512
void avx512_shell(const SeriesPlan&, int, ShellSums&);
#endif
#ifdef CUBOID_HAVE_NEON
void neon_shell(const SeriesPlan&, int, ShellSums&);
#endif

ExponentPlan ExponentPlan::make(double s) {
  ExponentPlan e;
  e.s = s;
  if (s > 0.0 && s <= 512.0) {
    if (s == std::floor(s)) {
      e.kind = Kind::Integer;
      e.n = static_cast<unsigned>(s);
    } else if (2.0 * s == std::floor(2.0 * s)) {
      e.kind = Kind::HalfInteger;
      e.n = static_cast<unsigned>(std::floor(s));
    }
  }
  return e;
}

std::string_view to_string(KernelChoice k) {
  switch (k) {
    case KernelChoice::Auto: return "auto";
    case KernelChoice::Scalar: return "scalar";
    case KernelChoice::Avx2: return "avx2";
    case KernelChoice::Avx512: return "avx512";
    case KernelChoice::Neon: return "neon";
  }
  return "?";
}

namespace {

std::vector<ShellKernel> detect() {
  std::vector<ShellKernel> k{{"scalar", &scalar_shell, 1}};
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
#endif
#ifdef CUBOID_HAVE_AVX2
  if (__builtin_cpu_supports("avx2")) k.push_back({"avx2", &avx2_shell, 4});
#endif
#ifdef CUBOID_HAVE_AVX512
  if (__builtin_cpu_supports("avx512f")) k.push_back({"avx512", &avx512_shell, 8});
#endif
#ifdef CUBOID_HAVE_NEON
  k.push_back({"neon", &neon_shell, 2});
#endif
  return k;
}

const ShellKernel* find(std::string_view name) {
  for (const auto& k : available_kernels())
    if (k.name == name) return &k;
  return nullptr;
}

}  // namespace

std::span<const ShellKernel> available_kernels() {
  static const std::vector<ShellKernel> kernels = detect();
  return kernels;
}

const ShellKernel& select_kernel(KernelChoice choice) {
  if (choice == KernelChoice::Auto) {
    if (const char* env = std::getenv("CUBOID_KERNEL"); env && *env && std::string_view(env) != "auto") {
      if (const auto* k = find(env)) return *k;
      throw DomainError(std::string("CUBOID_KERNEL: kernel '") + env + "' is not available");
    }
    return available_kernels().back();
  }
  if (const auto* k = find(to_string(choice))) return *k;
  throw DomainError(std::string("kernel '") + std::string(to_string(choice)) + "' is not available");
}

}  // namespace cuboid
