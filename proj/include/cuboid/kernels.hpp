#pragma once

// Shell summation kernels.
//
// Every series the engine evaluates has terms of the form
//
//     n(c)^p * r(c)^(s+p),    r(c) = norm / (A a(c)^2 + (b(c)^2 + e(c)^2)),
//
// where c = (i, j, k) is an integer point, a, b, e are integer linear forms,
// n is an integer quadratic form and p in {0, 1, 2}.  A kernel sums these
// terms over one cubic shell {c : max|c_i| = m} for up to three numerator
// channels sharing the same denominator.
//
// The scalar kernel is the reference: it visits the shell in lexicographic
// (i, j, k) order with a single accumulator.  The SIMD kernels walk the same
// shell as lines along k (and along j for the two k = +-m caps) with one
// accumulator per lane, reduced in lane order at the end of the shell.  Each
// individual term is computed with the same operation sequence in every
// kernel, so kernels agree term by term and differ only in reduction order.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace cuboid {

enum class Accumulation { Plain, Compensated };

struct IntLinear {
  std::int64_t ci = 0, cj = 0, ck = 0;
  std::int64_t operator()(std::int64_t i, std::int64_t j, std::int64_t k) const {
    return ci * i + cj * j + ck * k;
  }
};

/// ii i^2 + jj j^2 + kk k^2 + ij i j + ik i k + jk j k
struct IntQuadratic {
  std::int64_t ii = 0, jj = 0, kk = 0, ij = 0, ik = 0, jk = 0;
  std::int64_t operator()(std::int64_t i, std::int64_t j, std::int64_t k) const {
    return ii * i * i + jj * j * j + kk * k * k + ij * i * j + ik * i * k + jk * j * k;
  }
};

/// How r^s is raised: repeated squaring for integer s, an extra sqrt for
/// half-integers, std::pow otherwise.
struct ExponentPlan {
  enum class Kind { Integer, HalfInteger, General } kind = Kind::General;
  unsigned n = 0;  // integer part for Integer / HalfInteger
  double s = 0.0;

  static ExponentPlan make(double s);
};

inline constexpr int kMaxChannels = 3;

struct SeriesPlan {
  double A = 1.0;
  double norm = 1.0;
  IntLinear a, b, e;
  ExponentPlan exponent;
  int channels = 1;
  std::array<IntQuadratic, kMaxChannels> numerator{};
  std::array<int, kMaxChannels> power{};  // p per channel
  Accumulation accumulation = Accumulation::Compensated;
};

struct ChannelSum {
  double sum = 0.0;
  double comp = 0.0;     // running compensation (zero for Plain)
  double abs_sum = 0.0;  // sum of |term|, for gating
  double value() const { return sum + comp; }
};

struct ShellSums {
  std::array<ChannelSum, kMaxChannels> ch{};
};

using ShellKernelFn = void (*)(const SeriesPlan&, int m, ShellSums&);

struct ShellKernel {
  std::string_view name;
  ShellKernelFn fn = nullptr;
  int lanes = 1;
};

enum class KernelChoice { Auto, Scalar, Avx2, Avx512, Neon };

std::string_view to_string(KernelChoice k);

/// Kernels compiled in and supported by the running CPU, scalar first.
std::span<const ShellKernel> available_kernels();

/// Resolves Auto to the widest available kernel.  The CUBOID_KERNEL
/// environment variable (scalar, avx2, avx512, neon) overrides Auto.
/// Throws DomainError when an explicit choice is unavailable.
const ShellKernel& select_kernel(KernelChoice choice);

/// Terms in shell m >= 1.
constexpr std::int64_t shell_term_count(std::int64_t m) { return 24 * m * m + 2; }

// Reference kernel (defined in kernels/scalar.cpp).
void scalar_shell(const SeriesPlan& plan, int m, ShellSums& out);

/// Single term of channel `ch` at c, as computed by every kernel.
double reference_term(const SeriesPlan& plan, int ch, std::int64_t i, std::int64_t j, std::int64_t k);

}  // namespace cuboid
