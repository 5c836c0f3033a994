#pragma once

#include <array>
#include <cstdint>

#include "cuboid/kernels.hpp"

namespace cuboid {

struct CubeSums {
  std::array<ChannelSum, kMaxChannels> ch{};
  std::int64_t term_count = 0;
  int cutoff = 0;
};

/// Sums a series plan over 0 < max|c_i| <= N.
///
/// Shells m = 1..N are handed to `workers` threads, largest first, and the
/// per-shell results are combined in increasing m afterwards.  The result is
/// therefore bitwise independent of the worker count.
CubeSums sum_cube(const SeriesPlan& plan, int N, const ShellKernel& kernel, int workers);

/// requested > 0 wins; otherwise CUBOID_THREADS, otherwise the hardware
/// concurrency.
int resolve_workers(int requested);

constexpr std::int64_t cube_term_count(std::int64_t N) {
  return (2 * N + 1) * (2 * N + 1) * (2 * N + 1) - 1;
}

}  // namespace cuboid
