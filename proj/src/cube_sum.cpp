#include "cuboid/cube_sum.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <thread>
#include <vector>

#include "cuboid/compensated.hpp"
#include "cuboid/errors.hpp"

namespace cuboid {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CUBOID_THREADS"); env && *env) {
    int n = 0;
    const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), n);
    if (ec == std::errc{} && *ptr == '\0' && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CubeSums sum_cube(const SeriesPlan& plan, int N, const ShellKernel& kernel, int workers) {
  if (N < 1) throw DomainError("sum_cube: cutoff must be >= 1");
  if (plan.channels < 1 || plan.channels > kMaxChannels) throw DomainError("sum_cube: bad channel count");

  std::vector<ShellSums> shells(static_cast<std::size_t>(N) + 1);
  const int nthreads = std::clamp(workers, 1, N);
  if (nthreads == 1) {
    for (int m = N; m >= 1; --m) kernel.fn(plan, m, shells[m]);
  } else {
    std::atomic<int> next{N};
    auto work = [&] {
      for (int m = next.fetch_sub(1); m >= 1; m = next.fetch_sub(1)) kernel.fn(plan, m, shells[m]);
    };
    std::vector<std::jthread> pool;
    pool.reserve(nthreads - 1);
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(work);
    work();
  }

  CubeSums out;
  out.cutoff = N;
  out.term_count = cube_term_count(N);
  for (int ch = 0; ch < plan.channels; ++ch) {
    TwoSumAccumulator acc;
    double comp = 0.0, abs_sum = 0.0;
    for (int m = 1; m <= N; ++m) {
      const ChannelSum& s = shells[m].ch[ch];
      if (plan.accumulation == Accumulation::Compensated) {
        acc.add(s.sum);
        comp += s.comp;
      } else {
        acc.sum += s.sum;
      }
      abs_sum += s.abs_sum;
    }
    out.ch[ch] = {acc.sum, acc.comp + comp, abs_sum};
  }
  return out;
}

}  // namespace cuboid
