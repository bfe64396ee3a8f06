#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace movewin::detail {
namespace {

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const noexcept { fftw_destroy_plan(p); }
};
using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct ScratchDeleter {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};

using PlanKey = std::tuple<int, int, int, int, bool>;

// FFTW's planner is not re-entrant; plan execution with the new-array
// interface is. FFTW_ESTIMATE keeps plan selection (and therefore results)
// deterministic from run to run.
fftw_plan cached_plan(int dim, int n0, int n1, Direction direction, bool in_place) {
  static std::mutex mutex;
  static std::map<PlanKey, PlanHandle> plans;

  const PlanKey key{dim, n0, dim == 2 ? n1 : 0, direction == Direction::Forward ? -1 : 1, in_place};
  std::lock_guard lock(mutex);
  if (auto it = plans.find(key); it != plans.end()) return it->second.get();

  const std::size_t total = static_cast<std::size_t>(n0) * static_cast<std::size_t>(dim == 2 ? n1 : 1);
  std::unique_ptr<fftw_complex, ScratchDeleter> a(fftw_alloc_complex(total));
  std::unique_ptr<fftw_complex, ScratchDeleter> b(in_place ? nullptr : fftw_alloc_complex(total));
  fftw_complex* dst = in_place ? a.get() : b.get();
  const int sign = direction == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan p = dim == 1 ? fftw_plan_dft_1d(n0, a.get(), dst, sign, flags)
                         : fftw_plan_dft_2d(n0, n1, a.get(), dst, sign, flags);
  plans.emplace(key, PlanHandle(p));
  return p;
}

}  // namespace

void fft(int dim, int n0, int n1, Direction direction, const Complex* in, Complex* out) {
  // FFTW never writes to the input of an out-of-place complex DFT.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in));
  auto* dst = reinterpret_cast<fftw_complex*>(out);
  fftw_execute_dft(cached_plan(dim, n0, n1, direction, src == dst), src, dst);
}

int smooth_size(int n) {
  for (int m = n;; ++m) {
    int k = m;
    for (int p : {2, 3, 5, 7}) {
      while (k % p == 0) k /= p;
    }
    if (k == 1) return m;
  }
}

}  // namespace movewin::detail
