#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "gaborheat/error.hpp"

namespace gaborheat::detail {
namespace {

// Planner calls are not thread-safe in FFTW; execution with new-array
// interfaces is. Plans are created once per shape and kept for the process.
std::mutex g_plan_mutex;
std::map<std::tuple<int, int, int>, fftw_plan> g_plans;

fftw_plan plan_for(int dim, int n, int sign) {
  std::lock_guard lock(g_plan_mutex);
  auto key = std::make_tuple(dim, n, sign);
  if (auto it = g_plans.find(key); it != g_plans.end()) return it->second;
  const std::size_t total = dim == 1 ? std::size_t(n) : std::size_t(n) * n;
  auto* scratch = fftw_alloc_complex(total);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  const int fftw_sign = sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan p = dim == 1 ? fftw_plan_dft_1d(n, scratch, scratch, fftw_sign, flags)
                         : fftw_plan_dft_2d(n, n, scratch, scratch, fftw_sign, flags);
  fftw_free(scratch);
  if (!p) fail(ErrorKind::numerical, "FFTW failed to create a plan");
  g_plans.emplace(key, p);
  return p;
}

}  // namespace

void fft_inplace(std::span<std::complex<double>> data, int dim, int n, int sign) {
  fftw_plan p = plan_for(dim, n, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

}  // namespace gaborheat::detail
