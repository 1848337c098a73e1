#include "fft.hpp"

#include <map>
#include <mutex>
#include <utility>

#include <fftw3.h>

#include "biortho/errors.hpp"

namespace biortho::detail {
namespace {

// Planning is not thread-safe in FFTW; execution on distinct arrays is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    const std::size_t total = std::size_t(n) * n * n;
    fftw_complex* scratch = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft_3d(n, n, n, scratch, scratch,
                                      sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (!plan) throw Error("fftw planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void fft3(std::vector<Complex>& data, int n, int exponent_sign) {
  if (data.size() != std::size_t(n) * n * n) throw InvalidArgument("fft3: size mismatch");
  fftw_plan plan = cache().get(n, exponent_sign);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

}  // namespace biortho::detail
