#include "nlsfilt/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace nlsfilt::fft {

namespace {

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

// The FFTW planner is not thread-safe; fftw_execute_dft on an existing plan is.
class PlanCache {
 public:
  fftw_plan get(int dim, int n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(dim, n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second.get();

    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
    fftw_complex* scratch = fftw_alloc_complex(total);
    std::vector<int> dims(static_cast<std::size_t>(dim), n);
    fftw_plan p = fftw_plan_dft(dim, dims.data(), scratch, scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, PlanHandle(p));
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, PlanHandle> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<std::complex<double>> data, int dim, int n, int sign) {
  fftw_plan p = cache().get(dim, n, sign);
  auto* raw = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, raw, raw);
}

}  // namespace

void forward(std::span<std::complex<double>> data, int dim, int n) { execute(data, dim, n, FFTW_FORWARD); }

void backward(std::span<std::complex<double>> data, int dim, int n) { execute(data, dim, n, FFTW_BACKWARD); }

}  // namespace nlsfilt::fft
