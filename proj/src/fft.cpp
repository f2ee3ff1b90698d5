#include "fgiqa/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "fgiqa/errors.hpp"

namespace fgiqa::fft {
namespace {

// FFTW's planner is not re-entrant; execution with new arrays is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t width, std::size_t height, int sign) {
    std::lock_guard lock(mu_);
    const auto key = std::make_tuple(width, height, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<fftw_complex> scratch(width * height);
    fftw_plan plan =
        fftw_plan_dft_2d(static_cast<int>(height), static_cast<int>(width), scratch.data(),
                         scratch.data(), sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw InvalidInput("FFTW could not plan this transform size");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void run(std::size_t width, std::size_t height, std::span<std::complex<double>> data,
         int sign) {
  if (data.size() != width * height) throw InvalidInput("FFT buffer size mismatch");
  fftw_plan plan = cache().get(width, height, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace

void forward(std::size_t width, std::size_t height, std::span<std::complex<double>> data) {
  run(width, height, data, FFTW_FORWARD);
}

void inverse(std::size_t width, std::size_t height, std::span<std::complex<double>> data) {
  run(width, height, data, FFTW_BACKWARD);
}

}  // namespace fgiqa::fft
