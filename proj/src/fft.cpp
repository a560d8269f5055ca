#include "poissonlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace poissonlab {

namespace {

// Planning is not thread-safe in FFTW, execution of an existing plan on new
// arrays is. Plans are created once per (size, sign) and kept for the process.
fftw_plan plan_for(int n, int sign) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  std::vector<cplx> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
  fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                 reinterpret_cast<fftw_complex*>(b.data()), sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.emplace(key, p);
  return p;
}

std::vector<cplx> transform(const std::vector<cplx>& in, int sign) {
  if (in.empty()) return {};
  const int n = static_cast<int>(in.size());
  fftw_plan p = plan_for(n, sign);
  std::vector<cplx> src = in;
  std::vector<cplx> out(in.size());
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(src.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<cplx> fft_forward(const std::vector<cplx>& in) { return transform(in, FFTW_FORWARD); }

std::vector<cplx> fft_backward(const std::vector<cplx>& in) { return transform(in, FFTW_BACKWARD); }

}  // namespace poissonlab
