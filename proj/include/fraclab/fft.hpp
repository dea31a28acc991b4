// Thin FFTW wrapper: unnormalized complex-to-complex transforms up to rank 3.
#pragma once

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <vector>

#include "fraclab/grid.hpp"

namespace fraclab::detail {

// FFTW's planner is not thread-safe; executing distinct plans is.  Plans are
// created per invocation (FFTW_ESTIMATE keeps that cheap at these sizes) so
// concurrent transforms on distinct fields need no shared state beyond this.
inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

inline void run_dft(const Grid& grid, std::vector<std::complex<double>>& buf,
                    int direction) {
  int dims[3] = {grid.points(), grid.points(), grid.points()};
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(grid.dim(), dims, data, data, direction, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

inline void fft_forward(const Grid& grid, std::vector<std::complex<double>>& buf) {
  run_dft(grid, buf, FFTW_FORWARD);
}

inline void fft_backward(const Grid& grid, std::vector<std::complex<double>>& buf) {
  run_dft(grid, buf, FFTW_BACKWARD);
}

}  // namespace fraclab::detail
