#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace bour {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
};

// Adaptive Gauss-Kronrod 7-15 on [a, b] (b < a allowed). Throws
// Errc::quadrature_failure when the absolute tolerance is not met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {}, double* abs_error = nullptr);

// Piecewise cubic Hermite interpolant through (x_i, y_i) with slopes dy_i.
class HermiteTable {
 public:
  HermiteTable() = default;
  HermiteTable(std::vector<double> x, std::vector<double> y, std::vector<double> dydx);

  double operator()(double x) const;
  double prime(double x) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool empty() const { return !impl_; }

 private:
  double clamp(double x) const;

  struct Impl;
  std::shared_ptr<const Impl> impl_;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

// Number of worker threads: hardware concurrency capped by BOUR_EDGE_THREADS.
unsigned worker_count();

// Calls fn(i) for i in [0, n) across worker threads; the first exception
// thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace bour
