#include "bour/numeric.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <atomic>
#include <boost/math/interpolators/cubic_hermite.hpp>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "bour/error.hpp"

namespace bour {

namespace {

struct Thunk {
  const std::function<double(double)>* f;
  std::exception_ptr error;
};

double trampoline(double x, void* p) {
  auto* t = static_cast<Thunk*>(p);
  if (t->error) return 0.0;
  try {
    return (*t->f)(x);
  } catch (...) {
    t->error = std::current_exception();
    return 0.0;
  }
}

void silence_gsl() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts, double* abs_error) {
  if (abs_error) *abs_error = 0.0;
  if (a == b) return 0.0;
  if (!(opts.abs_tol > 0.0) || opts.max_subdivisions < 1) {
    throw Error(Errc::invalid_argument, "quadrature tolerance and budget must be positive");
  }
  silence_gsl();
  std::unique_ptr<gsl_integration_workspace, void (*)(gsl_integration_workspace*)> ws(
      gsl_integration_workspace_alloc(static_cast<std::size_t>(opts.max_subdivisions)),
      gsl_integration_workspace_free);
  Thunk thunk{&f, nullptr};
  gsl_function gf{&trampoline, &thunk};
  double result = 0.0;
  double err = 0.0;
  const int status = gsl_integration_qag(&gf, a, b, opts.abs_tol, 0.0,
                                         static_cast<std::size_t>(opts.max_subdivisions),
                                         GSL_INTEG_GAUSS15, ws.get(), &result, &err);
  if (thunk.error) std::rethrow_exception(thunk.error);
  if (status != GSL_SUCCESS || !std::isfinite(result)) {
    throw Error(Errc::quadrature_failure,
                std::string(gsl_strerror(status)) + " (estimated error " + format_short(err) +
                    ")");
  }
  if (abs_error) *abs_error = err;
  return result;
}

struct HermiteTable::Impl {
  boost::math::interpolators::cubic_hermite<std::vector<double>> spline;
};

HermiteTable::HermiteTable(std::vector<double> x, std::vector<double> y,
                           std::vector<double> dydx) {
  if (x.size() < 2 || y.size() != x.size() || dydx.size() != x.size()) {
    throw Error(Errc::invalid_argument, "interpolation table needs matching sizes >= 2");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) {
      throw Error(Errc::invalid_argument, "interpolation abscissae must increase strictly");
    }
  }
  lo_ = x.front();
  hi_ = x.back();
  impl_ = std::make_shared<Impl>(
      Impl{boost::math::interpolators::cubic_hermite<std::vector<double>>(
          std::move(x), std::move(y), std::move(dydx))});
}

double HermiteTable::clamp(double x) const {
  // Endpoints computed by quadrature may miss a requested bound by rounding.
  const double slack = 1e-9 * (hi_ - lo_);
  if (!impl_ || x < lo_ - slack || x > hi_ + slack) {
    throw Error(Errc::domain, "outside the interpolation table");
  }
  return std::clamp(x, lo_, hi_);
}

double HermiteTable::operator()(double x) const { return impl_->spline(clamp(x)); }

double HermiteTable::prime(double x) const { return impl_->spline.prime(clamp(x)); }

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BOUR_EDGE_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace bour
