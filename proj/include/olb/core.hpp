#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <omp.h>

namespace olb {

using Real = double;
using Cmplx = std::complex<double>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
  using Error::Error;
};

// Raised by the time stepper when a field exceeds the blow-up threshold
// or stops being finite.
struct BlowupError : Error {
  Real t;
  BlowupError(const std::string& msg, Real t_) : Error(msg), t(t_) {}
};

// Raised by file readers; offset is the byte position of the defect.
struct ParseError : Error {
  long long offset;
  ParseError(const std::string& msg, long long off) : Error(msg), offset(off) {}
};

// Raised when 1 + a fails to stay positive: the density left the
// perturbative regime and pointwise coefficients are no longer defined.
struct VacuumError : Error {
  using Error::Error;
};

// Raised when the advective stability bound rejects a step.
struct CflError : Error {
  Real suggested_h;
  CflError(const std::string& msg, Real h_) : Error(msg), suggested_h(h_) {}
};

// Sum term(i) for i in [0,n) with a thread partition that is fixed by the
// thread count, then combine partials in thread order.  Results do not
// depend on scheduling decisions, only on the number of threads.
template <class F>
Real det_sum(long n, F term) {
  int T = omp_get_max_threads();
  std::vector<Real> part(T, 0.0);
#pragma omp parallel num_threads(T)
  {
    int t = omp_get_thread_num();
    long lo = n * (long)t / T, hi = n * (long)(t + 1) / T;
    Real s = 0.0;
    for (long i = lo; i < hi; ++i) s += term(i);
    part[t] = s;
  }
  Real s = 0.0;
  for (int t = 0; t < T; ++t) s += part[t];
  return s;
}

template <class F>
Real det_max(long n, F term) {
  int T = omp_get_max_threads();
  std::vector<Real> part(T, 0.0);
#pragma omp parallel num_threads(T)
  {
    int t = omp_get_thread_num();
    long lo = n * (long)t / T, hi = n * (long)(t + 1) / T;
    Real s = 0.0;
    for (long i = lo; i < hi; ++i) s = std::max(s, term(i));
    part[t] = s;
  }
  Real s = 0.0;
  for (int t = 0; t < T; ++t) s = std::max(s, part[t]);
  return s;
}

}  // namespace olb
