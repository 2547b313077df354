#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gqstate {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

using Rng = std::mt19937_64;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InvalidInputError : Error {
  using Error::Error;
};
struct InvalidStateError : Error {
  using Error::Error;
};
struct InsufficientDataError : Error {
  using Error::Error;
};
struct SingularDensityError : Error {
  using Error::Error;
};
struct UnsupportedIntegrationError : Error {
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

// Normalizes an angle to [0, 2pi).
inline double wrap_angle(double phi) {
  double w = phi - kTwoPi * std::floor(phi / kTwoPi);
  if (w >= kTwoPi) w -= kTwoPi;
  if (w < 0.0) w = 0.0;
  return w;
}

// Signed angular difference b - a wrapped into [-pi, pi].
inline double angle_diff(double b, double a) { return std::remainder(b - a, kTwoPi); }

// Worker count for internal parallel loops, capped by GQSTATE_THREADS.
inline int worker_threads() {
  static const int n = [] {
    if (const char* env = std::getenv("GQSTATE_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v >= 1) return static_cast<int>(std::min<long>(v, 256));
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
  }();
  return n;
}

// Runs fn(i) for i in [0, n). Work items are claimed dynamically; fn must be
// safe to invoke concurrently for distinct i. The first exception thrown by
// any worker is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(worker_threads()), n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Splits [0, n) into contiguous blocks, one fn(begin, end) call per block.
template <typename Fn>
void parallel_for_blocks(std::size_t n, Fn&& fn) {
  const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(worker_threads()), n);
  if (nt <= 1) {
    if (n > 0) fn(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + nt - 1) / nt;
  parallel_for(nt, [&](std::size_t t) {
    const std::size_t b = t * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b < e) fn(b, e);
  });
}

}  // namespace gqstate
