#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "gqstate/common.hpp"

namespace gqstate {

struct QuadNode {
  double x;
  double w;
};

// Gauss-Legendre abscissae/weights on [-1, 1], computed once per order by
// Newton iteration on the Legendre recurrence.
inline const std::vector<QuadNode>& gl_nodes(int order = 16) {
  static std::vector<std::vector<QuadNode>> cache(64);
  if (order < 2 || order >= static_cast<int>(cache.size()))
    throw InvalidInputError("gl_nodes: unsupported order");
  auto& nodes = cache[static_cast<std::size_t>(order)];
  if (!nodes.empty()) return nodes;

  std::vector<QuadNode> fresh(static_cast<std::size_t>(order));
  const int n = order;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * x * p2 - (j - 1.0) * p3) / static_cast<double>(j);
      }
      dp = static_cast<double>(n) * (x * p1 - p2) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    fresh[static_cast<std::size_t>(i)] = {-x, w};
    fresh[static_cast<std::size_t>(n - 1 - i)] = {x, w};
  }
  nodes = std::move(fresh);
  return nodes;
}

template <typename F>
double integrate_gl(F&& f, double a, double b, int order = 16) {
  const auto& nodes = gl_nodes(order);
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double sum = 0.0;
  for (const auto& node : nodes) sum += node.w * f(c + h * node.x);
  return sum * h;
}

namespace detail {

template <typename F>
double integrate_adaptive(F& f, double a, double b, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = integrate_gl(f, a, m);
  const double right = integrate_gl(f, m, b);
  const double refined = left + right;
  if (depth >= 40 || std::abs(refined - whole) <= tol) return refined;
  return integrate_adaptive(f, a, m, left, 0.5 * tol, depth + 1) +
         integrate_adaptive(f, m, b, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

// Adaptive Gauss-Legendre quadrature on [a, b] by interval bisection.
template <typename F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10, double abs_tol = 1e-13) {
  if (!(b > a)) return 0.0;
  const double whole = integrate_gl(f, a, b);
  const double tol = std::max(abs_tol, rel_tol * std::abs(whole));
  return detail::integrate_adaptive(f, a, b, whole, tol, 0);
}

}  // namespace gqstate
