#include "quenchlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace quenchlab {

double Mat2::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return std::sqrt(s);
}

Mat2 commutator(const Mat2& x, const Mat2& y) { return x * y - y * x; }

namespace {

// Rotate the largest-|component| onto the positive real axis.
void fix_phase(std::array<complexd, 2>& v) {
  int idx = std::abs(v[0]) >= std::abs(v[1]) ? 0 : 1;
  double m = std::abs(v[idx]);
  if (m == 0.0) return;
  complexd ph = std::conj(v[idx]) / m;
  v[0] *= ph;
  v[1] *= ph;
}

}  // namespace

Eig2 eigh2(const Mat2& h) {
  const double a = h(0, 0).real();
  const double c = h(1, 1).real();
  const complexd b = h(0, 1);
  const double m = 0.5 * (a + c);
  const double d = 0.5 * (a - c);
  const double bb = std::abs(b);
  const double e = std::hypot(d, bb);

  Eig2 out;
  out.values = {m - e, m + e};
  if (e == 0.0) {
    out.vectors[0] = {complexd{1.0}, complexd{0.0}};
    out.vectors[1] = {complexd{0.0}, complexd{1.0}};
    return out;
  }
  // Pick the component formula that avoids cancellation: for d >= 0 the upper
  // vector has a large first component (e + d), otherwise a large second (e - d).
  std::array<complexd, 2> hi;
  if (d >= 0.0) {
    hi = {complexd{e + d}, std::conj(b)};
  } else {
    hi = {b, complexd{e - d}};
  }
  double n = std::sqrt(std::norm(hi[0]) + std::norm(hi[1]));
  hi[0] /= n;
  hi[1] /= n;
  std::array<complexd, 2> lo = {-std::conj(hi[1]), std::conj(hi[0])};
  fix_phase(hi);
  fix_phase(lo);
  out.vectors[0] = lo;
  out.vectors[1] = hi;
  return out;
}

std::vector<double> Matrix::apply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("Matrix::apply: size mismatch");
  std::vector<double> y(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

EigenSystem jacobi_eigensystem(const Matrix& sym, double tol, int max_sweeps) {
  const int n = sym.rows();
  if (n == 0 || sym.cols() != n) throw std::invalid_argument("jacobi_eigensystem: square matrix required");

  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (sym(i, j) + sym(j, i));
  Matrix v = Matrix::identity(n);

  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale += a(i, j) * a(i, j);
  scale = std::sqrt(scale);
  const double stop = tol * std::max(scale, 1e-300);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off) <= stop) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          const double apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj - s * aqj;
          a(q, j) = s * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return a(x, x) < a(y, y); });

  EigenSystem out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (int j = 0; j < n; ++j) {
    const int src = order[j];
    out.values[j] = a(src, src);
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(v(i, src)) > std::abs(v(imax, src))) imax = i;
    const double sgn = v(imax, src) < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) out.vectors(i, j) = sgn * v(i, src);
  }
  return out;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  const int base = n / threads, rem = n % threads;
  int start = 0;
  for (int t = 0; t < threads; ++t) {
    const int count = base + (t < rem ? 1 : 0);
    pool.emplace_back([&fn, start, count] {
      for (int i = start; i < start + count; ++i) fn(i);
    });
    start += count;
  }
}

}  // namespace quenchlab
