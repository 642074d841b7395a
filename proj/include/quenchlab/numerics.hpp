#pragma once
// Small dense linear-algebra kernel: 2x2 complex matrices with a closed-form
// Hermitian eigensolver, a cyclic Jacobi eigensolver for real symmetric
// matrices, a generic RK4 step, and an index-partitioned parallel loop.
#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace quenchlab {

using complexd = std::complex<double>;

// 2x2 complex matrix, row-major: a[0]=m00 a[1]=m01 a[2]=m10 a[3]=m11.
struct Mat2 {
  std::array<complexd, 4> a{};

  static Mat2 identity() { return {{complexd{1.0}, {}, {}, complexd{1.0}}}; }
  static Mat2 diag(complexd d0, complexd d1) { return {{d0, {}, {}, d1}}; }

  complexd& operator()(int i, int j) { return a[2 * i + j]; }
  const complexd& operator()(int i, int j) const { return a[2 * i + j]; }

  Mat2 operator+(const Mat2& o) const {
    return {{a[0] + o.a[0], a[1] + o.a[1], a[2] + o.a[2], a[3] + o.a[3]}};
  }
  Mat2 operator-(const Mat2& o) const {
    return {{a[0] - o.a[0], a[1] - o.a[1], a[2] - o.a[2], a[3] - o.a[3]}};
  }
  Mat2 operator*(const Mat2& o) const {
    return {{a[0] * o.a[0] + a[1] * o.a[2], a[0] * o.a[1] + a[1] * o.a[3],
             a[2] * o.a[0] + a[3] * o.a[2], a[2] * o.a[1] + a[3] * o.a[3]}};
  }
  Mat2 operator*(complexd s) const { return {{a[0] * s, a[1] * s, a[2] * s, a[3] * s}}; }
  Mat2 operator*(double s) const { return *this * complexd{s}; }
  Mat2& operator+=(const Mat2& o) {
    for (int i = 0; i < 4; ++i) a[i] += o.a[i];
    return *this;
  }

  Mat2 adjoint() const {
    return {{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}};
  }
  complexd trace() const { return a[0] + a[3]; }
  double frobenius_norm() const;
};

inline Mat2 operator*(complexd s, const Mat2& m) { return m * s; }
inline Mat2 operator*(double s, const Mat2& m) { return m * complexd{s}; }

Mat2 commutator(const Mat2& x, const Mat2& y);

// Eigen-decomposition of a 2x2 Hermitian matrix, closed form. Eigenvalues
// ascending; vectors normalized with the largest-|component| rotated to the
// positive real axis. Only the upper triangle of the input is trusted.
struct Eig2 {
  std::array<double, 2> values;
  std::array<std::array<complexd, 2>, 2> vectors;  // vectors[i] goes with values[i]
};
Eig2 eigh2(const Mat2& h);

// Dense real matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {}
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const double& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  std::vector<double> column(int j) const {
    std::vector<double> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<double> apply(const std::vector<double>& x) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

// values[j] ascending; column j of vectors is the matching unit eigenvector,
// largest-|component| made positive.
struct EigenSystem {
  std::vector<double> values;
  Matrix vectors;
};

// Cyclic Jacobi sweeps; deterministic rotation order, so results are
// bit-reproducible for identical input.
EigenSystem jacobi_eigensystem(const Matrix& sym, double tol = 1e-14, int max_sweeps = 100);

// One classic RK4 step for dy/dt = f(t, y); State needs + and scalar *.
template <class State, class Deriv>
State rk4_step(double t, double dt, const State& y, Deriv&& f) {
  State k1 = f(t, y);
  State k2 = f(t + 0.5 * dt, y + k1 * (0.5 * dt));
  State k3 = f(t + 0.5 * dt, y + k2 * (0.5 * dt));
  State k4 = f(t + dt, y + k3 * dt);
  return y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
}

// Runs fn(i) for i in [0, n) on `threads` contiguous index blocks. Callers get
// determinism by writing to slot i only; reductions stay with the caller.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace quenchlab
