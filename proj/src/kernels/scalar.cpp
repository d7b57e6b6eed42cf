#include "coursekit/kernels.hpp"

namespace coursekit::kernels {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void add_scalar(const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += x[i];
}

void sub_scalar(const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] -= x[i];
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemv_scalar(const double* w, const double* x, const double* b, double* y, std::size_t rows,
                 std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    y[r] = b[r] + dot_scalar(w + r * cols, x, cols);
  }
}

void gemv_t_scalar(const double* w, const double* x, double* y, std::size_t rows,
                   std::size_t cols) {
  for (std::size_t c = 0; c < cols; ++c) y[c] = 0.0;
  for (std::size_t r = 0; r < rows; ++r) axpy_scalar(x[r], w + r * cols, y, cols);
}

constexpr KernelTable kScalar{"scalar",      dot_scalar,  add_scalar, sub_scalar,
                              axpy_scalar,   gemv_scalar, gemv_t_scalar};

}  // namespace

const KernelTable& scalar() { return kScalar; }

}  // namespace coursekit::kernels
