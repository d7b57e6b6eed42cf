#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Dense double-precision kernels used by the vector arithmetic and the MLP.
// Each operation has a scalar reference implementation and, on x86-64 builds
// with compiler support, an AVX2/FMA variant. The variant is chosen once at
// first use from the CPU's capabilities; COURSEKIT_KERNELS=scalar forces the
// reference path.
namespace coursekit::kernels {

struct KernelTable {
  std::string_view name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += x
  void (*add)(const double* x, double* y, std::size_t n);
  // y -= x
  void (*sub)(const double* x, double* y, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = W x + b, W row-major rows x cols
  void (*gemv)(const double* w, const double* x, const double* b, double* y,
               std::size_t rows, std::size_t cols);
  // y = W^T x, W row-major rows x cols, y has cols entries
  void (*gemv_t)(const double* w, const double* x, double* y, std::size_t rows,
                 std::size_t cols);
};

const KernelTable& scalar();
// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2();
bool cpu_supports_avx2();

const KernelTable& active();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline void add(std::span<const double> x, std::span<double> y) {
  active().add(x.data(), y.data(), y.size());
}
inline void sub(std::span<const double> x, std::span<double> y) {
  active().sub(x.data(), y.data(), y.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), y.size());
}

}  // namespace coursekit::kernels
