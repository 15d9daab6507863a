#include "csm/kernels.hpp"

namespace csm::simd {

DualSum dual_cauchy_sum_scalar(const double* nr, const double* ni, const double* ar,
                               const double* ai, const double* br, const double* bi,
                               std::size_t count, double zr, double zi) {
  double a_re = 0, a_im = 0, b_re = 0, b_im = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double dr = nr[k] - zr;
    const double di = ni[k] - zi;
    const double inv = 1.0 / (dr * dr + di * di);
    const double pr = dr * inv;
    const double pi_ = -di * inv;  // 1/(node-z) = conj(d)/|d|^2
    a_re += ar[k] * pr - ai[k] * pi_;
    a_im += ar[k] * pi_ + ai[k] * pr;
    b_re += br[k] * pr - bi[k] * pi_;
    b_im += br[k] * pi_ + bi[k] * pr;
  }
  return {cplx(a_re, a_im), cplx(b_re, b_im)};
}

cplx cauchy_sum_scalar(const double* nr, const double* ni, const double* wr,
                       const double* wi, std::size_t count, double zr, double zi) {
  double re = 0, im = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double dr = nr[k] - zr;
    const double di = ni[k] - zi;
    const double inv = 1.0 / (dr * dr + di * di);
    const double pr = dr * inv;
    const double pi_ = -di * inv;
    re += wr[k] * pr - wi[k] * pi_;
    im += wr[k] * pi_ + wi[k] * pr;
  }
  return {re, im};
}

}  // namespace csm::simd
