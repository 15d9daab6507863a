// AVX2 lane for the Cauchy accumulation loops. Compiled with -mavx2 -mfma;
// callers reach it only through the runtime dispatcher.

#include "csm/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace csm::simd {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

DualSum dual_cauchy_sum_avx2(const double* nr, const double* ni, const double* ar,
                             const double* ai, const double* br, const double* bi,
                             std::size_t count, double zr, double zi) {
  const __m256d vzr = _mm256_set1_pd(zr);
  const __m256d vzi = _mm256_set1_pd(zi);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d are = _mm256_setzero_pd(), aim = _mm256_setzero_pd();
  __m256d bre = _mm256_setzero_pd(), bim = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d dr = _mm256_sub_pd(_mm256_loadu_pd(nr + k), vzr);
    const __m256d di = _mm256_sub_pd(_mm256_loadu_pd(ni + k), vzi);
    const __m256d den = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
    const __m256d inv = _mm256_div_pd(one, den);
    const __m256d pr = _mm256_mul_pd(dr, inv);
    const __m256d pi = _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(di, inv));
    const __m256d war = _mm256_loadu_pd(ar + k);
    const __m256d wai = _mm256_loadu_pd(ai + k);
    are = _mm256_add_pd(are, _mm256_fmsub_pd(war, pr, _mm256_mul_pd(wai, pi)));
    aim = _mm256_add_pd(aim, _mm256_fmadd_pd(war, pi, _mm256_mul_pd(wai, pr)));
    const __m256d wbr = _mm256_loadu_pd(br + k);
    const __m256d wbi = _mm256_loadu_pd(bi + k);
    bre = _mm256_add_pd(bre, _mm256_fmsub_pd(wbr, pr, _mm256_mul_pd(wbi, pi)));
    bim = _mm256_add_pd(bim, _mm256_fmadd_pd(wbr, pi, _mm256_mul_pd(wbi, pr)));
  }
  DualSum tail = dual_cauchy_sum_scalar(nr + k, ni + k, ar + k, ai + k, br + k, bi + k,
                                        count - k, zr, zi);
  return {cplx(hsum(are), hsum(aim)) + tail.a, cplx(hsum(bre), hsum(bim)) + tail.b};
}

cplx cauchy_sum_avx2(const double* nr, const double* ni, const double* wr,
                     const double* wi, std::size_t count, double zr, double zi) {
  const __m256d vzr = _mm256_set1_pd(zr);
  const __m256d vzi = _mm256_set1_pd(zi);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d sre = _mm256_setzero_pd(), sim = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d dr = _mm256_sub_pd(_mm256_loadu_pd(nr + k), vzr);
    const __m256d di = _mm256_sub_pd(_mm256_loadu_pd(ni + k), vzi);
    const __m256d den = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
    const __m256d inv = _mm256_div_pd(one, den);
    const __m256d pr = _mm256_mul_pd(dr, inv);
    const __m256d pi = _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(di, inv));
    const __m256d war = _mm256_loadu_pd(wr + k);
    const __m256d wai = _mm256_loadu_pd(wi + k);
    sre = _mm256_add_pd(sre, _mm256_fmsub_pd(war, pr, _mm256_mul_pd(wai, pi)));
    sim = _mm256_add_pd(sim, _mm256_fmadd_pd(war, pi, _mm256_mul_pd(wai, pr)));
  }
  const cplx tail = cauchy_sum_scalar(nr + k, ni + k, wr + k, wi + k, count - k, zr, zi);
  return cplx(hsum(sre), hsum(sim)) + tail;
}

}  // namespace csm::simd

#else

namespace csm::simd {

// Fallback definitions keep the build working on non-AVX2 toolchains; the
// dispatcher never selects them unless forced.
DualSum dual_cauchy_sum_avx2(const double* nr, const double* ni, const double* ar,
                             const double* ai, const double* br, const double* bi,
                             std::size_t count, double zr, double zi) {
  return dual_cauchy_sum_scalar(nr, ni, ar, ai, br, bi, count, zr, zi);
}

cplx cauchy_sum_avx2(const double* nr, const double* ni, const double* wr,
                     const double* wi, std::size_t count, double zr, double zi) {
  return cauchy_sum_scalar(nr, ni, wr, wi, count, zr, zi);
}

}  // namespace csm::simd

#endif
