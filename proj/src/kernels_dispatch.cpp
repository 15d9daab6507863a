#include <atomic>
#include <cstdlib>

#include "csm/kernels.hpp"

namespace csm::simd {

namespace {

enum class Lane { Auto, Scalar, Avx2 };

std::atomic<Lane> g_forced{Lane::Auto};

Lane detect() {
  const Lane forced = g_forced.load(std::memory_order_relaxed);
  if (forced != Lane::Auto) return forced;
  if (const char* env = std::getenv("CSM_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Lane::Scalar;
    if (v == "avx2") return Lane::Avx2;
  }
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) return Lane::Avx2;
#endif
  return Lane::Scalar;
}

Lane active() {
  static const Lane lane = detect();
  const Lane forced = g_forced.load(std::memory_order_relaxed);
  return forced != Lane::Auto ? forced : lane;
}

}  // namespace

DualSum dual_cauchy_sum(const double* nr, const double* ni, const double* ar,
                        const double* ai, const double* br, const double* bi,
                        std::size_t count, double zr, double zi) {
  if (active() == Lane::Avx2)
    return dual_cauchy_sum_avx2(nr, ni, ar, ai, br, bi, count, zr, zi);
  return dual_cauchy_sum_scalar(nr, ni, ar, ai, br, bi, count, zr, zi);
}

cplx cauchy_sum(const double* nr, const double* ni, const double* wr, const double* wi,
                std::size_t count, double zr, double zi) {
  if (active() == Lane::Avx2) return cauchy_sum_avx2(nr, ni, wr, wi, count, zr, zi);
  return cauchy_sum_scalar(nr, ni, wr, wi, count, zr, zi);
}

std::string active_lane() { return active() == Lane::Avx2 ? "avx2" : "scalar"; }

void force_lane(const std::string& lane) {
  if (lane == "scalar")
    g_forced.store(Lane::Scalar);
  else if (lane == "avx2")
    g_forced.store(Lane::Avx2);
  else
    g_forced.store(Lane::Auto);
}

}  // namespace csm::simd
