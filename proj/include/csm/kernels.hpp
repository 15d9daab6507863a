#pragma once

#include <cstddef>
#include <string>

#include "csm/types.hpp"

// Data-parallel inner loops of the Cauchy-integral evaluators. Inputs are
// split real/imaginary (SoA) so both lanes share one layout. The AVX2 lane is
// selected at runtime when the CPU supports it; CSM_SIMD=scalar|avx2 overrides.

namespace csm::simd {

struct DualSum {
  cplx a{0.0, 0.0};
  cplx b{0.0, 0.0};
};

/// sum_k wa_k / (node_k - z) and sum_k wb_k / (node_k - z).
DualSum dual_cauchy_sum(const double* nr, const double* ni, const double* ar,
                        const double* ai, const double* br, const double* bi,
                        std::size_t count, double zr, double zi);

/// sum_k w_k / (node_k - z).
cplx cauchy_sum(const double* nr, const double* ni, const double* wr,
                const double* wi, std::size_t count, double zr, double zi);

DualSum dual_cauchy_sum_scalar(const double* nr, const double* ni, const double* ar,
                               const double* ai, const double* br, const double* bi,
                               std::size_t count, double zr, double zi);
cplx cauchy_sum_scalar(const double* nr, const double* ni, const double* wr,
                       const double* wi, std::size_t count, double zr, double zi);

DualSum dual_cauchy_sum_avx2(const double* nr, const double* ni, const double* ar,
                             const double* ai, const double* br, const double* bi,
                             std::size_t count, double zr, double zi);
cplx cauchy_sum_avx2(const double* nr, const double* ni, const double* wr,
                     const double* wi, std::size_t count, double zr, double zi);

/// Name of the lane in use ("avx2" or "scalar").
std::string active_lane();

/// Test hook; pass "avx2", "scalar" or "" to restore auto-detection.
void force_lane(const std::string& lane);

}  // namespace csm::simd
