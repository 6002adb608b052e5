#pragma once

#include "commlab/simd/kernels.hpp"

namespace commlab::simd::detail {

extern const KernelTable scalar_table;
#if defined(COMMLAB_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
#if defined(COMMLAB_HAVE_NEON)
extern const KernelTable neon_table;
#endif

inline double fold_lanes(const double (&lanes)[kLanes]) {
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace commlab::simd::detail
