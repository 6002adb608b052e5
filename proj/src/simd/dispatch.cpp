#include <atomic>
#include <cstdlib>
#include <string>
#include <vector>

#include "commlab/errors.hpp"
#include "tables.hpp"

namespace commlab::simd {

namespace {

bool cpu_supports(Backend b) {
    switch (b) {
        case Backend::scalar: return true;
        case Backend::avx2:
#if defined(COMMLAB_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Backend::neon:
#if defined(COMMLAB_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const std::vector<Backend>& available() {
    static const std::vector<Backend> list = [] {
        std::vector<Backend> out{Backend::scalar};
        for (Backend b : {Backend::avx2, Backend::neon}) {
            if (cpu_supports(b)) out.push_back(b);
        }
        return out;
    }();
    return list;
}

Backend best_available() { return available().back(); }

const KernelTable* initial_table() {
    const char* env = std::getenv("COMMLAB_SIMD");
    const Backend b = env != nullptr && *env != '\0' ? parse_backend(env) : best_available();
    return &kernels_for(b);
}

std::atomic<const KernelTable*>& active() {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

std::string_view backend_name(Backend b) noexcept {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "unknown";
}

std::span<const Backend> available_backends() { return available(); }

const KernelTable& kernels_for(Backend b) {
    if (!cpu_supports(b)) {
        throw ValidationError("SIMD backend '" + std::string(backend_name(b)) +
                              "' is not available on this build or CPU");
    }
    switch (b) {
#if defined(COMMLAB_HAVE_AVX2)
        case Backend::avx2: return detail::avx2_table;
#endif
#if defined(COMMLAB_HAVE_NEON)
        case Backend::neon: return detail::neon_table;
#endif
        default: return detail::scalar_table;
    }
}

const KernelTable& kernels() { return *active().load(std::memory_order_acquire); }

void set_active_backend(Backend b) { active().store(&kernels_for(b), std::memory_order_release); }

Backend parse_backend(std::string_view name) {
    if (name == "auto") return best_available();
    if (name == "scalar") return Backend::scalar;
    if (name == "avx2") return Backend::avx2;
    if (name == "neon") return Backend::neon;
    throw ValidationError("unknown SIMD backend '" + std::string(name) + "'");
}

}  // namespace commlab::simd
