#include <cstdlib>
#include <string>
#include <vector>

#include "adlab/errors.hpp"
#include "adlab/kernels.hpp"

namespace adlab::kern {

namespace scalar {
extern const KernelTable table;
}

#if defined(ADLAB_HAVE_AVX2)
namespace avx2 {
extern const KernelTable table;
bool supported();
}
#endif

#if defined(ADLAB_HAVE_NEON)
namespace neon {
extern const KernelTable table;
}
#endif

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

std::vector<Backend> available_backends() {
    std::vector<Backend> out{Backend::scalar};
#if defined(ADLAB_HAVE_AVX2)
    if (avx2::supported()) out.push_back(Backend::avx2);
#endif
#if defined(ADLAB_HAVE_NEON)
    out.push_back(Backend::neon);
#endif
    return out;
}

const KernelTable& kernel_table(Backend b) {
    switch (b) {
        case Backend::scalar: return scalar::table;
#if defined(ADLAB_HAVE_AVX2)
        case Backend::avx2:
            if (avx2::supported()) return avx2::table;
            break;
#endif
#if defined(ADLAB_HAVE_NEON)
        case Backend::neon: return neon::table;
#endif
        default: break;
    }
    throw ConfigError(std::string("kernel backend not available on this machine: ") +
                      backend_name(b));
}

namespace {

Backend resolve_backend() {
    const char* env = std::getenv("ADLAB_KERNELS");
    std::string req = env ? env : "auto";
    if (req == "scalar") return Backend::scalar;
    auto avail = available_backends();
    auto has = [&](Backend b) {
        for (Backend a : avail)
            if (a == b) return true;
        return false;
    };
    if (req == "avx2") return has(Backend::avx2) ? Backend::avx2 : Backend::scalar;
    if (req == "neon") return has(Backend::neon) ? Backend::neon : Backend::scalar;
    // auto: best available
    if (has(Backend::avx2)) return Backend::avx2;
    if (has(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

}  // namespace

Backend active_backend() {
    static const Backend b = resolve_backend();
    return b;
}

namespace detail {
const KernelTable& active() {
    static const KernelTable& t = kernel_table(active_backend());
    return t;
}
}  // namespace detail

}  // namespace adlab::kern
