#include "nefcone/errors.hpp"
#include "nefcone/kernels/gaussian_row.hpp"

#include <atomic>

namespace nefcone::kernels {

namespace {

Isa detect() {
#if defined(NEFCONE_HAVE_AVX2)
    if (isa_supported(Isa::avx2)) {
        return Isa::avx2;
    }
#endif
    return Isa::scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

} // namespace

bool isa_supported(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if defined(NEFCONE_HAVE_AVX2)
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }
    return false;
}

Isa active_isa() {
    return current().load();
}

void set_isa(Isa isa) {
    if (!isa_supported(isa)) {
        throw PreconditionError("instruction set " + to_string(isa) + " is not available");
    }
    current().store(isa);
}

std::string to_string(Isa isa) {
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

RowSum gaussian_row(const RowCoefficients& k, std::int64_t j_start, std::size_t count) {
#if defined(NEFCONE_HAVE_AVX2)
    if (active_isa() == Isa::avx2) {
        return gaussian_row_avx2(k, j_start, count);
    }
#endif
    return gaussian_row_scalar(k, j_start, count);
}

} // namespace nefcone::kernels
