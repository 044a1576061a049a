#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "w2pt/kernels.hpp"

#if defined(W2PT_BUILD_AVX2)
#include <cpuid.h>
#endif

namespace w2pt::kernels {

#if defined(W2PT_BUILD_AVX2)
const KernelSet& avx2_kernels();

namespace {
bool cpu_has_avx2_fma() {
    unsigned eax, ebx, ecx, edx;
    if (!__get_cpuid(1, &eax, &ebx, &ecx, &edx)) return false;
    const bool fma = ecx & (1u << 12);
    if (!__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) return false;
    const bool avx2 = ebx & (1u << 5);
    return fma && avx2;
}
}  // namespace
#endif

#if defined(W2PT_BUILD_NEON)
const KernelSet& neon_kernels();
#endif

std::vector<const KernelSet*> available() {
    std::vector<const KernelSet*> sets{&scalar()};
#if defined(W2PT_BUILD_AVX2)
    if (cpu_has_avx2_fma()) sets.push_back(&avx2_kernels());
#endif
#if defined(W2PT_BUILD_NEON)
    sets.push_back(&neon_kernels());
#endif
    return sets;
}

const KernelSet& active() {
    static const KernelSet* chosen = [] {
        const auto sets = available();
        if (const char* env = std::getenv("W2PT_KERNELS")) {
            for (const auto* s : sets) {
                if (std::strcmp(s->name, env) == 0) return s;
            }
            throw std::runtime_error(std::string("W2PT_KERNELS=") + env +
                                     " is not available on this machine");
        }
        return sets.back();  // widest available
    }();
    return *chosen;
}

}  // namespace w2pt::kernels
