#include "kernels_internal.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace l3f::nn::kernels {
namespace {

constexpr Table kScalar{Isa::scalar,
                        detail::gemm_f32_scalar,
                        detail::gemm_f64_scalar,
                        detail::axpy_f32_scalar,
                        detail::axpy_f64_scalar,
                        detail::adam_f32_scalar,
                        detail::adam_f64_scalar};

#if defined(L3F_HAVE_AVX2)
constexpr Table kAvx2{Isa::avx2,
                      detail::gemm_f32_avx2,
                      detail::gemm_f64_avx2,
                      detail::axpy_f32_avx2,
                      detail::axpy_f64_avx2,
                      detail::adam_f32_avx2,
                      detail::adam_f64_avx2};
#endif

bool cpu_has_avx2() noexcept {
#if defined(L3F_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Table* startup_choice() noexcept {
    const char* forced = std::getenv("L3F_SIMD");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return &kScalar;
    if (const Table* t = avx2_table()) return t;
    return &kScalar;
}

std::atomic<const Table*>& current() noexcept {
    static std::atomic<const Table*> table{startup_choice()};
    return table;
}

} // namespace

const char* isa_name(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    }
    return "unknown";
}

const Table& scalar_table() noexcept { return kScalar; }

const Table* avx2_table() noexcept {
#if defined(L3F_HAVE_AVX2)
    static const bool available = cpu_has_avx2();
    return available ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const Table& active() noexcept { return *current().load(std::memory_order_acquire); }

bool select(Isa isa) noexcept {
    const Table* t = isa == Isa::scalar ? &kScalar : avx2_table();
    if (t == nullptr) return false;
    current().store(t, std::memory_order_release);
    return true;
}

} // namespace l3f::nn::kernels
