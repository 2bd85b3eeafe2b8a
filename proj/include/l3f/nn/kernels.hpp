#pragma once
// Data-parallel inner loops of the network engine.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2/FMA
// variant compiled in its own translation unit. The variant is picked once at
// startup from cpuid; setting L3F_SIMD=scalar in the environment forces the
// reference path. Both variants are exercised side by side in the tests.

#include <cstddef>

namespace l3f::nn::kernels {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa) noexcept;

// C(m x n) += A(m x k) * B(k x n).
// A is addressed through two strides so transposed operands need no copy:
// A(i, p) = a[i * a_row_stride + p * a_col_stride]. B and C are row-major.
template <typename T>
struct GemmArgs {
    std::size_t m = 0, n = 0, k = 0;
    const T* a = nullptr;
    std::size_t a_row_stride = 0, a_col_stride = 1;
    const T* b = nullptr;
    std::size_t ldb = 0;
    T* c = nullptr;
    std::size_t ldc = 0;
};

template <typename T>
struct AdamArgs {
    std::size_t n = 0;
    T* param = nullptr;
    const T* grad = nullptr;
    T* m = nullptr;
    T* v = nullptr;
    T lr = 0, beta1 = 0, beta2 = 0, eps = 0;
    // 1 / (1 - beta^t), precomputed by the caller.
    T correction1 = 1, correction2 = 1;
};

struct Table {
    Isa isa;
    void (*gemm_f32)(const GemmArgs<float>&);
    void (*gemm_f64)(const GemmArgs<double>&);
    void (*axpy_f32)(std::size_t n, float alpha, const float* x, float* y);
    void (*axpy_f64)(std::size_t n, double alpha, const double* x, double* y);
    void (*adam_f32)(const AdamArgs<float>&);
    void (*adam_f64)(const AdamArgs<double>&);
};

const Table& scalar_table() noexcept;
// nullptr when the build or the running CPU lacks AVX2+FMA.
const Table* avx2_table() noexcept;

const Table& active() noexcept;
// Overrides the startup choice; returns false if `isa` is unavailable.
bool select(Isa isa) noexcept;

inline void gemm(const GemmArgs<float>& g) { active().gemm_f32(g); }
inline void gemm(const GemmArgs<double>& g) { active().gemm_f64(g); }
inline void axpy(std::size_t n, float alpha, const float* x, float* y) { active().axpy_f32(n, alpha, x, y); }
inline void axpy(std::size_t n, double alpha, const double* x, double* y) { active().axpy_f64(n, alpha, x, y); }
inline void adam_update(const AdamArgs<float>& a) { active().adam_f32(a); }
inline void adam_update(const AdamArgs<double>& a) { active().adam_f64(a); }

} // namespace l3f::nn::kernels
