// Compiled with -mavx2 -mfma. Keep this translation unit free of standard
// library templates so no AVX2-encoded inline function can leak into code
// that runs on older CPUs.

#include "kernels_internal.hpp"

#include <immintrin.h>

namespace l3f::nn::kernels::detail {
namespace {

struct F32 {
    using T = float;
    using V = __m256;
    static constexpr std::size_t width = 8;
    static V zero() { return _mm256_setzero_ps(); }
    static V load(const T* p) { return _mm256_loadu_ps(p); }
    static void store(T* p, V v) { _mm256_storeu_ps(p, v); }
    static V set1(T x) { return _mm256_set1_ps(x); }
    static V fma(V a, V b, V c) { return _mm256_fmadd_ps(a, b, c); }
    static V add(V a, V b) { return _mm256_add_ps(a, b); }
    static V sub(V a, V b) { return _mm256_sub_ps(a, b); }
    static V mul(V a, V b) { return _mm256_mul_ps(a, b); }
    static V div(V a, V b) { return _mm256_div_ps(a, b); }
    static V sqrt(V a) { return _mm256_sqrt_ps(a); }
    static __m256i mask(std::size_t count) {
        alignas(32) static const int table[16] = {-1, -1, -1, -1, -1, -1, -1, -1, 0, 0, 0, 0, 0, 0, 0, 0};
        return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(table + 8 - count));
    }
    static V mask_load(const T* p, __m256i m) { return _mm256_maskload_ps(p, m); }
    static void mask_store(T* p, __m256i m, V v) { _mm256_maskstore_ps(p, m, v); }
};

struct F64 {
    using T = double;
    using V = __m256d;
    static constexpr std::size_t width = 4;
    static V zero() { return _mm256_setzero_pd(); }
    static V load(const T* p) { return _mm256_loadu_pd(p); }
    static void store(T* p, V v) { _mm256_storeu_pd(p, v); }
    static V set1(T x) { return _mm256_set1_pd(x); }
    static V fma(V a, V b, V c) { return _mm256_fmadd_pd(a, b, c); }
    static V add(V a, V b) { return _mm256_add_pd(a, b); }
    static V sub(V a, V b) { return _mm256_sub_pd(a, b); }
    static V mul(V a, V b) { return _mm256_mul_pd(a, b); }
    static V div(V a, V b) { return _mm256_div_pd(a, b); }
    static V sqrt(V a) { return _mm256_sqrt_pd(a); }
    static __m256i mask(std::size_t count) {
        alignas(32) static const long long table[8] = {-1, -1, -1, -1, 0, 0, 0, 0};
        return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(table + 4 - count));
    }
    static V mask_load(const T* p, __m256i m) { return _mm256_maskload_pd(p, m); }
    static void mask_store(T* p, __m256i m, V v) { _mm256_maskstore_pd(p, m, v); }
};

// Register block: MR rows of C by two vectors of columns.
template <class K, std::size_t MR>
inline void block_2v(const GemmArgs<typename K::T>& g, std::size_t i, std::size_t j) {
    using V = typename K::V;
    V acc0[MR], acc1[MR];
    for (std::size_t r = 0; r < MR; ++r) {
        acc0[r] = K::zero();
        acc1[r] = K::zero();
    }
    const typename K::T* a = g.a + i * g.a_row_stride;
    const typename K::T* b = g.b + j;
    for (std::size_t p = 0; p < g.k; ++p) {
        const V b0 = K::load(b);
        const V b1 = K::load(b + K::width);
        const typename K::T* ap = a + p * g.a_col_stride;
        for (std::size_t r = 0; r < MR; ++r) {
            const V av = K::set1(ap[r * g.a_row_stride]);
            acc0[r] = K::fma(av, b0, acc0[r]);
            acc1[r] = K::fma(av, b1, acc1[r]);
        }
        b += g.ldb;
    }
    for (std::size_t r = 0; r < MR; ++r) {
        typename K::T* c = g.c + (i + r) * g.ldc + j;
        K::store(c, K::add(K::load(c), acc0[r]));
        K::store(c + K::width, K::add(K::load(c + K::width), acc1[r]));
    }
}

// One (possibly partial) vector of columns; `count` lanes are live.
template <class K, std::size_t MR>
inline void block_1v(const GemmArgs<typename K::T>& g, std::size_t i, std::size_t j, std::size_t count) {
    using V = typename K::V;
    const __m256i live = K::mask(count);
    V acc[MR];
    for (std::size_t r = 0; r < MR; ++r) acc[r] = K::zero();
    const typename K::T* a = g.a + i * g.a_row_stride;
    const typename K::T* b = g.b + j;
    for (std::size_t p = 0; p < g.k; ++p) {
        const V bv = count == K::width ? K::load(b) : K::mask_load(b, live);
        const typename K::T* ap = a + p * g.a_col_stride;
        for (std::size_t r = 0; r < MR; ++r) acc[r] = K::fma(K::set1(ap[r * g.a_row_stride]), bv, acc[r]);
        b += g.ldb;
    }
    for (std::size_t r = 0; r < MR; ++r) {
        typename K::T* c = g.c + (i + r) * g.ldc + j;
        if (count == K::width) {
            K::store(c, K::add(K::load(c), acc[r]));
        } else {
            K::mask_store(c, live, K::add(K::mask_load(c, live), acc[r]));
        }
    }
}

template <class K, std::size_t MR>
inline void row_panel(const GemmArgs<typename K::T>& g, std::size_t i) {
    std::size_t j = 0;
    for (; j + 2 * K::width <= g.n; j += 2 * K::width) block_2v<K, MR>(g, i, j);
    for (; j < g.n; j += K::width) {
        const std::size_t left = g.n - j;
        block_1v<K, MR>(g, i, j, left < K::width ? left : K::width);
    }
}

template <class K>
void gemm_impl(const GemmArgs<typename K::T>& g) {
    if (g.m == 0 || g.n == 0 || g.k == 0) return;
    std::size_t i = 0;
    for (; i + 4 <= g.m; i += 4) row_panel<K, 4>(g, i);
    for (; i < g.m; ++i) row_panel<K, 1>(g, i);
}

template <class K>
void axpy_impl(std::size_t n, typename K::T alpha, const typename K::T* x, typename K::T* y) {
    const auto av = K::set1(alpha);
    std::size_t i = 0;
    for (; i + K::width <= n; i += K::width) K::store(y + i, K::fma(av, K::load(x + i), K::load(y + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

template <class K>
void adam_impl(const AdamArgs<typename K::T>& a) {
    using T = typename K::T;
    const auto b1 = K::set1(a.beta1), b2 = K::set1(a.beta2);
    const auto nb1 = K::set1(T(1) - a.beta1), nb2 = K::set1(T(1) - a.beta2);
    const auto c1 = K::set1(a.correction1), c2 = K::set1(a.correction2);
    const auto lr = K::set1(a.lr), eps = K::set1(a.eps);
    std::size_t i = 0;
    for (; i + K::width <= a.n; i += K::width) {
        const auto g = K::load(a.grad + i);
        const auto m = K::add(K::mul(b1, K::load(a.m + i)), K::mul(nb1, g));
        const auto v = K::add(K::mul(b2, K::load(a.v + i)), K::mul(K::mul(nb2, g), g));
        K::store(a.m + i, m);
        K::store(a.v + i, v);
        const auto step = K::div(K::mul(lr, K::mul(m, c1)), K::add(K::sqrt(K::mul(v, c2)), eps));
        K::store(a.param + i, K::sub(K::load(a.param + i), step));
    }
    for (; i < a.n; ++i) {
        const T g = a.grad[i];
        a.m[i] = a.beta1 * a.m[i] + (T(1) - a.beta1) * g;
        a.v[i] = a.beta2 * a.v[i] + (T(1) - a.beta2) * g * g;
        const T v_hat = a.v[i] * a.correction2;
        // sqrt via the vector unit keeps this TU free of <cmath>.
        const T root = _mm_cvtsd_f64(_mm_sqrt_sd(_mm_setzero_pd(), _mm_set_sd(static_cast<double>(v_hat))));
        a.param[i] -= a.lr * (a.m[i] * a.correction1) / (static_cast<T>(root) + a.eps);
    }
}

} // namespace

void gemm_f32_avx2(const GemmArgs<float>& g) { gemm_impl<F32>(g); }
void gemm_f64_avx2(const GemmArgs<double>& g) { gemm_impl<F64>(g); }
void axpy_f32_avx2(std::size_t n, float alpha, const float* x, float* y) { axpy_impl<F32>(n, alpha, x, y); }
void axpy_f64_avx2(std::size_t n, double alpha, const double* x, double* y) { axpy_impl<F64>(n, alpha, x, y); }
void adam_f32_avx2(const AdamArgs<float>& a) { adam_impl<F32>(a); }
void adam_f64_avx2(const AdamArgs<double>& a) { adam_impl<F64>(a); }

} // namespace l3f::nn::kernels::detail
