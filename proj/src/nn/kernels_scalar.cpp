#include "kernels_internal.hpp"

#include <cmath>

namespace l3f::nn::kernels::detail {
namespace {

template <typename T>
void gemm_ref(const GemmArgs<T>& g) {
    for (std::size_t i = 0; i < g.m; ++i) {
        T* c_row = g.c + i * g.ldc;
        for (std::size_t p = 0; p < g.k; ++p) {
            const T a = g.a[i * g.a_row_stride + p * g.a_col_stride];
            const T* b_row = g.b + p * g.ldb;
            for (std::size_t j = 0; j < g.n; ++j) c_row[j] += a * b_row[j];
        }
    }
}

template <typename T>
void axpy_ref(std::size_t n, T alpha, const T* x, T* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

template <typename T>
void adam_ref(const AdamArgs<T>& a) {
    for (std::size_t i = 0; i < a.n; ++i) {
        const T g = a.grad[i];
        a.m[i] = a.beta1 * a.m[i] + (T(1) - a.beta1) * g;
        a.v[i] = a.beta2 * a.v[i] + (T(1) - a.beta2) * g * g;
        const T m_hat = a.m[i] * a.correction1;
        const T v_hat = a.v[i] * a.correction2;
        a.param[i] -= a.lr * m_hat / (std::sqrt(v_hat) + a.eps);
    }
}

} // namespace

void gemm_f32_scalar(const GemmArgs<float>& g) { gemm_ref(g); }
void gemm_f64_scalar(const GemmArgs<double>& g) { gemm_ref(g); }
void axpy_f32_scalar(std::size_t n, float alpha, const float* x, float* y) { axpy_ref(n, alpha, x, y); }
void axpy_f64_scalar(std::size_t n, double alpha, const double* x, double* y) { axpy_ref(n, alpha, x, y); }
void adam_f32_scalar(const AdamArgs<float>& a) { adam_ref(a); }
void adam_f64_scalar(const AdamArgs<double>& a) { adam_ref(a); }

} // namespace l3f::nn::kernels::detail
