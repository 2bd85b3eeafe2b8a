#pragma once

#include "l3f/nn/kernels.hpp"

namespace l3f::nn::kernels::detail {

void gemm_f32_scalar(const GemmArgs<float>& g);
void gemm_f64_scalar(const GemmArgs<double>& g);
void axpy_f32_scalar(std::size_t n, float alpha, const float* x, float* y);
void axpy_f64_scalar(std::size_t n, double alpha, const double* x, double* y);
void adam_f32_scalar(const AdamArgs<float>& a);
void adam_f64_scalar(const AdamArgs<double>& a);

#if defined(L3F_HAVE_AVX2)
void gemm_f32_avx2(const GemmArgs<float>& g);
void gemm_f64_avx2(const GemmArgs<double>& g);
void axpy_f32_avx2(std::size_t n, float alpha, const float* x, float* y);
void axpy_f64_avx2(std::size_t n, double alpha, const double* x, double* y);
void adam_f32_avx2(const AdamArgs<float>& a);
void adam_f64_avx2(const AdamArgs<double>& a);
#endif

} // namespace l3f::nn::kernels::detail
