#include "l3f/nn/ops.hpp"

#include "l3f/error.hpp"
#include "l3f/nn/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace l3f::nn {
namespace {

constexpr std::size_t kIm2colBudget = std::size_t{1} << 18;

void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

struct ConvDims {
    std::size_t h, w, cin, ho, wo, cout, k, stride, pad;
    std::size_t patch() const { return k * k * cin; }
};

template <typename T>
void im2col_rows(const T* x, const ConvDims& d, std::size_t oy0, std::size_t oy1, T* cols) {
    const std::size_t kdim = d.patch();
    for (std::size_t oy = oy0; oy < oy1; ++oy) {
        for (std::size_t ox = 0; ox < d.wo; ++ox) {
            T* row = cols + ((oy - oy0) * d.wo + ox) * kdim;
            for (std::size_t ky = 0; ky < d.k; ++ky) {
                const long iy = static_cast<long>(oy * d.stride + ky) - static_cast<long>(d.pad);
                for (std::size_t kx = 0; kx < d.k; ++kx) {
                    const long ix = static_cast<long>(ox * d.stride + kx) - static_cast<long>(d.pad);
                    T* dst = row + (ky * d.k + kx) * d.cin;
                    if (iy < 0 || ix < 0 || iy >= static_cast<long>(d.h) || ix >= static_cast<long>(d.w)) {
                        std::fill(dst, dst + d.cin, T(0));
                    } else {
                        const T* src = x + (static_cast<std::size_t>(iy) * d.w + static_cast<std::size_t>(ix)) * d.cin;
                        std::copy(src, src + d.cin, dst);
                    }
                }
            }
        }
    }
}

template <typename T>
void col2im_rows_add(const T* cols, const ConvDims& d, std::size_t oy0, std::size_t oy1, T* dx) {
    const std::size_t kdim = d.patch();
    for (std::size_t oy = oy0; oy < oy1; ++oy) {
        for (std::size_t ox = 0; ox < d.wo; ++ox) {
            const T* row = cols + ((oy - oy0) * d.wo + ox) * kdim;
            for (std::size_t ky = 0; ky < d.k; ++ky) {
                const long iy = static_cast<long>(oy * d.stride + ky) - static_cast<long>(d.pad);
                if (iy < 0 || iy >= static_cast<long>(d.h)) continue;
                for (std::size_t kx = 0; kx < d.k; ++kx) {
                    const long ix = static_cast<long>(ox * d.stride + kx) - static_cast<long>(d.pad);
                    if (ix < 0 || ix >= static_cast<long>(d.w)) continue;
                    const T* src = row + (ky * d.k + kx) * d.cin;
                    T* dst = dx + (static_cast<std::size_t>(iy) * d.w + static_cast<std::size_t>(ix)) * d.cin;
                    for (std::size_t c = 0; c < d.cin; ++c) dst[c] += src[c];
                }
            }
        }
    }
}

bool is_pointwise(const ConvDims& d) { return d.k == 1 && d.stride == 1 && d.pad == 0; }

std::size_t rows_per_chunk(const ConvDims& d) {
    const std::size_t per_row = std::max<std::size_t>(1, d.wo * d.patch());
    return std::max<std::size_t>(1, kIm2colBudget / per_row);
}

template <typename T>
void transpose(const T* src, std::size_t rows, std::size_t cols, T* dst) {
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) dst[c * rows + r] = src[r * cols + c];
}

std::uint64_t hash_mask_step(std::uint64_t h, bool bit) { return h * 1315423911ull + (bit ? 0x9e37u : 0x7f4au); }

} // namespace

std::size_t conv_output_extent(std::size_t extent, const ConvGeometry& geo) {
    require(geo.stride >= 1 && geo.kernel >= 1, "conv: kernel and stride must be positive");
    require(extent + 2 * geo.padding >= geo.kernel, "conv: input smaller than kernel");
    return (extent + 2 * geo.padding - geo.kernel) / geo.stride + 1;
}

template <typename T>
Var conv2d(Graph<T>& g, Var x, Var weight, Var bias, const ConvGeometry& geo) {
    const Tensor<T>& xv = g.value(x);
    const Tensor<T>& wv = g.value(weight);
    const Tensor<T>& bv = g.value(bias);
    require(xv.rank() == 3, "conv2d: input must be H x W x C, got " + to_string(xv.shape()));
    require(wv.rank() == 4 && wv.dim(0) == geo.kernel && wv.dim(1) == geo.kernel && wv.dim(2) == xv.dim(2),
            "conv2d: weight " + to_string(wv.shape()) + " incompatible with input " + to_string(xv.shape()) +
                " and kernel " + std::to_string(geo.kernel));
    require(bv.rank() == 1 && bv.dim(0) == wv.dim(3), "conv2d: bias shape mismatch");

    ConvDims d{xv.dim(0), xv.dim(1), xv.dim(2), conv_output_extent(xv.dim(0), geo), conv_output_extent(xv.dim(1), geo),
               wv.dim(3), geo.kernel, geo.stride, geo.padding};

    Tensor<T> out({d.ho, d.wo, d.cout});
    for (std::size_t p = 0; p < d.ho * d.wo; ++p) std::copy(bv.ptr(), bv.ptr() + d.cout, out.ptr() + p * d.cout);

    const std::size_t kdim = d.patch();
    const std::size_t chunk = rows_per_chunk(d);
    std::vector<T> cols;
    for (std::size_t oy0 = 0; oy0 < d.ho; oy0 += chunk) {
        const std::size_t oy1 = std::min(d.ho, oy0 + chunk);
        const T* a = xv.ptr() + oy0 * d.wo * d.cin;
        if (!is_pointwise(d)) {
            cols.resize((oy1 - oy0) * d.wo * kdim);
            im2col_rows(xv.ptr(), d, oy0, oy1, cols.data());
            a = cols.data();
        }
        kernels::GemmArgs<T> args;
        args.m = (oy1 - oy0) * d.wo;
        args.n = d.cout;
        args.k = kdim;
        args.a = a;
        args.a_row_stride = kdim;
        args.a_col_stride = 1;
        args.b = wv.ptr();
        args.ldb = d.cout;
        args.c = out.ptr() + oy0 * d.wo * d.cout;
        args.ldc = d.cout;
        kernels::gemm(args);
    }

    return g.record(std::move(out), {x, weight, bias}, [x, weight, bias, d](Graph<T>& gr, Var self) {
        const Tensor<T>& dout = gr.out_grad(self);
        const Tensor<T>& xv = gr.value(x);
        const Tensor<T>& wv = gr.value(weight);
        const std::size_t kdim = d.patch();
        const std::size_t chunk = rows_per_chunk(d);

        if (Tensor<T>* gb = gr.grad_buffer(bias)) {
            for (std::size_t p = 0; p < d.ho * d.wo; ++p)
                for (std::size_t c = 0; c < d.cout; ++c) (*gb)[c] += dout[p * d.cout + c];
        }

        Tensor<T>* gw = gr.grad_buffer(weight);
        Tensor<T>* gx = gr.grad_buffer(x);
        std::vector<T> wt;
        if (gx != nullptr) {
            wt.resize(kdim * d.cout);
            transpose(wv.ptr(), kdim, d.cout, wt.data());
        }
        std::vector<T> cols;
        for (std::size_t oy0 = 0; oy0 < d.ho; oy0 += chunk) {
            const std::size_t oy1 = std::min(d.ho, oy0 + chunk);
            const std::size_t rows = (oy1 - oy0) * d.wo;
            const T* dout_chunk = dout.ptr() + oy0 * d.wo * d.cout;
            if (gw != nullptr) {
                const T* a = xv.ptr() + oy0 * d.wo * d.cin;
                if (!is_pointwise(d)) {
                    cols.resize(rows * kdim);
                    im2col_rows(xv.ptr(), d, oy0, oy1, cols.data());
                    a = cols.data();
                }
                kernels::GemmArgs<T> args;
                args.m = kdim;
                args.n = d.cout;
                args.k = rows;
                args.a = a;
                args.a_row_stride = 1;
                args.a_col_stride = kdim;
                args.b = dout_chunk;
                args.ldb = d.cout;
                args.c = gw->ptr();
                args.ldc = d.cout;
                kernels::gemm(args);
            }
            if (gx != nullptr) {
                T* target = nullptr;
                if (is_pointwise(d)) {
                    target = gx->ptr() + oy0 * d.wo * d.cin;
                } else {
                    cols.assign(rows * kdim, T(0));
                    target = cols.data();
                }
                kernels::GemmArgs<T> args;
                args.m = rows;
                args.n = kdim;
                args.k = d.cout;
                args.a = dout_chunk;
                args.a_row_stride = d.cout;
                args.a_col_stride = 1;
                args.b = wt.data();
                args.ldb = kdim;
                args.c = target;
                args.ldc = kdim;
                kernels::gemm(args);
                if (!is_pointwise(d)) col2im_rows_add(cols.data(), d, oy0, oy1, gx->ptr());
            }
        }
    });
}

template <typename T>
Var conv_transpose2x2(Graph<T>& g, Var x, Var weight, Var bias) {
    const Tensor<T>& xv = g.value(x);
    const Tensor<T>& wv = g.value(weight);
    const Tensor<T>& bv = g.value(bias);
    require(xv.rank() == 3, "conv_transpose2x2: input must be H x W x C");
    require(wv.rank() == 4 && wv.dim(0) == xv.dim(2) && wv.dim(1) == 2 && wv.dim(2) == 2,
            "conv_transpose2x2: weight " + to_string(wv.shape()) + " must be [Cin, 2, 2, Cout] for input " +
                to_string(xv.shape()));
    require(bv.rank() == 1 && bv.dim(0) == wv.dim(3), "conv_transpose2x2: bias shape mismatch");

    const std::size_t h = xv.dim(0), w = xv.dim(1), cin = xv.dim(2), cout = wv.dim(3);
    const std::size_t wide = 4 * cout;
    std::vector<T> taps(h * w * wide, T(0));
    kernels::GemmArgs<T> args;
    args.m = h * w;
    args.n = wide;
    args.k = cin;
    args.a = xv.ptr();
    args.a_row_stride = cin;
    args.a_col_stride = 1;
    args.b = wv.ptr();
    args.ldb = wide;
    args.c = taps.data();
    args.ldc = wide;
    kernels::gemm(args);

    Tensor<T> out({2 * h, 2 * w, cout});
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < w; ++j)
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b) {
                    const T* src = taps.data() + (i * w + j) * wide + (a * 2 + b) * cout;
                    T* dst = &out.at(2 * i + a, 2 * j + b, 0);
                    for (std::size_t c = 0; c < cout; ++c) dst[c] = src[c] + bv[c];
                }

    return g.record(std::move(out), {x, weight, bias}, [x, weight, bias, h, w, cin, cout](Graph<T>& gr, Var self) {
        const Tensor<T>& dout = gr.out_grad(self);
        const std::size_t wide = 4 * cout;
        std::vector<T> dtaps(h * w * wide);
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < w; ++j)
                for (std::size_t a = 0; a < 2; ++a)
                    for (std::size_t b = 0; b < 2; ++b) {
                        const T* src = &dout.at(2 * i + a, 2 * j + b, 0);
                        std::copy(src, src + cout, dtaps.data() + (i * w + j) * wide + (a * 2 + b) * cout);
                    }
        if (Tensor<T>* gb = gr.grad_buffer(bias)) {
            for (std::size_t p = 0; p < 4 * h * w; ++p)
                for (std::size_t c = 0; c < cout; ++c) (*gb)[c] += dout[p * cout + c];
        }
        if (Tensor<T>* gw = gr.grad_buffer(weight)) {
            kernels::GemmArgs<T> args;
            args.m = cin;
            args.n = wide;
            args.k = h * w;
            args.a = gr.value(x).ptr();
            args.a_row_stride = 1;
            args.a_col_stride = cin;
            args.b = dtaps.data();
            args.ldb = wide;
            args.c = gw->ptr();
            args.ldc = wide;
            kernels::gemm(args);
        }
        if (Tensor<T>* gx = gr.grad_buffer(x)) {
            std::vector<T> wt(wide * cin);
            transpose(gr.value(weight).ptr(), cin, wide, wt.data());
            kernels::GemmArgs<T> args;
            args.m = h * w;
            args.n = cin;
            args.k = wide;
            args.a = dtaps.data();
            args.a_row_stride = wide;
            args.a_col_stride = 1;
            args.b = wt.data();
            args.ldb = cin;
            args.c = gx->ptr();
            args.ldc = cin;
            kernels::gemm(args);
        }
    });
}

template <typename T>
Var dense(Graph<T>& g, Var x, Var weight, Var bias) {
    const Tensor<T>& xv = g.value(x);
    const Tensor<T>& wv = g.value(weight);
    const Tensor<T>& bv = g.value(bias);
    require(wv.rank() == 2 && wv.dim(1) == xv.size(),
            "dense: weight " + to_string(wv.shape()) + " does not accept input of " + std::to_string(xv.size()) +
                " values");
    require(bv.rank() == 1 && bv.dim(0) == wv.dim(0), "dense: bias shape mismatch");
    const std::size_t m = wv.dim(0), n = wv.dim(1);
    Tensor<T> out({m});
    for (std::size_t i = 0; i < m; ++i) {
        T acc = bv[i];
        const T* row = wv.ptr() + i * n;
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * xv[j];
        out[i] = acc;
    }
    return g.record(std::move(out), {x, weight, bias}, [x, weight, bias, m, n](Graph<T>& gr, Var self) {
        const Tensor<T>& dy = gr.out_grad(self);
        if (Tensor<T>* gb = gr.grad_buffer(bias))
            for (std::size_t i = 0; i < m; ++i) (*gb)[i] += dy[i];
        if (Tensor<T>* gw = gr.grad_buffer(weight)) {
            const Tensor<T>& xv = gr.value(x);
            for (std::size_t i = 0; i < m; ++i) kernels::axpy(n, dy[i], xv.ptr(), gw->ptr() + i * n);
        }
        if (Tensor<T>* gx = gr.grad_buffer(x)) {
            const Tensor<T>& wv = gr.value(weight);
            for (std::size_t i = 0; i < m; ++i) kernels::axpy(n, dy[i], wv.ptr() + i * n, gx->ptr());
        }
    });
}

template <typename T>
Var relu(Graph<T>& g, Var x) {
    const Tensor<T>& xv = g.value(x);
    Tensor<T> out(xv.shape());
    std::uint64_t mask_hash = 0;
    for (std::size_t i = 0; i < xv.size(); ++i) {
        const bool on = xv[i] > T(0);
        out[i] = on ? xv[i] : T(0);
        mask_hash = hash_mask_step(mask_hash, on);
    }
    if (g.recording()) g.mix_branch(mask_hash);
    return g.record(std::move(out), {x}, [x](Graph<T>& gr, Var self) {
        if (Tensor<T>* gx = gr.grad_buffer(x)) {
            const Tensor<T>& xv = gr.value(x);
            const Tensor<T>& dy = gr.out_grad(self);
            for (std::size_t i = 0; i < xv.size(); ++i)
                if (xv[i] > T(0)) (*gx)[i] += dy[i];
        }
    });
}

template <typename T>
Var softplus(Graph<T>& g, Var x) {
    const Tensor<T>& xv = g.value(x);
    Tensor<T> out(xv.shape());
    for (std::size_t i = 0; i < xv.size(); ++i) {
        const T v = xv[i];
        out[i] = std::max(std::max(v, T(0)) + std::log1p(std::exp(-std::abs(v))), std::numeric_limits<T>::min());
    }
    return g.record(std::move(out), {x}, [x](Graph<T>& gr, Var self) {
        if (Tensor<T>* gx = gr.grad_buffer(x)) {
            const Tensor<T>& xv = gr.value(x);
            const Tensor<T>& dy = gr.out_grad(self);
            for (std::size_t i = 0; i < xv.size(); ++i) {
                const T v = xv[i];
                const T sig = v >= T(0) ? T(1) / (T(1) + std::exp(-v)) : std::exp(v) / (T(1) + std::exp(v));
                (*gx)[i] += dy[i] * sig;
            }
        }
    });
}

template <typename T>
Var add(Graph<T>& g, Var a, Var b) {
    const Tensor<T>& av = g.value(a);
    const Tensor<T>& bv = g.value(b);
    require(av.shape() == bv.shape(), "add: shape mismatch " + to_string(av.shape()) + " vs " + to_string(bv.shape()));
    Tensor<T> out = av;
    kernels::axpy(out.size(), T(1), bv.ptr(), out.ptr());
    return g.record(std::move(out), {a, b}, [a, b](Graph<T>& gr, Var self) {
        const Tensor<T>& dy = gr.out_grad(self);
        if (Tensor<T>* ga = gr.grad_buffer(a)) kernels::axpy(dy.size(), T(1), dy.ptr(), ga->ptr());
        if (Tensor<T>* gb = gr.grad_buffer(b)) kernels::axpy(dy.size(), T(1), dy.ptr(), gb->ptr());
    });
}

template <typename T>
Var scale(Graph<T>& g, Var x, Var s) {
    const Tensor<T>& xv = g.value(x);
    require(g.value(s).size() == 1, "scale: factor must be a single value");
    const T factor = g.value(s)[0];
    Tensor<T> out(xv.shape());
    for (std::size_t i = 0; i < xv.size(); ++i) out[i] = factor * xv[i];
    return g.record(std::move(out), {x, s}, [x, s](Graph<T>& gr, Var self) {
        const Tensor<T>& dy = gr.out_grad(self);
        if (Tensor<T>* gs = gr.grad_buffer(s)) {
            const Tensor<T>& xv = gr.value(x);
            T acc = 0;
            for (std::size_t i = 0; i < xv.size(); ++i) acc += dy[i] * xv[i];
            (*gs)[0] += acc;
        }
        if (Tensor<T>* gx = gr.grad_buffer(x)) kernels::axpy(dy.size(), gr.value(s)[0], dy.ptr(), gx->ptr());
    });
}

template <typename T>
Var concat_channels(Graph<T>& g, const std::vector<Var>& parts) {
    require(!parts.empty(), "concat_channels: nothing to concatenate");
    const Tensor<T>& first = g.value(parts.front());
    require(first.rank() == 3, "concat_channels: inputs must be H x W x C");
    const std::size_t h = first.dim(0), w = first.dim(1);
    std::vector<std::size_t> widths;
    std::size_t total = 0;
    for (Var p : parts) {
        const Tensor<T>& v = g.value(p);
        require(v.rank() == 3 && v.dim(0) == h && v.dim(1) == w,
                "concat_channels: spatial mismatch " + to_string(v.shape()) + " vs " + to_string(first.shape()));
        widths.push_back(v.dim(2));
        total += v.dim(2);
    }
    Tensor<T> out({h, w, total});
    std::size_t offset = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const Tensor<T>& v = g.value(parts[k]);
        for (std::size_t p = 0; p < h * w; ++p)
            std::copy(v.ptr() + p * widths[k], v.ptr() + (p + 1) * widths[k], out.ptr() + p * total + offset);
        offset += widths[k];
    }
    return g.record(std::move(out), parts, [parts, widths, total, pixels = h * w](Graph<T>& gr, Var self) {
        const Tensor<T>& dy = gr.out_grad(self);
        std::size_t offset = 0;
        for (std::size_t k = 0; k < parts.size(); ++k) {
            if (Tensor<T>* gp = gr.grad_buffer(parts[k])) {
                for (std::size_t p = 0; p < pixels; ++p) {
                    const T* src = dy.ptr() + p * total + offset;
                    T* dst = gp->ptr() + p * widths[k];
                    for (std::size_t c = 0; c < widths[k]; ++c) dst[c] += src[c];
                }
            }
            offset += widths[k];
        }
    });
}

template <typename T>
Var gather(Graph<T>& g, Var x, IndexMap indices, Shape shape) {
    require(indices != nullptr && indices->size() == element_count(shape), "gather: index count must match shape");
    const Tensor<T>& xv = g.value(x);
    Tensor<T> out(std::move(shape));
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::size_t src = (*indices)[i];
        require(src < xv.size(), "gather: index out of range");
        out[i] = xv[src];
    }
    return g.record(std::move(out), {x}, [x, indices](Graph<T>& gr, Var self) {
        if (Tensor<T>* gx = gr.grad_buffer(x)) {
            const Tensor<T>& dy = gr.out_grad(self);
            for (std::size_t i = 0; i < dy.size(); ++i) (*gx)[(*indices)[i]] += dy[i];
        }
    });
}

template <typename T>
Var sum_abs(Graph<T>& g, Var x) {
    const Tensor<T>& xv = g.value(x);
    T acc = 0;
    std::uint64_t signs = 0;
    for (std::size_t i = 0; i < xv.size(); ++i) {
        acc += std::abs(xv[i]);
        signs = hash_mask_step(signs, xv[i] > T(0));
    }
    if (g.recording()) g.mix_branch(signs);
    return g.record(Tensor<T>({1}, {acc}), {x}, [x](Graph<T>& gr, Var self) {
        if (Tensor<T>* gx = gr.grad_buffer(x)) {
            const Tensor<T>& xv = gr.value(x);
            const T dy = gr.out_grad(self)[0];
            for (std::size_t i = 0; i < xv.size(); ++i) {
                if (xv[i] > T(0)) (*gx)[i] += dy;
                else if (xv[i] < T(0)) (*gx)[i] -= dy;
            }
        }
    });
}

template <typename T>
Var l1_mean(Graph<T>& g, Var out, Var target) {
    const Tensor<T>& ov = g.value(out);
    const Tensor<T>& tv = g.value(target);
    require(ov.shape() == tv.shape(),
            "l1: shape mismatch " + to_string(ov.shape()) + " vs " + to_string(tv.shape()));
    require(ov.size() > 0, "l1: empty input");
    T acc = 0;
    std::uint64_t signs = 0;
    for (std::size_t i = 0; i < ov.size(); ++i) {
        const T d = ov[i] - tv[i];
        acc += std::abs(d);
        signs = hash_mask_step(signs, d > T(0));
    }
    if (g.recording()) g.mix_branch(signs);
    const T n = static_cast<T>(ov.size());
    return g.record(Tensor<T>({1}, {acc / n}), {out, target}, [out, target, n](Graph<T>& gr, Var self) {
        const Tensor<T>& ov = gr.value(out);
        const Tensor<T>& tv = gr.value(target);
        const T dy = gr.out_grad(self)[0] / n;
        Tensor<T>* go = gr.grad_buffer(out);
        Tensor<T>* gt = gr.grad_buffer(target);
        for (std::size_t i = 0; i < ov.size(); ++i) {
            const T d = ov[i] - tv[i];
            const T s = d > T(0) ? dy : (d < T(0) ? -dy : T(0));
            if (go) (*go)[i] += s;
            if (gt) (*gt)[i] -= s;
        }
    });
}

template <typename T>
Var weighted_sum(Graph<T>& g, const std::vector<std::pair<Var, T>>& terms) {
    T acc = 0;
    std::vector<Var> inputs;
    for (const auto& [v, c] : terms) {
        require(g.value(v).size() == 1, "weighted_sum: terms must be scalars");
        acc += c * g.value(v)[0];
        inputs.push_back(v);
    }
    return g.record(Tensor<T>({1}, {acc}), inputs, [terms](Graph<T>& gr, Var self) {
        const T dy = gr.out_grad(self)[0];
        for (const auto& [v, c] : terms)
            if (Tensor<T>* gv = gr.grad_buffer(v)) (*gv)[0] += c * dy;
    });
}

template <typename T>
Var element(Graph<T>& g, Var x, std::size_t index) {
    const Tensor<T>& xv = g.value(x);
    require(index < xv.size(), "element: index out of range");
    return g.record(Tensor<T>({1}, {xv[index]}), {x}, [x, index](Graph<T>& gr, Var self) {
        if (Tensor<T>* gx = gr.grad_buffer(x)) (*gx)[index] += gr.out_grad(self)[0];
    });
}

#define L3F_INSTANTIATE_OPS(T)                                                                    \
    template Var conv2d<T>(Graph<T>&, Var, Var, Var, const ConvGeometry&);                       \
    template Var conv_transpose2x2<T>(Graph<T>&, Var, Var, Var);                                 \
    template Var dense<T>(Graph<T>&, Var, Var, Var);                                             \
    template Var relu<T>(Graph<T>&, Var);                                                        \
    template Var softplus<T>(Graph<T>&, Var);                                                    \
    template Var add<T>(Graph<T>&, Var, Var);                                                    \
    template Var scale<T>(Graph<T>&, Var, Var);                                                  \
    template Var concat_channels<T>(Graph<T>&, const std::vector<Var>&);                         \
    template Var gather<T>(Graph<T>&, Var, IndexMap, Shape);                                     \
    template Var sum_abs<T>(Graph<T>&, Var);                                                     \
    template Var l1_mean<T>(Graph<T>&, Var, Var);                                                \
    template Var weighted_sum<T>(Graph<T>&, const std::vector<std::pair<Var, T>>&);              \
    template Var element<T>(Graph<T>&, Var, std::size_t);

L3F_INSTANTIATE_OPS(float)
L3F_INSTANTIATE_OPS(double)

#undef L3F_INSTANTIATE_OPS

} // namespace l3f::nn
