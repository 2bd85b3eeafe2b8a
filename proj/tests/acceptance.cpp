// Acceptance run: one PASS/FAIL line per criterion. Arguments select a subset
// of criteria by number; with none, all run.

#include "l3f/align/ransac.hpp"
#include "l3f/app/gradcheck_suite.hpp"
#include "l3f/app/train.hpp"
#include "l3f/lf/views.hpp"
#include "l3f/loss/contextual.hpp"
#include "l3f/loss/losses.hpp"
#include "l3f/loss/metrics.hpp"
#include "l3f/net/histogram.hpp"
#include "l3f/net/model.hpp"
#include "l3f/net/restore.hpp"
#include "l3f/pseudo/pseudo_lf.hpp"
#include "l3f/pseudo/receptive_field.hpp"
#include "l3f/synth/dataset.hpp"
#include "l3f/synth/lowlight.hpp"
#include "l3f/synth/scene.hpp"

#include "planted.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace l3f;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

lf::LightField random_lf(int u, int v, int h, int w, std::uint64_t seed, float hi) {
    lf::LightField out(u, v, h, w);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> d(0.0f, hi);
    for (float& x : out.data()) x = d(rng);
    return out;
}

Outcome codec_identity() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> cells(1, 12);
    std::uniform_real_distribution<float> value(0.0f, 1.0f);
    int checked = 0;
    bool ok = true;
    for (int block : {1, 2, 3, 5, 10})
        for (int i = 0; i < 50; ++i) {
            lf::Image img(block * cells(rng), block * cells(rng));
            for (float& x : img.data) x = value(rng);
            const lf::Image back = pseudo::unpack(pseudo::pack(img, block));
            ok = ok && back == img;
            ++checked;
        }
    const double t = seconds_since(t0);
    std::ostringstream os;
    os << checked << " images, " << t << " s";
    return {ok && t < 1.0, os.str()};
}

Outcome gradient_correctness() {
    const auto t0 = Clock::now();
    app::GradcheckSuiteOptions opts;
    opts.channels = 8;
    opts.s1_blocks = 2;
    opts.s2_blocks = 3;
    opts.patch = 16;
    opts.grid = 2;
    opts.max_entries_per_block = 1000;
    bool ok = true;
    double worst = 0;
    std::ostringstream os;
    for (const auto& [name, report] : app::run_gradcheck_suite(opts)) {
        ok = ok && report.passed(1e-4);
        worst = std::max(worst, report.max_rel_error());
        if (!report.passed(1e-4)) os << name << " failed; ";
    }
    const double t = seconds_since(t0);
    os << "max rel error " << worst << ", " << t << " s";
    return {ok && t < 120.0, os.str()};
}

Outcome identity_at_init() {
    net::L3Fnet<float> model;
    model.init(3);
    const auto low = random_lf(10, 10, 32, 32, 4, 0.2f);
    net::RestoreOptions opts;
    opts.use_hist = false;
    const auto r = net::restore_lf(model, low, opts);
    return {r.lf == lf::strip_ring(low), "default model, 8x8 grid of 32x32 views"};
}

Outcome shape_chain() {
    const auto t0 = Clock::now();
    net::L3Fnet<float> model;
    model.init(5);
    const auto& c = model.config();
    bool ok = true;
    for (std::size_t p : {16u, 32u, 64u, 180u}) {
        nn::Graph<float> g(false);
        const auto latent = model.grb_forward(
            g, g.constant(nn::Tensor<float>({p, p, static_cast<std::size_t>(c.stacked_channels())}, 0.1f)));
        ok = ok && g.value(latent).shape() == nn::Shape{p / 2, p / 2, 64};
        const auto out = model.vrb_forward(g, g.constant(nn::Tensor<float>({p, p, 15}, 0.1f)), latent,
                                           g.constant(nn::Tensor<float>({p, p, 3}, 0.1f)));
        ok = ok && g.value(out).shape() == nn::Shape{p, p, 3};
    }
    const double t = seconds_since(t0);
    std::ostringstream os;
    os << "patches 16/32/64/180, " << t << " s";
    return {ok && t < 30.0, os.str()};
}

net::ModelConfig reduced_model(int grid) {
    net::ModelConfig c;
    c.s1_blocks = 2;
    c.s2_blocks = 3;
    c.channels = 16;
    c.transpose_channels = 32;
    c.grid = grid;
    return c;
}

double mean_abs(const lf::LightField& a, const lf::LightField& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.data().size(); ++i) s += std::abs(static_cast<double>(a.data()[i]) - b.data()[i]);
    return s / static_cast<double>(a.data().size());
}

double mean_psnr(const lf::LightField& a, const lf::LightField& b) {
    double s = 0;
    for (int u = 0; u < a.views_u(); ++u)
        for (int v = 0; v < a.views_v(); ++v) s += loss::psnr(a.view_image(u, v), b.view_image(u, v));
    return s / static_cast<double>(a.view_count());
}

constexpr double kReadNoise = 0.002;
constexpr double kShotNoise = 0.0002;
constexpr double kOverfitLr = 1e-3;

Outcome overfit_smoke() {
    const auto t0 = Clock::now();
    synth::SceneSpec scene;
    scene.views = 5;
    scene.height = 64;
    scene.width = 64;
    scene.seed = 17;
    synth::ManifestEntry entry;
    entry.gt = "overfit.lf4";
    entry.divisors = {50};
    entry.read_noise = kReadNoise;
    entry.shot_noise = kShotNoise;
    entry.noise_seed = 23;
    const auto dataset = synth::make_dataset({entry}, {synth::generate_scene(scene)}, 3);

    app::RunConfig cfg;
    cfg.model = reduced_model(3);
    cfg.adam.learning_rate = kOverfitLr;
    cfg.patch = 64;
    cfg.views = 9;
    cfg.augment = false;
    cfg.iterations = 2000;
    cfg.seed = 29;
    net::L3Fnet<float> model(cfg.model);
    model.init(*cfg.seed);
    const auto log = app::train_loop(cfg, model, dataset);

    const auto& item = dataset.items.front();
    const auto restored = net::restore_lf(model, item.fixed_low.front());
    const auto gt = lf::strip_ring(item.gt);
    const double l1 = mean_abs(restored.lf, gt), psnr = mean_psnr(restored.lf, gt);
    const double t = seconds_since(t0);
    std::ostringstream os;
    os << log.size() << " iterations, last training L1 " << log.back().l1 << ", restored L1 " << l1 << ", PSNR "
       << psnr << " dB, gamma " << restored.gamma << ", " << t << " s";
    return {l1 < 0.02 && log.back().l1 < 0.02 && psnr > 28.0 && t < 900.0, os.str()};
}

Outcome histogram_trend() {
    const auto t0 = Clock::now();
    std::vector<synth::ManifestEntry> entries;
    std::vector<lf::LightField> gts;
    for (int i = 0; i < 3; ++i) {
        synth::SceneSpec scene;
        scene.views = 4;
        scene.height = 48;
        scene.width = 48;
        scene.seed = 40 + static_cast<std::uint64_t>(i);
        synth::ManifestEntry e;
        e.gt = "scene" + std::to_string(i) + ".lf4";
        e.divisors = {20, 50, 100};
        e.read_noise = kReadNoise;
        e.shot_noise = kShotNoise;
        e.noise_seed = 60 + static_cast<std::uint64_t>(i);
        entries.push_back(e);
        gts.push_back(synth::generate_scene(scene));
    }
    const auto dataset = synth::make_dataset(entries, gts, 2);

    app::RunConfig cfg;
    cfg.model = reduced_model(2);
    cfg.adam.learning_rate = kOverfitLr;
    cfg.patch = 32;
    cfg.views = 4;
    cfg.iterations = 3000;
    cfg.seed = 31;
    net::L3Fnet<float> model(cfg.model);
    model.init(*cfg.seed);
    app::train_loop(cfg, model, dataset);

    std::vector<double> mean_gamma;
    for (std::size_t k = 0; k < 3; ++k) {
        double s = 0;
        for (const auto& item : dataset.items) s += net::predict_gamma(model, item.fixed_low[k]);
        mean_gamma.push_back(s / static_cast<double>(dataset.items.size()));
    }
    const double t = seconds_since(t0);
    std::ostringstream os;
    os << "mean gamma d=20: " << mean_gamma[0] << ", d=50: " << mean_gamma[1] << ", d=100: " << mean_gamma[2] << ", "
       << cfg.iterations << " iterations, " << t << " s";
    return {mean_gamma[2] > mean_gamma[1] && mean_gamma[1] > mean_gamma[0], os.str()};
}

Outcome loss_schedule() {
    const loss::LossWeights w;
    const auto before = loss::loss_schedule(19999, w), after = loss::loss_schedule(20000, w);
    const bool ok = before == loss::Alphas{5.0, 0.1} && after == loss::Alphas{1.0, 0.1};
    std::ostringstream os;
    os << "19999: (" << before.alpha1 << ", " << before.alpha2 << "), 20000: (" << after.alpha1 << ", "
       << after.alpha2 << ")";
    return {ok, os.str()};
}

Outcome view_independence() {
    net::ModelConfig c = reduced_model(4);
    c.hist_bins = 16;
    net::L3Fnet<float> model(c);
    model.init(7);
    std::mt19937_64 rng(8);
    model.vrb_out.init(rng, 1.0f);
    const auto low = random_lf(6, 6, 16, 16, 9, 0.3f);
    net::RestoreOptions opts;
    opts.views = {{1, 1}};
    opts.use_hist = false;
    const auto before = net::restore_lf(model, low, opts);
    // The latent is shared by every view; with it held fixed, view (1, 1)
    // reads only its own 5-view stack. (3, 3) in the working grid is (4, 4) in
    // storage, outside that stack.
    nn::Graph<float> g(false);
    const auto latent = g.value(model.grb_forward(g, g.constant(lf::stack_views<float>(lf::strip_ring(low, 1)))));
    auto perturbed = low;
    for (float& x : perturbed.view(4, 4)) x = 1.0f - x;
    const auto direct = g.value(model.vrb_forward(g, g.constant(lf::neighbor_stack<float>(perturbed, {1, 1}, 1)),
                                                  g.constant(latent),
                                                  g.constant(lf::view_tensor<float>(perturbed, 2, 2))));
    const auto after = lf::tensor_to_image(direct);
    const bool independent = before.lf.view_image(0, 0) == after;

    net::RestoreOptions seq, par;
    par.workers = 8;
    const auto a = net::restore_lf(model, low, seq), b = net::restore_lf(model, low, par);
    const bool parallel = a.lf == b.lf;
    std::ostringstream os;
    os << "non-neighbor perturbation " << (independent ? "ignored" : "changed output") << ", 1 vs 8 workers "
       << (parallel ? "identical" : "differ");
    return {independent && parallel, os.str()};
}

Outcome receptive_field() {
    bool ok = true;
    std::ostringstream os;
    for (int b : {1, 2, 4}) {
        nn::Conv2d<float> conv("probe", static_cast<std::size_t>(3 * b * b), 4, 3, 1);
        std::mt19937_64 rng(static_cast<std::uint64_t>(b));
        conv.init(rng, 1.0f);
        const int size = 16 * b;
        const auto m = pseudo::measure_receptive_field(pseudo::conv_probe_network(conv, size, size, b), size, size);
        const auto a = pseudo::analytic_receptive_field(b, 3, 1);
        ok = ok && m.extent_y == a.extent_y && m.extent_x == a.extent_x && m.stride_y == a.stride_y &&
             m.stride_x == a.stride_x && !m.lower_bound;
        os << "B=" << b << ": " << m.extent_y << "x" << m.extent_x << "/" << m.stride_y << "; ";
    }
    net::ModelConfig c;
    c.grid = 10;
    net::L3Fnet<float> model(c);
    model.init(11);
    std::mt19937_64 rng(12);
    model.vrb_out.init(rng, 1.0f);
    const int size = 1000;
    const auto m =
        pseudo::measure_receptive_field(pseudo::model_probe_network(model, size, size, 10, {5, 5}), size, size);
    os << "default model B=10: extent " << m.extent_y << "x" << m.extent_x << (m.lower_bound ? " (lower bound)" : "")
       << ", stride " << m.stride_y << "x" << m.stride_x << " (reference 830x830)";
    return {ok, os.str()};
}

Outcome alignment_recovery() {
    const auto t0 = Clock::now();
    int recovered = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        const auto set = test::planted_correspondences(1000 + trial, 30, 0.3);
        std::mt19937_64 rng(trial);
        const auto r = align::ransac_rigid(set.pairs, {}, rng);
        if (r.success && test::recovered(r.transform, set.truth)) ++recovered;
    }
    const double t = seconds_since(t0);
    std::ostringstream os;
    os << recovered << "/100 recovered, " << t << " s";
    return {recovered >= 95 && t < 60.0, os.str()};
}

Outcome metric_oracles() {
    lf::Image x(32, 32);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<float> d(0.1f, 0.8f);
    for (float& v : x.data) v = d(rng);
    auto y = x;
    for (float& v : y.data) v += 0.1f;
    const double s = loss::ssim(x, x), p = loss::psnr(x, y);
    nn::Tensor<float> t({24, 24, 3});
    for (float& v : t.data()) v = d(rng);
    const double cx = loss::contextual_loss_value(t, t);
    std::ostringstream os;
    os << "SSIM(x,x) " << s << ", PSNR(0.1 offset) " << p << " dB, CX(x,x) " << cx;
    return {s == 1.0 && std::abs(p - 20.0) <= 1e-3 && cx <= 1e-6, os.str()};
}

nn::Tensor<float> to_hwc(const lf::Image& img, int y0, int x0, int h, int w) {
    nn::Tensor<float> t({static_cast<std::size_t>(h), static_cast<std::size_t>(w), 3});
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c)
                t.at(static_cast<std::size_t>(y), static_cast<std::size_t>(x), static_cast<std::size_t>(c)) =
                    img.at(c, y0 + y, x0 + x);
    return t;
}

Outcome contextual_shift() {
    // Fine-grained texture: uniform noise, so neighboring pixels are unrelated.
    const lf::Image texture = random_lf(1, 1, 49, 49, 19, 1.0f).view_image(0, 0);
    const lf::Image other = random_lf(1, 1, 49, 49, 20, 1.0f).view_image(0, 0);
    const auto x = to_hwc(texture, 0, 0, 48, 48), shifted = to_hwc(texture, 0, 1, 48, 48),
               far = to_hwc(other, 0, 0, 48, 48);
    auto l1 = [](const nn::Tensor<float>& a, const nn::Tensor<float>& b) {
        double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(static_cast<double>(a[i]) - b[i]);
        return s / static_cast<double>(a.size());
    };
    const double cx_self = loss::contextual_loss_value(x, x), cx_shift = loss::contextual_loss_value(shifted, x),
                 cx_far = loss::contextual_loss_value(far, x);
    const double l1_shift = l1(shifted, x), l1_far = l1(far, x);
    const double cx_ratio = (cx_shift - cx_self) / (cx_far - cx_self), l1_ratio = l1_shift / l1_far;
    std::ostringstream os;
    os << "CX increase ratio " << cx_ratio << " (< 0.25), L1 ratio " << l1_ratio << " (> 0.75)";
    return {cx_ratio < 0.25 && l1_ratio > 0.75, os.str()};
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"codec identity", codec_identity},
        {"gradient correctness", gradient_correctness},
        {"identity at initialization", identity_at_init},
        {"shape chain", shape_chain},
        {"overfit smoke train", overfit_smoke},
        {"histogram gamma trend", histogram_trend},
        {"loss schedule", loss_schedule},
        {"view independence and parallel determinism", view_independence},
        {"receptive field", receptive_field},
        {"alignment recovery", alignment_recovery},
        {"metric oracles", metric_oracles},
        {"contextual loss shift tolerance", contextual_shift},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
