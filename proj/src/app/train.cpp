#include "l3f/app/train.hpp"

#include "l3f/error.hpp"
#include "l3f/lf/views.hpp"
#include "l3f/loss/contextual.hpp"
#include "l3f/loss/losses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace l3f::app {

void write_log_header(std::ostream& os) { os << "iteration,alpha1,alpha2,l1,cx,penalty,total,gamma_mean\n"; }

void write_log_row(std::ostream& os, const LossRecord& r) {
    char line[256];
    std::snprintf(line, sizeof(line), "%llu,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                  static_cast<unsigned long long>(r.iteration), r.alpha1, r.alpha2, r.l1, r.cx, r.penalty, r.total,
                  r.gamma);
    os << line;
}

double learning_rate(const RunConfig& config, std::uint64_t iteration) {
    if (!config.lr_final || config.iterations < 2) return config.adam.learning_rate;
    const double progress = static_cast<double>(std::min(iteration, config.iterations - 1)) /
                            static_cast<double>(config.iterations - 1);
    return *config.lr_final +
           0.5 * (config.adam.learning_rate - *config.lr_final) * (1.0 + std::cos(std::numbers::pi * progress));
}

Trainer::Trainer(const RunConfig& config, net::L3Fnet<float>& model)
    : config_(config), model_(model), adam_(config.adam) {}

LossRecord Trainer::step(const synth::TrainingExample& ex) {
    using nn::Var;
    nn::Graph<float> g;
    LossRecord rec;
    rec.iteration = iteration_;
    const loss::Alphas alphas = loss::loss_schedule(iteration_, config_.loss);
    rec.alpha1 = alphas.alpha1;
    rec.alpha2 = alphas.alpha2;

    Var gamma;
    if (config_.use_hist) {
        gamma = model_.predict_gamma(g, g.constant(ex.hist));
        rec.gamma = g.value(gamma)[0];
    }
    const auto amplified = [&](nn::Tensor<float> t) {
        const Var v = g.constant(std::move(t));
        return config_.use_hist ? nn::scale(g, v, gamma) : v;
    };

    const Var latent = model_.grb_forward(g, amplified(lf::stack_views<float>(lf::strip_ring(ex.low, 1))));
    std::vector<Var> outs, gts;
    for (const auto& at : ex.views) {
        const Var nb = amplified(lf::neighbor_stack<float>(ex.low, at, 1));
        const Var center = amplified(lf::view_tensor<float>(ex.low, at.u + 1, at.v + 1));
        outs.push_back(model_.vrb_forward(g, nb, latent, center));
        gts.push_back(g.constant(lf::view_tensor<float>(ex.gt, at.u + 1, at.v + 1)));
    }
    const Var l1 = loss::l1_loss(g, outs, gts);
    std::vector<std::pair<Var, float>> cx_terms;
    if (alphas.alpha2 > 0)
        for (std::size_t k = 0; k < outs.size(); ++k)
            cx_terms.emplace_back(loss::contextual_loss(g, outs[k], gts[k], config_.cx), 1.0f / outs.size());
    const Var cx = nn::weighted_sum(g, cx_terms);

    auto params = config_.use_hist ? model_.parameters() : model_.stage_parameters();
    const Var penalty = loss::param_l1_penalty<float>(g, params);
    const Var total = nn::weighted_sum<float>(g, {{l1, static_cast<float>(alphas.alpha1)},
                                                  {cx, static_cast<float>(alphas.alpha2)},
                                                  {penalty, static_cast<float>(config_.loss.lambda)}});
    rec.l1 = g.value(l1)[0];
    rec.cx = g.value(cx)[0];
    rec.penalty = g.value(penalty)[0];
    rec.total = g.value(total)[0];
    if (!std::isfinite(rec.total))
        throw NumericError("non-finite loss at iteration " + std::to_string(iteration_));

    for (auto* p : params) p->zero_grad();
    g.backward(total);
    adam_.set_learning_rate(learning_rate(config_, iteration_));
    adam_.step(params);
    ++iteration_;
    return rec;
}

std::vector<LossRecord> train_loop(const RunConfig& config, net::L3Fnet<float>& model, const synth::Dataset& dataset,
                                   std::ostream* log) {
    if (!config.seed) throw ConfigError("a seed is required");
    std::mt19937_64 rng(*config.seed);
    synth::SampleConfig sc;
    sc.patch = config.patch;
    sc.views = config.views;
    sc.augment = config.augment;
    sc.hist_bins = model.config().hist_bins;
    Trainer trainer(config, model);
    std::vector<LossRecord> records;
    if (log) write_log_header(*log);
    for (std::uint64_t it = 0; it < config.iterations; ++it) {
        const auto ex = synth::sample_batch(dataset, sc, rng);
        records.push_back(trainer.step(ex));
        if (log) {
            write_log_row(*log, records.back());
            log->flush();
        }
        if (config.checkpoint_every > 0 && (it + 1) % config.checkpoint_every == 0 && !config.checkpoint.empty())
            model.save(config.checkpoint);
    }
    return records;
}

TrainOutcome run_train(const RunConfig& config) {
    RunConfig cfg = config;
    cfg.finalize();
    const synth::Dataset dataset = synth::load_dataset(cfg.manifest, cfg.model.grid, cfg.split);
    net::L3Fnet<float> model(cfg.model);
    if (!cfg.init_checkpoint.empty()) {
        model = net::L3Fnet<float>::load(cfg.init_checkpoint);
        if (model.config() != cfg.model) throw ConfigError("init_checkpoint model config differs from the run config");
    } else {
        model.init(*cfg.seed);
    }
    std::ofstream log(cfg.loss_log);
    if (!log) throw IoError("cannot write loss log " + cfg.loss_log.string());
    TrainOutcome out;
    out.checkpoint = cfg.checkpoint;
    try {
        out.log = train_loop(cfg, model, dataset, &log);
    } catch (const NumericError&) {
        model.save(cfg.checkpoint);
        throw;
    }
    model.save(cfg.checkpoint);
    return out;
}

} // namespace l3f::app
