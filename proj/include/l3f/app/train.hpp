#pragma once

#include "l3f/app/run_config.hpp"
#include "l3f/net/model.hpp"
#include "l3f/nn/adam.hpp"
#include "l3f/synth/dataset.hpp"

#include <iosfwd>
#include <vector>

namespace l3f::app {

struct LossRecord {
    std::uint64_t iteration = 0;
    double alpha1 = 0, alpha2 = 0;
    double l1 = 0, cx = 0, penalty = 0, total = 0;
    double gamma = 1;
};

// iteration,alpha1,alpha2,l1,cx,penalty,total,gamma_mean
void write_log_header(std::ostream& os);
void write_log_row(std::ostream& os, const LossRecord& r);

// Constant adam.learning_rate, or the cosine schedule when lr_final is set.
double learning_rate(const RunConfig& config, std::uint64_t iteration);

// One optimizer step on one example: optional amplification by the predicted
// gamma, both stages on the example's views, the weighted loss, backward and
// Adam. Throws NumericError on a non-finite loss or gradient, before any
// parameter changes.
class Trainer {
public:
    Trainer(const RunConfig& config, net::L3Fnet<float>& model);

    LossRecord step(const synth::TrainingExample& example);
    std::uint64_t iteration() const noexcept { return iteration_; }

private:
    RunConfig config_;
    net::L3Fnet<float>& model_;
    nn::Adam<float> adam_;
    std::uint64_t iteration_ = 0;
};

struct TrainOutcome {
    std::vector<LossRecord> log;
    std::filesystem::path checkpoint;
};

// Trains on config.manifest, writing the loss log and checkpoints. On a
// non-finite loss the last good parameters are saved before rethrowing.
TrainOutcome run_train(const RunConfig& config);

// In-memory variant used by run_train; the caller owns model and dataset.
std::vector<LossRecord> train_loop(const RunConfig& config, net::L3Fnet<float>& model, const synth::Dataset& dataset,
                                   std::ostream* log = nullptr);

} // namespace l3f::app
