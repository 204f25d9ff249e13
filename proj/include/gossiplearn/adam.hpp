#pragma once

#include <cstdint>

#include "gossiplearn/mlp.hpp"
#include "gossiplearn/param_vector.hpp"

namespace gossiplearn {

struct AdamConfig {
    double alpha = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

// Adam with bias-corrected moment estimates. The step counter advances by
// exactly one per step() call.
class AdamOptimizer {
public:
    explicit AdamOptimizer(std::size_t dim, AdamConfig config = {});

    void step(ParamVector& params, const ParamVector& grad);

    std::uint64_t step_count() const { return t_; }
    const AdamConfig& config() const { return cfg_; }

private:
    AdamConfig cfg_;
    ParamVector m_;
    ParamVector v_;
    std::uint64_t t_ = 0;
};

// One local training step: backprop on the batch, then one Adam update of
// the parameters in place.
void train_on_batch(const MlpShape& shape, ParamVector& params, AdamOptimizer& adam,
                    const Batch& batch);

} // namespace gossiplearn
