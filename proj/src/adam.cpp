#include "gossiplearn/adam.hpp"

#include <cmath>
#include <string>

#include "gossiplearn/errors.hpp"

namespace gossiplearn {

AdamOptimizer::AdamOptimizer(std::size_t dim, AdamConfig config)
    : cfg_(config), m_(dim), v_(dim) {
    if (!(cfg_.alpha > 0.0) || !(cfg_.beta1 >= 0.0 && cfg_.beta1 < 1.0) ||
        !(cfg_.beta2 >= 0.0 && cfg_.beta2 < 1.0) || !(cfg_.epsilon > 0.0))
        throw ConfigError("AdamOptimizer: invalid hyperparameters");
}

void AdamOptimizer::step(ParamVector& params, const ParamVector& grad) {
    if (params.size() != m_.size() || grad.size() != m_.size())
        throw DimensionError("AdamOptimizer::step: dimension mismatch (" +
                             std::to_string(params.size()) + ", " +
                             std::to_string(grad.size()) + " vs " +
                             std::to_string(m_.size()) + ")");
    ++t_;
    const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    for (std::size_t k = 0; k < params.size(); ++k) {
        const double g = grad[k];
        m_[k] = cfg_.beta1 * m_[k] + (1.0 - cfg_.beta1) * g;
        v_[k] = cfg_.beta2 * v_[k] + (1.0 - cfg_.beta2) * g * g;
        const double m_hat = m_[k] / c1;
        const double v_hat = v_[k] / c2;
        params[k] -= cfg_.alpha * m_hat / (std::sqrt(v_hat) + cfg_.epsilon);
    }
}

void train_on_batch(const MlpShape& shape, ParamVector& params, AdamOptimizer& adam,
                    const Batch& batch) {
    adam.step(params, mlp_gradient(shape, params, batch));
}

} // namespace gossiplearn
