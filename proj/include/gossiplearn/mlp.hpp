#pragma once

#include <cstdint>
#include <vector>

#include "gossiplearn/matrix.hpp"
#include "gossiplearn/param_vector.hpp"

namespace gossiplearn {

// Layer sizes of the single-hidden-layer network: ReLU hidden layer,
// softmax output. Parameters are flattened in a fixed order every node
// must agree on:
//
//   [ hidden weights (hidden_dim x input_dim, row-major by hidden unit),
//     hidden biases  (hidden_dim),
//     output weights (output_dim x hidden_dim, row-major by output unit),
//     output biases  (output_dim) ]
struct MlpShape {
    std::size_t input_dim = 784;
    std::size_t hidden_dim = 72;
    std::size_t output_dim = 10;

    std::size_t param_count() const {
        return input_dim * hidden_dim + hidden_dim + hidden_dim * output_dim + output_dim;
    }
    std::size_t hidden_weights_offset() const { return 0; }
    std::size_t hidden_bias_offset() const { return input_dim * hidden_dim; }
    std::size_t output_weights_offset() const { return hidden_bias_offset() + hidden_dim; }
    std::size_t output_bias_offset() const {
        return output_weights_offset() + hidden_dim * output_dim;
    }

    bool operator==(const MlpShape&) const = default;
};

// One training batch: inputs row per sample, labels as class indices.
struct Batch {
    Matrix inputs;
    std::vector<int> labels;
    std::size_t size() const { return labels.size(); }
};

struct EvalMetrics {
    double loss = 0.0;
    double accuracy = 0.0;
};

// Deterministic weight initialization: weights uniform in
// [-sqrt(6/(fan_in+fan_out)), +sqrt(6/(fan_in+fan_out))], biases zero.
ParamVector init_params(const MlpShape& shape, std::uint64_t seed);

// Class probabilities, one row per input row. Softmax is computed with the
// row max subtracted so rows always sum to 1 on finite inputs.
Matrix mlp_forward(const MlpShape& shape, const ParamVector& params,
                   const Matrix& inputs);

// Mean negative log-probability of the true labels (computed through
// log-sum-exp, not through the probabilities).
double mlp_loss(const MlpShape& shape, const ParamVector& params, const Batch& batch);

// Exact gradient of mlp_loss with respect to the flat parameters.
// Optionally reports the batch loss from the same forward pass.
ParamVector mlp_gradient(const MlpShape& shape, const ParamVector& params,
                         const Batch& batch, double* batch_loss = nullptr);

// Mean loss and argmax accuracy over a labeled set (ties break toward the
// lowest class index).
EvalMetrics mlp_evaluate(const MlpShape& shape, const ParamVector& params,
                         const Matrix& inputs, const std::vector<int>& labels);

// Convenience bundle of a shape and its parameter vector.
class MlpModel {
public:
    explicit MlpModel(MlpShape shape)
        : shape_(shape), params_(shape.param_count()) {}
    MlpModel(MlpShape shape, ParamVector params);

    const MlpShape& shape() const { return shape_; }
    const ParamVector& params() const { return params_; }
    void set_params(ParamVector params);

    Matrix forward(const Matrix& inputs) const {
        return mlp_forward(shape_, params_, inputs);
    }
    double loss(const Batch& batch) const { return mlp_loss(shape_, params_, batch); }
    ParamVector gradient(const Batch& batch) const {
        return mlp_gradient(shape_, params_, batch);
    }
    EvalMetrics evaluate(const Matrix& inputs, const std::vector<int>& labels) const {
        return mlp_evaluate(shape_, params_, inputs, labels);
    }

private:
    MlpShape shape_;
    ParamVector params_;
};

} // namespace gossiplearn
