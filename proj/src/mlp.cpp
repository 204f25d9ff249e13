#include "gossiplearn/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gossiplearn/errors.hpp"
#include "gossiplearn/rand.hpp"

namespace gossiplearn {

namespace {

void require_input_dim(const MlpShape& shape, const Matrix& inputs) {
    if (inputs.cols() != shape.input_dim)
        throw DimensionError("mlp: input has " + std::to_string(inputs.cols()) +
                             " columns, expected " + std::to_string(shape.input_dim));
}

void require_params(const MlpShape& shape, const ParamVector& params) {
    if (params.size() != shape.param_count())
        throw DimensionError("mlp: parameter vector has " +
                             std::to_string(params.size()) + " entries, expected " +
                             std::to_string(shape.param_count()));
}

void require_batch(const MlpShape& shape, const Batch& batch) {
    require_input_dim(shape, batch.inputs);
    if (batch.inputs.rows() != batch.labels.size())
        throw DimensionError("mlp: batch has " + std::to_string(batch.inputs.rows()) +
                             " input rows but " + std::to_string(batch.labels.size()) +
                             " labels");
    for (int y : batch.labels)
        if (y < 0 || static_cast<std::size_t>(y) >= shape.output_dim)
            throw UsageError("mlp: label " + std::to_string(y) + " out of range [0, " +
                             std::to_string(shape.output_dim) + ")");
}

// Hidden pre-activations and activations for a batch; z1 may be null when
// only the activations are needed.
void hidden_layer(const MlpShape& s, const ParamVector& p, const Matrix& x,
                  Matrix* z1, Matrix& h) {
    const double* w1 = p.data() + s.hidden_weights_offset();
    const double* b1 = p.data() + s.hidden_bias_offset();
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const double* xr = x.row(r);
        for (std::size_t j = 0; j < s.hidden_dim; ++j) {
            const double* wj = w1 + j * s.input_dim;
            double acc = b1[j];
            for (std::size_t i = 0; i < s.input_dim; ++i) acc += wj[i] * xr[i];
            if (z1) (*z1)(r, j) = acc;
            h(r, j) = acc > 0.0 ? acc : 0.0;
        }
    }
}

void output_layer(const MlpShape& s, const ParamVector& p, const Matrix& h,
                  Matrix& z2) {
    const double* w2 = p.data() + s.output_weights_offset();
    const double* b2 = p.data() + s.output_bias_offset();
    for (std::size_t r = 0; r < h.rows(); ++r) {
        const double* hr = h.row(r);
        for (std::size_t k = 0; k < s.output_dim; ++k) {
            const double* wk = w2 + k * s.hidden_dim;
            double acc = b2[k];
            for (std::size_t j = 0; j < s.hidden_dim; ++j) acc += wk[j] * hr[j];
            z2(r, k) = acc;
        }
    }
}

Matrix logits(const MlpShape& s, const ParamVector& p, const Matrix& x) {
    Matrix h(x.rows(), s.hidden_dim);
    hidden_layer(s, p, x, nullptr, h);
    Matrix z2(x.rows(), s.output_dim);
    output_layer(s, p, h, z2);
    return z2;
}

double row_logsumexp(const double* z, std::size_t n) {
    double m = z[0];
    for (std::size_t k = 1; k < n; ++k) m = std::max(m, z[k]);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += std::exp(z[k] - m);
    return m + std::log(sum);
}

} // namespace

ParamVector init_params(const MlpShape& shape, std::uint64_t seed) {
    Rng rng(seed);
    ParamVector p(shape.param_count());
    const double lim1 =
        std::sqrt(6.0 / static_cast<double>(shape.input_dim + shape.hidden_dim));
    const double lim2 =
        std::sqrt(6.0 / static_cast<double>(shape.hidden_dim + shape.output_dim));
    double* w1 = p.data() + shape.hidden_weights_offset();
    for (std::size_t i = 0; i < shape.input_dim * shape.hidden_dim; ++i)
        w1[i] = uniform_in(rng, -lim1, lim1);
    double* w2 = p.data() + shape.output_weights_offset();
    for (std::size_t i = 0; i < shape.hidden_dim * shape.output_dim; ++i)
        w2[i] = uniform_in(rng, -lim2, lim2);
    // biases stay zero
    return p;
}

Matrix mlp_forward(const MlpShape& shape, const ParamVector& params,
                   const Matrix& inputs) {
    require_params(shape, params);
    require_input_dim(shape, inputs);
    Matrix z2 = logits(shape, params, inputs);
    for (std::size_t r = 0; r < z2.rows(); ++r) {
        double* zr = z2.row(r);
        double m = zr[0];
        for (std::size_t k = 1; k < shape.output_dim; ++k) m = std::max(m, zr[k]);
        double sum = 0.0;
        for (std::size_t k = 0; k < shape.output_dim; ++k) {
            zr[k] = std::exp(zr[k] - m);
            sum += zr[k];
        }
        for (std::size_t k = 0; k < shape.output_dim; ++k) zr[k] /= sum;
    }
    return z2;
}

double mlp_loss(const MlpShape& shape, const ParamVector& params, const Batch& batch) {
    require_params(shape, params);
    require_batch(shape, batch);
    if (batch.size() == 0) throw UsageError("mlp_loss: empty batch");
    Matrix z2 = logits(shape, params, batch.inputs);
    double total = 0.0;
    for (std::size_t r = 0; r < z2.rows(); ++r) {
        const double* zr = z2.row(r);
        total += row_logsumexp(zr, shape.output_dim) - zr[batch.labels[r]];
    }
    return total / static_cast<double>(batch.size());
}

ParamVector mlp_gradient(const MlpShape& shape, const ParamVector& params,
                         const Batch& batch, double* batch_loss) {
    require_params(shape, params);
    require_batch(shape, batch);
    if (batch.size() == 0) throw UsageError("mlp_gradient: empty batch");

    const std::size_t n = batch.size();
    const Matrix& x = batch.inputs;

    Matrix z1(n, shape.hidden_dim);
    Matrix h(n, shape.hidden_dim);
    hidden_layer(shape, params, x, &z1, h);
    Matrix z2(n, shape.output_dim);
    output_layer(shape, params, h, z2);

    // dz2 = (softmax(z2) - onehot(y)) / n, reusing z2's storage.
    double total_loss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double* zr = z2.row(r);
        const double lse = row_logsumexp(zr, shape.output_dim);
        total_loss += lse - zr[batch.labels[r]];
        for (std::size_t k = 0; k < shape.output_dim; ++k)
            zr[k] = std::exp(zr[k] - lse) / static_cast<double>(n);
        zr[batch.labels[r]] -= 1.0 / static_cast<double>(n);
    }
    if (batch_loss) *batch_loss = total_loss / static_cast<double>(n);

    ParamVector grad(shape.param_count());
    double* gw1 = grad.data() + shape.hidden_weights_offset();
    double* gb1 = grad.data() + shape.hidden_bias_offset();
    double* gw2 = grad.data() + shape.output_weights_offset();
    double* gb2 = grad.data() + shape.output_bias_offset();
    const double* w2 = params.data() + shape.output_weights_offset();

    for (std::size_t r = 0; r < n; ++r) {
        const double* dz2 = z2.row(r);
        const double* hr = h.row(r);
        for (std::size_t k = 0; k < shape.output_dim; ++k) {
            double* gw2k = gw2 + k * shape.hidden_dim;
            const double d = dz2[k];
            for (std::size_t j = 0; j < shape.hidden_dim; ++j) gw2k[j] += d * hr[j];
            gb2[k] += d;
        }
        const double* xr = x.row(r);
        const double* z1r = z1.row(r);
        for (std::size_t j = 0; j < shape.hidden_dim; ++j) {
            if (z1r[j] <= 0.0) continue; // ReLU gate
            double dh = 0.0;
            for (std::size_t k = 0; k < shape.output_dim; ++k)
                dh += dz2[k] * w2[k * shape.hidden_dim + j];
            double* gw1j = gw1 + j * shape.input_dim;
            for (std::size_t i = 0; i < shape.input_dim; ++i) gw1j[i] += dh * xr[i];
            gb1[j] += dh;
        }
    }
    return grad;
}

EvalMetrics mlp_evaluate(const MlpShape& shape, const ParamVector& params,
                         const Matrix& inputs, const std::vector<int>& labels) {
    require_params(shape, params);
    require_input_dim(shape, inputs);
    if (inputs.rows() != labels.size())
        throw DimensionError("mlp_evaluate: rows vs labels mismatch");
    if (labels.empty()) throw UsageError("mlp_evaluate: empty dataset");

    // Chunked so a large evaluation set never materializes all logits.
    constexpr std::size_t kChunk = 512;
    double total_loss = 0.0;
    std::size_t correct = 0;
    for (std::size_t begin = 0; begin < inputs.rows(); begin += kChunk) {
        const std::size_t end = std::min(begin + kChunk, inputs.rows());
        Matrix chunk(end - begin, shape.input_dim);
        for (std::size_t r = begin; r < end; ++r)
            std::copy(inputs.row(r), inputs.row(r) + shape.input_dim,
                      chunk.row(r - begin));
        Matrix z2 = logits(shape, params, chunk);
        for (std::size_t r = 0; r < z2.rows(); ++r) {
            const int y = labels[begin + r];
            if (y < 0 || static_cast<std::size_t>(y) >= shape.output_dim)
                throw UsageError("mlp_evaluate: label out of range");
            const double* zr = z2.row(r);
            total_loss += row_logsumexp(zr, shape.output_dim) - zr[y];
            std::size_t best = 0;
            for (std::size_t k = 1; k < shape.output_dim; ++k)
                if (zr[k] > zr[best]) best = k; // ties keep the lowest index
            if (best == static_cast<std::size_t>(y)) ++correct;
        }
    }
    const auto n = static_cast<double>(labels.size());
    return {total_loss / n, static_cast<double>(correct) / n};
}

MlpModel::MlpModel(MlpShape shape, ParamVector params) : shape_(shape) {
    set_params(std::move(params));
}

void MlpModel::set_params(ParamVector params) {
    require_params(shape_, params);
    params_ = std::move(params);
}

} // namespace gossiplearn
