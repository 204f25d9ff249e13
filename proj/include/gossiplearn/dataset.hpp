#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gossiplearn/matrix.hpp"
#include "gossiplearn/mlp.hpp"
#include "gossiplearn/rand.hpp"

namespace gossiplearn {

// Immutable labeled dataset. Features live in [0, 1]; labels in
// [0, num_classes). num_classes is carried explicitly so shards that happen
// to miss a class still describe the full problem.
struct LabeledDataset {
    Matrix inputs;
    std::vector<int> labels;
    std::size_t num_classes = 0;
    std::string provenance;

    std::size_t size() const { return labels.size(); }
    std::size_t input_dim() const { return inputs.cols(); }
};

// Gaussian cluster per class. Class c has mean `mean_high` on input
// dimensions d with d % num_classes == c (within the first signal_dims
// dimensions) and `mean_low` elsewhere; dimensions past signal_dims are
// uninformative. Samples are clamped to [0, 1].
struct SyntheticSpec {
    std::size_t num_classes = 10;
    std::size_t samples_per_class = 200;
    std::size_t input_dim = 20;
    std::uint64_t seed = 0;
    double noise_sigma = 0.30;
    double mean_low = 0.2;
    double mean_high = 0.8;
    std::size_t signal_dims = 0; // 0 means all dimensions carry signal
};

LabeledDataset make_synthetic(const SyntheticSpec& spec);
LabeledDataset make_synthetic(std::size_t num_classes, std::size_t samples_per_class,
                              std::size_t input_dim, std::uint64_t seed);

// How a label-biased partition is built: mix_percent of each class is
// exported from its home shard and dealt round-robin to the others.
struct MixSpec {
    int mix_percent = 50; // r in [0, 100]
    std::size_t num_nodes = 10;
    std::uint64_t seed = 0;
};

// Random permutation of ds dealt into num_nodes shards whose sizes differ
// by at most one. The union of the shards is a permutation of ds.
std::vector<LabeledDataset> split_equal(const LabeledDataset& ds,
                                        std::size_t num_nodes, std::uint64_t seed);

// Label-biased partition: shard i keeps ceil((100-r)% of class i) and the
// floor(r%) remainder is spread over the other shards, balanced to within
// one sample each. Requires num_nodes == num_classes and every class
// present.
std::vector<LabeledDataset> split_biased(const LabeledDataset& ds, const MixSpec& spec);

// Shuffled-pass batch service: a full reshuffle at the start of every pass
// over the dataset, then sequential batches. The last batch of a pass may
// be short. The dataset must outlive the iterator.
class BatchIterator {
public:
    BatchIterator(const LabeledDataset& ds, std::size_t batch_size, std::uint64_t seed);

    Batch next();

    // Batches in one full pass: ceil(size / batch_size).
    std::size_t batches_per_pass() const;
    const LabeledDataset& dataset() const { return *ds_; }

private:
    const LabeledDataset* ds_;
    std::size_t batch_size_;
    Rng rng_;
    std::vector<std::size_t> order_;
    std::size_t pos_ = 0;
};

// Contiguous row slice [begin, end).
LabeledDataset subset(const LabeledDataset& ds, std::size_t begin, std::size_t end);

EvalMetrics mlp_evaluate(const MlpShape& shape, const ParamVector& params,
                         const LabeledDataset& ds);

} // namespace gossiplearn
