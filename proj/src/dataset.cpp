#include "gossiplearn/dataset.hpp"

#include <algorithm>
#include <string>

#include "gossiplearn/errors.hpp"

namespace gossiplearn {

namespace {

LabeledDataset gather(const LabeledDataset& ds, const std::vector<std::size_t>& idx,
                      std::string provenance) {
    LabeledDataset out;
    out.inputs = Matrix(idx.size(), ds.input_dim());
    out.labels.reserve(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        std::copy(ds.inputs.row(idx[r]), ds.inputs.row(idx[r]) + ds.input_dim(),
                  out.inputs.row(r));
        out.labels.push_back(ds.labels[idx[r]]);
    }
    out.num_classes = ds.num_classes;
    out.provenance = std::move(provenance);
    return out;
}

} // namespace

LabeledDataset make_synthetic(const SyntheticSpec& spec) {
    if (spec.num_classes == 0 || spec.samples_per_class == 0 || spec.input_dim == 0)
        throw ConfigError("make_synthetic: all dimensions must be positive");
    const std::size_t signal =
        spec.signal_dims == 0 ? spec.input_dim : std::min(spec.signal_dims, spec.input_dim);
    const double mid = 0.5 * (spec.mean_low + spec.mean_high);

    Rng rng(spec.seed);
    const std::size_t n = spec.num_classes * spec.samples_per_class;
    LabeledDataset ds;
    ds.inputs = Matrix(n, spec.input_dim);
    ds.labels.reserve(n);
    ds.num_classes = spec.num_classes;
    ds.provenance = "synthetic(seed=" + std::to_string(spec.seed) + ")";

    std::size_t r = 0;
    for (std::size_t c = 0; c < spec.num_classes; ++c) {
        for (std::size_t s = 0; s < spec.samples_per_class; ++s, ++r) {
            double* row = ds.inputs.row(r);
            for (std::size_t d = 0; d < spec.input_dim; ++d) {
                double mean = mid;
                if (d < signal)
                    mean = (d % spec.num_classes == c) ? spec.mean_high : spec.mean_low;
                row[d] = std::clamp(gauss(rng, mean, spec.noise_sigma), 0.0, 1.0);
            }
            ds.labels.push_back(static_cast<int>(c));
        }
    }
    return ds;
}

LabeledDataset make_synthetic(std::size_t num_classes, std::size_t samples_per_class,
                              std::size_t input_dim, std::uint64_t seed) {
    SyntheticSpec spec;
    spec.num_classes = num_classes;
    spec.samples_per_class = samples_per_class;
    spec.input_dim = input_dim;
    spec.seed = seed;
    return make_synthetic(spec);
}

std::vector<LabeledDataset> split_equal(const LabeledDataset& ds,
                                        std::size_t num_nodes, std::uint64_t seed) {
    if (num_nodes == 0) throw UsageError("split_equal: num_nodes must be >= 1");
    if (num_nodes > ds.size())
        throw UsageError("split_equal: more nodes (" + std::to_string(num_nodes) +
                         ") than samples (" + std::to_string(ds.size()) + ")");

    Rng rng(seed);
    std::vector<std::size_t> perm = shuffled_indices(ds.size(), rng);

    const std::size_t base = ds.size() / num_nodes;
    const std::size_t extra = ds.size() % num_nodes;
    std::vector<LabeledDataset> shards;
    shards.reserve(num_nodes);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < num_nodes; ++i) {
        const std::size_t count = base + (i < extra ? 1 : 0);
        std::vector<std::size_t> idx(perm.begin() + offset,
                                     perm.begin() + offset + count);
        offset += count;
        shards.push_back(
            gather(ds, idx, ds.provenance + "/shard" + std::to_string(i)));
    }
    return shards;
}

std::vector<LabeledDataset> split_biased(const LabeledDataset& ds, const MixSpec& spec) {
    if (spec.mix_percent < 0 || spec.mix_percent > 100)
        throw ConfigError("split_biased: mix_percent must lie in [0, 100]");
    if (spec.num_nodes != ds.num_classes)
        throw ConfigError("split_biased: num_nodes (" + std::to_string(spec.num_nodes) +
                          ") must equal num_classes (" + std::to_string(ds.num_classes) +
                          ")");

    // Group sample indices by class.
    std::vector<std::vector<std::size_t>> by_class(ds.num_classes);
    for (std::size_t r = 0; r < ds.size(); ++r)
        by_class[static_cast<std::size_t>(ds.labels[r])].push_back(r);
    for (std::size_t c = 0; c < ds.num_classes; ++c)
        if (by_class[c].empty())
            throw UsageError("split_biased: class " + std::to_string(c) +
                             " absent from dataset");

    Rng rng(spec.seed);
    const std::size_t k = spec.num_nodes;
    std::vector<std::vector<std::size_t>> shard_idx(k);

    for (std::size_t c = 0; c < ds.num_classes; ++c) {
        auto& members = by_class[c];
        shuffle(members, rng);

        const std::size_t count = members.size();
        // Rounding keeps ties with the home shard, so mix 0 and 100 are exact.
        const std::size_t keep =
            (static_cast<std::size_t>(100 - spec.mix_percent) * count + 99) / 100;
        for (std::size_t s = 0; s < keep; ++s) shard_idx[c].push_back(members[s]);

        // Export the remainder round-robin over the other shards, starting
        // from a seeded offset.
        const std::size_t receivers = k - 1;
        std::size_t slot = receivers > 1
                               ? static_cast<std::size_t>(bounded_uint(rng, receivers))
                               : 0;
        for (std::size_t s = keep; s < count; ++s) {
            std::size_t dest = slot % receivers;
            if (dest >= c) ++dest; // skip the home shard
            shard_idx[dest].push_back(members[s]);
            ++slot;
        }
    }

    std::vector<LabeledDataset> shards;
    shards.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        shards.push_back(gather(ds, shard_idx[i],
                                ds.provenance + "/biased" +
                                    std::to_string(spec.mix_percent) + "-shard" +
                                    std::to_string(i)));
    return shards;
}

BatchIterator::BatchIterator(const LabeledDataset& ds, std::size_t batch_size,
                             std::uint64_t seed)
    : ds_(&ds), batch_size_(batch_size), rng_(seed) {
    if (ds.size() == 0) throw UsageError("BatchIterator: empty dataset");
    if (batch_size == 0) throw ConfigError("BatchIterator: batch_size must be >= 1");
    order_ = shuffled_indices(ds.size(), rng_);
}

Batch BatchIterator::next() {
    if (pos_ >= order_.size()) {
        order_ = shuffled_indices(ds_->size(), rng_);
        pos_ = 0;
    }
    const std::size_t count = std::min(batch_size_, order_.size() - pos_);
    Batch b;
    b.inputs = Matrix(count, ds_->input_dim());
    b.labels.reserve(count);
    for (std::size_t r = 0; r < count; ++r) {
        const std::size_t src = order_[pos_ + r];
        std::copy(ds_->inputs.row(src), ds_->inputs.row(src) + ds_->input_dim(),
                  b.inputs.row(r));
        b.labels.push_back(ds_->labels[src]);
    }
    pos_ += count;
    return b;
}

std::size_t BatchIterator::batches_per_pass() const {
    return (ds_->size() + batch_size_ - 1) / batch_size_;
}

LabeledDataset subset(const LabeledDataset& ds, std::size_t begin, std::size_t end) {
    if (begin > end || end > ds.size())
        throw UsageError("subset: invalid range [" + std::to_string(begin) + ", " +
                         std::to_string(end) + ") for " + std::to_string(ds.size()) +
                         " samples");
    std::vector<std::size_t> idx(end - begin);
    for (std::size_t i = begin; i < end; ++i) idx[i - begin] = i;
    return gather(ds, idx,
                  ds.provenance + "[" + std::to_string(begin) + ":" +
                      std::to_string(end) + ")");
}

EvalMetrics mlp_evaluate(const MlpShape& shape, const ParamVector& params,
                         const LabeledDataset& ds) {
    return mlp_evaluate(shape, params, ds.inputs, ds.labels);
}

} // namespace gossiplearn
