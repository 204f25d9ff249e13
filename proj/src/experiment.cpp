#include "gossiplearn/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <numeric>
#include <string>
#include <utility>

#include "gossiplearn/errors.hpp"
#include "gossiplearn/idx.hpp"
#include "gossiplearn/node.hpp"

namespace gossiplearn {

namespace {

struct PreparedData {
    LabeledDataset train;
    LabeledDataset validation;
    LabeledDataset test;
};

PreparedData prepare_data(const ExperimentConfig& cfg) {
    PreparedData data;
    if (const auto* synth = std::get_if<SyntheticDataSpec>(&cfg.dataset)) {
        SyntheticSpec gen;
        gen.num_classes = synth->num_classes;
        gen.input_dim = synth->input_dim;
        gen.noise_sigma = synth->noise_sigma;
        gen.signal_dims = synth->signal_dims;

        gen.samples_per_class = synth->train_per_class;
        gen.seed = derive_seed(cfg.seed, SeedStream::Synthetic, 0);
        data.train = make_synthetic(gen);
        gen.samples_per_class = synth->val_per_class;
        gen.seed = derive_seed(cfg.seed, SeedStream::Synthetic, 1);
        data.validation = make_synthetic(gen);
        gen.samples_per_class = synth->test_per_class;
        gen.seed = derive_seed(cfg.seed, SeedStream::Synthetic, 2);
        data.test = make_synthetic(gen);
        return data;
    }

    const auto& idx = std::get<IdxDataSpec>(cfg.dataset);
    data.train = load_idx(idx.train_images, idx.train_labels);
    LabeledDataset holdout = load_idx(idx.test_images, idx.test_labels);
    if (holdout.input_dim() != data.train.input_dim())
        throw ParseError("dataset: train and test input dimensions differ");
    const std::size_t num_classes =
        std::max(data.train.num_classes, holdout.num_classes);
    const std::size_t half = holdout.size() / 2;
    data.validation = subset(holdout, 0, half);
    data.test = subset(holdout, half, holdout.size());
    data.train.num_classes = num_classes;
    data.validation.num_classes = num_classes;
    data.test.num_classes = num_classes;
    return data;
}

double pairwise_divergence(const std::vector<Node>& nodes) {
    const std::size_t n = nodes.size();
    if (n < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double norm_i = std::max(l2_norm(nodes[i].params()), 1e-12);
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            sum += l2_distance(nodes[i].params(), nodes[j].params()) / norm_i;
        }
    }
    return sum / static_cast<double>(n * (n - 1));
}

// One per-node row per metric set, then the aggregate row (arithmetic mean
// over nodes).
void emit_rows(std::vector<MetricsRecord>& records, std::size_t epoch, EvalSplit split,
               const std::vector<EvalMetrics>& per_node, double divergence,
               std::uint64_t bytes_sent) {
    double loss_sum = 0.0;
    double acc_sum = 0.0;
    for (std::size_t i = 0; i < per_node.size(); ++i) {
        records.push_back({epoch, i, split, per_node[i].loss, per_node[i].accuracy,
                           divergence, bytes_sent});
        loss_sum += per_node[i].loss;
        acc_sum += per_node[i].accuracy;
    }
    const auto n = static_cast<double>(per_node.size());
    records.push_back({epoch, std::nullopt, split, loss_sum / n, acc_sum / n,
                       divergence, bytes_sent});
}

} // namespace

IdxDataSpec IdxDataSpec::from_dir(const std::string& dir) {
    IdxDataSpec spec;
    spec.train_images = dir + "/train-images-idx3-ubyte";
    spec.train_labels = dir + "/train-labels-idx1-ubyte";
    spec.test_images = dir + "/t10k-images-idx3-ubyte";
    spec.test_labels = dir + "/t10k-labels-idx1-ubyte";
    return spec;
}

void ExperimentConfig::validate() const {
    if (num_nodes == 0) throw ConfigError("config: num_nodes must be >= 1");
    if (local_batches == 0) throw ConfigError("config: ni must be >= 1");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ConfigError("config: gamma must lie in (0, 1)");
    if (batch_size == 0) throw ConfigError("config: batch_size must be >= 1");
    if (hidden_dim == 0) throw ConfigError("config: hidden_dim must be >= 1");
    if (mix_percent < 0 || mix_percent > 100)
        throw ConfigError("config: mix_rate must lie in [0, 100]");
    if (drop_weights < 0.0 || drop_weights > 1.0 || drop_deltas < 0.0 ||
        drop_deltas > 1.0)
        throw ConfigError("config: drop probabilities must lie in [0, 1]");
}

ExperimentConfig desk_profile() { return ExperimentConfig{}; }

RunResult run_experiment(const ExperimentConfig& cfg) {
    return cfg.mode == RunMode::Monolithic ? run_monolithic(cfg) : run_consensus(cfg);
}

RunResult run_monolithic(const ExperimentConfig& cfg) {
    cfg.validate();
    const PreparedData data = prepare_data(cfg);
    const MlpShape shape{data.train.input_dim(), cfg.hidden_dim,
                         data.train.num_classes};

    ParamVector params =
        init_params(shape, derive_seed(cfg.seed, SeedStream::NodeInit, 0));
    AdamOptimizer adam(shape.param_count(), cfg.adam);
    BatchIterator batches(data.train, cfg.batch_size,
                          derive_seed(cfg.seed, SeedStream::NodeData, 0));
    const std::size_t batches_per_epoch = batches.batches_per_pass();

    RunResult result;
    const auto emit = [&](std::size_t epoch, EvalSplit split,
                          const LabeledDataset& ds) {
        const EvalMetrics m = mlp_evaluate(shape, params, ds);
        emit_rows(result.records, epoch, split, {m}, 0.0, 0);
        return m;
    };

    if (cfg.epochs == 0) emit(0, EvalSplit::Validation, data.validation);
    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        for (std::size_t b = 0; b < batches_per_epoch; ++b)
            train_on_batch(shape, params, adam, batches.next());
        emit(epoch, EvalSplit::Validation, data.validation);
    }
    const EvalMetrics test = emit(cfg.epochs, EvalSplit::Test, data.test);
    result.test_loss = test.loss;
    result.test_accuracy = test.accuracy;
    result.final_divergence = 0.0;
    result.train_steps = {adam.step_count()};
    return result;
}

RunResult run_consensus(const ExperimentConfig& cfg) {
    cfg.validate();
    const PreparedData data = prepare_data(cfg);
    const MlpShape shape{data.train.input_dim(), cfg.hidden_dim,
                         data.train.num_classes};

    const std::uint64_t split_seed = derive_seed(cfg.seed, SeedStream::Split);
    const std::vector<LabeledDataset> shards =
        cfg.split == SplitKind::Equal
            ? split_equal(data.train, cfg.num_nodes, split_seed)
            : split_biased(data.train,
                           {cfg.mix_percent, cfg.num_nodes, split_seed});

    NetworkConfig net_cfg;
    net_cfg.num_nodes = cfg.num_nodes;
    net_cfg.drop_weights = cfg.drop_weights;
    net_cfg.drop_deltas = cfg.drop_deltas;
    net_cfg.delivery = cfg.delivery;
    net_cfg.seed = derive_seed(cfg.seed, SeedStream::Network);
    NetworkSim net(net_cfg);
    Rng select_rng(derive_seed(cfg.seed, SeedStream::PeerSelect));

    std::vector<Node> nodes;
    nodes.reserve(cfg.num_nodes);
    for (std::size_t i = 0; i < cfg.num_nodes; ++i) {
        NodeConfig node_cfg{i, cfg.local_batches, cfg.gossip_fanout, cfg.gamma};
        nodes.emplace_back(
            node_cfg, init_params(shape, derive_seed(cfg.seed, SeedStream::NodeInit, i)),
            std::make_unique<MlpTrainer>(
                shape, shards[i], cfg.batch_size,
                derive_seed(cfg.seed, SeedStream::NodeData, i), cfg.adam));
    }

    RunResult result;
    const auto emit = [&](std::size_t epoch, EvalSplit split,
                          const LabeledDataset& ds) {
        std::vector<EvalMetrics> per_node;
        per_node.reserve(nodes.size());
        for (const auto& node : nodes)
            per_node.push_back(mlp_evaluate(shape, node.params(), ds));
        const double divergence = pairwise_divergence(nodes);
        emit_rows(result.records, epoch, split, per_node, divergence,
                  net.stats().bytes_sent);
        EvalMetrics agg;
        for (const auto& m : per_node) {
            agg.loss += m.loss;
            agg.accuracy += m.accuracy;
        }
        agg.loss /= static_cast<double>(per_node.size());
        agg.accuracy /= static_cast<double>(per_node.size());
        result.final_divergence = divergence;
        return agg;
    };

    if (cfg.epochs == 0) emit(0, EvalSplit::Validation, data.validation);
    std::vector<std::size_t> remaining(cfg.num_nodes);
    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        // One epoch = one full local pass per node. An epoch runs as many
        // global rounds as the slowest node needs; a node whose pass is
        // complete stops training and sending but keeps draining its buffer.
        // Each round sweeps the three phases across nodes in ascending id
        // order, preserving the per-node cycle local -> send -> drain.
        for (std::size_t i = 0; i < cfg.num_nodes; ++i)
            remaining[i] =
                (shards[i].size() + cfg.batch_size - 1) / cfg.batch_size;
        std::vector<bool> active(cfg.num_nodes);
        while (std::any_of(remaining.begin(), remaining.end(),
                           [](std::size_t r) { return r > 0; })) {
            for (std::size_t i = 0; i < cfg.num_nodes; ++i) {
                active[i] = remaining[i] > 0;
                if (!active[i]) continue;
                const std::size_t count = std::min(cfg.local_batches, remaining[i]);
                nodes[i].local_phase(count);
                remaining[i] -= count;
            }
            for (std::size_t i = 0; i < cfg.num_nodes; ++i)
                if (active[i]) nodes[i].begin_update_phase(net, select_rng);
            for (std::size_t i = 0; i < cfg.num_nodes; ++i)
                nodes[i].drain_buffer(net);
            net.advance_time();
        }
        emit(epoch, EvalSplit::Validation, data.validation);
    }

    const EvalMetrics test = emit(cfg.epochs, EvalSplit::Test, data.test);
    result.test_loss = test.loss;
    result.test_accuracy = test.accuracy;
    result.traffic = net.stats();
    result.train_steps.reserve(cfg.num_nodes);
    for (auto& node : nodes) result.train_steps.push_back(node.trainer().steps());
    return result;
}

const char* to_string(SweepParameter param) {
    switch (param) {
        case SweepParameter::GossipFanout: return "update-rate";
        case SweepParameter::MixPercent: return "mix-rate";
        case SweepParameter::DropDeltas: return "drop-deltas";
    }
    return "?";
}

SweepParameter parse_sweep_parameter(const std::string& name) {
    if (name == "mi" || name == "update-rate") return SweepParameter::GossipFanout;
    if (name == "mix-rate" || name == "rm") return SweepParameter::MixPercent;
    if (name == "drop-deltas" || name == "dr") return SweepParameter::DropDeltas;
    throw UsageError("sweep: unknown parameter '" + name +
                     "' (expected mi, mix-rate, or drop-deltas)");
}

SweepResult sweep(const ExperimentConfig& base, SweepParameter param,
                  const std::vector<double>& values) {
    if (values.empty()) throw UsageError("sweep: no values given");
    SweepResult result;
    result.parameter = param;
    result.runs.reserve(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        ExperimentConfig cfg = base;
        cfg.seed = derive_seed(base.seed, SeedStream::Sweep, k);
        switch (param) {
            case SweepParameter::GossipFanout:
                if (values[k] < 0.0 || values[k] != static_cast<double>(static_cast<std::size_t>(values[k])))
                    throw UsageError("sweep: mi values must be nonnegative integers");
                cfg.gossip_fanout = static_cast<std::size_t>(values[k]);
                break;
            case SweepParameter::MixPercent:
                cfg.split = SplitKind::Biased;
                cfg.mix_percent = static_cast<int>(values[k]);
                break;
            case SweepParameter::DropDeltas:
                cfg.drop_deltas = values[k];
                break;
        }
        result.runs.push_back({values[k], run_experiment(cfg)});
    }
    return result;
}

std::string summary_csv(const SweepResult& result) {
    std::string out = "experiment,value,loss,accuracy\n";
    char buf[128];
    for (const auto& run : result.runs) {
        std::snprintf(buf, sizeof(buf), "%s,%g,%.6f,%.6f\n",
                      to_string(result.parameter), run.value, run.result.test_loss,
                      run.result.test_accuracy);
        out += buf;
    }
    return out;
}

} // namespace gossiplearn
