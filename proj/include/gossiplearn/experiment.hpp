#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "gossiplearn/adam.hpp"
#include "gossiplearn/dataset.hpp"
#include "gossiplearn/metrics.hpp"
#include "gossiplearn/netsim.hpp"

namespace gossiplearn {

enum class RunMode { Consensus, Monolithic };
enum class SplitKind { Equal, Biased };

// Synthetic problem: train/validation/test sets drawn from the same class
// clusters with independent derived seeds.
struct SyntheticDataSpec {
    std::size_t num_classes = 10;
    std::size_t train_per_class = 200;
    std::size_t val_per_class = 50;
    std::size_t test_per_class = 50;
    std::size_t input_dim = 20;
    double noise_sigma = 0.30;
    std::size_t signal_dims = 0; // 0 == all dimensions informative
};

// IDX file pairs. Validation and test are carved as the first and second
// half of the canonical test pair, identical for all nodes.
struct IdxDataSpec {
    std::string train_images;
    std::string train_labels;
    std::string test_images;
    std::string test_labels;

    static IdxDataSpec from_dir(const std::string& dir);
};

using DataSpec = std::variant<SyntheticDataSpec, IdxDataSpec>;

struct ExperimentConfig {
    DataSpec dataset = SyntheticDataSpec{};
    RunMode mode = RunMode::Consensus;
    std::size_t num_nodes = 8;
    std::size_t epochs = 50;
    std::size_t local_batches = 5; // batches per local phase (N_i)
    std::size_t gossip_fanout = 1; // weight sends per update phase (M_i)
    double gamma = 0.5;
    std::size_t batch_size = 32;
    std::size_t hidden_dim = 72;
    SplitKind split = SplitKind::Equal;
    int mix_percent = 50; // used when split == Biased
    double drop_weights = 0.0;
    double drop_deltas = 0.0;
    DeliveryMode delivery = DeliveryMode::NextRound;
    std::uint64_t seed = 12345;
    AdamConfig adam;

    void validate() const;
};

// Desk-scale default profile: synthetic 10-class problem, 8 nodes, 50
// epochs. Runs in seconds while exhibiting the qualitative behavior of the
// full-scale experiments.
ExperimentConfig desk_profile();

struct RunResult {
    std::vector<MetricsRecord> records;
    double test_loss = 0.0;       // final aggregate over nodes
    double test_accuracy = 0.0;   // final aggregate over nodes
    double final_divergence = 0.0;
    std::vector<std::uint64_t> train_steps; // per node, total batches trained
    TrafficStats traffic;
};

RunResult run_experiment(const ExperimentConfig& cfg);
RunResult run_monolithic(const ExperimentConfig& cfg);
RunResult run_consensus(const ExperimentConfig& cfg);

enum class SweepParameter { GossipFanout, MixPercent, DropDeltas };

const char* to_string(SweepParameter param);
SweepParameter parse_sweep_parameter(const std::string& name); // mi | mix-rate | drop-deltas

struct SweepRun {
    double value = 0.0;
    RunResult result;
};

struct SweepResult {
    SweepParameter parameter = SweepParameter::GossipFanout;
    std::vector<SweepRun> runs;
};

// One run per value. Each run derives its own seed from the base seed and
// the value's index, so runs are independent but reproducible as a set.
SweepResult sweep(const ExperimentConfig& base, SweepParameter param,
                  const std::vector<double>& values);

// Summary with one row per run: experiment,value,loss,accuracy.
std::string summary_csv(const SweepResult& result);

} // namespace gossiplearn
