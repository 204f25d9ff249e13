#pragma once

#include <cstdint>
#include <memory>

#include "gossiplearn/adam.hpp"
#include "gossiplearn/dataset.hpp"
#include "gossiplearn/netsim.hpp"

namespace gossiplearn {

struct NodeConfig {
    NodeId id = 0;
    std::size_t local_batches = 5; // training batches per local phase, >= 1
    std::size_t gossip_fanout = 1; // weight copies sent per update phase, >= 0
    double gamma = 0.5;            // pairwise averaging weight, in (0, 1)

    void validate() const;
};

// Local-learning strategy plugged into a Node. The gossip protocol is
// model-agnostic: production nodes train the MLP, tests and pure-averaging
// runs use a no-op trainer.
class Trainer {
public:
    virtual ~Trainer() = default;
    virtual void train(ParamVector& params, std::size_t batches) = 0;
    virtual std::uint64_t steps() const = 0;
};

class NullTrainer final : public Trainer {
public:
    void train(ParamVector&, std::size_t batches) override { steps_ += batches; }
    std::uint64_t steps() const override { return steps_; }

private:
    std::uint64_t steps_ = 0;
};

// Trains the MLP on a local shard with Adam, drawing batches from a
// shuffled-pass iterator. The shard must outlive the trainer.
class MlpTrainer final : public Trainer {
public:
    MlpTrainer(MlpShape shape, const LabeledDataset& shard, std::size_t batch_size,
               std::uint64_t data_seed, AdamConfig adam = {});

    void train(ParamVector& params, std::size_t batches) override;
    std::uint64_t steps() const override { return adam_.step_count(); }
    std::size_t batches_per_pass() const { return batches_.batches_per_pass(); }

private:
    MlpShape shape_;
    BatchIterator batches_;
    AdamOptimizer adam_;
};

// One gossip participant. A round alternates two phases: the local
// learning phase trains on local batches; the asynchronous update phase
// sends the current weights to random reachable peers and then drains the
// inbound buffer, folding in received weights (and replying with deltas)
// and applying received deltas.
class Node {
public:
    Node(NodeConfig cfg, ParamVector initial, std::unique_ptr<Trainer> trainer);

    // Trains config().local_batches batches (or an explicit count; the
    // experiment loop uses that for the short tail of an epoch).
    void local_phase();
    void local_phase(std::size_t batches);

    // Sends gossip_fanout copies of the current weights, each to a peer
    // drawn uniformly from the currently reachable set. No peers, no sends.
    void begin_update_phase(NetworkSim& net, Rng& select_rng);

    // Processes the inbound buffer until empty, in FIFO order:
    //   Weights(p_j) from c: d = gamma*(p_j - p), reply Deltas(d) to c,
    //                        then p += d.
    //   Deltas(d):           p -= d.
    // Payload-length mismatches discard the message and count it.
    void drain_buffer(NetworkSim& net);

    // local_phase, begin_update_phase, drain_buffer, in that order.
    void run_round(NetworkSim& net, Rng& select_rng);

    const NodeConfig& config() const { return cfg_; }
    const ParamVector& params() const { return params_; }
    void set_params(ParamVector params);
    Trainer& trainer() { return *trainer_; }
    std::uint64_t protocol_errors() const { return protocol_errors_; }

private:
    NodeConfig cfg_;
    ParamVector params_;
    std::unique_ptr<Trainer> trainer_;
    std::uint64_t protocol_errors_ = 0;
};

} // namespace gossiplearn
