#include "gossiplearn/node.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "gossiplearn/errors.hpp"

namespace gossiplearn {

void NodeConfig::validate() const {
    if (local_batches == 0)
        throw ConfigError("NodeConfig: local_batches must be >= 1");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ConfigError("NodeConfig: gamma must lie in (0, 1), got " +
                          std::to_string(gamma));
}

MlpTrainer::MlpTrainer(MlpShape shape, const LabeledDataset& shard,
                       std::size_t batch_size, std::uint64_t data_seed,
                       AdamConfig adam)
    : shape_(shape),
      batches_(shard, batch_size, data_seed),
      adam_(shape.param_count(), adam) {}

void MlpTrainer::train(ParamVector& params, std::size_t batches) {
    for (std::size_t b = 0; b < batches; ++b)
        train_on_batch(shape_, params, adam_, batches_.next());
}

Node::Node(NodeConfig cfg, ParamVector initial, std::unique_ptr<Trainer> trainer)
    : cfg_(cfg), params_(std::move(initial)), trainer_(std::move(trainer)) {
    cfg_.validate();
    if (!trainer_) throw UsageError("Node: trainer must not be null");
    if (params_.empty()) throw UsageError("Node: empty parameter vector");
}

void Node::local_phase() { local_phase(cfg_.local_batches); }

void Node::local_phase(std::size_t batches) {
    trainer_->train(params_, batches);
    if (!params_.all_finite())
        throw std::runtime_error("node " + std::to_string(cfg_.id) +
                                 ": non-finite parameters after local phase");
}

void Node::begin_update_phase(NetworkSim& net, Rng& select_rng) {
    if (cfg_.gossip_fanout == 0) return;
    const auto peers = net.reachable_from(cfg_.id);
    if (peers.empty()) return;
    for (std::size_t j = 0; j < cfg_.gossip_fanout; ++j) {
        const NodeId dest =
            peers[static_cast<std::size_t>(bounded_uint(select_rng, peers.size()))];
        net.send({MessageKind::Weights, params_, cfg_.id}, dest);
    }
}

void Node::drain_buffer(NetworkSim& net) {
    while (auto msg = net.recv_next(cfg_.id)) {
        if (msg->payload.size() != params_.size()) {
            ++protocol_errors_;
            continue;
        }
        if (msg->kind == MessageKind::Weights) {
            ParamVector delta = weighted_delta(params_, msg->payload, cfg_.gamma);
            net.send({MessageKind::Deltas, delta, cfg_.id}, msg->source);
            add_in_place(params_, delta, +1);
        } else {
            add_in_place(params_, msg->payload, -1);
        }
    }
    if (!params_.all_finite())
        throw std::runtime_error("node " + std::to_string(cfg_.id) +
                                 ": non-finite parameters after buffer drain");
}

void Node::run_round(NetworkSim& net, Rng& select_rng) {
    local_phase();
    begin_update_phase(net, select_rng);
    drain_buffer(net);
}

void Node::set_params(ParamVector params) {
    if (params.size() != params_.size())
        throw DimensionError("Node::set_params: length mismatch");
    params_ = std::move(params);
}

} // namespace gossiplearn
