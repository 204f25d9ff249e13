#include "gossiplearn/netsim.hpp"

#include <algorithm>
#include <string>

#include "gossiplearn/errors.hpp"

namespace gossiplearn {

const char* to_string(MessageKind kind) {
    return kind == MessageKind::Weights ? "WEIGHTS" : "DELTAS";
}

const char* to_string(DeliveryMode mode) {
    return mode == DeliveryMode::Immediate ? "immediate" : "next-round";
}

Topology Topology::windowed(std::vector<Adjacency> windows) {
    if (windows.empty())
        throw ConfigError("Topology::windowed: need at least one window");
    Topology t;
    t.windows_ = std::move(windows);
    return t;
}

const Topology::Adjacency& Topology::window(std::size_t t) const {
    return windows_[std::min(t, windows_.size() - 1)];
}

NetworkSim::NetworkSim(NetworkConfig cfg)
    : cfg_(std::move(cfg)), buffers_(cfg_.num_nodes), rng_(cfg_.seed) {
    if (cfg_.num_nodes == 0)
        throw ConfigError("NetworkSim: num_nodes must be >= 1");
    if (cfg_.drop_weights < 0.0 || cfg_.drop_weights > 1.0 ||
        cfg_.drop_deltas < 0.0 || cfg_.drop_deltas > 1.0)
        throw ConfigError("NetworkSim: drop probabilities must lie in [0, 1]");
    if (!cfg_.topology.is_full()) {
        const auto& adj = cfg_.topology.window(0);
        if (adj.size() != cfg_.num_nodes)
            throw ConfigError("NetworkSim: adjacency size does not match num_nodes");
    }
}

void NetworkSim::require_known(NodeId node, const char* what) const {
    if (node >= cfg_.num_nodes)
        throw UsageError(std::string(what) + ": unknown node id " +
                         std::to_string(node));
}

bool NetworkSim::reachable(NodeId from, NodeId to) const {
    require_known(from, "reachable");
    require_known(to, "reachable");
    if (from == to) return false;
    if (cfg_.topology.is_full()) return true;
    const auto& neighbors = cfg_.topology.window(time_)[from];
    return std::find(neighbors.begin(), neighbors.end(), to) != neighbors.end();
}

std::vector<NodeId> NetworkSim::reachable_from(NodeId node) const {
    require_known(node, "reachable_from");
    std::vector<NodeId> out;
    if (cfg_.topology.is_full()) {
        out.reserve(cfg_.num_nodes - 1);
        for (NodeId j = 0; j < cfg_.num_nodes; ++j)
            if (j != node) out.push_back(j);
        return out;
    }
    out = cfg_.topology.window(time_)[node];
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.erase(std::remove(out.begin(), out.end(), node), out.end());
    return out;
}

SendOutcome NetworkSim::send(const Message& msg, NodeId dest) {
    require_known(msg.source, "send");
    require_known(dest, "send");

    const bool is_weights = msg.kind == MessageKind::Weights;
    if (!reachable(msg.source, dest)) {
        ++(is_weights ? stats_.unreachable_weights : stats_.unreachable_deltas);
        return SendOutcome::Unreachable;
    }

    stats_.bytes_sent += kMessageOverheadBytes + 8ULL * msg.payload.size();
    const double drop_p = is_weights ? cfg_.drop_weights : cfg_.drop_deltas;
    if (uniform_double(rng_) < drop_p) {
        ++(is_weights ? stats_.dropped_weights : stats_.dropped_deltas);
        return SendOutcome::Dropped;
    }

    ++(is_weights ? stats_.delivered_weights : stats_.delivered_deltas);
    if (cfg_.delivery == DeliveryMode::Immediate)
        buffers_[dest].push_back(msg);
    else
        staged_.push_back({msg, dest});
    return SendOutcome::Delivered;
}

std::optional<Message> NetworkSim::recv_next(NodeId node) {
    require_known(node, "recv_next");
    auto& q = buffers_[node];
    if (q.empty()) return std::nullopt;
    Message m = std::move(q.front());
    q.pop_front();
    return m;
}

void NetworkSim::advance_time() {
    // Promotion preserves send order, so FIFO holds across rounds too.
    for (auto& s : staged_) buffers_[s.dest].push_back(std::move(s.msg));
    staged_.clear();
    ++time_;
}

std::size_t NetworkSim::buffered(NodeId node) const {
    require_known(node, "buffered");
    return buffers_[node].size();
}

} // namespace gossiplearn
