#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "gossiplearn/message.hpp"
#include "gossiplearn/rand.hpp"

namespace gossiplearn {

// Staged messages become visible only after the next advance_time();
// Immediate mode enqueues on send.
enum class DeliveryMode { Immediate, NextRound };

enum class SendOutcome { Delivered, Dropped, Unreachable };

const char* to_string(DeliveryMode mode);

// Directed reachability schedule. The default is full connectivity at all
// times. A windowed topology switches adjacency on every advance_time()
// and holds the last window once the schedule runs out. Adjacency need not
// be symmetric.
class Topology {
public:
    using Adjacency = std::vector<std::vector<NodeId>>; // out-neighbors per node

    Topology() = default; // fully connected
    static Topology full() { return {}; }
    static Topology windowed(std::vector<Adjacency> windows);

    bool is_full() const { return windows_.empty(); }
    const Adjacency& window(std::size_t t) const;

private:
    std::vector<Adjacency> windows_;
};

struct NetworkConfig {
    std::size_t num_nodes = 0;
    Topology topology;
    double drop_weights = 0.0; // loss probability for Weights traffic
    double drop_deltas = 0.0;  // loss probability for Deltas replies
    DeliveryMode delivery = DeliveryMode::NextRound;
    std::uint64_t seed = 0;
};

struct TrafficStats {
    std::uint64_t delivered_weights = 0;
    std::uint64_t dropped_weights = 0;
    std::uint64_t unreachable_weights = 0;
    std::uint64_t delivered_deltas = 0;
    std::uint64_t dropped_deltas = 0;
    std::uint64_t unreachable_deltas = 0;
    // Payload bytes handed to the fabric (delivered or dropped in transit);
    // reporting only.
    std::uint64_t bytes_sent = 0;

    std::uint64_t delivered() const { return delivered_weights + delivered_deltas; }
    std::uint64_t dropped() const { return dropped_weights + dropped_deltas; }
    std::uint64_t unreachable() const {
        return unreachable_weights + unreachable_deltas;
    }
    std::uint64_t total() const { return delivered() + dropped() + unreachable(); }
};

// Deterministic in-memory message fabric: one FIFO inbound buffer per node,
// a reachability schedule, independent drop probabilities per message kind,
// and a single seeded RNG for drop decisions.
class NetworkSim {
public:
    explicit NetworkSim(NetworkConfig cfg);

    // Resolves one send attempt. Unreachable destinations receive nothing;
    // otherwise a seeded draw against the kind's drop probability decides
    // whether the message is enqueued (per the delivery mode) or lost.
    SendOutcome send(const Message& msg, NodeId dest);

    // Pops the head of the node's FIFO buffer, or nullopt when empty.
    std::optional<Message> recv_next(NodeId node);

    // Promotes staged messages into buffers and moves the topology to its
    // next window.
    void advance_time();

    std::size_t now() const { return time_; }
    std::size_t num_nodes() const { return cfg_.num_nodes; }

    // C_it of `node`: every destination reachable right now, ascending,
    // never including the node itself.
    std::vector<NodeId> reachable_from(NodeId node) const;
    bool reachable(NodeId from, NodeId to) const;

    const TrafficStats& stats() const { return stats_; }
    std::size_t buffered(NodeId node) const;
    std::size_t staged() const { return staged_.size(); }

private:
    struct Staged {
        Message msg;
        NodeId dest;
    };

    void require_known(NodeId node, const char* what) const;

    NetworkConfig cfg_;
    std::vector<std::deque<Message>> buffers_;
    std::vector<Staged> staged_;
    TrafficStats stats_;
    Rng rng_;
    std::size_t time_ = 0;
};

// Fixed per-message framing overhead assumed for byte accounting.
inline constexpr std::uint64_t kMessageOverheadBytes = 16;

} // namespace gossiplearn
