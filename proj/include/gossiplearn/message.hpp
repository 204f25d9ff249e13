#pragma once

#include <cstddef>

#include "gossiplearn/param_vector.hpp"

namespace gossiplearn {

using NodeId = std::size_t;

// Weights carries a sender's full parameter vector; Deltas carries the
// correction the receiver computed, to be subtracted at the originator.
enum class MessageKind { Weights, Deltas };

const char* to_string(MessageKind kind);

struct Message {
    MessageKind kind = MessageKind::Weights;
    ParamVector payload;
    NodeId source = 0;
};

} // namespace gossiplearn
