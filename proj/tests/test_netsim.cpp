#include <cmath>

#include "doctest.h"
#include "gossiplearn/errors.hpp"
#include "gossiplearn/netsim.hpp"

using namespace gossiplearn;

namespace {

Message weights_msg(NodeId source, std::vector<double> payload = {1.0}) {
    return {MessageKind::Weights, ParamVector(std::move(payload)), source};
}

Message deltas_msg(NodeId source, std::vector<double> payload = {1.0}) {
    return {MessageKind::Deltas, ParamVector(std::move(payload)), source};
}

} // namespace

TEST_CASE("lossless immediate fabric delivers in FIFO order") {
    NetworkSim net({.num_nodes = 3, .delivery = DeliveryMode::Immediate, .seed = 1});

    CHECK(net.send(weights_msg(0, {1.0}), 2) == SendOutcome::Delivered);
    CHECK(net.send(weights_msg(1, {2.0}), 2) == SendOutcome::Delivered);
    CHECK(net.send(deltas_msg(0, {3.0}), 2) == SendOutcome::Delivered);
    CHECK(net.buffered(2) == 3);

    auto a = net.recv_next(2);
    REQUIRE(a);
    CHECK(a->payload[0] == 1.0);
    CHECK(a->source == 0);
    auto b = net.recv_next(2);
    REQUIRE(b);
    CHECK(b->payload[0] == 2.0);
    auto c = net.recv_next(2);
    REQUIRE(c);
    CHECK(c->kind == MessageKind::Deltas);
    CHECK_FALSE(net.recv_next(2).has_value());
}

TEST_CASE("next-round delivery stages until advance_time") {
    NetworkSim net({.num_nodes = 2, .delivery = DeliveryMode::NextRound, .seed = 1});

    CHECK(net.send(weights_msg(0), 1) == SendOutcome::Delivered);
    CHECK(net.buffered(1) == 0);
    CHECK(net.staged() == 1);
    CHECK_FALSE(net.recv_next(1).has_value());

    net.advance_time();
    CHECK(net.staged() == 0);
    CHECK(net.buffered(1) == 1);
    CHECK(net.recv_next(1).has_value());
}

TEST_CASE("drop probability one always drops, zero never") {
    NetworkConfig cfg{.num_nodes = 2, .delivery = DeliveryMode::Immediate, .seed = 3};
    cfg.drop_deltas = 1.0;
    NetworkSim net(cfg);

    for (int i = 0; i < 50; ++i)
        CHECK(net.send(deltas_msg(0), 1) == SendOutcome::Dropped);
    CHECK(net.buffered(1) == 0);
    CHECK_FALSE(net.recv_next(1).has_value());

    // weights traffic is governed by its own probability
    for (int i = 0; i < 50; ++i)
        CHECK(net.send(weights_msg(0), 1) == SendOutcome::Delivered);
    CHECK(net.stats().dropped_deltas == 50);
    CHECK(net.stats().delivered_weights == 50);
}

TEST_CASE("self and unknown destinations") {
    NetworkSim net({.num_nodes = 2, .seed = 1});
    CHECK_THROWS_AS(net.send(weights_msg(0), 7), UsageError);
    CHECK_THROWS_AS(net.recv_next(9), UsageError);
    // no self-channel: a node is never in its own reachable set
    CHECK(net.send(weights_msg(0), 0) == SendOutcome::Unreachable);
    CHECK(net.reachable_from(0) == std::vector<NodeId>{1});
}

TEST_CASE("unreachable destinations leave the buffer untouched") {
    Topology topo = Topology::windowed({
        {{}, {}},      // t0: fully disconnected
        {{1}, {0}},    // t1: connected both ways
    });
    NetworkSim net({.num_nodes = 2, .topology = topo,
                    .delivery = DeliveryMode::Immediate, .seed = 5});

    CHECK(net.send(weights_msg(0), 1) == SendOutcome::Unreachable);
    CHECK(net.buffered(1) == 0);
    CHECK(net.reachable_from(0).empty());

    net.advance_time();
    CHECK(net.send(weights_msg(0), 1) == SendOutcome::Delivered);
    CHECK(net.buffered(1) == 1);

    // schedule clamps to its last window
    net.advance_time();
    net.advance_time();
    CHECK(net.send(weights_msg(0), 1) == SendOutcome::Delivered);
}

TEST_CASE("directed adjacency is honored") {
    Topology topo = Topology::windowed({{{1}, {}}}); // 0 -> 1 only
    NetworkSim net({.num_nodes = 2, .topology = topo,
                    .delivery = DeliveryMode::Immediate, .seed = 5});
    CHECK(net.send(weights_msg(0), 1) == SendOutcome::Delivered);
    CHECK(net.send(weights_msg(1), 0) == SendOutcome::Unreachable);
    CHECK(net.reachable(0, 1));
    CHECK_FALSE(net.reachable(1, 0));
}

TEST_CASE("stats conserve send outcomes") {
    NetworkConfig cfg{.num_nodes = 2, .delivery = DeliveryMode::Immediate, .seed = 11};
    cfg.drop_deltas = 0.5;
    NetworkSim net(cfg);

    CHECK(net.stats().total() == 0);
    for (int i = 0; i < 100; ++i) net.send(deltas_msg(0), 1);
    CHECK(net.stats().delivered_deltas + net.stats().dropped_deltas == 100);
    CHECK(net.stats().total() == 100);
    CHECK(net.stats().bytes_sent ==
          100 * (kMessageOverheadBytes + 8)); // 1-double payloads
}

TEST_CASE("empirical drop rate approaches the configured probability") {
    NetworkConfig cfg{.num_nodes = 2, .delivery = DeliveryMode::Immediate, .seed = 17};
    cfg.drop_weights = 0.25;
    NetworkSim net(cfg);

    const int n = 10000;
    for (int i = 0; i < n; ++i) net.send(weights_msg(0), 1);
    const double fraction =
        static_cast<double>(net.stats().dropped_weights) / static_cast<double>(n);
    CHECK(std::abs(fraction - 0.25) <= 0.02);
}

TEST_CASE("identical config and send sequence give identical outcomes") {
    const auto run = [] {
        NetworkConfig cfg{.num_nodes = 3, .delivery = DeliveryMode::Immediate,
                          .seed = 23};
        cfg.drop_weights = 0.3;
        cfg.drop_deltas = 0.7;
        NetworkSim net(cfg);
        std::vector<SendOutcome> outcomes;
        for (int i = 0; i < 200; ++i) {
            outcomes.push_back(net.send(weights_msg(0), 1 + (i % 2)));
            outcomes.push_back(net.send(deltas_msg(1), 2));
        }
        return outcomes;
    };
    CHECK(run() == run());
}

TEST_CASE("config validation") {
    const NetworkConfig empty{.num_nodes = 0};
    CHECK_THROWS_AS(NetworkSim{empty}, ConfigError);
    NetworkConfig bad{.num_nodes = 2};
    bad.drop_weights = 1.5;
    CHECK_THROWS_AS(NetworkSim{bad}, ConfigError);
    const NetworkConfig mismatched{.num_nodes = 3,
                                   .topology = Topology::windowed({{{1}, {0}}})};
    CHECK_THROWS_AS(NetworkSim{mismatched}, ConfigError);
    CHECK_THROWS_AS(Topology::windowed({}), ConfigError);
}
