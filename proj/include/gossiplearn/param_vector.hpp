#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace gossiplearn {

// Flat vector of model parameters: the unit both the optimizer and the
// gossip layer operate on. Every vector exchanged within one run must have
// the same length, and entries stay finite.
class ParamVector {
public:
    ParamVector() = default;
    explicit ParamVector(std::size_t size, double fill = 0.0) : values_(size, fill) {}
    explicit ParamVector(std::vector<double> values) : values_(std::move(values)) {}

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }

    auto begin() { return values_.begin(); }
    auto end() { return values_.end(); }
    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

    const std::vector<double>& values() const { return values_; }

    bool all_finite() const;

    bool operator==(const ParamVector&) const = default;

private:
    std::vector<double> values_;
};

// delta[k] = gamma * (received[k] - local[k]). gamma must lie in (0, 1).
ParamVector weighted_delta(const ParamVector& local, const ParamVector& received,
                           double gamma);

// target[k] += sign * delta[k]. sign must be +1 or -1.
void add_in_place(ParamVector& target, const ParamVector& delta, int sign = 1);

// One completed pairwise exchange: the initiator sent its weights out, the
// receiver folded them in and replied, the initiator applied the reply.
// Returns {initiator', receiver'}. The pair sum is preserved and the gap
// contracts by |1 - 2*gamma|.
std::pair<ParamVector, ParamVector> pair_update(const ParamVector& initiator,
                                                const ParamVector& receiver,
                                                double gamma);

double l2_norm(const ParamVector& v);
double l2_distance(const ParamVector& a, const ParamVector& b);

} // namespace gossiplearn
