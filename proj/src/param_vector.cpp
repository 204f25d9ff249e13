#include "gossiplearn/param_vector.hpp"

#include <cmath>
#include <string>

#include "gossiplearn/errors.hpp"

namespace gossiplearn {

namespace {

void require_same_size(const ParamVector& a, const ParamVector& b, const char* op) {
    if (a.size() != b.size())
        throw DimensionError(std::string(op) + ": length mismatch (" +
                             std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
}

void require_gamma(double gamma, const char* op) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ConfigError(std::string(op) + ": gamma must lie in (0, 1), got " +
                          std::to_string(gamma));
}

} // namespace

bool ParamVector::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

ParamVector weighted_delta(const ParamVector& local, const ParamVector& received,
                           double gamma) {
    require_same_size(local, received, "weighted_delta");
    require_gamma(gamma, "weighted_delta");
    ParamVector delta(local.size());
    for (std::size_t k = 0; k < local.size(); ++k)
        delta[k] = gamma * (received[k] - local[k]);
    return delta;
}

void add_in_place(ParamVector& target, const ParamVector& delta, int sign) {
    require_same_size(target, delta, "add_in_place");
    if (sign != 1 && sign != -1)
        throw ConfigError("add_in_place: sign must be +1 or -1");
    const double s = static_cast<double>(sign);
    for (std::size_t k = 0; k < target.size(); ++k) target[k] += s * delta[k];
}

std::pair<ParamVector, ParamVector> pair_update(const ParamVector& initiator,
                                                const ParamVector& receiver,
                                                double gamma) {
    // The receiver computes the delta from its own frame: gamma * (sent - own).
    ParamVector delta = weighted_delta(receiver, initiator, gamma);
    ParamVector receiver_out = receiver;
    ParamVector initiator_out = initiator;
    add_in_place(receiver_out, delta, +1);
    add_in_place(initiator_out, delta, -1);
    return {std::move(initiator_out), std::move(receiver_out)};
}

double l2_norm(const ParamVector& v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return std::sqrt(sum);
}

double l2_distance(const ParamVector& a, const ParamVector& b) {
    require_same_size(a, b, "l2_distance");
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return std::sqrt(sum);
}

} // namespace gossiplearn
