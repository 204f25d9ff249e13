#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gossiplearn {

enum class EvalSplit { Validation, Test };

const char* to_string(EvalSplit split);

// One evaluation row. node is empty for the aggregate (arithmetic mean
// over nodes). divergence is the epoch-level mean over ordered node pairs
// (i, j), i != j, of |p_i - p_j| / |p_i|; it is repeated on every row of
// the epoch. bytes_sent is the cumulative network payload at evaluation
// time.
struct MetricsRecord {
    std::size_t epoch = 0;
    std::optional<std::size_t> node; // nullopt == AGGREGATE
    EvalSplit split = EvalSplit::Validation;
    double loss = 0.0;
    double accuracy = 0.0;
    double divergence = 0.0;
    std::uint64_t bytes_sent = 0;

    bool operator==(const MetricsRecord&) const = default;
};

// CSV with header epoch,node_id,split,loss,accuracy,divergence,bytes_sent.
// Doubles are printed with enough digits to round-trip exactly.
std::string csv_string(const std::vector<MetricsRecord>& records);
void write_csv(const std::vector<MetricsRecord>& records, const std::string& path);
std::vector<MetricsRecord> read_csv(const std::string& path);
std::vector<MetricsRecord> parse_csv(const std::string& text);

} // namespace gossiplearn
