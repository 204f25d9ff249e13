#include "gossiplearn/metrics.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gossiplearn/errors.hpp"

namespace gossiplearn {

namespace {

constexpr const char* kHeader = "epoch,node_id,split,loss,accuracy,divergence,bytes_sent";

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

const char* to_string(EvalSplit split) {
    return split == EvalSplit::Validation ? "VALIDATION" : "TEST";
}

std::string csv_string(const std::vector<MetricsRecord>& records) {
    std::string out(kHeader);
    out.push_back('\n');
    for (const auto& r : records) {
        out += std::to_string(r.epoch);
        out.push_back(',');
        out += r.node ? std::to_string(*r.node) : "AGGREGATE";
        out.push_back(',');
        out += to_string(r.split);
        out.push_back(',');
        out += format_double(r.loss);
        out.push_back(',');
        out += format_double(r.accuracy);
        out.push_back(',');
        out += format_double(r.divergence);
        out.push_back(',');
        out += std::to_string(r.bytes_sent);
        out.push_back('\n');
    }
    return out;
}

void write_csv(const std::vector<MetricsRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("write_csv: cannot open " + path + " for writing");
    out << csv_string(records);
    if (!out) throw ParseError("write_csv: write failed for " + path);
}

std::vector<MetricsRecord> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw ParseError("parse_csv: missing or unexpected header");

    std::vector<MetricsRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 7)
            throw ParseError("parse_csv: line " + std::to_string(lineno) +
                             ": expected 7 fields, got " + std::to_string(f.size()));
        MetricsRecord r;
        r.epoch = std::strtoull(f[0].c_str(), nullptr, 10);
        if (f[1] != "AGGREGATE") r.node = std::strtoull(f[1].c_str(), nullptr, 10);
        if (f[2] == "VALIDATION")
            r.split = EvalSplit::Validation;
        else if (f[2] == "TEST")
            r.split = EvalSplit::Test;
        else
            throw ParseError("parse_csv: line " + std::to_string(lineno) +
                             ": unknown split '" + f[2] + "'");
        r.loss = std::strtod(f[3].c_str(), nullptr);
        r.accuracy = std::strtod(f[4].c_str(), nullptr);
        r.divergence = std::strtod(f[5].c_str(), nullptr);
        r.bytes_sent = std::strtoull(f[6].c_str(), nullptr, 10);
        records.push_back(r);
    }
    return records;
}

std::vector<MetricsRecord> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("read_csv: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

} // namespace gossiplearn
