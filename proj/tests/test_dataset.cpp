#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "gossiplearn/dataset.hpp"
#include "gossiplearn/errors.hpp"

using namespace gossiplearn;

namespace {

// Multiset fingerprint of (label, feature row) pairs, order-independent.
std::multiset<std::pair<int, std::vector<double>>> fingerprint(const LabeledDataset& ds) {
    std::multiset<std::pair<int, std::vector<double>>> out;
    for (std::size_t r = 0; r < ds.size(); ++r)
        out.emplace(ds.labels[r], std::vector<double>(ds.inputs.row(r),
                                                      ds.inputs.row(r) + ds.input_dim()));
    return out;
}

std::multiset<std::pair<int, std::vector<double>>> fingerprint(
    const std::vector<LabeledDataset>& shards) {
    std::multiset<std::pair<int, std::vector<double>>> out;
    for (const auto& s : shards) {
        auto f = fingerprint(s);
        out.insert(f.begin(), f.end());
    }
    return out;
}

std::map<int, std::size_t> label_histogram(const LabeledDataset& ds) {
    std::map<int, std::size_t> h;
    for (int y : ds.labels) ++h[y];
    return h;
}

} // namespace

TEST_CASE("make_synthetic is deterministic and balanced") {
    const auto a = make_synthetic(10, 100, 20, 42);
    const auto b = make_synthetic(10, 100, 20, 42);
    const auto c = make_synthetic(10, 100, 20, 43);
    CHECK(a.inputs == b.inputs);
    CHECK(a.labels == b.labels);
    CHECK(a.inputs != c.inputs);

    CHECK(a.size() == 1000);
    CHECK(a.input_dim() == 20);
    CHECK(a.num_classes == 10);
    const auto hist = label_histogram(a);
    CHECK(hist.size() == 10);
    for (const auto& [label, count] : hist) {
        CHECK(label >= 0);
        CHECK(label < 10);
        CHECK(count == 100);
    }
    for (double v : a.inputs.data()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("split_equal shard sizes and permutation property") {
    const auto ds = make_synthetic(10, 100, 8, 1);

    SUBCASE("divisible") {
        const auto shards = split_equal(ds, 8, 5);
        REQUIRE(shards.size() == 8);
        for (const auto& s : shards) CHECK(s.size() == 125);
        CHECK(fingerprint(shards) == fingerprint(ds));
    }

    SUBCASE("remainder rule") {
        const auto small = subset(ds, 0, 10);
        const auto shards = split_equal(small, 3, 5);
        REQUIRE(shards.size() == 3);
        CHECK(shards[0].size() == 4);
        CHECK(shards[1].size() == 3);
        CHECK(shards[2].size() == 3);
        CHECK(fingerprint(shards) == fingerprint(small));
    }

    SUBCASE("seed determinism") {
        const auto s1 = split_equal(ds, 4, 9);
        const auto s2 = split_equal(ds, 4, 9);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(s1[i].inputs == s2[i].inputs);
            CHECK(s1[i].labels == s2[i].labels);
        }
    }

    SUBCASE("errors") {
        const auto tiny = subset(ds, 0, 3);
        CHECK_THROWS_AS(split_equal(tiny, 4, 0), UsageError);
        CHECK_THROWS_AS(split_equal(ds, 0, 0), UsageError);
    }
}

TEST_CASE("split_biased per-class counts match the export rule") {
    const auto ds = make_synthetic(10, 100, 8, 2);

    for (int mix : {0, 10, 50, 100}) {
        const auto shards = split_biased(ds, {mix, 10, 7});
        REQUIRE(shards.size() == 10);
        CHECK(fingerprint(shards) == fingerprint(ds));

        const std::size_t keep = (static_cast<std::size_t>(100 - mix) * 100 + 99) / 100;
        const std::size_t exported = 100 - keep;
        for (std::size_t i = 0; i < 10; ++i) {
            const auto hist = label_histogram(shards[i]);
            const std::size_t own =
                hist.count(static_cast<int>(i)) ? hist.at(static_cast<int>(i)) : 0;
            CHECK(own == keep);
        }
        // each exporting class spreads its remainder within one sample
        for (std::size_t c = 0; c < 10; ++c) {
            std::size_t total_received = 0;
            for (std::size_t i = 0; i < 10; ++i) {
                if (i == c) continue;
                const auto hist = label_histogram(shards[i]);
                const std::size_t got =
                    hist.count(static_cast<int>(c)) ? hist.at(static_cast<int>(c)) : 0;
                CHECK(got >= exported / 9);
                CHECK(got <= (exported + 8) / 9);
                total_received += got;
            }
            CHECK(total_received == exported);
        }
    }
}

TEST_CASE("split_biased boundaries") {
    const auto ds = make_synthetic(10, 50, 8, 3);

    const auto pure = split_biased(ds, {0, 10, 1});
    for (std::size_t i = 0; i < 10; ++i) {
        const auto hist = label_histogram(pure[i]);
        REQUIRE(hist.size() == 1);
        CHECK(hist.begin()->first == static_cast<int>(i));
    }

    const auto mixed = split_biased(ds, {100, 10, 1});
    for (std::size_t i = 0; i < 10; ++i) {
        const auto hist = label_histogram(mixed[i]);
        CHECK(hist.count(static_cast<int>(i)) == 0);
    }
}

TEST_CASE("split_biased bias fraction is non-increasing in the mix rate") {
    const auto ds = make_synthetic(10, 100, 8, 4);
    double prev = 2.0;
    for (int mix = 0; mix <= 100; mix += 10) {
        const auto shards = split_biased(ds, {mix, 10, 11});
        double own_fraction = 0.0;
        for (std::size_t i = 0; i < 10; ++i) {
            const auto hist = label_histogram(shards[i]);
            const std::size_t own =
                hist.count(static_cast<int>(i)) ? hist.at(static_cast<int>(i)) : 0;
            own_fraction +=
                static_cast<double>(own) / static_cast<double>(shards[i].size());
        }
        own_fraction /= 10.0;
        CHECK(own_fraction <= prev + 1e-12);
        prev = own_fraction;
    }
}

TEST_CASE("split_biased error paths") {
    const auto ds = make_synthetic(10, 20, 8, 5);
    CHECK_THROWS_AS(split_biased(ds, {50, 8, 1}), ConfigError);  // nodes != classes
    CHECK_THROWS_AS(split_biased(ds, {101, 10, 1}), ConfigError);

    auto missing = ds;
    for (auto& y : missing.labels)
        if (y == 3) y = 4; // class 3 now absent
    CHECK_THROWS_AS(split_biased(missing, {50, 10, 1}), UsageError);
}

TEST_CASE("batch iterator covers each pass exactly once") {
    const auto ds = make_synthetic(5, 7, 4, 6); // 35 samples
    BatchIterator it(ds, 8, 99);
    CHECK(it.batches_per_pass() == 5);

    std::multiset<std::vector<double>> seen;
    std::size_t total = 0;
    for (std::size_t b = 0; b < it.batches_per_pass(); ++b) {
        const Batch batch = it.next();
        CHECK(batch.size() == (b + 1 < it.batches_per_pass() ? 8 : 3));
        total += batch.size();
        for (std::size_t r = 0; r < batch.size(); ++r)
            seen.emplace(batch.inputs.row(r), batch.inputs.row(r) + 4);
    }
    CHECK(total == 35);

    std::multiset<std::vector<double>> expected;
    for (std::size_t r = 0; r < ds.size(); ++r)
        expected.emplace(ds.inputs.row(r), ds.inputs.row(r) + 4);
    CHECK(seen == expected);
}

TEST_CASE("batch iterator saturates and reshuffles deterministically") {
    const auto ds = make_synthetic(3, 4, 4, 7); // 12 samples

    BatchIterator big(ds, 20, 1);
    const Batch whole = big.next();
    CHECK(whole.size() == 12);

    BatchIterator a(ds, 5, 2), b(ds, 5, 2);
    for (int i = 0; i < 7; ++i) { // crosses a pass boundary
        const Batch ba = a.next(), bb = b.next();
        CHECK(ba.inputs == bb.inputs);
        CHECK(ba.labels == bb.labels);
    }
}
