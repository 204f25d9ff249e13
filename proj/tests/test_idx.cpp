#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gossiplearn/errors.hpp"
#include "gossiplearn/idx.hpp"

using namespace gossiplearn;

namespace {

void put_u32_be(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back(static_cast<unsigned char>(v >> 24));
    out.push_back(static_cast<unsigned char>(v >> 16));
    out.push_back(static_cast<unsigned char>(v >> 8));
    out.push_back(static_cast<unsigned char>(v));
}

std::string write_tmp(const std::string& name, const std::vector<unsigned char>& bytes) {
    const std::string path = std::string("idx_fixture_") + name;
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    return path;
}

std::string images_fixture(std::uint32_t magic, std::uint32_t count,
                           const std::vector<unsigned char>& pixels,
                           const std::string& name) {
    std::vector<unsigned char> bytes;
    put_u32_be(bytes, magic);
    put_u32_be(bytes, count);
    put_u32_be(bytes, 2); // rows
    put_u32_be(bytes, 2); // cols
    bytes.insert(bytes.end(), pixels.begin(), pixels.end());
    return write_tmp(name, bytes);
}

std::string labels_fixture(std::uint32_t magic, std::uint32_t count,
                           const std::vector<unsigned char>& labels,
                           const std::string& name) {
    std::vector<unsigned char> bytes;
    put_u32_be(bytes, magic);
    put_u32_be(bytes, count);
    bytes.insert(bytes.end(), labels.begin(), labels.end());
    return write_tmp(name, bytes);
}

} // namespace

TEST_CASE("load_idx parses a hand-built two-image pair exactly") {
    const auto images = images_fixture(0x803, 2, {0, 128, 255, 64, 10, 20, 30, 40}, "ok_img");
    const auto labels = labels_fixture(0x801, 2, {3, 9}, "ok_lbl");

    const LabeledDataset ds = load_idx(images, labels);
    CHECK(ds.size() == 2);
    CHECK(ds.input_dim() == 4);
    CHECK(ds.labels == std::vector<int>{3, 9});
    CHECK(ds.num_classes == 10);

    CHECK(ds.inputs(0, 0) == 0.0);
    CHECK(ds.inputs(0, 1) == doctest::Approx(128.0 / 255.0).epsilon(1e-15));
    CHECK(ds.inputs(0, 2) == 1.0);
    CHECK(ds.inputs(0, 3) == doctest::Approx(64.0 / 255.0).epsilon(1e-15));
    CHECK(ds.inputs(1, 0) == doctest::Approx(10.0 / 255.0).epsilon(1e-15));

    std::remove(images.c_str());
    std::remove(labels.c_str());
}

TEST_CASE("load_idx rejects malformed files with distinct errors") {
    const auto good_images =
        images_fixture(0x803, 1, {1, 2, 3, 4}, "g_img");
    const auto good_labels = labels_fixture(0x801, 1, {7}, "g_lbl");

    SUBCASE("bad images magic") {
        const auto bad = images_fixture(0x804, 1, {1, 2, 3, 4}, "badmagic_img");
        CHECK_THROWS_WITH_AS(load_idx(bad, good_labels),
                             doctest::Contains("bad images magic"), ParseError);
        std::remove(bad.c_str());
    }

    SUBCASE("bad labels magic") {
        const auto bad = labels_fixture(0x803, 1, {7}, "badmagic_lbl");
        CHECK_THROWS_WITH_AS(load_idx(good_images, bad),
                             doctest::Contains("bad labels magic"), ParseError);
        std::remove(bad.c_str());
    }

    SUBCASE("truncated image payload") {
        const auto bad = images_fixture(0x803, 2, {1, 2, 3, 4, 5}, "trunc_img");
        CHECK_THROWS_WITH_AS(load_idx(bad, good_labels),
                             doctest::Contains("truncated images"), ParseError);
        std::remove(bad.c_str());
    }

    SUBCASE("truncated header") {
        const auto bad = write_tmp("shorthdr_img", {0x00, 0x00, 0x08});
        CHECK_THROWS_WITH_AS(load_idx(bad, good_labels),
                             doctest::Contains("truncated header"), ParseError);
        std::remove(bad.c_str());
    }

    SUBCASE("count mismatch") {
        const auto two = labels_fixture(0x801, 2, {1, 2}, "two_lbl");
        CHECK_THROWS_WITH_AS(load_idx(good_images, two),
                             doctest::Contains("count mismatch"), ParseError);
        std::remove(two.c_str());
    }

    SUBCASE("missing file") {
        CHECK_THROWS_WITH_AS(load_idx("no_such_file_here", good_labels),
                             doctest::Contains("cannot open"), ParseError);
    }

    std::remove(good_images.c_str());
    std::remove(good_labels.c_str());
}
