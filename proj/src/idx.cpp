#include "gossiplearn/idx.hpp"

#include <cstdint>
#include <fstream>
#include <vector>

#include "gossiplearn/errors.hpp"

namespace gossiplearn {

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803;
constexpr std::uint32_t kLabelsMagic = 0x00000801;

std::vector<unsigned char> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("idx: cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t read_u32_be(const std::vector<unsigned char>& buf, std::size_t offset,
                          const std::string& path) {
    if (offset + 4 > buf.size()) throw ParseError("idx: truncated header in " + path);
    return (static_cast<std::uint32_t>(buf[offset]) << 24) |
           (static_cast<std::uint32_t>(buf[offset + 1]) << 16) |
           (static_cast<std::uint32_t>(buf[offset + 2]) << 8) |
           static_cast<std::uint32_t>(buf[offset + 3]);
}

} // namespace

LabeledDataset load_idx(const std::string& images_path, const std::string& labels_path) {
    const auto images = read_file(images_path);
    const std::uint32_t img_magic = read_u32_be(images, 0, images_path);
    if (img_magic != kImagesMagic)
        throw ParseError("idx: bad images magic in " + images_path + " (got " +
                         std::to_string(img_magic) + ")");
    const std::uint32_t img_count = read_u32_be(images, 4, images_path);
    const std::uint32_t rows = read_u32_be(images, 8, images_path);
    const std::uint32_t cols = read_u32_be(images, 12, images_path);
    const std::size_t pixels = static_cast<std::size_t>(rows) * cols;
    if (images.size() != 16 + static_cast<std::size_t>(img_count) * pixels)
        throw ParseError("idx: truncated images payload in " + images_path);

    const auto labels = read_file(labels_path);
    const std::uint32_t lbl_magic = read_u32_be(labels, 0, labels_path);
    if (lbl_magic != kLabelsMagic)
        throw ParseError("idx: bad labels magic in " + labels_path + " (got " +
                         std::to_string(lbl_magic) + ")");
    const std::uint32_t lbl_count = read_u32_be(labels, 4, labels_path);
    if (labels.size() != 8 + static_cast<std::size_t>(lbl_count))
        throw ParseError("idx: truncated labels payload in " + labels_path);

    if (img_count != lbl_count)
        throw ParseError("idx: image/label count mismatch (" +
                         std::to_string(img_count) + " vs " +
                         std::to_string(lbl_count) + ")");

    LabeledDataset ds;
    ds.inputs = Matrix(img_count, pixels);
    ds.labels.reserve(lbl_count);
    for (std::size_t r = 0; r < img_count; ++r) {
        double* row = ds.inputs.row(r);
        const unsigned char* src = images.data() + 16 + r * pixels;
        for (std::size_t p = 0; p < pixels; ++p)
            row[p] = static_cast<double>(src[p]) / 255.0;
    }
    int max_label = 0;
    for (std::size_t r = 0; r < lbl_count; ++r) {
        const int y = static_cast<int>(labels[8 + r]);
        ds.labels.push_back(y);
        max_label = std::max(max_label, y);
    }
    ds.num_classes = static_cast<std::size_t>(max_label) + 1;
    ds.provenance = images_path;
    return ds;
}

} // namespace gossiplearn
