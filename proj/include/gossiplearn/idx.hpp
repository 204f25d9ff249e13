#pragma once

#include <string>

#include "gossiplearn/dataset.hpp"

namespace gossiplearn {

// Loads an IDX image/label file pair (the MNIST distribution format).
// Layout is big-endian: images start with magic 0x00000803 then u32 count,
// rows, cols and raw pixel bytes; labels start with magic 0x00000801 then
// u32 count and raw label bytes. Pixels are scaled by 1/255 into [0, 1].
// Malformed headers, truncated payloads and image/label count mismatches
// raise ParseError.
LabeledDataset load_idx(const std::string& images_path, const std::string& labels_path);

} // namespace gossiplearn
