#pragma once

#include <string>
#include <string_view>

#include "imlkit/structures.hpp"

namespace imlkit {

// JSON model format:
//   {"states": ["a","b"], "le": [["a","b"]], "le_closed": true,
//    "r": [["a","b"]], "val": {"p": ["b"]}, "val_upclose": false}
// With "le_closed" true (the default) the reflexive-transitive closure of "le"
// is taken; otherwise "le" must already be a preorder. A valuation that is not
// upward closed is rejected unless "val_upclose" asks for its closure.
// A frame file is a model file without "val".
// Throws FormatError, NotPreorder or NotLeClosed.
Model model_from_json(std::string_view text);
Model load_model(const std::string& path);

// Writes every <= pair except the reflexive ones, with "le_closed": true.
std::string model_to_json(const Model& m, int indent = 2);
std::string frame_to_json(const Frame& f, const std::vector<std::string>& names = {}, int indent = 2);

std::string read_file(const std::string& path);  // throws FormatError

}  // namespace imlkit
