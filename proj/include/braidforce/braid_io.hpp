#pragma once

#include "braid.hpp"

#include <json.hpp>

#include <string>

namespace braidforce {

using json = nlohmann::json;

struct RelativeBraid {
  Braid free;
  Braid skeleton;
};

Braid braid_from_json(const json& j);
json braid_to_json(const Braid& b);

RelativeBraid relative_from_json(const json& j);
json relative_to_json(const RelativeBraid& r);

// parse errors carry line and column
json parse_json_text(const std::string& text);
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace braidforce
