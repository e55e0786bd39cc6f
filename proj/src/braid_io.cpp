#include "braidforce/braid_io.hpp"

#include <fstream>
#include <sstream>

namespace braidforce {

namespace {

Rational anchor_from_json(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw braid_error(errc::parse_error, "anchor must be an integer or a \"p/q\" string, got " + v.dump());
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw braid_error(errc::parse_error, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

} // namespace

Braid braid_from_json(const json& j) {
  const json& strands = field(j, "strands");
  if (!strands.is_array() || strands.empty())
    throw braid_error(errc::parse_error, "\"strands\" must be a non-empty array");
  const int n = static_cast<int>(strands.size());
  const int cols = static_cast<int>(strands[0].size());
  if (j.contains("n") && j.at("n").get<int>() != n)
    throw braid_error(errc::parse_error, "\"n\" does not match the strand count");
  if (j.contains("d") && j.at("d").get<int>() + 1 != cols)
    throw braid_error(errc::parse_error, "\"d\" does not match the strand length");
  MatQ m(n, cols);
  for (int a = 0; a < n; ++a) {
    if (!strands[a].is_array() || static_cast<int>(strands[a].size()) != cols)
      throw braid_error(errc::parse_error, "strand " + std::to_string(a) + " has the wrong length");
    for (int i = 0; i < cols; ++i) m(a, i) = anchor_from_json(strands[a][i]);
  }
  Permutation tau = Permutation::identity(n);
  if (j.contains("tau")) {
    try {
      tau = Permutation(j.at("tau").get<std::vector<int>>());
    } catch (const json::exception& e) {
      throw braid_error(errc::parse_error, std::string("bad \"tau\": ") + e.what());
    }
  }
  try {
    return Braid(std::move(m), std::move(tau));
  } catch (const braid_error& e) {
    throw braid_error(errc::parse_error, e.what());
  }
}

json braid_to_json(const Braid& b) {
  json strands = json::array();
  for (int a = 0; a < b.n(); ++a) {
    json s = json::array();
    for (int i = 0; i <= b.d(); ++i) s.push_back(format_rational(b(a, i)));
    strands.push_back(std::move(s));
  }
  return json{{"n", b.n()}, {"d", b.d()}, {"tau", b.tau().images()}, {"strands", std::move(strands)}};
}

RelativeBraid relative_from_json(const json& j) {
  return {braid_from_json(field(j, "free")), braid_from_json(field(j, "skeleton"))};
}

json relative_to_json(const RelativeBraid& r) {
  return json{{"free", braid_to_json(r.free)}, {"skeleton", braid_to_json(r.skeleton)}};
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw braid_error(errc::parse_error,
                      "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw braid_error(errc::parse_error, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw braid_error(errc::invalid_argument, "cannot write " + path);
  out << text;
}

} // namespace braidforce
