#include "planarsplit/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace planarsplit {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(Error::Code::kParseError, what);
}

json parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) parse_fail("top-level value must be an object");
  if (!j.contains("format") || !j["format"].is_number_integer() || j["format"] != 1) {
    parse_fail("missing or unsupported \"format\" (expected 1)");
  }
  return j;
}

int vertex_key(const std::string& key) {
  size_t pos = 0;
  int v = -1;
  try {
    v = std::stoi(key, &pos);
  } catch (const std::exception&) {
    parse_fail("object key is not a vertex id: \"" + key + "\"");
  }
  if (pos != key.size() || v < 0 || (key.size() > 1 && key[0] == '0')) {
    parse_fail("object key is not a vertex id: \"" + key + "\"");
  }
  return v;
}

int int_value(const json& j, const std::string& where) {
  if (!j.is_number_integer()) parse_fail(where + " must be an integer");
  return j.get<int>();
}

std::vector<int> int_array(const json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where + " must be an array of integers");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(int_value(e, where + " entry"));
  return out;
}

// Keys of an object as vertex ids with their values, ascending by id.
std::vector<std::pair<int, const json*>> by_vertex(const json& obj) {
  std::vector<std::pair<int, const json*>> out;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    out.push_back({vertex_key(it.key()), &it.value()});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string graph_to_json(const PlanarGraph& g, const std::map<std::string, int>& marks) {
  ordered_json j;
  j["format"] = 1;
  j["vertices"] = g.vertex_ids();
  ordered_json rot = ordered_json::object();
  for (int v : g.vertex_ids()) {
    if (g.degree(v) > 0) rot[std::to_string(v)] = g.neighbors(v);
  }
  j["rotation"] = std::move(rot);
  if (!marks.empty()) {
    ordered_json m = ordered_json::object();
    for (const auto& [name, v] : marks) {
      require_param(g.has_vertex(v), "mark \"" + name + "\" names unknown vertex " +
                                         std::to_string(v));
      m[name] = v;
    }
    j["marks"] = std::move(m);
  }
  return j.dump(2) + "\n";
}

MarkedGraph graph_from_json(const std::string& text) {
  json j = parse_document(text);
  if (!j.contains("vertices")) parse_fail("graph document needs \"vertices\"");
  std::vector<int> ids = int_array(j["vertices"], "\"vertices\"");
  std::vector<int> sorted_ids = ids;
  std::sort(sorted_ids.begin(), sorted_ids.end());
  if (std::adjacent_find(sorted_ids.begin(), sorted_ids.end()) != sorted_ids.end()) {
    parse_fail("\"vertices\" lists an id twice");
  }
  for (int v : ids) {
    if (v < 0) parse_fail("vertex ids must be non-negative");
  }

  std::vector<std::pair<int, std::vector<int>>> rotation;
  std::vector<char> has_rot;
  if (j.contains("rotation")) {
    if (!j["rotation"].is_object()) parse_fail("\"rotation\" must be an object");
    for (const auto& [v, val] : by_vertex(j["rotation"])) {
      if (!std::binary_search(sorted_ids.begin(), sorted_ids.end(), v)) {
        parse_fail("\"rotation\" names vertex " + std::to_string(v) +
                   " missing from \"vertices\"");
      }
      rotation.push_back({v, int_array(*val, "rotation of " + std::to_string(v))});
    }
  }
  has_rot.assign(sorted_ids.empty() ? 0 : static_cast<size_t>(sorted_ids.back() + 1), 0);
  for (const auto& [v, nbs] : rotation) has_rot[static_cast<size_t>(v)] = 1;
  for (int v : ids) {
    if (!has_rot[static_cast<size_t>(v)]) rotation.push_back({v, {}});
  }

  MarkedGraph out;
  out.graph = PlanarGraph::from_rotation(rotation);
  if (j.contains("marks")) {
    if (!j["marks"].is_object()) parse_fail("\"marks\" must be an object");
    for (auto it = j["marks"].begin(); it != j["marks"].end(); ++it) {
      int v = int_value(it.value(), "mark \"" + it.key() + "\"");
      if (!out.graph.has_vertex(v)) {
        parse_fail("mark \"" + it.key() + "\" names unknown vertex " + std::to_string(v));
      }
      out.marks[it.key()] = v;
    }
  }
  return out;
}

std::string coloring_to_json(const Coloring& c) {
  ordered_json j;
  j["format"] = 1;
  ordered_json colors = ordered_json::object();
  for (int v : c.colored_ids()) colors[std::to_string(v)] = c.color(v);
  j["colors"] = std::move(colors);
  return j.dump(2) + "\n";
}

Coloring coloring_from_json(const std::string& text) {
  json j = parse_document(text);
  if (!j.contains("colors") || !j["colors"].is_object()) {
    parse_fail("coloring document needs a \"colors\" object");
  }
  Coloring out;
  for (const auto& [v, val] : by_vertex(j["colors"])) {
    int c = int_value(*val, "color of " + std::to_string(v));
    if (c < 0) parse_fail("colors must be non-negative");
    out.set(v, c);
  }
  return out;
}

std::string lists_to_json(const ListAssignment& lists) {
  ordered_json j;
  j["format"] = 1;
  ordered_json l = ordered_json::object();
  for (int v : lists.assigned_ids()) l[std::to_string(v)] = lists.list(v);
  j["lists"] = std::move(l);
  return j.dump(2) + "\n";
}

ListAssignment lists_from_json(const std::string& text) {
  json j = parse_document(text);
  if (!j.contains("lists") || !j["lists"].is_object()) {
    parse_fail("list document needs a \"lists\" object");
  }
  ListAssignment out;
  for (const auto& [v, val] : by_vertex(j["lists"])) {
    std::vector<int> colors = int_array(*val, "list of " + std::to_string(v));
    try {
      out.set(v, std::move(colors));
    } catch (const Error& e) {
      parse_fail(e.message());
    }
  }
  return out;
}

std::string graph_to_dot(const PlanarGraph& g, const Coloring* coloring) {
  std::ostringstream out;
  out << "graph G {\n";
  out << "  node [shape=circle];\n";
  for (int v : g.vertex_ids()) {
    out << "  v" << v << " [label=\"" << v;
    if (coloring != nullptr && coloring->has(v)) out << "\\nc" << coloring->color(v);
    out << "\"];\n";
  }
  for (int v : g.vertex_ids()) {
    for (int u : g.neighbors(v)) {
      if (v < u) out << "  v" << v << " -- v" << u << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string read_text_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Error::Code::kIoError, "cannot open " + path + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(Error::Code::kIoError, "read failed on " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Error::Code::kIoError, "cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(Error::Code::kIoError, "write failed on " + path);
}

}  // namespace planarsplit
