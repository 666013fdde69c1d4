#pragma once

#include <map>
#include <string>

#include "planarsplit/coloring.hpp"
#include "planarsplit/graph.hpp"

namespace planarsplit {

// JSON text formats. All documents carry "format": 1 and reject anything
// else (kParseError). Object keys for vertices are the decimal ids;
// serialization emits them in ascending numeric order so output is stable.
//
// graph:    {"format": 1, "vertices": [0, 1, ...],
//            "rotation": {"0": [ccw neighbor ids], ...},
//            "marks": {"name": id, ...}}            (marks optional,
//            vertices missing from "rotation" are isolated)
// coloring: {"format": 1, "colors": {"0": 1, ...}}  (partial is fine)
// lists:    {"format": 1, "lists": {"0": [1, 2], ...}}

std::string graph_to_json(const PlanarGraph& g, const std::map<std::string, int>& marks = {});
MarkedGraph graph_from_json(const std::string& text);

std::string coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const std::string& text);

std::string lists_to_json(const ListAssignment& lists);
ListAssignment lists_from_json(const std::string& text);

// Graphviz export; vertices are labeled with their color when one is set.
std::string graph_to_dot(const PlanarGraph& g, const Coloring* coloring = nullptr);

// Whole-file helpers; failures throw kIoError. A path of "-" means stdin /
// stdout.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace planarsplit
