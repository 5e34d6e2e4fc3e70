#pragma once

#include <filesystem>

#include "treek/graph.hpp"

namespace treek {

/// Parses a dataset laid out as a directory of `<name>_A.txt`,
/// `<name>_graph_indicator.txt`, `<name>_node_labels.txt` and
/// `<name>_graph_labels.txt` files (1-based global node ids, one token per
/// line; "i, j" or "i,j" edge lines; LF or CRLF).
///
/// Node labels are rendered as decimal strings; the two raw class labels are
/// mapped to {-1,+1} with the smaller raw value becoming -1. Duplicate
/// directed edge pairs collapse to a single undirected edge.
/// Throws ParseError (with file and line) on malformed input.
Dataset parse_tu_dataset(const std::filesystem::path& directory);

/// Parses one JSON object per line:
///   {"labels": ["C","N",...], "edges": [[0,1],...], "class": -1|1}
/// Throws ParseError with the offending line number.
Dataset parse_jsonl_dataset(const std::filesystem::path& path);

/// Writes the JSON-lines representation accepted by parse_jsonl_dataset.
void write_jsonl_dataset(const std::filesystem::path& path, const Dataset& ds);

}  // namespace treek
