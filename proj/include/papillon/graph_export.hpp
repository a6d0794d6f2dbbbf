#pragma once

#include <string>

#include "papillon/topology.hpp"

namespace papillon {

enum class ExportFormat { EdgeList, Dot, Json };

std::string export_format_name(ExportFormat f);

// Renders the graph. kind_filter is a bitmask of EdgeKindBits; an edge is
// included when it carries at least one selected bit. Output is byte-stable
// for a given topology and filter. An edge list with no selected edges is a
// single header comment line.
std::string export_graph(const Topology& topo, ExportFormat format,
                         std::uint8_t kind_filter = 0xFF);

} // namespace papillon
