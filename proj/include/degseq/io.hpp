#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <span>

#include "json.hpp"

#include "degseq/coupling.hpp"
#include "degseq/degree_sequence.hpp"
#include "degseq/graph.hpp"
#include "degseq/oracle.hpp"
#include "degseq/prob_matrix.hpp"

namespace degseq {

// Text formats. Vertices are 0-based. Failures throw IoError.

/// One non-negative integer per line; blank lines and '#' comments skipped.
DegreeSequence read_degree_file(const std::filesystem::path& path);
DegreeSequence parse_degrees(std::istream& in);
void write_degrees(std::ostream& out, const DegreeSequence& d);

/// "j k" per line with j < k. Vertex count is n.
SimpleGraph parse_edge_list(std::istream& in, std::size_t n);
SimpleGraph read_edge_list(const std::filesystem::path& path, std::size_t n);
void write_edge_list(std::ostream& out, const SimpleGraph& g);

/// "i,j,value" header, then the strict upper triangle.
void write_matrix_csv(std::ostream& out, const SymmetricProbMatrix& m);
SymmetricProbMatrix parse_matrix_csv(std::istream& in, std::size_t n);

/// Members as edge-list blocks separated by one blank line.
void write_family(std::ostream& out, const GraphFamily& family);

nlohmann::json trace_to_json(const CouplingTrace& trace);
/// One JSON object per line.
void write_trace_ndjson(std::ostream& out, std::span<const CouplingTrace> traces);

/// Opens for writing, creating parent directories; throws IoError on failure.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace degseq
