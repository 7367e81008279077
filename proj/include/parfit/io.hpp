#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "parfit/fit.hpp"
#include "parfit/graph.hpp"
#include "parfit/harness.hpp"

namespace parfit {

inline constexpr std::string_view tool_version = "0.1.0";

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

struct EdgeListReport {
    Graph graph;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_dropped = 0;
};

/// Reads a KONECT-style edge list: '%' and '#' lines are comments, blank
/// lines are skipped, each remaining line starts with two non-negative
/// integer ids (further columns such as weights are ignored). Ids are
/// compacted to 0..n-1 in increasing numeric order, so files written by
/// write_edge_list read back unchanged. Self-loops and
/// duplicate edges are dropped and counted. Throws ParseError.
EdgeListReport read_edge_list(std::istream& in);
EdgeListReport read_edge_list_file(const std::string& path);

/// Writes "u v" lines (u < v, lexicographic) after the given comment lines.
void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::string>& comments = {});

struct RunManifest {
    std::string command;
    ModelKind model = ModelKind::er;
    FitConfig config;
    Seed seed = 0;
    int samples = 0;
    std::string grid;
    std::optional<std::string> timestamp;
    std::vector<std::pair<std::string, std::string>> extra;

    /// One "key: value" string per line, without the comment marker.
    std::vector<std::string> lines() const;
};

std::string utc_timestamp();

void write_comment_lines(std::ostream& out, const std::vector<std::string>& lines, char marker = '#');

/// Per-configuration records (one row each, features un-negated).
void write_records_header(std::ostream& out, ModelKind kind);
void write_record_row(std::ostream& out, const EvalRecord& rec);

/// Summary table: pearson/mae/p90 per feature plus iterations.
void write_summary_csv(std::ostream& out, const Aggregate& agg);

/// Table-2/3 shaped sweep report.
void write_sweep_csv(std::ostream& out, const SweepReport& report);

/// Table-4 shaped row: actual / measured / fitted per feature plus iterations.
void write_fit_header(std::ostream& out, ModelKind kind);
void write_fit_row(std::ostream& out, const std::string& name, const EvalRecord& rec);

/// Minimal CSV reader for grid files: header row naming n,k[,beta[,temperature]].
std::vector<ParamVector> read_grid_csv(std::istream& in, ModelKind kind);

}  // namespace parfit
