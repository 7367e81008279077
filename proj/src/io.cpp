#include "parfit/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace parfit {

namespace {

constexpr const char* feature_names[] = {"num_vertices", "avg_degree", "heterogeneity", "clustering"};
constexpr const char* param_names[] = {"n", "k", "beta", "T"};

// Features are stored negated for heterogeneity and clustering.
double natural_feature(const FeatureVector& f, Eigen::Index i) { return i < 2 ? f.values[i] : -f.values[i]; }

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

std::string csv_safe(std::string s) {
    for (auto& c : s) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return s;
}

std::ostream& num(std::ostream& out) { return out << std::setprecision(10); }

}  // namespace

EdgeListReport read_edge_list(std::istream& in) {
    EdgeListReport report;
    std::vector<std::array<std::uint64_t, 2>> raw_edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty() || body.front() == '%' || body.front() == '#') continue;
        const auto fields = split_ws(body);
        if (fields.size() < 2) throw ParseError(line_no, "expected two vertex ids, got '" + std::string(body) + "'");
        std::array<std::uint64_t, 2> raw{};
        for (std::size_t f = 0; f < 2; ++f) {
            const auto tok = fields[f];
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), raw[f]);
            if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
                throw ParseError(line_no, "invalid vertex id '" + std::string(tok) + "'");
            }
        }
        raw_edges.push_back(raw);
    }

    std::vector<std::uint64_t> ids;
    ids.reserve(2 * raw_edges.size());
    for (const auto& e : raw_edges) ids.insert(ids.end(), e.begin(), e.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto id_of = [&](std::uint64_t raw) {
        return static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), raw) - ids.begin());
    };

    std::vector<Edge> edges;
    edges.reserve(raw_edges.size());
    for (const auto& [a, b] : raw_edges) {
        const Vertex u = id_of(a), v = id_of(b);
        if (u == v) {
            ++report.self_loops_dropped;
            continue;
        }
        edges.push_back({std::min(u, v), std::max(u, v)});
    }
    std::sort(edges.begin(), edges.end());
    const auto last = std::unique(edges.begin(), edges.end());
    report.duplicates_dropped = static_cast<std::size_t>(edges.end() - last);
    edges.erase(last, edges.end());
    report.graph = Graph::from_edges(ids.size(), edges);
    return report;
}

EdgeListReport read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::string>& comments) {
    write_comment_lines(out, comments);
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::vector<std::string> RunManifest::lines() const {
    std::vector<std::string> out;
    auto add = [&](const std::string& k, const auto& v) {
        std::ostringstream os;
        num(os) << k << ": " << v;
        out.push_back(os.str());
    };
    add("tool", std::string("parfit ") + std::string(tool_version));
    add("command", command);
    add("model", to_string(model));
    add("seed", seed);
    if (samples > 0) add("samples", samples);
    if (!grid.empty()) add("grid", grid);
    add("alpha", config.alpha);
    add("threshold", config.convergence_threshold);
    add("window", config.convergence_window);
    add("sign_cap", config.sign_change_cap);
    add("max_avg_iters", config.max_avg_iterations);
    add("heterogeneity_floor", config.heterogeneity_floor);
    add("initial_beta", config.initial_beta);
    add("initial_temperature", config.initial_temperature);
    for (const auto& [k, v] : extra) add(k, v);
    if (timestamp) add("timestamp", *timestamp);
    return out;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

void write_comment_lines(std::ostream& out, const std::vector<std::string>& lines, char marker) {
    for (const auto& l : lines) out << marker << ' ' << l << '\n';
}

void write_records_header(std::ostream& out, ModelKind kind) {
    const auto p = parameter_count(kind);
    out << "index,model";
    for (Eigen::Index i = 0; i < p; ++i) out << ",true_" << param_names[i];
    for (Eigen::Index i = 0; i < p; ++i) out << ",target_" << feature_names[i];
    for (Eigen::Index i = 0; i < p; ++i) out << ",fitted_" << param_names[i];
    for (Eigen::Index i = 0; i < p; ++i) out << ",achieved_" << feature_names[i];
    for (Eigen::Index i = 0; i < p; ++i) out << ",abs_error_" << feature_names[i];
    out << ",iterations,averaging_start,terminated_by,error\n";
}

void write_record_row(std::ostream& out, const EvalRecord& rec) {
    const auto p = parameter_count(rec.kind);
    num(out) << rec.index << ',' << to_string(rec.kind);
    for (Eigen::Index i = 0; i < p; ++i) {
        out << ',';
        if (rec.truth) out << rec.truth->values[i];
    }
    const bool ok = rec.ok();
    for (Eigen::Index i = 0; i < p; ++i) {
        out << ',';
        if (ok) out << natural_feature(rec.target, i);
    }
    for (Eigen::Index i = 0; i < p; ++i) {
        out << ',';
        if (ok) out << rec.fitted.values[i];
    }
    for (Eigen::Index i = 0; i < p; ++i) {
        out << ',';
        if (ok) out << natural_feature(rec.achieved, i);
    }
    for (Eigen::Index i = 0; i < p; ++i) {
        out << ',';
        if (ok) out << rec.abs_error[i];
    }
    out << ',' << rec.iterations << ',' << rec.averaging_start << ','
        << (ok ? (rec.terminated_by == Termination::converged ? "converged" : "max_iterations") : "failed") << ','
        << (rec.error ? csv_safe(*rec.error) : "") << '\n';
}

void write_summary_csv(std::ostream& out, const Aggregate& agg) {
    out << "model,feature,pearson,mae,p90_abs_error,mean_iterations,records,failed\n";
    for (std::size_t f = 0; f < agg.features.size(); ++f) {
        const auto& s = agg.features[f];
        num(out) << to_string(agg.kind) << ',' << feature_names[f] << ',' << s.pearson << ',' << s.mae << ','
                 << s.p90_abs_error << ',' << agg.mean_iterations << ',' << agg.records << ',' << agg.failed << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
    const auto p = parameter_count(report.kind);
    out << to_string(report.variable);
    for (Eigen::Index i = 0; i < p; ++i) out << ",mae_" << feature_names[i];
    out << ",mean_iterations,failed\n";
    for (const auto& row : report.rows) {
        num(out) << row.value;
        for (Eigen::Index i = 0; i < p; ++i) out << ',' << row.mae[i];
        out << ',' << row.mean_iterations << ',' << row.failed << '\n';
    }
}

void write_fit_header(std::ostream& out, ModelKind kind) {
    const auto p = parameter_count(kind);
    out << "graph";
    for (Eigen::Index i = 0; i < p; ++i) {
        out << ",actual_" << feature_names[i] << ",measured_" << feature_names[i] << ",fitted_" << param_names[i];
    }
    out << ",iterations\n";
}

void write_fit_row(std::ostream& out, const std::string& name, const EvalRecord& rec) {
    const auto p = parameter_count(rec.kind);
    num(out) << csv_safe(name);
    for (Eigen::Index i = 0; i < p; ++i) {
        out << ',' << natural_feature(rec.target, i) << ',' << natural_feature(rec.achieved, i) << ','
            << rec.fitted.values[i];
    }
    out << ',' << rec.iterations << '\n';
}

std::vector<ParamVector> read_grid_csv(std::istream& in, ModelKind kind) {
    const auto p = parameter_count(kind);
    std::string line;
    std::size_t line_no = 0;
    std::vector<int> column;   // column index -> parameter index, -1 to ignore
    std::vector<ParamVector> grid;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss{std::string(body)};
        for (std::string cell; std::getline(ss, cell, ',');) cells.emplace_back(trim(cell));
        if (column.empty()) {
            std::vector<bool> seen(static_cast<std::size_t>(p), false);
            for (const auto& c : cells) {
                int idx = -1;
                for (int i = 0; i < p; ++i) {
                    if (c == param_names[i] || (i == 3 && c == "temperature")) idx = i;
                }
                if (idx >= 0) seen[static_cast<std::size_t>(idx)] = true;
                column.push_back(idx);
            }
            for (int i = 0; i < p; ++i) {
                if (!seen[static_cast<std::size_t>(i)]) {
                    throw ParseError(line_no, std::string("grid header lacks column '") + param_names[i] + "'");
                }
            }
            continue;
        }
        if (cells.size() != column.size()) throw ParseError(line_no, "wrong number of columns");
        Eigen::VectorXd v(p);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (column[c] < 0) continue;
            try {
                std::size_t used = 0;
                v[column[c]] = std::stod(cells[c], &used);
                if (used != cells[c].size()) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw ParseError(line_no, "invalid number '" + cells[c] + "'");
            }
        }
        grid.emplace_back(kind, std::move(v));
    }
    if (column.empty()) throw ParseError(line_no, "grid file has no header");
    return grid;
}

}  // namespace parfit
