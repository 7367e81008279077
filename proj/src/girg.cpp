#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "parfit/generators.hpp"

namespace parfit {

double pareto_weight(double u, double beta) { return std::pow(1.0 - u, -1.0 / (beta - 1.0)); }

WeightSequence girg_weights(std::size_t n, double beta, Seed seed) {
    if (n < 2 || !(beta > 2.0)) throw InvalidParameter("GIRG weights need n >= 2 and beta > 2");
    Rng rng(seed);
    std::vector<double> w(n);
    for (auto& x : w) x = pareto_weight(rng.uniform(), beta);
    return WeightSequence::from(std::move(w));
}

std::vector<double> girg_positions(std::size_t n, Seed seed) {
    Rng rng(seed);
    std::vector<double> x(n);
    for (auto& p : x) p = rng.uniform();
    return x;
}

double torus_distance(double x, double y) {
    const double d = std::abs(x - y);
    return std::min(d, 1.0 - d);
}

double GirgScale::c() const { return std::pow(distance_scale, 1.0 / temperature); }

double girg_edge_probability(double w_u, double w_v, double total_weight, double distance,
                             const GirgScale& scale) {
    if (distance <= 0.0) return 1.0;
    const double x = scale.distance_scale * w_u * w_v / (distance * total_weight);
    return x >= 1.0 ? 1.0 : std::pow(x, 1.0 / scale.temperature);
}

// With d* = s*q the probability is 1 for d < d* and (d*/d)^e beyond (e = 1/T).
// Integrating against density 2 on [0, 1/2] gives (2e d* - (2 d*)^e) / (e - 1).
double girg_pair_expectation(double q, const GirgScale& scale) {
    const double threshold = scale.distance_scale * q;
    if (threshold >= 0.5) return 1.0;
    const double e = 1.0 / scale.temperature;
    return (2.0 * e * threshold - std::pow(2.0 * threshold, e)) / (e - 1.0);
}

double girg_expected_average_degree(const WeightSequence& ws, const GirgScale& scale) {
    const std::size_t n = ws.weights.size();
    if (n == 0) return 0.0;
    const double W = ws.total;
    const double s = scale.distance_scale;
    const double e = 1.0 / scale.temperature;

    std::vector<double> w = ws.weights;
    std::sort(w.begin(), w.end());
    // prefix[j] = sum of the j smallest weights; log_pow[j] = log sum w^e over the same.
    std::vector<double> prefix(n + 1, 0.0);
    std::vector<double> log_pow(n + 1, -std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < n; ++j) {
        prefix[j + 1] = prefix[j] + w[j];
        const double term = e * std::log(w[j]);
        const double hi = std::max(log_pow[j], term);
        log_pow[j + 1] = hi + std::log(std::exp(log_pow[j] - hi) + std::exp(term - hi));
    }

    double ordered_sum = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
        // Partner v is below the saturation threshold iff w_v < limit.
        const double limit = W / (2.0 * s * w[u]);
        const auto j = static_cast<std::size_t>(std::lower_bound(w.begin(), w.end(), limit) - w.begin());
        const double linear = s * w[u] / W * prefix[j];
        const double power = j == 0 ? 0.0 : std::exp(log_pow[j] - e * std::log(limit));
        ordered_sum += static_cast<double>(n - j) + (2.0 * e * linear - power) / (e - 1.0);
        ordered_sum -= girg_pair_expectation(w[u] * w[u] / W, scale);
    }
    return ordered_sum / static_cast<double>(n);
}

GirgScale calibrate_girg(const WeightSequence& ws, double temperature, double k) {
    const std::size_t n = ws.weights.size();
    if (n < 2 || !(temperature > 0.0 && temperature < 1.0) || !(k > 0.0)) {
        throw InvalidParameter("GIRG calibration needs n >= 2, T in (0,1), k > 0");
    }
    if (k > static_cast<double>(n - 1)) {
        throw CalibrationFailure("target degree " + std::to_string(k) + " exceeds n-1 = " + std::to_string(n - 1));
    }
    auto degree_at = [&](double log_s) {
        return girg_expected_average_degree(ws, GirgScale{std::exp(log_s), temperature});
    };

    // Every pair saturates once s*w_min^2/W >= 1/2.
    const double w_min = *std::min_element(ws.weights.begin(), ws.weights.end());
    const double log_s_saturated = std::log(ws.total / (2.0 * w_min * w_min)) + 1.0;

    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;
    if (degree_at(0.0) < k) {
        while (degree_at(hi) < k) {
            if (hi > log_s_saturated) throw CalibrationFailure("cannot reach average degree " + std::to_string(k));
            lo = hi;
            hi = std::min(hi + step, log_s_saturated + 1.0);
            step *= 2.0;
        }
    } else {
        while (degree_at(lo) > k) {
            if (lo < -1e5) throw CalibrationFailure("cannot lower average degree to " + std::to_string(k));
            hi = lo;
            lo -= step;
            step *= 2.0;
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        (degree_at(mid) < k ? lo : hi) = mid;
    }
    const double log_s = 0.5 * (lo + hi);
    const double achieved = degree_at(log_s);
    if (std::abs(achieved - k) > 1e-3 * k) {
        throw CalibrationFailure("calibration residual too large: " + std::to_string(achieved) + " vs " +
                                 std::to_string(k));
    }
    return {std::exp(log_s), temperature};
}

double calibrate_girg_c(const WeightSequence& ws, double temperature, double k) {
    return calibrate_girg(ws, temperature, k).c();
}

GirgInstance make_girg_instance(const ParamVector& params, Seed seed) {
    if (params.kind != ModelKind::girg || !within_limits(params)) {
        throw InvalidParameter("invalid GIRG parameters: " + params.describe());
    }
    const auto n = static_cast<std::size_t>(std::llround(params.n()));
    GirgInstance inst;
    inst.weights = girg_weights(n, params.beta(), derive_seed(seed, {0}));
    inst.positions = girg_positions(n, derive_seed(seed, {1}));
    inst.scale = calibrate_girg(inst.weights, params.temperature(), params.k());
    return inst;
}

namespace {

Graph draw_girg_exact(const GirgInstance& inst, Rng& rng) {
    const auto& w = inst.weights.weights;
    const auto& x = inst.positions;
    const std::size_t n = w.size();
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            const double p =
                girg_edge_probability(w[u], w[v], inst.weights.total, torus_distance(x[u], x[v]), inst.scale);
            if (rng.uniform() < p) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
        }
    }
    return Graph::from_edges(n, edges);
}

struct LayerEntry {
    double position;
    double weight;
    Vertex id;
};

struct Layer {
    std::vector<LayerEntry> entries;
    double max_weight = 0.0;
};

std::vector<Layer> build_layers(const GirgInstance& inst, std::vector<std::size_t>& layer_of) {
    const auto& w = inst.weights.weights;
    const double w_min = *std::min_element(w.begin(), w.end());
    std::vector<Layer> layers;
    layer_of.resize(w.size());
    for (std::size_t v = 0; v < w.size(); ++v) {
        const auto j = static_cast<std::size_t>(std::max(0.0, std::floor(std::log2(w[v] / w_min))));
        if (j >= layers.size()) layers.resize(j + 1);
        layers[j].entries.push_back({inst.positions[v], w[v], static_cast<Vertex>(v)});
        layers[j].max_weight = std::max(layers[j].max_weight, w[v]);
        layer_of[v] = j;
    }
    for (auto& layer : layers) {
        std::sort(layer.entries.begin(), layer.entries.end(),
                  [](const LayerEntry& a, const LayerEntry& b) { return a.position < b.position; });
    }
    return layers;
}

// Visits `count` entries in order of non-decreasing distance from u. The
// proposal probability is the bound at the nearest not-yet-visited entry with
// the layer's maximum weight, which dominates every later entry.
template <typename EntryAt, typename DistanceAt, typename Emit>
void walk(std::size_t count, double w_u, double layer_max, const GirgInstance& inst, Rng& rng, EntryAt entry_at,
          DistanceAt distance_at, Emit emit) {
    const double W = inst.weights.total;
    std::size_t t = 0;
    while (t < count) {
        double d = distance_at(t);
        const double bound = girg_edge_probability(w_u, layer_max, W, d, inst.scale);
        if (bound <= 0.0) return;
        if (bound < 1.0) {
            t += rng.geometric_skip(bound, count);
            if (t >= count) return;
            d = distance_at(t);
        }
        const LayerEntry& e = entry_at(t);
        const double p = girg_edge_probability(w_u, e.weight, W, d, inst.scale);
        if (rng.uniform() * bound < p) emit(e.id);
        ++t;
    }
}

Graph draw_girg_layered(const GirgInstance& inst, Rng& rng) {
    const auto& w = inst.weights.weights;
    const std::size_t n = w.size();
    std::vector<std::size_t> layer_of;
    const std::vector<Layer> layers = build_layers(inst, layer_of);

    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        const double xu = inst.positions[u];
        for (std::size_t j = layer_of[u]; j < layers.size(); ++j) {
            const auto& entries = layers[j].entries;
            const std::size_t m = entries.size();
            if (m == 0) continue;
            const bool same_layer = j == layer_of[u];
            auto emit = [&](Vertex v) {
                if (!same_layer || v > u) edges.push_back({std::min(u, v), std::max(u, v)});
            };
            auto position_less = [](const LayerEntry& a, double x) { return a.position < x; };
            auto position_greater = [](double x, const LayerEntry& a) { return x < a.position; };

            const auto start = static_cast<std::size_t>(
                std::lower_bound(entries.begin(), entries.end(), xu, position_less) - entries.begin());
            // Entries at forward distance <= 1/2 go clockwise, the rest counter-clockwise.
            std::size_t forward;
            if (xu + 0.5 < 1.0) {
                forward = static_cast<std::size_t>(
                              std::upper_bound(entries.begin(), entries.end(), xu + 0.5, position_greater) -
                              entries.begin()) -
                          start;
            } else {
                forward = (m - start) + static_cast<std::size_t>(std::upper_bound(entries.begin(), entries.end(),
                                                                                  xu - 0.5, position_greater) -
                                                                 entries.begin());
            }
            forward = std::min(forward, m);

            walk(
                forward, w[u], layers[j].max_weight, inst, rng,
                [&](std::size_t t) -> const LayerEntry& { return entries[(start + t) % m]; },
                [&](std::size_t t) {
                    const double d = entries[(start + t) % m].position - xu;
                    return d < 0.0 ? d + 1.0 : d;
                },
                emit);
            walk(
                m - forward, w[u], layers[j].max_weight, inst, rng,
                [&](std::size_t t) -> const LayerEntry& { return entries[(start + m - 1 - t) % m]; },
                [&](std::size_t t) {
                    const double d = xu - entries[(start + m - 1 - t) % m].position;
                    return d < 0.0 ? d + 1.0 : d;
                },
                emit);
        }
    }
    return Graph::from_edges(n, edges);
}

}  // namespace

Graph draw_girg(const GirgInstance& inst, Rng& rng, GirgMethod method) {
    switch (method) {
        case GirgMethod::exact_pairs: return draw_girg_exact(inst, rng);
        case GirgMethod::weight_layers: return draw_girg_layered(inst, rng);
    }
    throw InvalidParameter("unknown GIRG sampling method");
}

}  // namespace parfit
