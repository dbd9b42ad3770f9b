#pragma once

// Constructors for the concrete processes: random walk, interchange
// process (Cayley and direct forms), generalized exclusion process,
// extended graph, quotient subgroups, block shuffle, and the explicit
// isomorphism checks between quotient and direct constructions.

#include <functional>
#include <map>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "specgap/coset.hpp"
#include "specgap/graph.hpp"
#include "specgap/permutation.hpp"
#include "specgap/weighted_group.hpp"

namespace specgap {

/// Symmetric weighted base graph X = (V, r) with zero diagonal.
struct BaseGraph {
    std::vector<std::string> vertices;
    Eigen::MatrixXd r;

    int size() const { return static_cast<int>(vertices.size()); }

    int index_of(const std::string& label) const {
        for (int i = 0; i < size(); ++i)
            if (vertices[static_cast<std::size_t>(i)] == label) return i;
        throw InvalidInput("unknown vertex: " + label);
    }
};

inline BaseGraph make_base_graph(std::vector<std::string> vertices, Eigen::MatrixXd r) {
    const int n = static_cast<int>(vertices.size());
    if (n < 2) throw InvalidInput("base graph needs at least 2 vertices");
    if (r.rows() != n || r.cols() != n) throw InvalidInput("rate matrix shape mismatch");
    {
        std::vector<std::string> sorted = vertices;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidInput("duplicate vertex name");
    }
    for (int i = 0; i < n; ++i) {
        if (r(i, i) != 0.0) throw InvalidInput("base graph diagonal must be zero");
        for (int j = 0; j < n; ++j) {
            if (!(r(i, j) >= 0.0) || !std::isfinite(r(i, j)))
                throw InvalidInput("base rates must be finite and nonnegative");
            if (r(i, j) != r(j, i)) throw InvalidInput("base rates must be symmetric");
        }
    }
    return BaseGraph{std::move(vertices), std::move(r)};
}

/// Connectivity of the positive-rate (undirected) support.
inline bool base_connected(const BaseGraph& x) {
    const int n = x.size();
    std::vector<char> vis(static_cast<std::size_t>(n), 0);
    std::queue<int> q;
    q.push(0);
    vis[0] = 1;
    int count = 1;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int w = 0; w < n; ++w) {
            if (x.r(u, w) > 0.0 && !vis[static_cast<std::size_t>(w)]) {
                vis[static_cast<std::size_t>(w)] = 1;
                ++count;
                q.push(w);
            }
        }
    }
    return count == n;
}

/// Single particle jumping u -> w at rate scale * r(u, w).
inline WeightedDigraph random_walk(const BaseGraph& x, double scale = 1.0) {
    if (!(scale > 0.0)) throw InvalidInput("random_walk: scale must be positive");
    if (!base_connected(x)) throw NotIrreducible("random_walk: base graph is disconnected");
    return make_graph(x.vertices, scale * x.r);
}

/// Weighted group of the interchange process: degree n, weight
/// r(xi(i), xi(j)) on the transposition (i j), where xi is the vertex
/// order of X.
inline WeightedGroup interchange_group(const BaseGraph& x) {
    const int n = x.size();
    std::map<Permutation, double> weight;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (x.r(i, j) > 0.0) weight.emplace(Permutation::transposition(n, i, j), x.r(i, j));
    return make_weighted_group(n, std::move(weight));
}

/// Interchange process straight from its definition: states are the
/// labelings of V (one particle per vertex); an edge (u, w) swaps its
/// endpoints' labels at rate r(u, w). States are enumerated as the label
/// arrays in lexicographic order, matching permutation rank order.
inline WeightedDigraph direct_interchange_graph(const BaseGraph& x,
                                                std::size_t state_cap = kDefaultStateCap) {
    const int n = x.size();
    if (factorial(n) > state_cap)
        throw CapExceeded("direct_interchange_graph: state count exceeds cap");
    const std::vector<Permutation> all = symmetric_group(n);
    const int total = static_cast<int>(all.size());
    std::vector<std::string> labels;
    labels.reserve(all.size());
    for (const auto& eta : all) labels.push_back(to_string(eta));
    Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(total, total);
    for (int s = 0; s < total; ++s) {
        for (int u = 0; u < n; ++u) {
            for (int w = u + 1; w < n; ++w) {
                if (x.r(u, w) <= 0.0) continue;
                Permutation target = all[static_cast<std::size_t>(s)];
                std::swap(target.images[static_cast<std::size_t>(u)],
                          target.images[static_cast<std::size_t>(w)]);
                rates(s, static_cast<int>(permutation_rank(target))) = x.r(u, w);
            }
        }
    }
    return make_graph(std::move(labels), std::move(rates));
}

/// Bijection sending each Cayley state x to the labeling eta = x^{-1};
/// identifies cayley_graph(interchange_group(X)) with the direct graph.
inline std::vector<int> inverse_rank_bijection(int degree) {
    const std::vector<Permutation> all = symmetric_group(degree);
    std::vector<int> map(all.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        map[i] = static_cast<int>(permutation_rank(inverse(all[i])));
    return map;
}

/// Base graph, per-vertex maximal occupancies, and particle count.
struct GEPConfig {
    BaseGraph base;
    std::vector<int> k; // per-vertex maximal occupancy
    int l = 0;          // number of particles

    int total_capacity() const {
        int n = 0;
        for (int kv : k) n += kv;
        return n;
    }
};

inline GEPConfig make_gep_config(BaseGraph base, std::vector<int> k, int l) {
    if (static_cast<int>(k.size()) != base.size())
        throw InvalidInput("gep config: occupancy list length mismatch");
    for (int kv : k)
        if (kv < 1) throw InvalidInput("gep config: occupancies must be >= 1");
    GEPConfig cfg{std::move(base), std::move(k), l};
    if (l < 1 || l >= cfg.total_capacity())
        throw InvalidInput("gep config: need 1 <= l < total capacity");
    return cfg;
}

/// Occupancy profile pi with 0 <= pi(v) <= k_v and sum l.
struct OccupancyState {
    std::vector<int> counts;

    bool operator==(const OccupancyState&) const = default;
};

inline std::string to_string(const OccupancyState& s) {
    std::string out;
    for (std::size_t i = 0; i < s.counts.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s.counts[i]);
    }
    return out;
}

/// All occupancy states in lexicographic order on the count vectors.
inline std::vector<OccupancyState> enumerate_occupancy_states(const std::vector<int>& k, int l) {
    std::vector<OccupancyState> states;
    std::vector<int> counts(k.size(), 0);
    auto recurse = [&](auto&& self, std::size_t v, int remaining) -> void {
        if (v == k.size()) {
            if (remaining == 0) states.push_back(OccupancyState{counts});
            return;
        }
        int tail_capacity = 0;
        for (std::size_t u = v + 1; u < k.size(); ++u) tail_capacity += k[u];
        for (int c = 0; c <= std::min(k[v], remaining); ++c) {
            if (remaining - c > tail_capacity) continue;
            counts[v] = c;
            self(self, v + 1, remaining - c);
        }
        counts[v] = 0;
    };
    recurse(recurse, 0, l);
    return states;
}

/// Transition weight multiplying r(u, w) for the move u -> w out of pi.
using GepRateFunction = std::function<double(const OccupancyState&, int, int)>;

/// Normal rate pi(u) (k_w - pi(w)).
inline GepRateFunction normal_gep_rate(const std::vector<int>& k) {
    return [k](const OccupancyState& pi, int u, int w) {
        return static_cast<double>(pi.counts[static_cast<std::size_t>(u)]) *
               static_cast<double>(k[static_cast<std::size_t>(w)] -
                                   pi.counts[static_cast<std::size_t>(w)]);
    };
}

/// Generalized exclusion process graph; rates of parallel (u, w) moves
/// into the same target state add, matching the generator's double sum.
inline WeightedDigraph gep_graph(const GEPConfig& cfg, const GepRateFunction& mu,
                                 std::size_t state_cap = kDefaultStateCap) {
    const int n = cfg.base.size();
    const std::vector<OccupancyState> states = enumerate_occupancy_states(cfg.k, cfg.l);
    if (states.size() > state_cap) throw CapExceeded("gep_graph: state count exceeds cap");
    if (states.size() < 2) throw InvalidInput("gep_graph: fewer than 2 states");
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < states.size(); ++i)
        index.emplace(states[i].counts, static_cast<int>(i));
    const int total = static_cast<int>(states.size());
    std::vector<std::string> labels;
    labels.reserve(states.size());
    for (const auto& s : states) labels.push_back(to_string(s));
    Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(total, total);
    for (int s = 0; s < total; ++s) {
        const OccupancyState& pi = states[static_cast<std::size_t>(s)];
        for (int u = 0; u < n; ++u) {
            if (pi.counts[static_cast<std::size_t>(u)] == 0) continue;
            for (int w = 0; w < n; ++w) {
                if (w == u || cfg.base.r(u, w) <= 0.0) continue;
                if (pi.counts[static_cast<std::size_t>(w)] >= cfg.k[static_cast<std::size_t>(w)])
                    continue;
                const double m = mu(pi, u, w);
                if (m <= 0.0) continue;
                std::vector<int> target = pi.counts;
                --target[static_cast<std::size_t>(u)];
                ++target[static_cast<std::size_t>(w)];
                rates(s, index.at(target)) += m * cfg.base.r(u, w);
            }
        }
    }
    return make_graph(std::move(labels), std::move(rates));
}

inline WeightedDigraph gep_graph(const GEPConfig& cfg,
                                 std::size_t state_cap = kDefaultStateCap) {
    return gep_graph(cfg, normal_gep_rate(cfg.k), state_cap);
}

/// Each vertex v blown up into k_v copies; between blocks the original
/// rate, within a block the vertex's total outgoing rate.
struct ExtendedGraph {
    BaseGraph graph;
    std::vector<int> block_of;            // extended vertex -> base vertex index
    std::vector<std::vector<int>> blocks; // base vertex -> extended vertex indices
};

inline ExtendedGraph extended_graph(const BaseGraph& x, const std::vector<int>& k) {
    const int n = x.size();
    if (static_cast<int>(k.size()) != n) throw InvalidInput("extended_graph: occupancy list mismatch");
    for (int kv : k)
        if (kv < 1) throw InvalidInput("extended_graph: occupancies must be >= 1");
    ExtendedGraph eg;
    eg.blocks.resize(static_cast<std::size_t>(n));
    std::vector<std::string> vertices;
    for (int v = 0; v < n; ++v) {
        for (int m = 1; m <= k[static_cast<std::size_t>(v)]; ++m) {
            eg.blocks[static_cast<std::size_t>(v)].push_back(static_cast<int>(vertices.size()));
            eg.block_of.push_back(v);
            vertices.push_back(x.vertices[static_cast<std::size_t>(v)] + "#" + std::to_string(m));
        }
    }
    const int total = static_cast<int>(vertices.size());
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(total, total);
    std::vector<double> out_rate(static_cast<std::size_t>(n), 0.0);
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < n; ++u)
            if (u != v) out_rate[static_cast<std::size_t>(v)] += x.r(v, u);
    for (int a = 0; a < total; ++a) {
        for (int b = 0; b < total; ++b) {
            if (a == b) continue;
            const int va = eg.block_of[static_cast<std::size_t>(a)];
            const int vb = eg.block_of[static_cast<std::size_t>(b)];
            r(a, b) = (va == vb) ? out_rate[static_cast<std::size_t>(va)] : x.r(va, vb);
        }
    }
    eg.graph = make_base_graph(std::move(vertices), std::move(r));
    return eg;
}

/// The quotient subgroup pair realizing the GEP: the left factor permutes
/// copies within each block, the right factor permutes the particle index
/// range {0..l-1} and the hole range {l..N-1}.
inline std::pair<SubgroupSpec, SubgroupSpec> gep_quotient_subgroups(const ExtendedGraph& eg,
                                                                    int l) {
    const int total = eg.graph.size();
    if (l < 1 || l >= total) throw InvalidInput("gep_quotient_subgroups: l out of range");
    std::vector<Permutation> left_gens;
    for (const auto& block : eg.blocks)
        for (std::size_t j = 1; j < block.size(); ++j)
            left_gens.push_back(Permutation::transposition(total, block[0], block[j]));
    std::vector<Permutation> right_gens;
    for (int j = 1; j < l; ++j) right_gens.push_back(Permutation::transposition(total, 0, j));
    for (int j = l + 1; j < total; ++j)
        right_gens.push_back(Permutation::transposition(total, l, j));
    return {subgroup_closure(total, std::move(left_gens)),
            subgroup_closure(total, std::move(right_gens))};
}

/// Occupancy state read off a Cayley state of the extended interchange
/// process: the count at v is how many of the particle indices {0..l-1}
/// the permutation sends into the block of v.
inline OccupancyState occupancy_of_cayley_state(const ExtendedGraph& eg, int l,
                                                const Permutation& g) {
    OccupancyState s;
    s.counts.assign(eg.blocks.size(), 0);
    for (int a = 0; a < l; ++a)
        ++s.counts[static_cast<std::size_t>(eg.block_of[static_cast<std::size_t>(g(a))])];
    return s;
}

/// Verifies that the double-coset quotient of the interchange process on
/// the extended graph is isomorphic to the directly constructed GEP:
/// the occupancy evaluation map must be a rate-preserving bijection.
inline bool gep_quotient_iso_check(const GEPConfig& cfg,
                                   std::size_t state_cap = kDefaultStateCap,
                                   std::size_t closure_cap = kDefaultClosureCap) {
    const ExtendedGraph eg = extended_graph(cfg.base, cfg.k);
    const WeightedGroup group = interchange_group(eg.graph);
    const auto [h_left, h_right] = gep_quotient_subgroups(eg, cfg.l);
    if (!is_regular_pair(group, h_left, h_right, closure_cap))
        throw Error("gep_quotient_iso_check: quotient pair unexpectedly non-regular");
    const QuotientResult quotient = quotient_graph(group, h_left, h_right, closure_cap);
    const WeightedDigraph direct = gep_graph(cfg, state_cap);
    if (quotient.graph.size() != direct.size()) return false;
    const std::vector<OccupancyState> states = enumerate_occupancy_states(cfg.k, cfg.l);
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < states.size(); ++i)
        index.emplace(states[i].counts, static_cast<int>(i));
    const std::vector<Permutation> all = symmetric_group(eg.graph.size(), closure_cap);
    std::vector<int> map(static_cast<std::size_t>(quotient.partition.num_classes()));
    for (int c = 0; c < quotient.partition.num_classes(); ++c) {
        const Permutation& rep = all[static_cast<std::size_t>(quotient.partition.rep_rank(c))];
        const OccupancyState s = occupancy_of_cayley_state(eg, cfg.l, rep);
        const auto it = index.find(s.counts);
        if (it == index.end()) return false;
        map[static_cast<std::size_t>(c)] = it->second;
    }
    return rates_match_under_bijection(quotient.graph, direct, map);
}

/// Shuffle weights on vertex subsets of size >= 2, addressed by sorted
/// vertex index lists.
struct BlockShuffleSpec {
    std::vector<std::string> vertices;
    std::map<std::vector<int>, double> alpha;
};

inline BlockShuffleSpec make_block_shuffle_spec(std::vector<std::string> vertices,
                                                std::map<std::vector<int>, double> alpha) {
    const int n = static_cast<int>(vertices.size());
    if (n < 2) throw InvalidInput("block shuffle needs at least 2 vertices");
    for (const auto& [subset, w] : alpha) {
        if (subset.size() < 2) throw InvalidInput("block shuffle subsets need >= 2 vertices");
        if (!std::is_sorted(subset.begin(), subset.end()) ||
            std::adjacent_find(subset.begin(), subset.end()) != subset.end())
            throw InvalidInput("block shuffle subsets must be sorted and duplicate-free");
        if (subset.front() < 0 || subset.back() >= n)
            throw InvalidInput("block shuffle subset references unknown vertex");
        if (!(w > 0.0) || !std::isfinite(w))
            throw InvalidInput("block shuffle weights must be positive and finite");
    }
    return BlockShuffleSpec{std::move(vertices), std::move(alpha)};
}

/// Weighted group of the block shuffle: a non-identity permutation moving
/// points only inside some alpha-supported subset weighs the sum of all
/// covering subset weights.
inline WeightedGroup block_shuffle_group(const BlockShuffleSpec& spec,
                                         std::size_t cap = kDefaultClosureCap) {
    const int n = static_cast<int>(spec.vertices.size());
    const std::vector<Permutation> all = symmetric_group(n, cap);
    std::map<Permutation, double> weight;
    for (const auto& g : all) {
        if (g.is_identity()) continue;
        std::vector<int> moved;
        for (int i = 0; i < n; ++i)
            if (g(i) != i) moved.push_back(i);
        double w = 0.0;
        for (const auto& [subset, aw] : spec.alpha)
            if (std::includes(subset.begin(), subset.end(), moved.begin(), moved.end())) w += aw;
        if (w > 0.0) weight.emplace(g, w);
    }
    return make_weighted_group(n, std::move(weight));
}

/// Block shuffle straight from its definition on labelings of V, for the
/// cross-check against the Cayley construction.
inline WeightedDigraph direct_block_shuffle_graph(const BlockShuffleSpec& spec,
                                                  std::size_t state_cap = kDefaultStateCap) {
    const int n = static_cast<int>(spec.vertices.size());
    if (factorial(n) > state_cap)
        throw CapExceeded("direct_block_shuffle_graph: state count exceeds cap");
    const std::vector<Permutation> all = symmetric_group(n);
    const int total = static_cast<int>(all.size());
    std::vector<std::string> labels;
    labels.reserve(all.size());
    for (const auto& eta : all) labels.push_back(to_string(eta));
    Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(total, total);
    for (int s = 0; s < total; ++s) {
        for (int t = 0; t < total; ++t) {
            if (s == t) continue;
            std::vector<int> diff;
            for (int v = 0; v < n; ++v)
                if (all[static_cast<std::size_t>(s)](v) != all[static_cast<std::size_t>(t)](v))
                    diff.push_back(v);
            double w = 0.0;
            for (const auto& [subset, aw] : spec.alpha)
                if (std::includes(subset.begin(), subset.end(), diff.begin(), diff.end())) w += aw;
            rates(s, t) = w;
        }
    }
    return make_graph(std::move(labels), std::move(rates));
}

} // namespace specgap
