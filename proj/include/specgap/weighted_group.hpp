#pragma once

// Weighted groups over symmetric groups, subgroup closure, and the
// Cayley-graph construction mapping a weighted group to a weighted
// complete directed graph.

#include <algorithm>
#include <iterator>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "specgap/graph.hpp"
#include "specgap/permutation.hpp"

namespace specgap {

/// Finite group weight: positive weights on a support of non-identity
/// permutations of a fixed degree; everything else weighs 0.
struct WeightedGroup {
    int degree = 0;
    std::map<Permutation, double> weight; // support only

    double weight_of(const Permutation& g) const {
        const auto it = weight.find(g);
        return it == weight.end() ? 0.0 : it->second;
    }
};

inline WeightedGroup make_weighted_group(int degree, std::map<Permutation, double> weight) {
    if (degree < 2) throw InvalidInput("weighted group degree must be >= 2");
    for (const auto& [g, w] : weight) {
        if (g.degree() != degree) throw InvalidInput("support degree mismatch");
        if (g.is_identity()) throw InvalidInput("identity cannot carry weight");
        if (!(w > 0.0) || !std::isfinite(w)) throw InvalidInput("weights must be positive and finite");
    }
    return WeightedGroup{degree, std::move(weight)};
}

/// Generator-defined subgroup with its fully enumerated element list,
/// sorted in the canonical lexicographic order.
struct SubgroupSpec {
    int degree = 0;
    std::vector<Permutation> generators;
    std::vector<Permutation> elements; // sorted, closed, contains identity

    std::size_t order() const { return elements.size(); }

    bool contains(const Permutation& p) const {
        return std::binary_search(elements.begin(), elements.end(), p);
    }

    bool subgroup_of(const SubgroupSpec& other) const {
        if (degree != other.degree) return false;
        for (const auto& e : elements)
            if (!other.contains(e)) return false;
        return true;
    }
};

/// Breadth-first closure of the generators under composition. In a finite
/// group this equals closure under inverses as well.
inline SubgroupSpec subgroup_closure(int degree, std::vector<Permutation> generators,
                                     std::size_t cap = kDefaultClosureCap) {
    for (const auto& g : generators)
        if (g.degree() != degree) throw InvalidInput("subgroup_closure: generator degree mismatch");
    std::map<Permutation, bool> seen; // value: expanded
    seen.emplace(Permutation::identity(degree), false);
    std::vector<Permutation> frontier{Permutation::identity(degree)};
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& x : frontier) {
            for (const auto& g : generators) {
                Permutation y = compose(g, x);
                if (seen.emplace(std::move(y), false).second) {
                    next.push_back(compose(g, x));
                    if (seen.size() > cap)
                        throw CapExceeded("subgroup_closure: closure exceeds cap");
                }
            }
        }
        frontier = std::move(next);
    }
    SubgroupSpec spec;
    spec.degree = degree;
    spec.generators = std::move(generators);
    spec.elements.reserve(seen.size());
    for (const auto& [p, _] : seen) spec.elements.push_back(p);
    return spec;
}

inline SubgroupSpec trivial_subgroup(int degree) {
    return subgroup_closure(degree, {});
}

/// Subgroup generated by both argument subgroups together.
inline SubgroupSpec subgroup_join(const SubgroupSpec& a, const SubgroupSpec& b,
                                  std::size_t cap = kDefaultClosureCap) {
    if (a.degree != b.degree) throw InvalidInput("subgroup_join: degree mismatch");
    std::vector<Permutation> gens = a.generators;
    gens.insert(gens.end(), b.generators.begin(), b.generators.end());
    return subgroup_closure(a.degree, std::move(gens), cap);
}

inline SubgroupSpec subgroup_intersection(const SubgroupSpec& a, const SubgroupSpec& b) {
    if (a.degree != b.degree) throw InvalidInput("subgroup_intersection: degree mismatch");
    SubgroupSpec spec;
    spec.degree = a.degree;
    std::set_intersection(a.elements.begin(), a.elements.end(),
                          b.elements.begin(), b.elements.end(),
                          std::back_inserter(spec.elements));
    spec.generators = spec.elements;
    return spec;
}

/// h0 H h0^{-1}, elementwise.
inline SubgroupSpec conjugate_subgroup(const SubgroupSpec& h, const Permutation& h0) {
    if (h.degree != h0.degree()) throw InvalidInput("conjugate_subgroup: degree mismatch");
    const Permutation h0inv = inverse(h0);
    SubgroupSpec spec;
    spec.degree = h.degree;
    spec.elements.reserve(h.elements.size());
    for (const auto& e : h.elements) spec.elements.push_back(compose(h0, compose(e, h0inv)));
    std::sort(spec.elements.begin(), spec.elements.end());
    for (const auto& g : h.generators) spec.generators.push_back(compose(h0, compose(g, h0inv)));
    return spec;
}

/// All permutations of the group's degree in rank order, with weights
/// materialized densely by rank. Backs the exhaustive coset machinery.
struct SymmetricGroupTable {
    int degree = 0;
    std::vector<Permutation> perms;  // rank-indexed, lexicographic
    std::vector<double> weight;      // by rank

    std::size_t size() const { return perms.size(); }

    std::uint64_t rank(const Permutation& p) const { return permutation_rank(p); }

    double weight_of(const Permutation& p) const {
        return weight[static_cast<std::size_t>(rank(p))];
    }
};

inline SymmetricGroupTable build_group_table(const WeightedGroup& g,
                                             std::size_t cap = kDefaultClosureCap) {
    SymmetricGroupTable table;
    table.degree = g.degree;
    table.perms = symmetric_group(g.degree, cap);
    table.weight.assign(table.perms.size(), 0.0);
    for (const auto& [p, w] : g.weight)
        table.weight[static_cast<std::size_t>(permutation_rank(p))] = w;
    return table;
}

/// Irreducible iff the support generates the full symmetric group; in a
/// finite group semigroup reachability equals subgroup closure.
inline bool group_is_irreducible(const WeightedGroup& g,
                                 std::size_t cap = kDefaultClosureCap) {
    std::vector<Permutation> gens;
    gens.reserve(g.weight.size());
    for (const auto& [p, _] : g.weight) gens.push_back(p);
    const SubgroupSpec closure = subgroup_closure(g.degree, std::move(gens), cap);
    return closure.order() == factorial(g.degree);
}

/// For irreducible weighted groups, reversibility is exactly weight
/// symmetry under inversion.
inline bool group_is_reversible(const WeightedGroup& g,
                                std::size_t cap = kDefaultClosureCap) {
    if (!group_is_irreducible(g, cap))
        throw NotIrreducible("group_is_reversible: group is not irreducible");
    for (const auto& [p, w] : g.weight)
        if (!nearly_equal(w, g.weight_of(inverse(p)))) return false;
    return true;
}

/// Cayley graph: states are all permutations of the degree in canonical
/// order; rate(x -> y) = C_G(y o x^{-1}).
inline WeightedDigraph cayley_graph(const WeightedGroup& g,
                                    std::size_t state_cap = kDefaultStateCap) {
    if (factorial(g.degree) > state_cap)
        throw CapExceeded("cayley_graph: " + std::to_string(g.degree) + "! exceeds state cap");
    const std::vector<Permutation> all = symmetric_group(g.degree);
    const int n = static_cast<int>(all.size());
    std::vector<std::string> labels;
    labels.reserve(all.size());
    for (const auto& p : all) labels.push_back(to_string(p));
    Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(n, n);
    for (int x = 0; x < n; ++x) {
        for (const auto& [gperm, w] : g.weight) {
            // y = g o x is the unique state reached through g.
            const Permutation y = compose(gperm, all[static_cast<std::size_t>(x)]);
            rates(x, static_cast<int>(permutation_rank(y))) = w;
        }
    }
    return make_graph(std::move(labels), std::move(rates));
}

} // namespace specgap
