#pragma once

// Double cosets H x H', regular-pair verification, quotient graphs
// H \ Cayley(G) / H', nested and conjugated quotient morphisms, and the
// exhaustive hypothesis checkers for the two gap-comparison propositions.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "specgap/graph.hpp"
#include "specgap/permutation.hpp"
#include "specgap/weighted_group.hpp"

namespace specgap {

/// Partition of all degree! permutations into double cosets H x H'.
/// Classes are listed by ascending rank of their representative, and the
/// representative is the lexicographically smallest member.
struct DoubleCosetPartition {
    int degree = 0;
    SubgroupSpec left;
    SubgroupSpec right;
    std::vector<std::vector<int>> classes; // member ranks, ascending
    std::vector<int> class_of;             // rank -> class index

    int num_classes() const { return static_cast<int>(classes.size()); }
    int rep_rank(int c) const { return classes[static_cast<std::size_t>(c)].front(); }
};

/// Orbit BFS: the class of x is the closure of {x} under left
/// multiplication by H generators and right multiplication by H'
/// generators.
inline DoubleCosetPartition double_coset_partition(int degree, const SubgroupSpec& h,
                                                   const SubgroupSpec& hp,
                                                   std::size_t cap = kDefaultClosureCap) {
    if (h.degree != degree || hp.degree != degree)
        throw InvalidInput("double_coset_partition: degree mismatch");
    const std::vector<Permutation> all = symmetric_group(degree, cap);
    const int total = static_cast<int>(all.size());
    DoubleCosetPartition part;
    part.degree = degree;
    part.left = h;
    part.right = hp;
    part.class_of.assign(static_cast<std::size_t>(total), -1);
    for (int seed = 0; seed < total; ++seed) {
        if (part.class_of[static_cast<std::size_t>(seed)] >= 0) continue;
        const int c = part.num_classes();
        std::vector<int> members;
        std::vector<int> frontier{seed};
        part.class_of[static_cast<std::size_t>(seed)] = c;
        members.push_back(seed);
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int xr : frontier) {
                const Permutation& x = all[static_cast<std::size_t>(xr)];
                auto visit = [&](const Permutation& y) {
                    const int yr = static_cast<int>(permutation_rank(y));
                    if (part.class_of[static_cast<std::size_t>(yr)] < 0) {
                        part.class_of[static_cast<std::size_t>(yr)] = c;
                        members.push_back(yr);
                        next.push_back(yr);
                    }
                };
                for (const auto& g : h.generators) visit(compose(g, x));
                for (const auto& g : hp.generators) visit(compose(x, g));
            }
            frontier = std::move(next);
        }
        std::sort(members.begin(), members.end());
        part.classes.push_back(std::move(members));
    }
    return part;
}

/// Regularity of (H, H'): for all x and all classes [y] != [x], the class
/// rate sum into [y] is unchanged by appending any h^{-1}, h in H.
/// Exhaustive by design; these checks are verification oracles.
inline bool is_regular_pair(const WeightedGroup& g, const SubgroupSpec& h,
                            const SubgroupSpec& hp,
                            std::size_t cap = kDefaultClosureCap) {
    if (h.degree != g.degree || hp.degree != g.degree)
        throw InvalidInput("is_regular_pair: degree mismatch");
    const SymmetricGroupTable table = build_group_table(g, cap);
    const DoubleCosetPartition part = double_coset_partition(g.degree, h, hp, cap);
    const int total = static_cast<int>(table.size());
    for (int xr = 0; xr < total; ++xr) {
        const Permutation xinv = inverse(table.perms[static_cast<std::size_t>(xr)]);
        const int cx = part.class_of[static_cast<std::size_t>(xr)];
        for (int c = 0; c < part.num_classes(); ++c) {
            if (c == cx) continue;
            double base = 0.0;
            for (int yr : part.classes[static_cast<std::size_t>(c)])
                base += table.weight[static_cast<std::size_t>(
                    permutation_rank(compose(table.perms[static_cast<std::size_t>(yr)], xinv)))];
            for (const auto& helem : h.elements) {
                if (helem.is_identity()) continue;
                const Permutation tail = compose(xinv, inverse(helem));
                double shifted = 0.0;
                for (int yr : part.classes[static_cast<std::size_t>(c)])
                    shifted += table.weight[static_cast<std::size_t>(
                        permutation_rank(compose(table.perms[static_cast<std::size_t>(yr)], tail)))];
                if (!nearly_equal(base, shifted)) return false;
            }
        }
    }
    return true;
}

/// Quotient graph over class representatives together with the projection
/// from Cayley states (ranks) to quotient states.
struct QuotientResult {
    DoubleCosetPartition partition;
    WeightedDigraph graph;
    std::vector<int> projection; // rank -> quotient state index
};

/// H \ Cayley(G) / H' with rates summed over target classes from the
/// class representative. Requires a regular pair, which makes the rates
/// representative-independent.
inline QuotientResult quotient_graph(const WeightedGroup& g, const SubgroupSpec& h,
                                     const SubgroupSpec& hp,
                                     std::size_t cap = kDefaultClosureCap) {
    if (!is_regular_pair(g, h, hp, cap))
        throw InvalidInput("quotient_graph: (H, H') is not a regular pair");
    const SymmetricGroupTable table = build_group_table(g, cap);
    DoubleCosetPartition part = double_coset_partition(g.degree, h, hp, cap);
    const int nc = part.num_classes();
    if (nc < 2) throw InvalidInput("quotient_graph: quotient has fewer than 2 states");
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(nc));
    for (int c = 0; c < nc; ++c)
        labels.push_back(to_string(table.perms[static_cast<std::size_t>(part.rep_rank(c))]));
    Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(nc, nc);
    for (int c = 0; c < nc; ++c) {
        const Permutation xinv = inverse(table.perms[static_cast<std::size_t>(part.rep_rank(c))]);
        for (int yr = 0; yr < static_cast<int>(table.size()); ++yr) {
            const int cy = part.class_of[static_cast<std::size_t>(yr)];
            if (cy == c) continue;
            rates(c, cy) += table.weight[static_cast<std::size_t>(
                permutation_rank(compose(table.perms[static_cast<std::size_t>(yr)], xinv)))];
        }
    }
    QuotientResult result;
    result.projection = part.class_of;
    result.partition = std::move(part);
    result.graph = make_graph(std::move(labels), std::move(rates));
    return result;
}

/// Matrix-free morphism criterion for the projection Cayley(G) -> quotient:
/// the same displayed fiber-sum equality, with source rates read off the
/// group weight instead of a materialized degree! x degree! matrix.
inline bool cayley_projection_is_morphism(const WeightedGroup& g, const QuotientResult& q,
                                          std::size_t cap = kDefaultClosureCap) {
    const SymmetricGroupTable table = build_group_table(g, cap);
    const int total = static_cast<int>(table.size());
    const int nc = q.partition.num_classes();
    for (int xr = 0; xr < total; ++xr) {
        Eigen::VectorXd fiber_sum = Eigen::VectorXd::Zero(nc);
        const Permutation& x = table.perms[static_cast<std::size_t>(xr)];
        for (const auto& [gperm, w] : g.weight)
            fiber_sum(q.projection[static_cast<std::size_t>(permutation_rank(compose(gperm, x)))]) += w;
        const int cx = q.projection[static_cast<std::size_t>(xr)];
        for (int c = 0; c < nc; ++c) {
            if (c == cx) continue;
            if (!nearly_equal(q.graph.rates(cx, c), fiber_sum(c))) return false;
        }
    }
    return true;
}

/// Exact rate equality of two graphs under a state bijection.
inline bool rates_match_under_bijection(const WeightedDigraph& g1, const WeightedDigraph& g2,
                                        const std::vector<int>& map) {
    const int n = g1.size();
    if (g2.size() != n || static_cast<int>(map.size()) != n) return false;
    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    for (int v : map) {
        if (v < 0 || v >= n || hit[static_cast<std::size_t>(v)]) return false;
        hit[static_cast<std::size_t>(v)] = 1;
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (!nearly_equal(g1.rates(x, y),
                              g2.rates(map[static_cast<std::size_t>(x)],
                                       map[static_cast<std::size_t>(y)])))
                return false;
    return true;
}

struct NestedMorphismResult {
    std::vector<int> map; // class index in the finer quotient -> class in the coarser
    bool is_morphism = false;
};

/// Natural map [x]_1 -> [x]_2 between quotients of nested regular pairs
/// H1 in H2, H1' in H2', together with its morphism check.
inline NestedMorphismResult nested_quotient_morphism(const WeightedGroup& g,
                                                     const SubgroupSpec& h1,
                                                     const SubgroupSpec& h2,
                                                     const SubgroupSpec& h1p,
                                                     const SubgroupSpec& h2p,
                                                     std::size_t cap = kDefaultClosureCap) {
    if (!h1.subgroup_of(h2) || !h1p.subgroup_of(h2p))
        throw InvalidInput("nested_quotient_morphism: inclusion violated");
    const QuotientResult fine = quotient_graph(g, h1, h1p, cap);
    const QuotientResult coarse = quotient_graph(g, h2, h2p, cap);
    NestedMorphismResult result;
    result.map.resize(static_cast<std::size_t>(fine.partition.num_classes()));
    for (int c = 0; c < fine.partition.num_classes(); ++c)
        result.map[static_cast<std::size_t>(c)] =
            coarse.projection[static_cast<std::size_t>(fine.partition.rep_rank(c))];
    result.is_morphism = check_morphism(fine.graph, coarse.graph, result.map);
    return result;
}

/// Quotients by H2 and by h0 H2 h0^{-1} are isomorphic through
/// [x] -> [x o h0^{-1}]; verified as a weight-preserving bijection.
inline bool conjugate_quotient_isomorphic(const WeightedGroup& g, const SubgroupSpec& h1,
                                          const SubgroupSpec& h2, const Permutation& h0,
                                          std::size_t cap = kDefaultClosureCap) {
    const QuotientResult base = quotient_graph(g, h1, h2, cap);
    const SubgroupSpec h2conj = conjugate_subgroup(h2, h0);
    const QuotientResult conj = quotient_graph(g, h1, h2conj, cap);
    const std::vector<Permutation> all = symmetric_group(g.degree, cap);
    const Permutation h0inv = inverse(h0);
    std::vector<int> map(static_cast<std::size_t>(base.partition.num_classes()));
    for (int c = 0; c < base.partition.num_classes(); ++c) {
        const Permutation& rep = all[static_cast<std::size_t>(base.partition.rep_rank(c))];
        map[static_cast<std::size_t>(c)] = conj.projection[static_cast<std::size_t>(
            permutation_rank(compose(rep, h0inv)))];
    }
    return rates_match_under_bijection(base.graph, conj.graph, map);
}

/// Hypotheses of the left-action gap-equality proposition for
/// H1 in H2 against a common right subgroup H'.
struct LeftActionHypotheses {
    bool cond_equivariant = false;  // class-1 rate sums constant along H2 shifts
    bool cond_large_enough = false; // within-class rates dominate the escape minimum
    bool no_full_class = false;     // no H2 x H' equals the whole group
    bool all() const { return cond_equivariant && cond_large_enough && no_full_class; }
};

/// Exhaustive evaluation of both displayed conditions plus the standing
/// hypothesis. When all three hold, the two quotient gaps coincide.
inline LeftActionHypotheses check_left_action_hypotheses(const WeightedGroup& g,
                                                         const SubgroupSpec& h1,
                                                         const SubgroupSpec& h2,
                                                         const SubgroupSpec& hp,
                                                         std::size_t cap = kDefaultClosureCap) {
    if (!h1.subgroup_of(h2))
        throw InvalidInput("check_left_action_hypotheses: H1 must be contained in H2");
    if (!is_regular_pair(g, h1, hp, cap) || !is_regular_pair(g, h2, hp, cap))
        throw InvalidInput("check_left_action_hypotheses: pairs must be regular");
    const SymmetricGroupTable table = build_group_table(g, cap);
    const DoubleCosetPartition fine = double_coset_partition(g.degree, h1, hp, cap);
    const DoubleCosetPartition coarse = double_coset_partition(g.degree, h2, hp, cap);
    const int total = static_cast<int>(table.size());

    LeftActionHypotheses result;
    result.no_full_class = true;
    for (const auto& cls : coarse.classes)
        if (static_cast<int>(cls.size()) == total) result.no_full_class = false;

    // Count of fine classes inside each coarse class.
    std::vector<int> fine_classes_inside(static_cast<std::size_t>(coarse.num_classes()), 0);
    {
        std::vector<int> seen(static_cast<std::size_t>(fine.num_classes()), -1);
        for (int r = 0; r < total; ++r) {
            const int cf = fine.class_of[static_cast<std::size_t>(r)];
            const int cc = coarse.class_of[static_cast<std::size_t>(r)];
            if (seen[static_cast<std::size_t>(cf)] != cc) {
                seen[static_cast<std::size_t>(cf)] = cc;
                ++fine_classes_inside[static_cast<std::size_t>(cc)];
            }
        }
    }

    // min over z of the total rate leaving the coarse class of z.
    double escape_min = std::numeric_limits<double>::infinity();
    std::vector<double> row(static_cast<std::size_t>(fine.num_classes()));
    for (int zr = 0; zr < total; ++zr) {
        const Permutation zinv = inverse(table.perms[static_cast<std::size_t>(zr)]);
        const int cz = coarse.class_of[static_cast<std::size_t>(zr)];
        double escape = 0.0;
        for (int yr = 0; yr < total; ++yr) {
            if (coarse.class_of[static_cast<std::size_t>(yr)] == cz) continue;
            escape += table.weight[static_cast<std::size_t>(
                permutation_rank(compose(table.perms[static_cast<std::size_t>(yr)], zinv)))];
        }
        escape_min = std::min(escape_min, escape);
    }

    result.cond_equivariant = true;
    result.cond_large_enough = true;
    for (int xr = 0; xr < total && (result.cond_equivariant || result.cond_large_enough); ++xr) {
        const Permutation xinv = inverse(table.perms[static_cast<std::size_t>(xr)]);
        const int cfx = fine.class_of[static_cast<std::size_t>(xr)];
        const int ccx = coarse.class_of[static_cast<std::size_t>(xr)];
        // Fine-class rate sums out of x, one pass over the group.
        std::fill(row.begin(), row.end(), 0.0);
        for (int yr = 0; yr < total; ++yr)
            row[static_cast<std::size_t>(fine.class_of[static_cast<std::size_t>(yr)])] +=
                table.weight[static_cast<std::size_t>(
                    permutation_rank(compose(table.perms[static_cast<std::size_t>(yr)], xinv)))];
        for (const auto& h2elem : h2.elements) {
            // Condition (1): shifting y by h2 leaves the class-1 sum unchanged.
            if (result.cond_equivariant) {
                for (int yr = 0; yr < total; ++yr) {
                    const int cfy = fine.class_of[static_cast<std::size_t>(yr)];
                    if (cfy == cfx) continue;
                    const int cfhy = fine.class_of[static_cast<std::size_t>(permutation_rank(
                        compose(h2elem, table.perms[static_cast<std::size_t>(yr)])))];
                    if (cfhy == cfx) continue;
                    if (!nearly_equal(row[static_cast<std::size_t>(cfy)],
                                      row[static_cast<std::size_t>(cfhy)])) {
                        result.cond_equivariant = false;
                        break;
                    }
                }
            }
            // Condition (2): within-class-2 rates reach the escape minimum.
            if (result.cond_large_enough) {
                const int cfhx = fine.class_of[static_cast<std::size_t>(permutation_rank(
                    compose(h2elem, table.perms[static_cast<std::size_t>(xr)])))];
                if (cfhx != cfx) {
                    const double lhs =
                        static_cast<double>(fine_classes_inside[static_cast<std::size_t>(ccx)]) *
                        row[static_cast<std::size_t>(cfhx)];
                    if (lhs < escape_min && !nearly_equal(lhs, escape_min))
                        result.cond_large_enough = false;
                }
            }
            if (!result.cond_equivariant && !result.cond_large_enough) break;
        }
    }
    return result;
}

/// Hypotheses of the right-action gap-comparison proposition for
/// quotients H \ Cayley(G) / H' versus H \ Cayley(G) / Ha.
struct RightActionHypotheses {
    bool cond_intersection = false; // intersection of the conjugate family lies in Ha
    bool cond_generate = false;     // each conjugate plus the rest's intersection generates G
    bool all() const { return cond_intersection && cond_generate; }
};

/// Enumerates the conjugate family H^a = { h H' h^{-1} : h in Ha } and
/// evaluates both conditions by explicit closure. The intersection over an
/// empty sub-family is taken to be the full group.
inline RightActionHypotheses check_right_action_hypotheses(int degree, const SubgroupSpec& h,
                                                           const SubgroupSpec& hp,
                                                           const SubgroupSpec& ha,
                                                           std::size_t cap = kDefaultClosureCap) {
    if (h.degree != degree || hp.degree != degree || ha.degree != degree)
        throw InvalidInput("check_right_action_hypotheses: degree mismatch");
    // Distinct conjugates of H' under Ha.
    std::vector<SubgroupSpec> family;
    for (const auto& helem : ha.elements) {
        SubgroupSpec conj = conjugate_subgroup(hp, helem);
        const bool known = std::any_of(family.begin(), family.end(), [&](const SubgroupSpec& f) {
            return f.elements == conj.elements;
        });
        if (!known) family.push_back(std::move(conj));
    }
    RightActionHypotheses result;
    // Intersection of the whole family.
    SubgroupSpec hb = family.front();
    for (std::size_t i = 1; i < family.size(); ++i) hb = subgroup_intersection(hb, family[i]);
    result.cond_intersection = hb.subgroup_of(ha);
    // Each member joined with the intersection of all others generates G.
    const std::uint64_t full_order = factorial(degree);
    result.cond_generate = true;
    for (std::size_t i = 0; i < family.size(); ++i) {
        SubgroupSpec rest;
        bool have_rest = false;
        for (std::size_t j = 0; j < family.size(); ++j) {
            if (j == i) continue;
            rest = have_rest ? subgroup_intersection(rest, family[j]) : family[j];
            have_rest = true;
        }
        if (!have_rest) continue; // empty sub-family: join with G is trivially G
        std::vector<Permutation> gens = family[i].elements;
        gens.insert(gens.end(), rest.elements.begin(), rest.elements.end());
        const SubgroupSpec joined = subgroup_closure(degree, std::move(gens), cap);
        if (joined.order() != full_order) {
            result.cond_generate = false;
            break;
        }
    }
    return result;
}

} // namespace specgap
