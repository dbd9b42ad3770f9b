#pragma once

// Weighted complete directed graphs with Laplacian-type generators:
// construction, irreducibility, detailed balance, exact spectra and
// spectral gaps, morphism and spectrum-containment checks.

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "specgap/errors.hpp"
#include "specgap/numeric.hpp"

namespace specgap {

/// Real-valued function on the states of a graph, aligned with its state order.
using StateFunction = Eigen::VectorXd;

/// Strictly positive probability vector satisfying detailed balance.
struct StationaryMeasure {
    Eigen::VectorXd values;
};

/// Finite state set plus a nonnegative rate matrix with zero diagonal.
/// The generator acts as (Lf)(x) = sum_y C(x,y) (f(y) - f(x)).
struct WeightedDigraph {
    std::vector<std::string> states;
    Eigen::MatrixXd rates;

    int size() const { return static_cast<int>(states.size()); }

    int index_of(const std::string& label) const {
        for (int i = 0; i < size(); ++i)
            if (states[static_cast<std::size_t>(i)] == label) return i;
        throw InvalidInput("unknown state label: " + label);
    }
};

/// One off-diagonal rate assignment used by build_graph.
struct RateEntry {
    std::string from;
    std::string to;
    double rate;
};

/// Validating constructor from a complete rate matrix.
inline WeightedDigraph make_graph(std::vector<std::string> labels, Eigen::MatrixXd rates) {
    const int n = static_cast<int>(labels.size());
    if (n < 2) throw InvalidInput("graph needs at least 2 states");
    if (rates.rows() != n || rates.cols() != n)
        throw InvalidInput("rate matrix shape does not match state count");
    {
        std::vector<std::string> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidInput("duplicate state label");
    }
    for (int i = 0; i < n; ++i) {
        if (rates(i, i) != 0.0) throw InvalidInput("nonzero diagonal rate");
        for (int j = 0; j < n; ++j) {
            const double r = rates(i, j);
            if (!(r >= 0.0) || !std::isfinite(r))
                throw InvalidInput("rates must be finite and nonnegative");
        }
    }
    return WeightedDigraph{std::move(labels), std::move(rates)};
}

/// Build from a sparse entry list; unmentioned pairs get rate 0.
inline WeightedDigraph build_graph(std::vector<std::string> labels,
                                   const std::vector<RateEntry>& entries) {
    const int n = static_cast<int>(labels.size());
    if (n < 2) throw InvalidInput("graph needs at least 2 states");
    std::map<std::string, int> index;
    for (int i = 0; i < n; ++i) {
        if (!index.emplace(labels[static_cast<std::size_t>(i)], i).second)
            throw InvalidInput("duplicate state label: " + labels[static_cast<std::size_t>(i)]);
    }
    Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(n, n);
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> seen =
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
    for (const auto& e : entries) {
        const auto iu = index.find(e.from);
        const auto iw = index.find(e.to);
        if (iu == index.end() || iw == index.end())
            throw InvalidInput("rate entry references unknown label");
        if (iu->second == iw->second) throw InvalidInput("self-loop entry: " + e.from);
        if (!(e.rate >= 0.0) || !std::isfinite(e.rate))
            throw InvalidInput("negative or non-finite rate");
        if (seen(iu->second, iw->second))
            throw InvalidInput("duplicate rate entry for pair (" + e.from + "," + e.to + ")");
        seen(iu->second, iw->second) = true;
        rates(iu->second, iw->second) = e.rate;
    }
    return WeightedDigraph{std::move(labels), std::move(rates)};
}

/// (Lf)(x) = sum_y C(x,y) (f(y) - f(x)), componentwise.
inline StateFunction apply_generator(const WeightedDigraph& g, const StateFunction& f) {
    const int n = g.size();
    if (f.size() != n) throw InvalidInput("function length does not match state count");
    StateFunction out(n);
    for (int x = 0; x < n; ++x) {
        double acc = 0.0;
        for (int y = 0; y < n; ++y) acc += g.rates(x, y) * (f(y) - f(x));
        out(x) = acc;
    }
    return out;
}

/// Matrix of -L: diagonal holds row sums, off-diagonal -C(x,y).
inline Eigen::MatrixXd negative_generator_matrix(const WeightedDigraph& g) {
    const int n = g.size();
    Eigen::MatrixXd a = -g.rates;
    for (int i = 0; i < n; ++i) a(i, i) = g.rates.row(i).sum();
    return a;
}

/// Strong connectivity of the positive-rate digraph.
inline bool is_irreducible(const WeightedDigraph& g) {
    const int n = g.size();
    auto reachable = [&](bool transpose) {
        std::vector<char> vis(static_cast<std::size_t>(n), 0);
        std::queue<int> q;
        q.push(0);
        vis[0] = 1;
        int count = 1;
        while (!q.empty()) {
            const int x = q.front();
            q.pop();
            for (int y = 0; y < n; ++y) {
                const double r = transpose ? g.rates(y, x) : g.rates(x, y);
                if (r > 0.0 && !vis[static_cast<std::size_t>(y)]) {
                    vis[static_cast<std::size_t>(y)] = 1;
                    ++count;
                    q.push(y);
                }
            }
        }
        return count == n;
    };
    return reachable(false) && reachable(true);
}

/// Detailed-balance measure mu with mu(x) C(x,y) = mu(y) C(y,x), normalized
/// and strictly positive, or absent when no such measure exists.
/// Requires an irreducible graph.
inline std::optional<StationaryMeasure> reversible_measure(const WeightedDigraph& g) {
    if (!is_irreducible(g)) throw NotIrreducible("reversible_measure: graph is not irreducible");
    const int n = g.size();
    // A positive measure forces symmetric support.
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if ((g.rates(x, y) > 0.0) != (g.rates(y, x) > 0.0)) return std::nullopt;
    // Potentials along a spanning tree of the support graph.
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
    mu(0) = 1.0;
    std::vector<char> vis(static_cast<std::size_t>(n), 0);
    vis[0] = 1;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        const int x = q.front();
        q.pop();
        for (int y = 0; y < n; ++y) {
            if (!vis[static_cast<std::size_t>(y)] && g.rates(x, y) > 0.0) {
                vis[static_cast<std::size_t>(y)] = 1;
                mu(y) = mu(x) * g.rates(x, y) / g.rates(y, x);
                q.push(y);
            }
        }
    }
    mu /= mu.sum();
    // Kolmogorov-style verification on every edge, tree or not.
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const double lhs = mu(x) * g.rates(x, y);
            const double rhs = mu(y) * g.rates(y, x);
            if (std::fabs(lhs - rhs) >= tol::balance * std::max(1.0, std::fabs(rhs)))
                return std::nullopt;
        }
    }
    return StationaryMeasure{std::move(mu)};
}

/// Ascending spectrum of -L together with the gap and the measure used.
struct SpectralReport {
    Eigen::VectorXd spectrum; // eigenvalues of -L, ascending
    double gap = 0.0;         // spectrum[1]
    StationaryMeasure measure;
};

/// Exact spectrum of -L for an irreducible reversible graph. Conjugates by
/// diag(sqrt(mu)) which detailed balance makes symmetric, then runs a dense
/// symmetric eigendecomposition.
inline SpectralReport spectral_gap(const WeightedDigraph& g,
                                   std::size_t state_cap = kDefaultStateCap) {
    const int n = g.size();
    if (static_cast<std::size_t>(n) > state_cap)
        throw CapExceeded("spectral_gap: " + std::to_string(n) + " states exceed cap");
    auto mu = reversible_measure(g);
    if (!mu) throw NotReversible("spectral_gap: graph is not reversible");
    const Eigen::MatrixXd a = negative_generator_matrix(g);
    Eigen::VectorXd sqrt_mu = mu->values.array().sqrt();
    Eigen::MatrixXd sym(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sym(i, j) = sqrt_mu(i) * a(i, j) / sqrt_mu(j);
    sym = ((sym + sym.transpose()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success)
        throw Error("spectral_gap: eigendecomposition failed");
    Eigen::VectorXd spectrum = solver.eigenvalues();
    if (std::fabs(spectrum(0)) > tol::eig_zero)
        throw Error("spectral_gap: lambda_0 deviates from 0 beyond tolerance");
    SpectralReport report;
    report.spectrum = std::move(spectrum);
    report.gap = report.spectrum(1);
    report.measure = std::move(*mu);
    return report;
}

/// -<f, Lf>_mu / <f, f>_mu for f orthogonal to constants in the mu inner
/// product. Never falls below the spectral gap.
inline double rayleigh_quotient(const WeightedDigraph& g, const StateFunction& f,
                                const StationaryMeasure& mu) {
    const int n = g.size();
    if (f.size() != n || mu.values.size() != n)
        throw InvalidInput("rayleigh_quotient: length mismatch");
    const double norm2 = (f.array().square() * mu.values.array()).sum();
    if (norm2 <= 0.0) throw InvalidInput("rayleigh_quotient: f is zero");
    const double mean = (f.array() * mu.values.array()).sum();
    const double scale = (f.array().abs() * mu.values.array()).sum();
    if (std::fabs(mean) > 1e-9 * std::max(1.0, scale))
        throw InvalidInput("rayleigh_quotient: f is not orthogonal to constants");
    const StateFunction lf = apply_generator(g, f);
    const double energy = -(f.array() * lf.array() * mu.values.array()).sum();
    return energy / norm2;
}

/// Morphism criterion: C2(phi(x), y) = sum over the fiber phi^{-1}(y) of
/// C1(x, .), for all x and all y != phi(x). phi maps state indices of g1
/// to state indices of g2.
inline bool check_morphism(const WeightedDigraph& g1, const WeightedDigraph& g2,
                           const std::vector<int>& phi) {
    const int n1 = g1.size();
    const int n2 = g2.size();
    if (static_cast<int>(phi.size()) != n1)
        throw InvalidInput("check_morphism: phi must be total on the source");
    for (int v : phi)
        if (v < 0 || v >= n2) throw InvalidInput("check_morphism: phi maps to unknown state");
    for (int x = 0; x < n1; ++x) {
        Eigen::VectorXd fiber_sum = Eigen::VectorXd::Zero(n2);
        for (int yp = 0; yp < n1; ++yp)
            fiber_sum(phi[static_cast<std::size_t>(yp)]) += g1.rates(x, yp);
        const int px = phi[static_cast<std::size_t>(x)];
        for (int y = 0; y < n2; ++y) {
            if (y == px) continue;
            if (!nearly_equal(g2.rates(px, y), fiber_sum(y))) return false;
        }
    }
    return true;
}

/// Surjectivity of a state map, as index coverage of the target.
inline bool is_surjective(const std::vector<int>& phi, int target_size) {
    std::vector<char> hit(static_cast<std::size_t>(target_size), 0);
    for (int v : phi)
        if (v >= 0 && v < target_size) hit[static_cast<std::size_t>(v)] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

/// Greedy sorted multiset embedding of inner eigenvalues into outer ones.
inline bool spectrum_contained(const SpectralReport& inner, const SpectralReport& outer,
                               double tolerance) {
    const auto& a = inner.spectrum;
    const auto& b = outer.spectrum;
    Eigen::Index j = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        while (j < b.size() && b(j) < a(i) - tolerance) ++j;
        if (j >= b.size() || std::fabs(b(j) - a(i)) > tolerance) return false;
        ++j;
    }
    return true;
}

} // namespace specgap
