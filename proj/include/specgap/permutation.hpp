#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "specgap/errors.hpp"
#include "specgap/numeric.hpp"

namespace specgap {

/// Permutation of {0,...,N-1} in one-line notation: i maps to images[i].
struct Permutation {
    std::vector<int> images;

    Permutation() = default;
    explicit Permutation(std::vector<int> imgs) : images(std::move(imgs)) {
        if (!is_valid()) throw InvalidInput("not a permutation in one-line notation");
    }

    static Permutation identity(int n) {
        Permutation p;
        p.images.resize(static_cast<std::size_t>(n));
        std::iota(p.images.begin(), p.images.end(), 0);
        return p;
    }

    static Permutation transposition(int n, int i, int j) {
        Permutation p = identity(n);
        std::swap(p.images[static_cast<std::size_t>(i)],
                  p.images[static_cast<std::size_t>(j)]);
        return p;
    }

    int degree() const { return static_cast<int>(images.size()); }
    int operator()(int i) const { return images[static_cast<std::size_t>(i)]; }

    bool is_identity() const {
        for (int i = 0; i < degree(); ++i)
            if (images[static_cast<std::size_t>(i)] != i) return false;
        return true;
    }

    bool is_valid() const {
        std::vector<char> seen(images.size(), 0);
        for (int v : images) {
            if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)]) return false;
            seen[static_cast<std::size_t>(v)] = 1;
        }
        return true;
    }

    // Lexicographic order on one-line notation; the canonical order everywhere.
    auto operator<=>(const Permutation&) const = default;
};

/// (g o h)(i) = g(h(i)).
inline Permutation compose(const Permutation& g, const Permutation& h) {
    if (g.degree() != h.degree()) throw InvalidInput("compose: degree mismatch");
    Permutation r;
    r.images.resize(g.images.size());
    for (std::size_t i = 0; i < h.images.size(); ++i)
        r.images[i] = g.images[static_cast<std::size_t>(h.images[i])];
    return r;
}

inline Permutation inverse(const Permutation& g) {
    Permutation r;
    r.images.resize(g.images.size());
    for (std::size_t i = 0; i < g.images.size(); ++i)
        r.images[static_cast<std::size_t>(g.images[i])] = static_cast<int>(i);
    return r;
}

inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

/// Lexicographic rank of a permutation among all of its degree (Lehmer code).
inline std::uint64_t permutation_rank(const Permutation& p) {
    const int n = p.degree();
    std::uint64_t rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (p.images[static_cast<std::size_t>(j)] < p.images[static_cast<std::size_t>(i)])
                ++smaller;
        rank += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - i);
    }
    return rank;
}

/// All permutations of the given degree in lexicographic (rank) order.
inline std::vector<Permutation> symmetric_group(int degree,
                                                std::size_t cap = kDefaultClosureCap) {
    if (degree < 1) throw InvalidInput("symmetric_group: degree must be >= 1");
    if (degree > 20 || factorial(degree) > cap)
        throw CapExceeded("symmetric_group: " + std::to_string(degree) + "! exceeds cap");
    std::vector<Permutation> all;
    all.reserve(static_cast<std::size_t>(factorial(degree)));
    Permutation p = Permutation::identity(degree);
    do {
        all.push_back(p);
    } while (std::next_permutation(p.images.begin(), p.images.end()));
    return all;
}

inline std::string to_string(const Permutation& p) {
    std::string s = "[";
    for (int i = 0; i < p.degree(); ++i) {
        if (i) s += ' ';
        s += std::to_string(p.images[static_cast<std::size_t>(i)]);
    }
    s += ']';
    return s;
}

} // namespace specgap
