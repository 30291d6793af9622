#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "cdna/errors.hpp"

namespace cdna {

/// Fixed-size bitset over vertex ids.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t n) : words_((n + 63) / 64, 0), n_(n) {}

    std::size_t universe() const noexcept { return n_; }
    bool contains(std::size_t v) const noexcept { return (words_[v >> 6] >> (v & 63)) & 1u; }
    void insert(std::size_t v) noexcept { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void erase(std::size_t v) noexcept { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool empty() const noexcept {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }

    VertexSet& operator&=(const VertexSet& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    /// this & ~o
    VertexSet& subtract(const VertexSet& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                fn(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    std::vector<std::uint64_t> words_;
    std::size_t n_ = 0;
};

/// Simple undirected graph; edges are kept symmetric and loop-free.
class Graph {
public:
    explicit Graph(std::size_t n) : adj_(n, VertexSet(n)) {}

    std::size_t size() const noexcept { return adj_.size(); }

    void add_edge(std::size_t u, std::size_t v) {
        if (u == v) return;
        adj_[u].insert(v);
        adj_[v].insert(u);
    }

    bool adjacent(std::size_t u, std::size_t v) const noexcept { return adj_[u].contains(v); }
    const VertexSet& neighbours(std::size_t v) const noexcept { return adj_[v]; }
    std::size_t degree(std::size_t v) const noexcept { return adj_[v].count(); }

    Graph induced(const std::vector<std::size_t>& keep) const {
        Graph g(keep.size());
        for (std::size_t a = 0; a < keep.size(); ++a)
            for (std::size_t b = a + 1; b < keep.size(); ++b)
                if (adjacent(keep[a], keep[b])) g.add_edge(a, b);
        return g;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<VertexSet> adj_;
};

struct IndependentSet {
    std::vector<std::size_t> vertices;
    bool exact = true;
};

/// Picks a minimum-degree vertex among the remaining ones until none are left.
inline IndependentSet greedy_independent_set(const Graph& g) {
    VertexSet alive(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) alive.insert(v);
    IndependentSet out{{}, false};
    while (!alive.empty()) {
        std::size_t best = g.size(), best_deg = SIZE_MAX;
        alive.for_each([&](std::size_t v) {
            VertexSet nb = g.neighbours(v);
            nb &= alive;
            const std::size_t d = nb.count();
            if (d < best_deg) {
                best_deg = d;
                best = v;
            }
        });
        out.vertices.push_back(best);
        alive.erase(best);
        alive.subtract(g.neighbours(best));
    }
    std::sort(out.vertices.begin(), out.vertices.end());
    return out;
}

namespace detail {

// Branch and bound for maximum cliques in the complement graph, with a
// greedy colouring bound (each colour class is an independent set of the
// complement, i.e. a clique of the original graph, so at most one of its
// vertices can be chosen).
class IndependentSetSearch {
public:
    IndependentSetSearch(const Graph& g, std::uint64_t node_budget) : g_(g), budget_(node_budget) {
        // vertices sorted by increasing degree in g
        order_.resize(g.size());
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t a, std::size_t b) { return g.degree(a) < g.degree(b); });
        compatible_.reserve(g.size());
        for (std::size_t v = 0; v < g.size(); ++v) {
            VertexSet c(g.size());
            for (std::size_t u = 0; u < g.size(); ++u)
                if (u != v && !g.adjacent(u, v)) c.insert(u);
            compatible_.push_back(std::move(c));
        }
    }

    IndependentSet run(IndependentSet seed) {
        best_ = std::move(seed.vertices);
        VertexSet all(g_.size());
        for (std::size_t v = 0; v < g_.size(); ++v) all.insert(v);
        std::vector<std::size_t> current;
        expand(current, all);
        std::sort(best_.begin(), best_.end());
        return {best_, !exhausted_};
    }

private:
    void colour(const VertexSet& candidates, std::vector<std::size_t>& verts, std::vector<std::size_t>& bounds) const {
        verts.clear();
        bounds.clear();
        std::vector<std::size_t> pending;
        for (std::size_t v : order_)
            if (candidates.contains(v)) pending.push_back(v);
        std::size_t colour_index = 0;
        while (!pending.empty()) {
            ++colour_index;
            // a colour class: pairwise adjacent in g
            std::vector<std::size_t> rest;
            std::vector<std::size_t> cls;
            for (std::size_t v : pending) {
                bool fits = std::all_of(cls.begin(), cls.end(), [&](std::size_t u) { return g_.adjacent(u, v); });
                if (fits)
                    cls.push_back(v);
                else
                    rest.push_back(v);
            }
            for (std::size_t v : cls) {
                verts.push_back(v);
                bounds.push_back(colour_index);
            }
            pending = std::move(rest);
        }
    }

    void expand(std::vector<std::size_t>& current, VertexSet candidates) {
        if (exhausted_) return;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return;
        }
        std::vector<std::size_t> verts, bounds;
        colour(candidates, verts, bounds);
        for (std::size_t k = verts.size(); k-- > 0;) {
            if (current.size() + bounds[k] <= best_.size()) return;
            const std::size_t v = verts[k];
            current.push_back(v);
            VertexSet next = candidates;
            next &= compatible_[v];
            if (next.empty()) {
                if (current.size() > best_.size()) best_ = current;
            } else {
                expand(current, next);
            }
            current.pop_back();
            candidates.erase(v);
            if (exhausted_) return;
        }
    }

    const Graph& g_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
    std::vector<std::size_t> order_;
    std::vector<VertexSet> compatible_;
    std::vector<std::size_t> best_;
};

}  // namespace detail

/// Maximum independent set. If the search visits more than `node_budget`
/// nodes it stops and returns the best set found with exact = false.
inline IndependentSet maximum_independent_set(const Graph& g, std::uint64_t node_budget = 50'000'000) {
    if (g.size() == 0) return {{}, true};
    detail::IndependentSetSearch search(g, node_budget);
    return search.run(greedy_independent_set(g));
}

}  // namespace cdna
