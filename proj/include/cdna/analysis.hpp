#pragma once

#include <future>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cdna/channels.hpp"
#include "cdna/codes.hpp"
#include "cdna/core.hpp"
#include "cdna/graph.hpp"
#include "cdna/text_io.hpp"

namespace cdna {

// ---------------------------------------------------------------------------
// closed-form bounds

/// ceil((M+1)/(t+1))^n
inline BigInt strand_loss_bound(std::uint64_t M, std::uint64_t n, std::uint64_t t) {
    if (t < 1) throw DomainError("strand-loss bound needs t >= 1");
    return power(M / (t + 1) + 1, n);
}

/// ceil((M+1)/2)^n * D(n, t)
inline BigInt deletion_bound(std::uint64_t M, std::uint64_t n, std::uint64_t t, const BigInt& binary_max) {
    if (t >= n) throw DomainError("deletion bound needs t < n");
    return power((M + 2) / 2, n) * binary_max;
}

// ---------------------------------------------------------------------------
// confusability graphs

enum class EdgeSource {
    metric,  // L1 / L-infinity thresholds (substitution and strand loss only)
    balls,   // intersection of enumerated error balls
};

struct GraphOptions {
    std::size_t vertex_limit = 1u << 16;  // hard limit on (M+1)^n
    BallOptions balls;
};

/// Vertices are [0, M]^n in lexicographic order; u ~ v when the radius-t
/// balls of u and v intersect.
inline Graph confusability_graph(Level M, std::size_t n, std::size_t t, ErrorKind kind, EdgeSource source,
                                 const GraphOptions& opt = {}) {
    const auto vertices = all_vectors(M, n, opt.vertex_limit);
    Graph g(vertices.size());
    if (source == EdgeSource::metric) {
        if (kind != ErrorKind::substitution && kind != ErrorKind::strand_loss)
            throw ConfigError("metric edges exist only for substitution and strand-loss errors");
        for (std::size_t u = 0; u < vertices.size(); ++u)
            for (std::size_t v = u + 1; v < vertices.size(); ++v) {
                const bool close = kind == ErrorKind::substitution ? l1_distance(vertices[u], vertices[v]) <= 2 * t
                                                                   : linf_distance(vertices[u], vertices[v]) <= t;
                if (close) g.add_edge(u, v);
            }
        return g;
    }
    std::map<ChannelOutput, std::vector<std::size_t>> owners;
    for (std::size_t v = 0; v < vertices.size(); ++v)
        for (ChannelOutput& out : error_ball_upto(vertices[v], t, kind, opt.balls)) owners[std::move(out)].push_back(v);
    for (const auto& [out, who] : owners)
        for (std::size_t a = 0; a < who.size(); ++a)
            for (std::size_t b = a + 1; b < who.size(); ++b) g.add_edge(who[a], who[b]);
    return g;
}

/// Number of vertex pairs on which two graphs disagree.
inline std::size_t count_edge_mismatches(const Graph& a, const Graph& b) {
    if (a.size() != b.size()) throw ShapeError("graphs have different vertex counts");
    std::size_t bad = 0;
    for (std::size_t u = 0; u < a.size(); ++u)
        for (std::size_t v = u + 1; v < a.size(); ++v)
            if (a.adjacent(u, v) != b.adjacent(u, v)) ++bad;
    return bad;
}

// ---------------------------------------------------------------------------
// exact maximum codes

struct MaxCodeOptions {
    /// Default: metric edges for S and L, enumerated balls otherwise.
    std::optional<EdgeSource> edges;
    /// Above this many vertices only the greedy lower bound is computed.
    std::size_t exact_vertex_limit = 4096;
    std::uint64_t node_budget = 50'000'000;
    GraphOptions graph;
};

struct MaxCodeResult {
    std::size_t size = 0;
    std::vector<CompositeVector> witness;
    bool exact = true;
    std::string method;
};

namespace detail {

inline EdgeSource default_edges(ErrorKind kind) {
    return kind == ErrorKind::substitution || kind == ErrorKind::strand_loss ? EdgeSource::metric : EdgeSource::balls;
}

}  // namespace detail

/// Largest code in [0, M]^n correcting t errors of the given kind, found as a
/// maximum independent set of the confusability graph.
inline MaxCodeResult exact_max_code(Level M, std::size_t n, std::size_t t, ErrorKind kind,
                                    const MaxCodeOptions& opt = {}) {
    const Graph g = confusability_graph(M, n, t, kind, opt.edges.value_or(detail::default_edges(kind)), opt.graph);
    const auto vertices = all_vectors(M, n, opt.graph.vertex_limit);
    IndependentSet best = g.size() <= opt.exact_vertex_limit ? maximum_independent_set(g, opt.node_budget)
                                                             : greedy_independent_set(g);
    MaxCodeResult out;
    out.size = best.vertices.size();
    out.exact = best.exact;
    out.method = best.exact ? "exact-search" : "greedy-lower-bound";
    for (std::size_t v : best.vertices) out.witness.push_back(vertices[v]);
    return out;
}

/// Length of a longest common subsequence of two binary rows.
inline std::size_t longest_common_subsequence(const Row& a, const Row& b) {
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j)
            cur[j + 1] = a[i] == b[j] ? prev[j] + 1 : std::max(prev[j + 1], cur[j]);
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

struct BinaryCodeOptions {
    std::size_t max_length = 12;
    std::uint64_t node_budget = 200'000'000;
};

struct BinaryCodeResult {
    std::size_t size = 0;
    std::vector<Row> witness;
};

/// D(n, t): two binary words are confusable under t deletions exactly when
/// they share a subsequence of length n - t.
inline BinaryCodeResult binary_deletion_max(std::size_t n, std::size_t t, const BinaryCodeOptions& opt = {}) {
    if (n < 1) throw DomainError("binary deletion code needs n >= 1");
    if (n > opt.max_length) throw OverflowError("binary deletion search beyond the length cap");
    const std::size_t count = std::size_t{1} << n;
    std::vector<Row> words;
    words.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
        Row r(n);
        for (std::size_t j = 0; j < n; ++j)
            if ((w >> (n - 1 - j)) & 1u) r.set(j, true);
        words.push_back(std::move(r));
    }
    Graph g(count);
    const std::size_t keep = t >= n ? 0 : n - t;
    for (std::size_t u = 0; u < count; ++u)
        for (std::size_t v = u + 1; v < count; ++v)
            if (longest_common_subsequence(words[u], words[v]) >= keep) g.add_edge(u, v);
    IndependentSet best = maximum_independent_set(g, opt.node_budget);
    if (!best.exact) throw OverflowError("binary deletion search exhausted its node budget");
    BinaryCodeResult out;
    out.size = best.vertices.size();
    for (std::size_t v : best.vertices) out.witness.push_back(words[v]);
    return out;
}

// ---------------------------------------------------------------------------
// partition bounds

struct Interval {
    Level lo;
    Level hi;  // inclusive
    bool contains(Level v) const noexcept { return lo <= v && v <= hi; }
};

/// Product partition of [0, M]^n: each cell picks one interval per coordinate.
struct PartitionScheme {
    Level M;
    std::size_t n;
    std::vector<Interval> intervals;  // shared by every coordinate

    std::size_t cell_count() const {
        BigInt c = power(intervals.size(), n);
        if (c > BigInt(SIZE_MAX)) throw OverflowError("too many partition cells");
        return static_cast<std::size_t>(c);
    }

    /// Cells of side t+1 anchored at multiples of t+1.
    static PartitionScheme strand_loss(Level M, std::size_t n, Level t) {
        PartitionScheme s{M, n, {}};
        for (Level u = 0; u <= M; u += t + 1) s.intervals.push_back({u, std::min<Level>(u + t, M)});
        return s;
    }

    /// Pairs {u, u+1}; for even M the first cell is the single level 0.
    static PartitionScheme deletion(Level M, std::size_t n) {
        PartitionScheme s{M, n, {}};
        Level u = 0;
        if (M % 2 == 0) {
            s.intervals.push_back({0, 0});
            u = 1;
        }
        for (; u + 1 <= M; u += 2) s.intervals.push_back({u, u + 1});
        return s;
    }

    static PartitionScheme singletons(Level M, std::size_t n) {
        PartitionScheme s{M, n, {}};
        for (Level u = 0; u <= M; ++u) s.intervals.push_back({u, u});
        return s;
    }
};

struct PartitionVerdict {
    std::size_t cells = 0;
    bool exhaustive = false;
    bool disjoint = false;
    std::vector<std::size_t> cell_maxima;
    std::size_t cell_sum = 0;
    std::size_t global_max = 0;
    bool exact = true;
    bool holds = false;  // global_max <= cell_sum
};

/// Checks the scheme covers [0, M]^n, then compares the exact maximum code
/// with the sum of per-cell maxima. Confusability inside a cell is judged in
/// the full space, so cells only restrict which vectors may be codewords.
inline PartitionVerdict partition_bound_check(const PartitionScheme& scheme, ErrorKind kind, std::size_t t,
                                              const MaxCodeOptions& opt = {}) {
    const auto vertices = all_vectors(scheme.M, scheme.n, opt.graph.vertex_limit);
    PartitionVerdict out;
    out.cells = scheme.cell_count();

    std::vector<std::size_t> hits(scheme.M + 1, 0);
    BigInt covered = 0;
    for (const Interval& iv : scheme.intervals) {
        if (iv.lo > iv.hi || iv.hi > scheme.M) throw ConfigError("partition interval outside [0, M]");
        for (Level v = iv.lo; v <= iv.hi; ++v) ++hits[v];
        covered += iv.hi - iv.lo + 1;
    }
    out.exhaustive = std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h >= 1; });
    out.disjoint = std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h <= 1; });
    if (!out.exhaustive) throw ConfigError("partition scheme does not cover [0, M]^n");
    if (out.disjoint && power(covered, scheme.n) != power(scheme.M + 1, scheme.n))
        throw ConfigError("partition cell sizes do not add up to (M+1)^n");

    const Graph g = confusability_graph(scheme.M, scheme.n, t, kind, opt.edges.value_or(detail::default_edges(kind)),
                                        opt.graph);
    const std::size_t k = scheme.intervals.size();
    std::vector<std::size_t> choice(scheme.n, 0);
    for (std::size_t cell = 0; cell < out.cells; ++cell) {
        std::size_t c = cell;
        for (std::size_t j = scheme.n; j-- > 0;) {
            choice[j] = c % k;
            c /= k;
        }
        std::vector<std::size_t> members;
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            bool in = true;
            for (std::size_t j = 0; j < scheme.n && in; ++j) in = scheme.intervals[choice[j]].contains(vertices[v][j]);
            if (in) members.push_back(v);
        }
        IndependentSet best = maximum_independent_set(g.induced(members), opt.node_budget);
        out.exact = out.exact && best.exact;
        out.cell_maxima.push_back(best.vertices.size());
        out.cell_sum += best.vertices.size();
    }
    IndependentSet global = maximum_independent_set(g, opt.node_budget);
    out.exact = out.exact && global.exact;
    out.global_max = global.vertices.size();
    out.holds = out.global_max <= out.cell_sum;
    return out;
}

// ---------------------------------------------------------------------------
// bound reports

struct BoundReport {
    ErrorKind kind;
    Level M;
    std::size_t n;
    std::size_t t;
    std::optional<BigInt> bound;
    std::optional<BigInt> achieved;
    std::string method;
    bool complete = true;
};

/// Best known upper bound and achieved code size for one parameter set.
inline BoundReport bound_report(ErrorKind kind, Level M, std::size_t n, std::size_t t,
                                const MaxCodeOptions& opt = {}) {
    if (M < 1 || n < 1) throw ConfigError("bounds need M >= 1 and n >= 1");
    BoundReport r{kind, M, n, t, std::nullopt, std::nullopt, "", true};
    switch (kind) {
        case ErrorKind::strand_loss:
            if (t < 1) throw ConfigError("strand-loss bound needs t >= 1");
            r.bound = strand_loss_bound(M, n, t);
            if (t < M) {
                r.achieved = sl_code_size(StrandLossCode(M, n, static_cast<Level>(t)));
                r.method = "construction-1";
            } else {
                r.achieved = 1;
                r.method = "trivial";
            }
            return r;
        case ErrorKind::deletion:
        case ErrorKind::insertion:
        case ErrorKind::indel: {
            if (t < 1 || t >= n) throw ConfigError("deletion bound needs 1 <= t < n");
            const BinaryCodeResult binary = binary_deletion_max(n, t);
            r.bound = deletion_bound(M, n, t, binary.size);
            if (t == 1) {
                BigInt best = 0;
                for (std::size_t a = 0; a <= n; ++a) best = std::max(best, vt_code_size(CompositeVTCode(M, n, a)));
                r.achieved = best;
                r.method = "construction-2";
            } else {
                r.method = "partition-bound";
            }
            return r;
        }
        case ErrorKind::substitution: {
            const MaxCodeResult best = exact_max_code(M, n, t, kind, opt);
            r.achieved = best.size;
            if (best.exact) r.bound = best.size;
            r.method = best.method;
            r.complete = best.exact;
            return r;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// claim sweeps

struct ClaimInstance {
    Level M;
    std::size_t n;
    std::size_t t;
};

struct ClaimGrid {
    std::vector<ClaimInstance> l1_substitution;        // d1 >= 2t+1  <=>  S-balls disjoint
    std::vector<ClaimInstance> linf_strand_loss;       // d_inf >= t+1  <=>  L-balls disjoint
    std::vector<ClaimInstance> deletion_equivalence;   // D-, I- and ID-disjointness agree
    std::vector<ClaimInstance> single_deletion_size;   // closed form == enumerated ball size

    bool empty() const noexcept {
        return l1_substitution.empty() && linf_strand_loss.empty() && deletion_equivalence.empty() &&
               single_deletion_size.empty();
    }

    static ClaimGrid small() {
        ClaimGrid g;
        for (Level M = 1; M <= 3; ++M)
            for (std::size_t n = 1; n <= 2; ++n)
                for (std::size_t t = 1; t <= 2; ++t) {
                    g.l1_substitution.push_back({M, n, t});
                    g.linf_strand_loss.push_back({M, n, t});
                }
        for (Level M = 1; M <= 2; ++M)
            for (std::size_t n = 1; n <= 3; ++n) g.deletion_equivalence.push_back({M, n, 1});
        for (Level M = 1; M <= 4; ++M)
            for (std::size_t n = 1; n <= 3; ++n) g.single_deletion_size.push_back({M, n, 1});
        return g;
    }
};

struct ClaimRecord {
    std::string claim;
    ClaimInstance params;
    std::size_t cases = 0;
    std::vector<std::string> counterexamples;
    bool complete = true;
};

namespace detail {

inline ClaimRecord metric_sweep(const std::string& name, ErrorKind kind, const ClaimInstance& p,
                                const BallOptions& opt, std::size_t vertex_limit) {
    ClaimRecord rec{name, p, 0, {}, true};
    try {
        const auto vs = all_vectors(p.M, p.n, vertex_limit);
        std::vector<std::vector<ChannelOutput>> balls;
        balls.reserve(vs.size());
        for (const auto& v : vs) balls.push_back(error_ball_upto(v, p.t, kind, opt));
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t k = i; k < vs.size(); ++k) {
                ++rec.cases;
                const bool far = kind == ErrorKind::substitution ? l1_distance(vs[i], vs[k]) >= 2 * p.t + 1
                                                                 : linf_distance(vs[i], vs[k]) >= p.t + 1;
                const bool disjoint = !sorted_intersect(balls[i], balls[k]);
                if (far != disjoint)
                    rec.counterexamples.push_back(format_vector(vs[i]) + " | " + format_vector(vs[k]) +
                                                  (far ? " far but balls meet" : " close but balls disjoint"));
            }
    } catch (const OverflowError&) {
        rec.complete = false;
    }
    return rec;
}

inline ClaimRecord deletion_sweep(const ClaimInstance& p, const BallOptions& opt, std::size_t vertex_limit) {
    ClaimRecord rec{"deletion-insertion-indel", p, 0, {}, true};
    try {
        const auto vs = all_vectors(p.M, p.n, vertex_limit);
        std::vector<std::vector<ChannelOutput>> del, ins, indel;
        for (const auto& v : vs) {
            del.push_back(error_ball_upto(v, p.t, ErrorKind::deletion, opt));
            ins.push_back(error_ball_upto(v, p.t, ErrorKind::insertion, opt));
            indel.push_back(error_ball_upto(v, p.t, ErrorKind::indel, opt));
        }
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t k = i; k < vs.size(); ++k) {
                ++rec.cases;
                const bool d = !sorted_intersect(del[i], del[k]);
                const bool in = !sorted_intersect(ins[i], ins[k]);
                const bool id = !sorted_intersect(indel[i], indel[k]);
                if (d != in || d != id) {
                    std::ostringstream msg;
                    msg << format_vector(vs[i]) << " | " << format_vector(vs[k]) << " disjoint D=" << d
                        << " I=" << in << " ID=" << id;
                    rec.counterexamples.push_back(msg.str());
                }
            }
    } catch (const OverflowError&) {
        rec.complete = false;
    }
    return rec;
}

inline ClaimRecord ball_size_sweep(const ClaimInstance& p, const BallOptions& opt, std::size_t vertex_limit) {
    ClaimRecord rec{"single-deletion-ball-size", p, 0, {}, true};
    try {
        for (const auto& v : all_vectors(p.M, p.n, vertex_limit)) {
            ++rec.cases;
            const BigInt formula = single_deletion_ball_size(v);
            const std::size_t counted = error_ball(v, 1, ErrorKind::deletion, opt).size();
            if (formula != counted)
                rec.counterexamples.push_back(format_vector(v) + " formula=" + formula.str() +
                                              " enumerated=" + std::to_string(counted));
        }
    } catch (const OverflowError&) {
        rec.complete = false;
    }
    return rec;
}

}  // namespace detail

/// Runs every sweep in the grid. Instances run concurrently; records come
/// back in grid order.
inline std::vector<ClaimRecord> verify_claims(const ClaimGrid& grid, const BallOptions& opt = {},
                                              std::size_t vertex_limit = 4096) {
    std::vector<std::future<ClaimRecord>> jobs;
    for (const auto& p : grid.l1_substitution)
        jobs.push_back(std::async(std::launch::async, [=] {
            return detail::metric_sweep("l1-substitution", ErrorKind::substitution, p, opt, vertex_limit);
        }));
    for (const auto& p : grid.linf_strand_loss)
        jobs.push_back(std::async(std::launch::async, [=] {
            return detail::metric_sweep("linf-strand-loss", ErrorKind::strand_loss, p, opt, vertex_limit);
        }));
    for (const auto& p : grid.deletion_equivalence)
        jobs.push_back(std::async(std::launch::async, [=] { return detail::deletion_sweep(p, opt, vertex_limit); }));
    for (const auto& p : grid.single_deletion_size)
        jobs.push_back(std::async(std::launch::async, [=] { return detail::ball_size_sweep(p, opt, vertex_limit); }));
    std::vector<ClaimRecord> out;
    out.reserve(jobs.size());
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace cdna
