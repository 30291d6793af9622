#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cdna/core.hpp"
#include "cdna/random.hpp"

namespace cdna {

enum class ErrorKind { substitution, strand_loss, deletion, insertion, indel };

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::substitution: return "S";
        case ErrorKind::strand_loss: return "L";
        case ErrorKind::deletion: return "D";
        case ErrorKind::insertion: return "I";
        case ErrorKind::indel: return "ID";
    }
    return "?";
}

inline ErrorKind parse_error_kind(std::string_view text) {
    if (text == "S") return ErrorKind::substitution;
    if (text == "L") return ErrorKind::strand_loss;
    if (text == "D") return ErrorKind::deletion;
    if (text == "I") return ErrorKind::insertion;
    if (text == "ID") return ErrorKind::indel;
    throw ConfigError("unknown error kind '" + std::string(text) + "' (expected S, L, D, I or ID)");
}

/// One channel event. Row, column and insertion positions are zero-based and
/// always refer to the transmitted matrix, never to a partially modified one.
struct ErrorEvent {
    enum class Op { flip, lose, erase, insert };

    Op op;
    std::size_t row = 0;
    std::size_t pos = 0;  // column for flip/erase, gap in [0, n] for insert
    bool symbol = false;  // inserted symbol

    friend bool operator==(const ErrorEvent&, const ErrorEvent&) = default;
};

struct ErrorPattern {
    ErrorKind kind;
    std::vector<ErrorEvent> events;

    std::size_t size() const noexcept { return events.size(); }
    friend bool operator==(const ErrorPattern&, const ErrorPattern&) = default;
};

struct ChannelConfig {
    ErrorKind kind;
    std::size_t t = 0;
    std::uint64_t seed = 0;
};

namespace detail {

inline bool op_allowed(ErrorKind kind, ErrorEvent::Op op) {
    using Op = ErrorEvent::Op;
    switch (kind) {
        case ErrorKind::substitution: return op == Op::flip;
        case ErrorKind::strand_loss: return op == Op::lose;
        case ErrorKind::deletion: return op == Op::erase;
        case ErrorKind::insertion: return op == Op::insert;
        case ErrorKind::indel: return op == Op::erase || op == Op::insert;
    }
    return false;
}

inline void validate_pattern(std::size_t M, std::size_t n, const ErrorPattern& p) {
    std::set<std::pair<std::size_t, std::size_t>> cells;
    std::set<std::size_t> lost;
    for (const ErrorEvent& e : p.events) {
        if (!op_allowed(p.kind, e.op)) throw PatternError("event type does not match pattern kind");
        if (e.row >= M) throw PatternError("event row out of range");
        switch (e.op) {
            case ErrorEvent::Op::lose:
                if (!lost.insert(e.row).second) throw PatternError("strand lost twice");
                break;
            case ErrorEvent::Op::flip:
            case ErrorEvent::Op::erase:
                if (e.pos >= n) throw PatternError("event column out of range");
                if (!cells.emplace(e.row, e.pos).second) throw PatternError("two events hit the same cell");
                break;
            case ErrorEvent::Op::insert:
                if (e.pos > n) throw PatternError("insertion position out of range");
                break;
        }
    }
}

}  // namespace detail

/// Applies a pattern to X. Deleted cells are removed and the row closes up to
/// the left; an insertion at gap h lands before original symbol h, and
/// insertions sharing a gap keep their event order.
inline ChannelOutput apply_pattern(const StrandMatrix& X, const ErrorPattern& p) {
    const std::size_t M = X.strand_count();
    const std::size_t n = X.length();
    detail::validate_pattern(M, n, p);

    if (p.kind == ErrorKind::substitution) {
        std::vector<Row> rows = X.rows();
        for (const ErrorEvent& e : p.events) rows[e.row].flip(e.pos);
        return ChannelOutput(std::move(rows));
    }
    if (p.kind == ErrorKind::strand_loss) {
        std::vector<bool> gone(M, false);
        for (const ErrorEvent& e : p.events) gone[e.row] = true;
        std::vector<Row> rows;
        for (std::size_t i = 0; i < M; ++i)
            if (!gone[i]) rows.push_back(X.row(i));
        return ChannelOutput(std::move(rows));
    }

    std::vector<Row> rows;
    rows.reserve(M);
    for (std::size_t i = 0; i < M; ++i) {
        std::vector<bool> keep(n, true);
        std::vector<std::vector<bool>> inserted(n + 1);
        bool touched = false;
        for (const ErrorEvent& e : p.events) {
            if (e.row != i) continue;
            touched = true;
            if (e.op == ErrorEvent::Op::erase)
                keep[e.pos] = false;
            else
                inserted[e.pos].push_back(e.symbol);
        }
        if (!touched) {
            rows.push_back(X.row(i));
            continue;
        }
        Row out;
        for (std::size_t h = 0; h <= n; ++h) {
            for (bool s : inserted[h]) out.push_back(s);
            if (h < n && keep[h]) out.push_back(X.row(i)[h]);
        }
        rows.push_back(std::move(out));
    }
    return ChannelOutput(std::move(rows));
}

/// Number of distinct patterns of the given kind with exactly t events.
inline BigInt pattern_space_size(std::size_t M, std::size_t n, ErrorKind kind, std::size_t t) {
    const BigInt insert_choices = BigInt(2) * M * (n + 1);
    switch (kind) {
        case ErrorKind::substitution:
        case ErrorKind::deletion: return binomial(M * n, t);
        case ErrorKind::strand_loss: return binomial(M, t);
        case ErrorKind::insertion: return power(insert_choices, t);
        case ErrorKind::indel: {
            BigInt total = 0;
            for (std::size_t td = 0; td <= t; ++td) total += binomial(M * n, td) * power(insert_choices, t - td);
            return total;
        }
    }
    return 0;
}

inline void validate_config(std::size_t M, std::size_t n, const ChannelConfig& cfg) {
    if (M < 1 || n < 1) throw ConfigError("channel needs M >= 1 and n >= 1");
    switch (cfg.kind) {
        case ErrorKind::substitution:
            if (cfg.t > M * n) throw ConfigError("more substitutions than cells");
            break;
        case ErrorKind::strand_loss:
            if (cfg.t > M) throw ConfigError("more strand losses than strands");
            break;
        case ErrorKind::deletion:
            if (cfg.t > n) throw ConfigError("deletion channel requires t <= n");
            break;
        case ErrorKind::insertion:
        case ErrorKind::indel: break;
    }
}

/// Draws a pattern uniformly from the kind's pattern space. Indel patterns
/// list their deletions (sorted) before their insertions.
inline ErrorPattern sample_pattern(std::size_t M, std::size_t n, const ChannelConfig& cfg) {
    validate_config(M, n, cfg);
    SplitMix64 rng(cfg.seed);
    ErrorPattern p{cfg.kind, {}};
    const std::size_t t = cfg.t;

    auto cells = [&](std::size_t k, ErrorEvent::Op op) {
        for (std::uint64_t c : rng.subset(M * n, k)) p.events.push_back({op, c / n, c % n, false});
    };
    auto insertions = [&](std::size_t k) {
        for (std::size_t l = 0; l < k; ++l) {
            const std::size_t row = rng.below(M);
            const std::size_t gap = rng.below(n + 1);
            const bool symbol = rng.below(2) == 1;
            p.events.push_back({ErrorEvent::Op::insert, row, gap, symbol});
        }
    };

    switch (cfg.kind) {
        case ErrorKind::substitution: cells(t, ErrorEvent::Op::flip); break;
        case ErrorKind::deletion: cells(t, ErrorEvent::Op::erase); break;
        case ErrorKind::strand_loss:
            for (std::uint64_t r : rng.subset(M, t)) p.events.push_back({ErrorEvent::Op::lose, r, 0, false});
            break;
        case ErrorKind::insertion: insertions(t); break;
        case ErrorKind::indel: {
            // pick the deletion count with weight equal to its share of the space
            BigInt pick = rng.below(pattern_space_size(M, n, ErrorKind::indel, t));
            const BigInt insert_choices = BigInt(2) * M * (n + 1);
            std::size_t td = 0;
            for (; td <= t; ++td) {
                const BigInt weight = binomial(M * n, td) * power(insert_choices, t - td);
                if (pick < weight) break;
                pick -= weight;
            }
            cells(td, ErrorEvent::Op::erase);
            insertions(t - td);
            break;
        }
    }
    return p;
}

inline std::string format_pattern(const ErrorPattern& p) {
    std::ostringstream out;
    out << to_string(p.kind) << ' ' << p.size() << '\n';
    for (const ErrorEvent& e : p.events) {
        if (p.kind == ErrorKind::indel) out << (e.op == ErrorEvent::Op::erase ? "D " : "I ");
        switch (e.op) {
            case ErrorEvent::Op::lose: out << e.row; break;
            case ErrorEvent::Op::flip:
            case ErrorEvent::Op::erase: out << e.row << ' ' << e.pos; break;
            case ErrorEvent::Op::insert: out << e.row << ' ' << e.pos << ' ' << (e.symbol ? 1 : 0); break;
        }
        out << '\n';
    }
    return out.str();
}

inline ErrorPattern parse_pattern(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("missing pattern header");
    std::istringstream hs(line);
    std::string kind_text;
    long long t = -1;
    if (!(hs >> kind_text >> t) || t < 0) throw FormatError("expected pattern header 'kind t'");
    ErrorPattern p{parse_error_kind(kind_text), {}};
    for (long long l = 0; l < t; ++l) {
        if (!std::getline(in, line)) throw FormatError("pattern has fewer events than its header");
        std::istringstream es(line);
        ErrorEvent::Op op{};
        switch (p.kind) {
            case ErrorKind::substitution: op = ErrorEvent::Op::flip; break;
            case ErrorKind::strand_loss: op = ErrorEvent::Op::lose; break;
            case ErrorKind::deletion: op = ErrorEvent::Op::erase; break;
            case ErrorKind::insertion: op = ErrorEvent::Op::insert; break;
            case ErrorKind::indel: {
                std::string tag;
                es >> tag;
                if (tag == "D")
                    op = ErrorEvent::Op::erase;
                else if (tag == "I")
                    op = ErrorEvent::Op::insert;
                else
                    throw FormatError("indel event must start with D or I");
                break;
            }
        }
        long long row = -1, pos = 0, symbol = 0;
        bool ok = static_cast<bool>(es >> row);
        if (op != ErrorEvent::Op::lose) ok = ok && static_cast<bool>(es >> pos);
        if (op == ErrorEvent::Op::insert) ok = ok && static_cast<bool>(es >> symbol);
        if (!ok || row < 0 || pos < 0 || (symbol != 0 && symbol != 1)) throw FormatError("malformed pattern event");
        p.events.push_back({op, static_cast<std::size_t>(row), static_cast<std::size_t>(pos), symbol == 1});
    }
    return p;
}

// ---------------------------------------------------------------------------
// error balls

struct BallOptions {
    BigInt cap = 2'000'000;
    /// Compare outputs as strand sets (rows sorted) instead of ordered matrices.
    bool canonicalize_rows = false;
};

namespace detail {

using OutputSet = std::set<ChannelOutput>;

inline void insert_checked(OutputSet& set, ChannelOutput out, const BallOptions& opt) {
    if (opt.canonicalize_rows) out = out.canonical();
    set.insert(std::move(out));
    if (set.size() > opt.cap) throw OverflowError("error ball exceeds cap");
}

// Calls fn for every k-subset of [0, n) in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t m = i; m < k; ++m) idx[m] = idx[m - 1] + 1;
    }
}

// One more deletion (or insertion) anywhere, applied to each element of `from`.
inline OutputSet single_step(const OutputSet& from, bool insert, const BallOptions& opt) {
    OutputSet next;
    for (const ChannelOutput& R : from) {
        for (std::size_t i = 0; i < R.row_count(); ++i) {
            const Row& row = R.row(i);
            if (insert) {
                for (std::size_t h = 0; h <= row.size(); ++h)
                    for (bool s : {false, true}) {
                        ChannelOutput out = R;
                        out.mutable_rows()[i].insert(h, s);
                        insert_checked(next, std::move(out), opt);
                    }
            } else {
                for (std::size_t h = 0; h < row.size(); ++h) {
                    ChannelOutput out = R;
                    out.mutable_rows()[i].erase(h);
                    insert_checked(next, std::move(out), opt);
                }
            }
        }
    }
    return next;
}

inline void add_outputs(const StrandMatrix& X, std::size_t t, ErrorKind kind, OutputSet& ball,
                        const BallOptions& opt) {
    const std::size_t M = X.strand_count();
    const std::size_t n = X.length();
    switch (kind) {
        case ErrorKind::substitution:
            for_each_subset(M * n, t, [&](const std::vector<std::size_t>& cells) {
                std::vector<Row> rows = X.rows();
                for (std::size_t c : cells) rows[c / n].flip(c % n);
                insert_checked(ball, ChannelOutput(std::move(rows)), opt);
            });
            return;
        case ErrorKind::strand_loss:
            for_each_subset(M, t, [&](const std::vector<std::size_t>& lost) {
                std::vector<Row> rows;
                std::size_t next = 0;
                for (std::size_t i = 0; i < M; ++i) {
                    if (next < lost.size() && lost[next] == i) {
                        ++next;
                        continue;
                    }
                    rows.push_back(X.row(i));
                }
                insert_checked(ball, ChannelOutput(std::move(rows)), opt);
            });
            return;
        case ErrorKind::deletion:
        case ErrorKind::insertion:
        case ErrorKind::indel: {
            // Single-symbol steps reach exactly the outputs of t distinct
            // original-coordinate events, so the level sets can be deduplicated.
            const std::size_t min_deletions = kind == ErrorKind::deletion ? t : 0;
            const std::size_t max_deletions = kind == ErrorKind::insertion ? 0 : t;
            OutputSet level{ChannelOutput(X)};
            for (std::size_t d = 0; d <= max_deletions; ++d) {
                if (d > 0) level = single_step(level, false, opt);
                if (d < min_deletions) continue;
                OutputSet grown = level;
                for (std::size_t k = d; k < t; ++k) grown = single_step(grown, true, opt);
                for (const ChannelOutput& out : grown) insert_checked(ball, out, opt);
            }
            return;
        }
    }
}

}  // namespace detail

/// B_t(x) for one error kind: every distinct output reachable from some
/// representation of x by exactly t events. Returned sorted.
inline std::vector<ChannelOutput> error_ball(const CompositeVector& x, std::size_t t, ErrorKind kind,
                                             const BallOptions& opt = {}) {
    if (kind == ErrorKind::strand_loss && t > x.strands()) return {};
    if ((kind == ErrorKind::substitution || kind == ErrorKind::deletion) && t > x.strands() * x.length()) return {};
    detail::OutputSet ball;
    for_each_representation(x, opt.cap, [&](const StrandMatrix& X) { detail::add_outputs(X, t, kind, ball, opt); });
    return {ball.begin(), ball.end()};
}

/// Union of B_0(x), ..., B_t(x).
inline std::vector<ChannelOutput> error_ball_upto(const CompositeVector& x, std::size_t t, ErrorKind kind,
                                                  const BallOptions& opt = {}) {
    detail::OutputSet ball;
    for (std::size_t s = 0; s <= t; ++s)
        for (ChannelOutput& out : error_ball(x, s, kind, opt)) detail::insert_checked(ball, std::move(out), opt);
    return {ball.begin(), ball.end()};
}

namespace detail {

inline bool sorted_intersect(const std::vector<ChannelOutput>& a, const std::vector<ChannelOutput>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else
            return true;
    }
    return false;
}

}  // namespace detail

/// True iff no output within t errors of x coincides with one within t
/// errors of y. Both sides may use any number of events up to t.
inline bool balls_disjoint(const CompositeVector& x, const CompositeVector& y, std::size_t t, ErrorKind kind,
                           const BallOptions& opt = {}) {
    detail::require_same_shape(x, y);
    return !detail::sorted_intersect(error_ball_upto(x, t, kind, opt), error_ball_upto(y, t, kind, opt));
}

/// Closed-form |B_1^D(x)| = M * sum_{y in V(x)} r(y) * prod_j C(M-1, x_j - y_j),
/// evaluated by a left-to-right pass over the coordinates that carries, per
/// last bit, the weighted row count and the weighted number of run boundaries.
inline BigInt single_deletion_ball_size(const CompositeVector& x) {
    const Level M = x.strands();
    // weight[b] and boundaries[b] for prefixes ending in bit b
    BigInt weight[2] = {0, 0};
    BigInt boundaries[2] = {0, 0};
    for (std::size_t j = 0; j < x.length(); ++j) {
        BigInt w[2];
        for (int b = 0; b < 2; ++b) {
            const bool allowed = (b == 0 && x[j] < M) || (b == 1 && x[j] > 0);
            w[b] = allowed ? binomial(M - 1, x[j] - b) : BigInt(0);
        }
        BigInt next_weight[2], next_boundaries[2];
        for (int b = 0; b < 2; ++b) {
            if (j == 0) {
                next_weight[b] = w[b];
                next_boundaries[b] = 0;
                continue;
            }
            next_weight[b] = (weight[0] + weight[1]) * w[b];
            next_boundaries[b] = (boundaries[0] + boundaries[1] + weight[1 - b]) * w[b];
        }
        for (int b = 0; b < 2; ++b) {
            weight[b] = std::move(next_weight[b]);
            boundaries[b] = std::move(next_boundaries[b]);
        }
    }
    return BigInt(M) * (weight[0] + weight[1] + boundaries[0] + boundaries[1]);
}

}  // namespace cdna
