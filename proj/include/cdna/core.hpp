#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cdna/errors.hpp"
#include "cdna/row.hpp"

namespace cdna {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Level = std::uint32_t;

/// Length-n vector over [0, M]. M is carried explicitly so vectors built for
/// different strand counts never compare or combine silently.
class CompositeVector {
public:
    CompositeVector(Level strands, std::vector<Level> entries)
        : strands_(strands), entries_(std::move(entries)) {
        if (strands_ < 1) throw DomainError("composite vector needs M >= 1");
        if (entries_.empty()) throw DomainError("composite vector needs n >= 1");
        for (Level v : entries_)
            if (v > strands_) throw DomainError("composite entry exceeds M");
    }

    CompositeVector(Level strands, std::initializer_list<Level> entries)
        : CompositeVector(strands, std::vector<Level>(entries)) {}

    Level strands() const noexcept { return strands_; }
    std::size_t length() const noexcept { return entries_.size(); }
    Level operator[](std::size_t j) const noexcept { return entries_[j]; }
    std::span<const Level> entries() const noexcept { return entries_; }

    friend bool operator==(const CompositeVector&, const CompositeVector&) = default;
    friend auto operator<=>(const CompositeVector&, const CompositeVector&) = default;

private:
    Level strands_;
    std::vector<Level> entries_;
};

/// M x n binary matrix; row i is the i-th synthesized strand.
class StrandMatrix {
public:
    explicit StrandMatrix(std::vector<Row> rows) : rows_(std::move(rows)) {
        if (rows_.empty()) throw ShapeError("strand matrix needs at least one row");
        const std::size_t n = rows_.front().size();
        if (n == 0) throw ShapeError("strand matrix rows must be nonempty");
        for (const Row& r : rows_)
            if (r.size() != n) throw ShapeError("strand matrix rows must have equal length");
    }

    StrandMatrix(std::initializer_list<std::initializer_list<int>> rows)
        : StrandMatrix(to_rows(rows)) {}

    std::size_t strand_count() const noexcept { return rows_.size(); }
    std::size_t length() const noexcept { return rows_.front().size(); }
    const Row& row(std::size_t i) const noexcept { return rows_[i]; }
    const std::vector<Row>& rows() const noexcept { return rows_; }
    bool at(std::size_t i, std::size_t j) const { return rows_.at(i).at(j); }

    friend bool operator==(const StrandMatrix&, const StrandMatrix&) = default;
    friend auto operator<=>(const StrandMatrix& a, const StrandMatrix& b) { return a.rows_ <=> b.rows_; }

private:
    static std::vector<Row> to_rows(std::initializer_list<std::initializer_list<int>> rows) {
        std::vector<Row> out;
        out.reserve(rows.size());
        for (auto r : rows) out.emplace_back(r);
        return out;
    }

    std::vector<Row> rows_;
};

/// What the decoder receives: up to M binary rows, possibly of unequal length.
class ChannelOutput {
public:
    ChannelOutput() = default;
    explicit ChannelOutput(std::vector<Row> rows) : rows_(std::move(rows)) {}
    explicit ChannelOutput(const StrandMatrix& X) : rows_(X.rows()) {}

    std::size_t row_count() const noexcept { return rows_.size(); }
    const Row& row(std::size_t i) const noexcept { return rows_[i]; }
    const std::vector<Row>& rows() const noexcept { return rows_; }
    std::vector<Row>& mutable_rows() noexcept { return rows_; }

    std::size_t max_length() const noexcept {
        std::size_t best = 0;
        for (const Row& r : rows_) best = std::max(best, r.size());
        return best;
    }

    bool uniform() const noexcept {
        return std::all_of(rows_.begin(), rows_.end(),
                           [&](const Row& r) { return r.size() == rows_.front().size(); });
    }

    /// Row-sorted copy; used when outputs are compared as strand sets.
    ChannelOutput canonical() const {
        ChannelOutput out(*this);
        std::sort(out.rows_.begin(), out.rows_.end());
        return out;
    }

    friend bool operator==(const ChannelOutput&, const ChannelOutput&) = default;
    friend auto operator<=>(const ChannelOutput& a, const ChannelOutput& b) { return a.rows_ <=> b.rows_; }

private:
    std::vector<Row> rows_;
};

// ---------------------------------------------------------------------------
// counting helpers

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

inline BigInt power(BigInt base, std::uint64_t exponent) {
    BigInt result = 1;
    while (exponent) {
        if (exponent & 1u) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

// ---------------------------------------------------------------------------
// column sums and distances

namespace detail {

inline std::vector<Level> column_counts(const std::vector<Row>& rows) {
    if (rows.empty()) return {};
    const std::size_t n = rows.front().size();
    std::vector<Level> sums(n, 0);
    for (const Row& r : rows) {
        if (r.size() != n) throw ShapeError("column sums need rows of equal length");
        for (std::size_t j = 0; j < n; ++j) sums[j] += r[j] ? 1 : 0;
    }
    return sums;
}

inline void require_same_shape(const CompositeVector& x, const CompositeVector& y) {
    if (x.length() != y.length()) throw ShapeError("composite vectors differ in length");
    if (x.strands() != y.strands()) throw ShapeError("composite vectors differ in M");
}

}  // namespace detail

inline CompositeVector column_sums(const StrandMatrix& X) {
    return CompositeVector(static_cast<Level>(X.strand_count()), detail::column_counts(X.rows()));
}

/// Column sums of a received matrix. The result's M is the number of rows
/// present, so an output with every row lost has no vector form.
inline CompositeVector column_sums(const ChannelOutput& R) {
    if (R.row_count() == 0) throw DomainError("column sums of an output with no rows");
    return CompositeVector(static_cast<Level>(R.row_count()), detail::column_counts(R.rows()));
}

inline bool is_representation(const StrandMatrix& X, const CompositeVector& x) {
    if (X.strand_count() != x.strands() || X.length() != x.length())
        throw ShapeError("matrix dimensions do not match the composite vector");
    return detail::column_counts(X.rows()) == std::vector<Level>(x.entries().begin(), x.entries().end());
}

inline std::uint64_t l1_distance(const CompositeVector& x, const CompositeVector& y) {
    detail::require_same_shape(x, y);
    std::uint64_t d = 0;
    for (std::size_t j = 0; j < x.length(); ++j) d += x[j] > y[j] ? x[j] - y[j] : y[j] - x[j];
    return d;
}

inline std::uint64_t linf_distance(const CompositeVector& x, const CompositeVector& y) {
    detail::require_same_shape(x, y);
    std::uint64_t d = 0;
    for (std::size_t j = 0; j < x.length(); ++j)
        d = std::max<std::uint64_t>(d, x[j] > y[j] ? x[j] - y[j] : y[j] - x[j]);
    return d;
}

inline std::size_t run_count(const Row& y) {
    if (y.empty()) throw DomainError("run count of an empty row");
    std::size_t runs = 1;
    for (std::size_t i = 1; i < y.size(); ++i)
        if (y[i] != y[i - 1]) ++runs;
    return runs;
}

// ---------------------------------------------------------------------------
// representation counting and enumeration

/// |X(x)| = prod_j C(M, x_j).
inline BigInt representation_count(const CompositeVector& x) {
    BigInt total = 1;
    for (Level v : x.entries()) total *= binomial(x.strands(), v);
    return total;
}

/// Mean of |X(x)| over all (M+1)^n vectors: 2^(Mn) / (M+1)^n.
inline Rational average_representation_count(std::uint64_t M, std::uint64_t n) {
    if (M < 1 || n < 1) throw DomainError("average representation count needs M, n >= 1");
    return Rational(power(2, M * n), power(M + 1, n));
}

/// Visits every X in X(x) once, in canonical order: columns vary as an
/// odometer with column 0 most significant, and each column steps through its
/// weight-x_j patterns in increasing value read top row first (so the first
/// pattern has its ones packed at the bottom).
///
/// Throws OverflowError before visiting anything if |X(x)| > cap.
template <typename Visitor>
void for_each_representation(const CompositeVector& x, const BigInt& cap, Visitor&& visit) {
    if (representation_count(x) > cap) throw OverflowError("representation count exceeds cap");
    const std::size_t M = x.strands();
    const std::size_t n = x.length();

    std::vector<std::vector<std::uint8_t>> columns(n, std::vector<std::uint8_t>(M, 0));
    for (std::size_t j = 0; j < n; ++j)
        std::fill(columns[j].end() - static_cast<std::ptrdiff_t>(x[j]), columns[j].end(), 1);

    std::vector<Row> rows(M, Row(n));
    while (true) {
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = 0; j < n; ++j) rows[i].set(j, columns[j][i] != 0);
        visit(StrandMatrix(rows));

        std::size_t j = n;
        while (j > 0) {
            --j;
            if (std::next_permutation(columns[j].begin(), columns[j].end())) break;
            if (j == 0) return;
        }
    }
}

inline std::vector<StrandMatrix> enumerate_representations(const CompositeVector& x, const BigInt& cap) {
    std::vector<StrandMatrix> out;
    for_each_representation(x, cap, [&](const StrandMatrix& X) { out.push_back(X); });
    return out;
}

/// V(x): rows that may appear in some representation of x. Coordinates with
/// x_j = M are forced to 1 and those with x_j = 0 to 0; the rest are free.
/// Rows come out in lexicographic order.
inline std::vector<Row> candidate_rows(const CompositeVector& x) {
    const std::size_t n = x.length();
    std::vector<std::size_t> free;
    Row base(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (x[j] == x.strands())
            base.set(j, true);
        else if (x[j] != 0)
            free.push_back(j);
    }
    if (free.size() >= 63) throw OverflowError("too many free coordinates to list V(x)");
    const std::uint64_t total = std::uint64_t{1} << free.size();
    std::vector<Row> out;
    out.reserve(total);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Row y = base;
        for (std::size_t k = 0; k < free.size(); ++k)
            if ((mask >> (free.size() - 1 - k)) & 1u) y.set(free[k], true);
        out.push_back(std::move(y));
    }
    return out;
}

/// All of [0, M]^n in lexicographic order.
inline std::vector<CompositeVector> all_vectors(Level M, std::size_t n, std::size_t cap) {
    BigInt total = power(M + 1, n);
    if (total > cap) throw OverflowError("(M+1)^n exceeds cap");
    std::vector<CompositeVector> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<Level> digits(n, 0);
    while (true) {
        out.emplace_back(M, digits);
        std::size_t j = n;
        while (j > 0) {
            --j;
            if (digits[j] < M) {
                ++digits[j];
                break;
            }
            digits[j] = 0;
            if (j == 0) return out;
        }
    }
}

}  // namespace cdna

template <>
struct std::hash<cdna::Row> {
    std::size_t operator()(const cdna::Row& r) const noexcept { return r.hash(); }
};
