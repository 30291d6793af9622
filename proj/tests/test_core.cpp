#include <gtest/gtest.h>

#include <map>
#include <set>

#include "cdna/cdna.hpp"

using namespace cdna;

namespace {

CompositeVector vec(Level M, std::vector<Level> e) { return CompositeVector(M, std::move(e)); }

// A representation of (3,5,3,2).
StrandMatrix example_matrix() { return StrandMatrix{{0, 1, 1, 0}, {1, 1, 0, 0}, {0, 1, 1, 0}, {1, 1, 1, 1}, {1, 1, 0, 1}}; }

// Test-only oracle: every M x n binary matrix, filtered by column sums.
std::size_t brute_representations(const CompositeVector& x) {
    const std::size_t M = x.strands(), n = x.length(), bits = M * n;
    std::size_t hits = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            Level s = 0;
            for (std::size_t i = 0; i < M; ++i) s += (mask >> (i * n + j)) & 1u;
            ok = s == x[j];
        }
        hits += ok;
    }
    return hits;
}

}  // namespace

TEST(Row, BasicOps) {
    Row r = Row::from_string("1011");
    EXPECT_EQ(r.size(), 4u);
    EXPECT_EQ(r.count(), 3u);
    r.erase(1);
    EXPECT_EQ(r.to_string(), "111");
    r.insert(0, false);
    EXPECT_EQ(r.to_string(), "0111");
    r.flip(3);
    EXPECT_EQ(r.to_string(), "0110");
    EXPECT_THROW(Row::from_string("012"), FormatError);
}

TEST(Row, LongRowsCrossWordBoundary) {
    Row r(130);
    r.set(63, true);
    r.set(64, true);
    r.set(129, true);
    r.erase(0);
    EXPECT_TRUE(r[62]);
    EXPECT_TRUE(r[63]);
    EXPECT_TRUE(r[128]);
    EXPECT_EQ(r.count(), 3u);
    r.insert(0, true);
    EXPECT_TRUE(r[64]);
    EXPECT_EQ(r.size(), 130u);
}

TEST(Row, OrderingIsLexicographicWithPrefixFirst) {
    EXPECT_LT(Row::from_string("01"), Row::from_string("10"));
    EXPECT_LT(Row::from_string("1"), Row::from_string("10"));
    EXPECT_LT(Row::from_string(""), Row::from_string("0"));
}

TEST(CompositeVector, ValidatesEntries) {
    EXPECT_NO_THROW(vec(5, {3, 5, 3, 2}));
    EXPECT_THROW(vec(5, {3, 6}), DomainError);
    EXPECT_THROW(vec(0, {0}), DomainError);
    EXPECT_THROW(vec(3, {}), DomainError);
}

TEST(StrandMatrix, RejectsRaggedRows) {
    EXPECT_THROW(StrandMatrix({Row::from_string("01"), Row::from_string("1")}), ShapeError);
    EXPECT_NO_THROW(example_matrix());
}

TEST(ColumnSums, WorkedMatrix) {
    EXPECT_EQ(column_sums(example_matrix()), vec(5, {3, 5, 3, 2}));
    EXPECT_TRUE(is_representation(example_matrix(), vec(5, {3, 5, 3, 2})));
    EXPECT_FALSE(is_representation(example_matrix(), vec(5, {3, 5, 3, 3})));
}

TEST(ColumnSums, ChannelOutputErrors) {
    EXPECT_THROW(column_sums(ChannelOutput(std::vector<Row>{})), DomainError);
    EXPECT_THROW(column_sums(ChannelOutput({Row::from_string("01"), Row::from_string("1")})), ShapeError);
    EXPECT_EQ(column_sums(ChannelOutput({Row::from_string("11"), Row::from_string("01")})), vec(2, {1, 2}));
}

TEST(ColumnSums, RowPermutationInvariant) {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Level> e(4);
        for (auto& v : e) v = static_cast<Level>(rng.below(6));
        const auto x = vec(5, e);
        StrandMatrix X = sample_representation(x, rng);
        std::vector<Row> rows = X.rows();
        std::reverse(rows.begin(), rows.end());
        std::swap(rows[0], rows[2]);
        EXPECT_EQ(column_sums(StrandMatrix(rows)), x);
    }
}

TEST(Distances, Examples) {
    const auto x = vec(5, {3, 5, 3, 2}), y = vec(5, {2, 4, 3, 2});
    EXPECT_EQ(l1_distance(x, y), 2u);
    EXPECT_EQ(linf_distance(x, y), 1u);
    EXPECT_EQ(l1_distance(x, x), 0u);
    EXPECT_THROW(l1_distance(x, vec(5, {1})), ShapeError);
    EXPECT_THROW(linf_distance(x, vec(4, {1, 1, 1, 1})), ShapeError);
}

TEST(Distances, MetricAxiomsOnRandomTriples) {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng.below(6);
        const Level M = static_cast<Level>(1 + rng.below(7));
        auto draw = [&] {
            std::vector<Level> e(n);
            for (auto& v : e) v = static_cast<Level>(rng.below(M + 1));
            return vec(M, e);
        };
        const auto a = draw(), b = draw(), c = draw();
        for (auto d : {l1_distance, linf_distance}) {
            EXPECT_EQ(d(a, b), d(b, a));
            EXPECT_EQ(d(a, a), 0u);
            EXPECT_EQ(d(a, b) == 0, a == b);
            EXPECT_LE(d(a, c), d(a, b) + d(b, c));
        }
        EXPECT_LE(linf_distance(a, b), l1_distance(a, b));
        EXPECT_LE(l1_distance(a, b), n * linf_distance(a, b));
    }
}

TEST(RunCount, Examples) {
    EXPECT_EQ(run_count(Row::from_string("1100")), 2u);
    EXPECT_EQ(run_count(Row::from_string("0")), 1u);
    EXPECT_EQ(run_count(Row::from_string("0101")), 4u);
    EXPECT_THROW(run_count(Row()), DomainError);
}

TEST(Counting, RepresentationCount) {
    EXPECT_EQ(representation_count(vec(5, {3, 5, 3, 2})), BigInt(1000));
    EXPECT_EQ(representation_count(vec(4, {0, 4})), BigInt(1));
    EXPECT_EQ(representation_count(vec(2, {1, 1})), BigInt(4));
}

TEST(Counting, MatchesBruteForce) {
    for (Level M = 1; M <= 3; ++M)
        for (const auto& x : all_vectors(M, 3, 1000)) {
            EXPECT_EQ(representation_count(x), BigInt(brute_representations(x))) << format_vector(x);
            EXPECT_EQ(enumerate_representations(x, 100000).size(), brute_representations(x));
        }
}

TEST(Counting, AverageRepresentationCount) {
    EXPECT_EQ(average_representation_count(2, 2), Rational(16, 9));
    EXPECT_EQ(average_representation_count(1, 1), Rational(1));
    for (std::uint64_t M = 1; M <= 4; ++M)
        for (std::uint64_t n = 1; n <= 3; ++n) {
            BigInt total = 0;
            for (const auto& x : all_vectors(static_cast<Level>(M), n, 10000)) total += representation_count(x);
            EXPECT_EQ(total, power(2, M * n));
            EXPECT_EQ(average_representation_count(M, n), Rational(total, power(M + 1, n)));
        }
}

TEST(Enumeration, DistinctAndValid) {
    const auto x = vec(3, {1, 2, 0});
    const auto reps = enumerate_representations(x, 100);
    ASSERT_EQ(reps.size(), 9u);
    std::set<std::vector<Row>> seen;
    for (const auto& X : reps) {
        EXPECT_TRUE(is_representation(X, x));
        seen.insert(X.rows());
    }
    EXPECT_EQ(seen.size(), reps.size());
    EXPECT_THROW(enumerate_representations(vec(5, {3, 5, 3, 2}), 999), OverflowError);
}

TEST(Enumeration, CandidateRowsAndAllVectors) {
    const auto rows = candidate_rows(vec(2, {1, 0, 2}));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].to_string(), "001");
    EXPECT_EQ(rows[1].to_string(), "101");
    const auto vs = all_vectors(2, 2, 100);
    ASSERT_EQ(vs.size(), 9u);
    EXPECT_TRUE(std::is_sorted(vs.begin(), vs.end()));
    EXPECT_THROW(all_vectors(9, 9, 1000), OverflowError);
}

TEST(Binomial, Values) {
    EXPECT_EQ(binomial(5, 2), BigInt(10));
    EXPECT_EQ(binomial(5, 6), BigInt(0));
    EXPECT_EQ(binomial(100, 50), BigInt("100891344545564193334812497256"));
}

TEST(TextIO, VectorRoundTrip) {
    const auto x = vec(5, {3, 5, 3, 2});
    EXPECT_EQ(format_vector(x), "5 4 : 3 5 3 2");
    EXPECT_EQ(parse_vector(format_vector(x)), x);
    EXPECT_THROW(parse_vector("5 4 3 5 3 2"), FormatError);
    EXPECT_THROW(parse_vector("5 4 : 3 5 3"), FormatError);
    EXPECT_THROW(parse_vector("5 2 : 3 7"), FormatError);
    EXPECT_THROW(parse_vector("5 2 : 3 x"), FormatError);
}

TEST(TextIO, MatrixRoundTrip) {
    const ChannelOutput R({Row::from_string("0110"), Row::from_string(""), Row::from_string("10")});
    const std::string text = format_matrix(R);
    EXPECT_EQ(text, "3 4\n0110\n\n10\n");
    EXPECT_EQ(parse_matrix(text), R);
    EXPECT_THROW(parse_matrix("2 2\n01\n"), FormatError);
    EXPECT_THROW(parse_matrix("1 2\n011\n"), FormatError);
    EXPECT_THROW(parse_matrix("1 2\n0a\n"), FormatError);
}

TEST(Random, DeterministicAndSplitStreamsDiffer) {
    SplitMix64 a(5), b(5);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next(), b.next());
    EXPECT_NE(SplitMix64(5).split(0).next(), SplitMix64(5).split(1).next());
    SplitMix64 r(9);
    for (int i = 0; i < 200; ++i) {
        const auto s = r.subset(10, 4);
        ASSERT_EQ(s.size(), 4u);
        EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
        EXPECT_EQ(std::set<std::size_t>(s.begin(), s.end()).size(), 4u);
        EXPECT_LT(s.back(), 10u);
    }
}

TEST(Random, SampleRepresentationIsUniform) {
    const auto x = vec(2, {1, 1});  // 4 representations
    std::map<std::vector<Row>, int> freq;
    SplitMix64 rng(1);
    const int trials = 8000;
    for (int i = 0; i < trials; ++i) freq[sample_representation(x, rng).rows()]++;
    ASSERT_EQ(freq.size(), 4u);
    for (const auto& [rows, c] : freq) EXPECT_NEAR(c / double(trials), 0.25, 0.02);
}
