#include <gtest/gtest.h>

#include <map>
#include <set>

#include "cdna/cdna.hpp"

using namespace cdna;
using Op = ErrorEvent::Op;

namespace {

CompositeVector vec(Level M, std::vector<Level> e) { return CompositeVector(M, std::move(e)); }

StrandMatrix example_matrix() { return StrandMatrix{{0, 1, 1, 0}, {1, 1, 0, 0}, {0, 1, 1, 0}, {1, 1, 1, 1}, {1, 1, 0, 1}}; }

ChannelOutput rows(std::initializer_list<const char*> lines) {
    std::vector<Row> out;
    for (const char* s : lines) out.push_back(Row::from_string(s));
    return ChannelOutput(std::move(out));
}

// Test-only oracle for the single-deletion ball: apply every deletion to
// every enumerated representation and deduplicate.
std::size_t brute_single_deletion(const CompositeVector& x) {
    std::set<ChannelOutput> out;
    for (const auto& X : enumerate_representations(x, 1'000'000))
        for (std::size_t i = 0; i < X.strand_count(); ++i)
            for (std::size_t j = 0; j < X.length(); ++j) {
                std::vector<Row> r = X.rows();
                r[i].erase(j);
                out.insert(ChannelOutput(std::move(r)));
            }
    return out.size();
}

}  // namespace

TEST(ErrorKind, ParseAndFormat) {
    for (auto k : {ErrorKind::substitution, ErrorKind::strand_loss, ErrorKind::deletion, ErrorKind::insertion,
                   ErrorKind::indel})
        EXPECT_EQ(parse_error_kind(to_string(k)), k);
    EXPECT_THROW(parse_error_kind("X"), ConfigError);
}

TEST(ApplyPattern, WorkedSubstitution) {
    const auto R = apply_pattern(example_matrix(), {ErrorKind::substitution, {{Op::flip, 1, 2}}});
    EXPECT_EQ(R, rows({"0110", "1110", "0110", "1111", "1101"}));
}

TEST(ApplyPattern, WorkedDeletion) {
    const auto R = apply_pattern(example_matrix(), {ErrorKind::deletion, {{Op::erase, 1, 1}}});
    EXPECT_EQ(R, rows({"0110", "100", "0110", "1111", "1101"}));
}

TEST(ApplyPattern, WorkedStrandLoss) {
    const auto R = apply_pattern(example_matrix(), {ErrorKind::strand_loss, {{Op::lose, 2}}});
    EXPECT_EQ(R, rows({"0110", "1100", "1111", "1101"}));
}

TEST(ApplyPattern, WorkedInsertion) {
    const auto R = apply_pattern(example_matrix(), {ErrorKind::insertion, {{Op::insert, 2, 2, false}}});
    EXPECT_EQ(R, rows({"0110", "1100", "01010", "1111", "1101"}));
}

TEST(ApplyPattern, EmptyPatternIsIdentity) {
    for (auto k : {ErrorKind::substitution, ErrorKind::strand_loss, ErrorKind::deletion, ErrorKind::insertion,
                   ErrorKind::indel})
        EXPECT_EQ(apply_pattern(example_matrix(), {k, {}}), ChannelOutput(example_matrix()));
}

TEST(ApplyPattern, OriginalCoordinates) {
    // Two deletions in one row refer to the transmitted row, not the shifted one.
    const StrandMatrix X{{1, 0, 1, 1}};
    EXPECT_EQ(apply_pattern(X, {ErrorKind::deletion, {{Op::erase, 0, 0}, {Op::erase, 0, 1}}}), rows({"11"}));
    EXPECT_EQ(apply_pattern(X, {ErrorKind::deletion, {{Op::erase, 0, 1}, {Op::erase, 0, 0}}}), rows({"11"}));
    // Indel: deletions first, insertions placed before original symbol pos.
    EXPECT_EQ(apply_pattern(X, {ErrorKind::indel, {{Op::erase, 0, 0}, {Op::insert, 0, 4, false}}}), rows({"0110"}));
}

TEST(ApplyPattern, RejectsInvalidPatterns) {
    const auto X = example_matrix();
    EXPECT_THROW(apply_pattern(X, {ErrorKind::substitution, {{Op::flip, 5, 0}}}), PatternError);
    EXPECT_THROW(apply_pattern(X, {ErrorKind::substitution, {{Op::flip, 0, 4}}}), PatternError);
    EXPECT_THROW(apply_pattern(X, {ErrorKind::strand_loss, {{Op::lose, 1}, {Op::lose, 1}}}), PatternError);
    EXPECT_THROW(apply_pattern(X, {ErrorKind::substitution, {{Op::flip, 0, 0}, {Op::flip, 0, 0}}}), PatternError);
    EXPECT_THROW(apply_pattern(X, {ErrorKind::deletion, {{Op::insert, 0, 0, true}}}), PatternError);
    EXPECT_THROW(apply_pattern(X, {ErrorKind::insertion, {{Op::insert, 0, 5, true}}}), PatternError);
}

TEST(SamplePattern, AllRowsLost) {
    const auto p = sample_pattern(5, 4, {ErrorKind::strand_loss, 5, 99});
    EXPECT_EQ(p.size(), 5u);
    EXPECT_EQ(apply_pattern(example_matrix(), p).row_count(), 0u);
}

TEST(SamplePattern, DeterministicPerSeed) {
    for (auto k : {ErrorKind::substitution, ErrorKind::strand_loss, ErrorKind::deletion, ErrorKind::insertion,
                   ErrorKind::indel})
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const ChannelConfig cfg{k, 2, seed};
            const auto p = sample_pattern(5, 4, cfg);
            EXPECT_EQ(p, sample_pattern(5, 4, cfg));
            EXPECT_EQ(p.size(), 2u);
            EXPECT_NO_THROW(apply_pattern(example_matrix(), p));
        }
}

TEST(SamplePattern, InfeasibleConfig) {
    EXPECT_THROW(sample_pattern(5, 4, {ErrorKind::strand_loss, 6, 0}), ConfigError);
    EXPECT_THROW(sample_pattern(5, 4, {ErrorKind::substitution, 21, 0}), ConfigError);
    EXPECT_THROW(sample_pattern(5, 4, {ErrorKind::deletion, 5, 0}), ConfigError);
}

TEST(SamplePattern, UniformSingleDeletion) {
    std::map<std::pair<std::size_t, std::size_t>, int> freq;
    const int seeds = 10000;
    for (int s = 0; s < seeds; ++s) {
        const auto p = sample_pattern(2, 2, {ErrorKind::deletion, 1, static_cast<std::uint64_t>(s)});
        ASSERT_EQ(p.size(), 1u);
        freq[{p.events[0].row, p.events[0].pos}]++;
    }
    ASSERT_EQ(freq.size(), 4u);
    for (const auto& [cell, c] : freq) EXPECT_NEAR(c / double(seeds), 0.25, 0.02);
}

TEST(SamplePattern, PatternSpaceSize) {
    EXPECT_EQ(pattern_space_size(5, 4, ErrorKind::substitution, 2), binomial(20, 2));
    EXPECT_EQ(pattern_space_size(5, 4, ErrorKind::strand_loss, 2), binomial(5, 2));
}

TEST(PatternText, RoundTrip) {
    for (auto k : {ErrorKind::substitution, ErrorKind::strand_loss, ErrorKind::deletion, ErrorKind::insertion,
                   ErrorKind::indel}) {
        const auto p = sample_pattern(5, 4, {k, 3, 7});
        std::istringstream in(format_pattern(p));
        EXPECT_EQ(parse_pattern(in), p) << format_pattern(p);
    }
    std::istringstream bad("S 1\n0\n");
    EXPECT_THROW(parse_pattern(bad), FormatError);
}

TEST(ErrorBall, AllZeroSubstitution) {
    const auto ball = error_ball(vec(2, {0, 0}), 1, ErrorKind::substitution);
    ASSERT_EQ(ball.size(), 4u);
    for (const auto& R : ball) {
        std::size_t ones = 0;
        for (const Row& r : R.rows()) ones += r.count();
        EXPECT_EQ(ones, 1u);
    }
}

TEST(ErrorBall, SingleStrandDeletion) {
    const auto ball = error_ball(vec(1, {1}), 1, ErrorKind::deletion);
    ASSERT_EQ(ball.size(), 1u);
    EXPECT_EQ(ball[0], rows({""}));
}

TEST(ErrorBall, RadiusZeroIsRepresentationSet) {
    const auto x = vec(3, {1, 2, 0});
    EXPECT_EQ(error_ball(x, 0, ErrorKind::deletion).size(), 9u);
    EXPECT_EQ(error_ball(x, 0, ErrorKind::deletion, {2'000'000, true}).size(), 2u);
}

TEST(ErrorBall, CapOverflow) {
    BallOptions opt;
    opt.cap = 10;
    EXPECT_THROW(error_ball(vec(5, {3, 5, 3, 2}), 1, ErrorKind::deletion, opt), OverflowError);
}

TEST(SingleDeletionBall, Values) {
    EXPECT_EQ(single_deletion_ball_size(vec(1, {1})), BigInt(1));
    EXPECT_EQ(single_deletion_ball_size(vec(2, {1, 1})), BigInt(12));
    EXPECT_EQ(single_deletion_ball_size(vec(3, {2, 1, 0})), BigInt(51));
    EXPECT_EQ(single_deletion_ball_size(vec(5, {3, 5, 3, 2})), BigInt(11600));
    EXPECT_EQ(single_deletion_ball_size(vec(4, {4, 4, 4})), BigInt(4));
}

TEST(SingleDeletionBall, MatchesEnumerationAndBruteForce) {
    EXPECT_EQ(error_ball(vec(5, {3, 5, 3, 2}), 1, ErrorKind::deletion).size(), 11600u);
    for (Level M = 1; M <= 3; ++M)
        for (const auto& x : all_vectors(M, 3, 1000)) {
            const std::size_t brute = brute_single_deletion(x);
            EXPECT_EQ(single_deletion_ball_size(x), BigInt(brute)) << format_vector(x);
            EXPECT_EQ(error_ball(x, 1, ErrorKind::deletion).size(), brute) << format_vector(x);
        }
}

TEST(BallsDisjoint, Examples) {
    EXPECT_TRUE(balls_disjoint(vec(2, {0, 0}), vec(2, {2, 2}), 1, ErrorKind::strand_loss));
    EXPECT_FALSE(balls_disjoint(vec(2, {0}), vec(2, {2}), 1, ErrorKind::substitution));
    EXPECT_TRUE(balls_disjoint(vec(3, {0}), vec(3, {3}), 1, ErrorKind::substitution));
    for (auto k : {ErrorKind::substitution, ErrorKind::strand_loss, ErrorKind::deletion, ErrorKind::insertion,
                   ErrorKind::indel})
        EXPECT_FALSE(balls_disjoint(vec(2, {1, 2}), vec(2, {1, 2}), 1, k));
}

TEST(BallsDisjoint, StrandLossBoundsOnReceivedCounts) {
    // after t losses every column count r_j satisfies c_j - t <= r_j <= c_j
    const auto x = vec(4, {3, 1, 4, 0});
    for (std::size_t t = 1; t <= 3; ++t)
        for (const auto& R : error_ball(x, t, ErrorKind::strand_loss)) {
            ASSERT_EQ(R.row_count(), 4 - t);
            const auto r = column_sums(R);
            for (std::size_t j = 0; j < x.length(); ++j) {
                EXPECT_LE(r[j], x[j]);
                EXPECT_GE(r[j] + t, x[j]);
            }
        }
}

TEST(BallsDisjoint, SetSemanticsAgreesOnExample) {
    // Ordered-matrix and strand-set comparison give the same disjointness
    // verdicts for single deletions over M=2, n=2.
    BallOptions set_opt;
    set_opt.canonicalize_rows = true;
    const auto vs = all_vectors(2, 2, 100);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t k = i + 1; k < vs.size(); ++k)
            EXPECT_EQ(balls_disjoint(vs[i], vs[k], 1, ErrorKind::deletion),
                      balls_disjoint(vs[i], vs[k], 1, ErrorKind::deletion, set_opt));
}
