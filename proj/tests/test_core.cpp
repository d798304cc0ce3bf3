#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "farey/core.hpp"
#include "oracles.hpp"

using namespace farey;

TEST(IdMap, BinaryExpansionMostSignificantFirst) {
    EXPECT_EQ(id_map(3, 5), (Bits{1, 0, 1}));
    EXPECT_EQ(id_map(2, 0), (Bits{0, 0}));
    EXPECT_EQ(id_map(4, 9), (Bits{1, 0, 0, 1}));
    EXPECT_TRUE(id_map(0, 0).empty());
}

TEST(IdMap, RoundTripsAndPreservesOrder) {
    for (unsigned k = 0; k <= 10; ++k) {
        Bits prev;
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
            const Bits b = id_map(k, s);
            EXPECT_EQ(from_bits(b), s);
            if (s > 0) {
                EXPECT_TRUE(std::lexicographical_compare(prev.begin(), prev.end(), b.begin(), b.end()));
            }
            prev = b;
        }
    }
}

TEST(IdMap, RejectsOutOfRange) {
    EXPECT_THROW(id_map(3, 8), std::out_of_range);
    EXPECT_THROW(ExtendedIndex(3, 9), std::out_of_range);
    EXPECT_NO_THROW(ExtendedIndex(3, 8));
    EXPECT_THROW(ConfigIndex(64, 0), LevelError);
    EXPECT_THROW(from_bits(std::vector<std::uint8_t>{0, 2}), std::invalid_argument);
}

TEST(ConfigIndex, EmbedAppendsZero) {
    const ConfigIndex c(3, 5);
    EXPECT_EQ(c.embed().bits(), (Bits{1, 0, 1, 0}));
    EXPECT_TRUE(ExtendedIndex(3, 8).is_right_endpoint());
}

TEST(QEval, TableEntries) {
    EXPECT_EQ(q_eval<std::int64_t>(2, 1, 1, 2), 2);  // 1/2
    EXPECT_EQ(q_eval<std::int64_t>(4, 0, 1, 5), 3);  // 3/8
    EXPECT_EQ(q_eval<std::int64_t>(4, 1, 1, 5), 8);
    EXPECT_EQ(q_eval<std::int64_t>(1, 7, -4, 1), 3);
}

TEST(QEval, MatchesRecursiveDefinition) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> param(-20, 20);
    for (unsigned k = 0; k <= 10; ++k) {
        for (int rep = 0; rep < 5; ++rep) {
            const std::int64_t s0 = param(rng);
            const std::int64_t s1 = param(rng);
            for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
                auto sigma = oracle::bits_of(s, k);
                sigma.insert(sigma.begin(), 0);
                ASSERT_EQ(q_eval<std::int64_t>(k, s0, s1, s), oracle::q_recursive(sigma, s0, s1))
                    << "k=" << k << " s=" << s;
            }
        }
    }
}

TEST(QEval, OverflowIsSignalledAndBigIntPathAgrees) {
    // 2^62 + 2^62 wraps int64 on the first bit-0 step.
    const std::int64_t big = std::int64_t{1} << 62;
    EXPECT_THROW(q_eval<std::int64_t>(1, big, big, 0), OverflowError);
    const BigInt exact = q_eval<BigInt>(1, BigInt(big), BigInt(big), 1);
    EXPECT_EQ(exact, BigInt(big) * 2);
}

TEST(QFamily, LinearityInParameters) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> param(-50, 50);
    for (unsigned k = 1; k <= 8; ++k) {
        const std::int64_t s0 = param(rng);
        const std::int64_t s1 = param(rng);
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
            const Bits b = id_map(k, s);
            EXPECT_EQ(q_family<std::int64_t>(b, s0, s1),
                      s0 * q_family<std::int64_t>(b, 1, 0) + s1 * q_family<std::int64_t>(b, 0, 1));
        }
    }
    EXPECT_EQ(q_family<std::int64_t>(Bits{1, 0, 1}, 0, 0), 0);
}

TEST(QFamily, CompositionOfLevels) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<std::int64_t> param(-10, 10);
    for (unsigned k = 1; k <= 6; ++k) {
        for (unsigned l = 0; l + k <= 10; ++l) {
            const std::int64_t s0 = param(rng);
            const std::int64_t s1 = param(rng);
            const std::uint64_t s = rng() % (std::uint64_t{1} << k);
            const std::uint64_t t = rng() % (std::uint64_t{1} << l);
            auto joined = oracle::bits_of(s, k);
            auto tail = oracle::bits_of(t, l);
            joined.insert(joined.end(), tail.begin(), tail.end());
            auto flipped = oracle::bits_of(s, k);
            for (auto& b : flipped) b = 1 - b;
            const std::int64_t a = oracle::q_recursive(oracle::bits_of(s, k), s0, s1);
            const std::int64_t c = oracle::q_recursive(flipped, s0, s1);
            EXPECT_EQ(oracle::q_recursive(joined, s0, s1), q_eval<std::int64_t>(l, a, c, t));
        }
    }
}

TEST(ExtendedRow, SmallLevels) {
    const FareyRow r0 = extended_row(0);
    EXPECT_EQ(r0.numerators, (std::vector<std::uint64_t>{0, 1}));
    EXPECT_EQ(r0.denominators, (std::vector<std::uint64_t>{1, 1}));

    const FareyRow r2 = extended_row(2);
    EXPECT_EQ(r2.numerators, (std::vector<std::uint64_t>{0, 1, 1, 2, 1}));
    EXPECT_EQ(r2.denominators, (std::vector<std::uint64_t>{1, 3, 2, 3, 1}));

    EXPECT_EQ(extended_row(4).at(3), (Fraction{2, 7}));
}

TEST(ExtendedRow, MatchesTableAndLiteralConstruction) {
    const auto& table = oracle::table_rows();
    for (unsigned k = 0; k < table.size(); ++k) {
        const FareyRow row = extended_row(k);
        ASSERT_EQ(row.size(), table[k].size());
        for (std::size_t s = 0; s < row.size(); ++s) {
            EXPECT_EQ(row.numerators[s], table[k][s].first);
            EXPECT_EQ(row.denominators[s], table[k][s].second);
        }
    }
    for (unsigned k = 5; k <= 12; ++k) {
        const FareyRow row = extended_row(k);
        const auto lit = oracle::mediant_row(k);
        for (std::size_t s = 0; s < row.size(); ++s) {
            ASSERT_EQ(row.numerators[s], lit[s].first);
            ASSERT_EQ(row.denominators[s], lit[s].second);
        }
    }
}

TEST(ExtendedRow, EvenPositionsEmbedPreviousRow) {
    for (unsigned k = 0; k < 14; ++k) {
        const FareyRow a = extended_row(k);
        const FareyRow b = extended_row(k + 1);
        for (std::size_t s = 0; s < a.size(); ++s) {
            ASSERT_EQ(b.at(2 * s), a.at(s));
        }
    }
}

TEST(ExtendedRow, MaxDenominatorIsFibonacci) {
    for (unsigned k = 0; k <= 20; ++k) {
        const FareyRow row = extended_row(k);
        EXPECT_EQ(*std::max_element(row.denominators.begin(), row.denominators.end()),
                  max_denominator(k));
    }
    EXPECT_EQ(fibonacci(10), 55U);
    EXPECT_LT(max_denominator(63), std::uint64_t{1} << 46);
}

TEST(ExtendedRow, LevelCap) {
    EXPECT_THROW(extended_row(27), LevelError);
    EXPECT_THROW(extended_row(5, 4), LevelError);
}

TEST(FareyValue, Examples) {
    EXPECT_EQ(farey_value(4, 5), (Fraction{3, 8}));
    EXPECT_EQ(farey_value(1, 1), (Fraction{1, 2}));
    EXPECT_EQ(farey_value(0, 1), (Fraction{1, 1}));
    // Odd index one level up: mediant of F^_4(5) = 3/8 and F^_4(6) = 2/5.
    EXPECT_EQ(farey_value(5, 11), (Fraction{5, 13}));
    EXPECT_THROW(farey_value(3, 9), std::out_of_range);
}

TEST(FareyValue, AgreesWithRowAndQRoute) {
    for (unsigned k = 0; k <= 12; ++k) {
        const FareyRow row = extended_row(k);
        for (std::uint64_t s = 0; s < row.size(); ++s) {
            ASSERT_EQ(farey_value(k, s), row.at(s));
            if (s + 1 < row.size()) {
                ASSERT_EQ(q_fraction(k, s), row.at(s));
            }
        }
    }
    // Deep levels without materializing anything.
    EXPECT_EQ(farey_value(60, std::uint64_t{1} << 59), (Fraction{1, 2}));
    EXPECT_EQ(farey_value(60, 1), q_fraction(60, 1));
    EXPECT_EQ(farey_value(60, 1), (Fraction{1, 61}));
}

TEST(ForEachFraction, StreamsRowInOrder) {
    for (unsigned k = 0; k <= 14; ++k) {
        const FareyRow row = extended_row(k);
        std::uint64_t expected = 0;
        for_each_fraction(k, [&](std::uint64_t s, std::uint64_t r, std::uint64_t h) {
            ASSERT_EQ(s, expected++);
            ASSERT_EQ(r, row.numerators[s]);
            ASSERT_EQ(h, row.denominators[s]);
        });
        EXPECT_EQ(expected, std::uint64_t{1} << k);
    }
}

TEST(VerifyRow, AllPropertiesHold) {
    for (unsigned k = 0; k <= 16; ++k) {
        const RowReport report = verify_row(extended_row(k));
        EXPECT_TRUE(report.pass()) << "k=" << k;
        EXPECT_EQ(report.properties.size(), 4U);
    }
    const FareyRow r2 = extended_row(2);
    // h(1) r(2) - h(2) r(1) = 3*1 - 2*1
    EXPECT_EQ(r2.denominators[1] * r2.numerators[2] - r2.denominators[2] * r2.numerators[1], 1U);
    const FareyRow r3 = extended_row(3);
    EXPECT_EQ(r3.numerators[2] + r3.numerators[6], r3.denominators[2]);
}

TEST(VerifyRow, CorruptedDenominatorIsLocated) {
    FareyRow row = extended_row(4);
    row.denominators[5] += 1;
    const RowReport report = verify_row(row);
    EXPECT_FALSE(report.pass());
    const auto& uni = report.property("unimodularity");
    EXPECT_FALSE(uni.pass);
    ASSERT_TRUE(uni.first_failure.has_value());
    EXPECT_EQ(*uni.first_failure, 4U);  // pair (4, 5)
    EXPECT_FALSE(report.property("symmetry").pass);
    EXPECT_TRUE(report.property("endpoints").pass);
}

TEST(VerifyRow, EndpointAndOrderFaults) {
    FareyRow row = extended_row(3);
    row.numerators[8] = 2;
    EXPECT_FALSE(verify_row(row).property("endpoints").pass);

    row = extended_row(3);
    std::swap(row.numerators[2], row.numerators[3]);
    std::swap(row.denominators[2], row.denominators[3]);
    const auto mono = verify_row(row).property("monotonicity");
    EXPECT_FALSE(mono.pass);
    EXPECT_EQ(*mono.first_failure, 2U);

    row.numerators.pop_back();
    EXPECT_THROW(verify_row(row), std::invalid_argument);
}

TEST(Routes, AgreeThroughLevelSixteen) {
    for (unsigned k = 0; k <= 16; ++k) EXPECT_TRUE(cross_check_routes(k)) << "k=" << k;
}

TEST(Bijectivity, InjectiveAndCoversSmallDenominators) {
    for (unsigned k = 1; k <= 12; ++k) {
        std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
        for_each_fraction(k, [&](std::uint64_t, std::uint64_t r, std::uint64_t h) {
            EXPECT_EQ(std::gcd(r, h), 1U);
            EXPECT_TRUE(seen.emplace(r, h).second);
        });
        // Every reduced a/n in [0, 1) with n <= k+1 occurs.
        for (std::uint64_t n = 1; n <= k + 1; ++n) {
            for (std::uint64_t a = 0; a < n; ++a) {
                if (std::gcd(a, n) == 1) {
                    EXPECT_TRUE(seen.count({a, n})) << a << "/" << n;
                }
            }
        }
    }
}

TEST(RowCsv, Format) {
    std::ostringstream out;
    write_row_csv(out, extended_row(1));
    EXPECT_EQ(out.str(), "index,numerator,denominator,value\n0,0,1,0\n1,1,2,0.5\n2,1,1,1\n");
}
