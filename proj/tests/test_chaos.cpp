#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include "fragmark/chaos.hpp"
#include "fragmark/error.hpp"
#include "fragmark/watermark.hpp"
#include "oracles/oracles.hpp"

namespace fragmark {
namespace {

Digest digest_with_prefix(std::uint64_t top53) {
    Digest d{};
    const std::uint64_t bits = top53 << 11;
    for (int i = 0; i < 8; ++i) d[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(bits >> (56 - 8 * i));
    return d;
}

std::uint64_t top53_of(double v) { return static_cast<std::uint64_t>(std::ldexp(v, 53)); }

TEST(ChaosSeed, SameBytesGiveSameState) {
    EXPECT_EQ(chaos_seed("correct horse"), chaos_seed("correct horse"));
}

TEST(ChaosSeed, DifferentKeysGiveDifferentStates) {
    EXPECT_NE(chaos_seed("A").k(), chaos_seed("B").k());
}

TEST(ChaosSeed, EmptyKeyRejected) {
    try {
        chaos_seed(std::string_view{});
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyKey);
        EXPECT_STREQ(e.what(), "empty key");
    }
}

TEST(ChaosSeed, ParameterFixed) { EXPECT_DOUBLE_EQ(chaos_seed("x").r(), 3.999); }

TEST(ChaosSeed, ForbiddenSeedsAreNudgedByOneUlp) {
    for (double bad : {0.25, 0.5, 0.75, 1.0 - 1.0 / kLogisticR}) {
        const ChaosState s = chaos_seed_from_digest(digest_with_prefix(top53_of(bad)));
        EXPECT_EQ(s.k(), std::nextafter(bad, 1.0)) << bad;
    }
    EXPECT_EQ(chaos_seed_from_digest(Digest{}).k(), std::nextafter(0.0, 1.0));
}

TEST(ChaosSeed, DigestMappingUsesTop53Bits) {
    // 0x8000...0001 << 11 : one ulp above 0.5 at 53-bit resolution.
    const ChaosState s = chaos_seed_from_digest(digest_with_prefix((std::uint64_t{1} << 52) + 1));
    EXPECT_EQ(s.k(), 0.5 + std::ldexp(1.0, -53));
}

TEST(ChaosStep, HalfAtFourIsDegenerate) {
    const ChaosState s(0.5, 4.0);
    try {
        chaos_step(s);
        FAIL() << "expected degenerate state";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateChaosState);
        EXPECT_STREQ(e.what(), "degenerate chaos state");
    }
}

TEST(ChaosStep, MatchesHighPrecisionValues) {
    // 40-digit evaluation of the two-step recurrence from k = 0.3, r = 3.999.
    const ChaosDraw d = chaos_step(ChaosState(0.3, 3.999));
    EXPECT_NEAR(d.x, 0.83979, 1e-12);
    EXPECT_NEAR(d.y, 0.5380364808441, 1e-12);
    EXPECT_EQ(d.next.k(), d.x);
}

TEST(ChaosStep, PureFunctionOfState) {
    const ChaosState s(0.123456, 3.999);
    const ChaosDraw a = chaos_step(s);
    const ChaosDraw b = chaos_step(s);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.y, b.y);
}

TEST(ChaosState, RejectsBoundaryAndFixedPoint) {
    EXPECT_THROW(ChaosState(0.0), Error);
    EXPECT_THROW(ChaosState(1.0), Error);
    EXPECT_THROW(ChaosState(1.0 - 1.0 / kLogisticR), Error);
    EXPECT_THROW(ChaosState(std::nan("")), Error);
}

TEST(ChaosProperties, ReplayIsBitIdenticalAndMatchesReference) {
    ChaosState s = chaos_seed("replay");
    const auto ref = oracle::reference_logistic(s.k(), s.r(), 10000);
    ChaosState a = s;
    ChaosState b = s;
    for (std::size_t i = 0; i < 10000; ++i) {
        const ChaosDraw da = chaos_step(a);
        const ChaosDraw db = chaos_step(b);
        ASSERT_EQ(da.x, db.x);
        ASSERT_EQ(da.y, db.y);
        ASSERT_EQ(da.x, ref[i].first) << i;
        ASSERT_EQ(da.y, ref[i].second) << i;
        a = da.next;
        b = db.next;
    }
}

TEST(ChaosProperties, IteratesStayInsideUnitInterval) {
    std::mt19937_64 rng(7);
    for (int seed = 0; seed < 100; ++seed) {
        const std::string key = "seed-" + std::to_string(rng());
        ChaosState s = chaos_seed(key);
        for (int i = 0; i < 10000; ++i) {
            const ChaosDraw d = chaos_step(s);
            ASSERT_GT(d.x, 0.0);
            ASSERT_LT(d.x, 1.0);
            ASSERT_GT(d.y, 0.0);
            ASSERT_LT(d.y, 1.0);
            s = d.next;
        }
    }
}

TEST(ChaosProperties, OneBitKeyChangeDivergesMappedCoordinates) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::uint8_t> key(16);
        for (auto& b : key) b = static_cast<std::uint8_t>(rng());
        std::vector<std::uint8_t> flipped = key;
        flipped[rng() % key.size()] ^= static_cast<std::uint8_t>(1U << (rng() % 8));

        ChaosState a = chaos_seed(std::span<const std::uint8_t>(key));
        ChaosState b = chaos_seed(std::span<const std::uint8_t>(flipped));
        int differing = 0;
        for (int i = 0; i < 100; ++i) {
            const ChaosDraw da = chaos_step(a);
            const ChaosDraw db = chaos_step(b);
            const Coord ca{map_unit_to_coord(da.x, 512), map_unit_to_coord(da.y, 512)};
            const Coord cb{map_unit_to_coord(db.x, 512), map_unit_to_coord(db.y, 512)};
            differing += !(ca == cb);
            a = da.next;
            b = db.next;
        }
        EXPECT_GE(differing, 90) << "trial " << trial;
    }
}

}  // namespace
}  // namespace fragmark
