#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gamefi/oracle.hpp"
#include "gamefi/rng.hpp"

using namespace gamefi;
using gamefi::testing::addr;
using gamefi::testing::key;
using gamefi::testing::Ledger;

namespace {

GenesisConfig feed_genesis(std::uint64_t reporters, std::uint64_t quorum) {
    GenesisConfig g;
    GenesisFeed f{"GEM/GOLD", {}, quorum};
    for (std::uint64_t i = 1; i <= reporters; ++i) {
        g.accounts.push_back({addr(i), 10'000'000});
        f.reporters.push_back(addr(i));
    }
    g.accounts.push_back({addr(99), 10'000'000});
    g.feeds.push_back(f);
    return g;
}

}  // namespace

TEST(Median, LowerMiddle) {
    std::vector<std::uint64_t> odd = {105, 99, 100};
    EXPECT_EQ(lower_median(odd), 100u);
    std::vector<std::uint64_t> even = {102, 100};
    EXPECT_EQ(lower_median(even), 100u);
    std::vector<std::uint64_t> one = {7};
    EXPECT_EQ(lower_median(one), 7u);
}

TEST(Oracle, QuorumAggregates) {
    Ledger l(feed_genesis(4, 3));
    l.height = 7;
    EXPECT_FALSE(get_price(l.state, "GEM/GOLD"));
    EXPECT_TRUE(l.apply(key(1), SubmitReport{"GEM/GOLD", 100}).applied());
    EXPECT_TRUE(l.apply(key(2), SubmitReport{"GEM/GOLD", 105}).applied());
    EXPECT_FALSE(get_price(l.state, "GEM/GOLD"));
    auto r = l.apply(key(3), SubmitReport{"GEM/GOLD", 99});
    ASSERT_TRUE(r.applied());
    ASSERT_EQ(r.events.size(), 1u);
    EXPECT_EQ(r.events[0].kind, EventKind::OraclePriceUpdated);
    EXPECT_EQ(r.events[0].u64("value"), 100u);
    auto p = get_price(l.state, "GEM/GOLD");
    ASSERT_TRUE(p);
    EXPECT_EQ(p->value, 100u);
    EXPECT_EQ(p->round, 1u);
    EXPECT_EQ(p->last_updated_block, 7u);

    // A late fourth report opens the next round instead of joining the closed one.
    EXPECT_TRUE(l.apply(key(4), SubmitReport{"GEM/GOLD", 500}).applied());
    EXPECT_EQ(get_price(l.state, "GEM/GOLD")->value, 100u);
    EXPECT_EQ(l.state.feeds.at("GEM/GOLD").pending.size(), 1u);
}

TEST(Oracle, EvenQuorum) {
    Ledger l(feed_genesis(2, 2));
    l.apply(key(1), SubmitReport{"GEM/GOLD", 102});
    l.apply(key(2), SubmitReport{"GEM/GOLD", 100});
    EXPECT_EQ(get_price(l.state, "GEM/GOLD")->value, 100u);
}

TEST(Oracle, Rejections) {
    Ledger l(feed_genesis(3, 3));
    auto before = l.state.feeds.at("GEM/GOLD").pending;
    EXPECT_EQ(*l.apply(key(99), SubmitReport{"GEM/GOLD", 1}).rejection, Reject::NotAuthorized);
    EXPECT_EQ(l.state.feeds.at("GEM/GOLD").pending, before);
    EXPECT_EQ(*l.apply(key(1), SubmitReport{"NOPE", 1}).rejection, Reject::UnknownFeed);
    EXPECT_TRUE(l.apply(key(1), SubmitReport{"GEM/GOLD", 1}).applied());
    EXPECT_EQ(*l.apply(key(1), SubmitReport{"GEM/GOLD", 2}).rejection, Reject::DuplicateReport);
}

TEST(Oracle, MedianResistsMinorityOutliers) {
    // With quorum 5, two arbitrarily wrong reporters cannot move the median
    // outside the honest range.
    SplitMix64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<std::uint64_t> v;
        std::uint64_t lo = UINT64_MAX, hi = 0;
        for (int i = 0; i < 3; ++i) {
            auto x = rng.uniform(990, 1010);
            lo = std::min(lo, x);
            hi = std::max(hi, x);
            v.push_back(x);
        }
        v.push_back(rng.uniform(0, UINT64_MAX));
        v.push_back(rng.uniform(0, UINT64_MAX));
        auto m = lower_median(v);
        EXPECT_GE(m, lo);
        EXPECT_LE(m, hi);
    }
}
