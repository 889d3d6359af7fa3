#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gamefi/assets.hpp"

using namespace gamefi;
using gamefi::testing::addr;
using gamefi::testing::funded;
using gamefi::testing::key;
using gamefi::testing::Ledger;

namespace {

std::vector<std::uint64_t> ids(const std::vector<Asset>& v) {
    std::vector<std::uint64_t> out;
    for (const auto& a : v) out.push_back(a.id);
    return out;
}

}  // namespace

TEST(CreateAsset, FirstMint) {
    Ledger l(funded({{1, 10'000'000}}));
    auto r = l.apply(key(1), CreateAsset{"sword", "weapon", Rarity::Rare});
    ASSERT_TRUE(r.applied());
    ASSERT_EQ(r.events.size(), 1u);
    const auto& ev = r.events[0];
    EXPECT_EQ(ev.kind, EventKind::AssetCreated);
    EXPECT_EQ(ev.u64("id"), 1u);
    EXPECT_EQ(ev.str("owner"), to_hex(addr(1)));
    auto a = get_asset(l.state, 1);
    ASSERT_TRUE(a);
    EXPECT_EQ(a->owner, addr(1));
    EXPECT_EQ(a->name, "sword");
    EXPECT_EQ(a->rarity, Rarity::Rare);
}

TEST(CreateAsset, OversizedNameRejected) {
    Ledger l(funded({{1, 10'000'000}}));
    auto r = l.apply(key(1), CreateAsset{std::string(101, 'x'), "weapon", Rarity::Rare});
    EXPECT_EQ(*r.rejection, Reject::InvalidInput);
    EXPECT_TRUE(l.state.assets.empty());
    EXPECT_EQ(l.state.next_asset_id, 1u);
    EXPECT_EQ(l.nonce(addr(1)), 1u);
}

TEST(CreateAsset, LabelValidation) {
    Ledger l(funded({{1, 100'000'000}}));
    for (const auto& bad : {std::string(), std::string("a\nb"), std::string("\xff"), std::string("\xc2\x85"),
                            std::string("\x7f")}) {
        EXPECT_EQ(*l.apply(key(1), CreateAsset{bad, "c", Rarity::Common}).rejection, Reject::InvalidInput);
        EXPECT_EQ(*l.apply(key(1), CreateAsset{"n", bad, Rarity::Common}).rejection, Reject::InvalidInput);
    }
    EXPECT_EQ(*l.apply(key(1), CreateAsset{"n", std::string(51, 'c'), Rarity::Common}).rejection,
              Reject::InvalidInput);
    EXPECT_EQ(*l.apply(key(1), CreateAsset{"n", "c", static_cast<Rarity>(5)}).rejection, Reject::InvalidInput);
    EXPECT_TRUE(l.apply(key(1), CreateAsset{"Épée ✦", "c", Rarity::Common}).applied());
}

TEST(CreateAsset, SequentialIds) {
    Ledger l(funded({{1, 10'000'000}}));
    EXPECT_EQ(l.apply(key(1), CreateAsset{"a", "c", Rarity::Common}).events[0].u64("id"), 1u);
    EXPECT_EQ(l.apply(key(1), CreateAsset{"b", "c", Rarity::Common}).events[0].u64("id"), 2u);
}

TEST(TransferAsset, OwnerMovesAsset) {
    Ledger l(funded({{1, 10'000'000}, {2, 0}}));
    l.apply(key(1), CreateAsset{"a", "c", Rarity::Common});
    auto r = l.apply(key(1), TransferAsset{1, addr(2)});
    ASSERT_TRUE(r.applied());
    EXPECT_EQ(r.events[0].kind, EventKind::AssetTransferred);
    EXPECT_EQ(r.events[0].str("from"), to_hex(addr(1)));
    EXPECT_EQ(r.events[0].str("to"), to_hex(addr(2)));
    EXPECT_EQ(get_asset(l.state, 1)->owner, addr(2));
}

TEST(TransferAsset, NonOwnerRejected) {
    Ledger l(funded({{1, 10'000'000}, {2, 10'000'000}}));
    l.apply(key(1), CreateAsset{"a", "c", Rarity::Common});
    auto r = l.apply(key(2), TransferAsset{1, addr(2)});
    EXPECT_EQ(*r.rejection, Reject::NotOwner);
    EXPECT_EQ(get_asset(l.state, 1)->owner, addr(1));
}

TEST(TransferAsset, MissingAndSelf) {
    Ledger l(funded({{1, 10'000'000}}));
    EXPECT_EQ(*l.apply(key(1), TransferAsset{999, addr(2)}).rejection, Reject::NoSuchAsset);
    l.apply(key(1), CreateAsset{"a", "c", Rarity::Common});
    EXPECT_EQ(*l.apply(key(1), TransferAsset{1, addr(1)}).rejection, Reject::SelfTransfer);
}

TEST(TransferAsset, FreshRecipientPaysSurchargeAndGetsAccount) {
    Ledger l(funded({{1, 10'000'000}}));
    l.apply(key(1), CreateAsset{"a", "c", Rarity::Common});
    auto r = l.apply(key(1), TransferAsset{1, addr(77)});
    EXPECT_EQ(r.gas_used, 50'000u);
    EXPECT_TRUE(l.state.has_account(addr(77)));
    l.apply(key(1), CreateAsset{"b", "c", Rarity::Common});
    EXPECT_EQ(l.apply(key(1), TransferAsset{2, addr(77)}).gas_used, 42'000u);
}

TEST(AssetsByOwner, FoldOfTrace) {
    Ledger l(funded({{1, 10'000'000}, {2, 0}}));
    EXPECT_TRUE(get_assets_by_owner(l.state, addr(5)).empty());
    l.apply(key(1), CreateAsset{"a", "c", Rarity::Common});
    l.apply(key(1), CreateAsset{"b", "c", Rarity::Common});
    l.apply(key(1), TransferAsset{1, addr(2)});
    EXPECT_EQ(ids(get_assets_by_owner(l.state, addr(1))), std::vector<std::uint64_t>{2});
    EXPECT_EQ(ids(get_assets_by_owner(l.state, addr(2))), std::vector<std::uint64_t>{1});
}

TEST(GetAsset, AbsentIds) {
    Ledger l(funded({{1, 10'000'000}}));
    l.apply(key(1), CreateAsset{"a", "c", Rarity::Common});
    EXPECT_FALSE(get_asset(l.state, 0));
    EXPECT_FALSE(get_asset(l.state, 2));
}
