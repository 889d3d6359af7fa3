#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gamefi/assets.hpp"
#include "gamefi/engine.hpp"

using namespace gamefi;
using gamefi::testing::addr;
using gamefi::testing::funded;
using gamefi::testing::key;
using gamefi::testing::Ledger;

TEST(Gas, CreateAssetFormula) {
    LedgerState s;
    GasSchedule g;
    EXPECT_EQ(charge_gas(g, CreateAsset{"sword", "weapon", Rarity::Rare}, s), 51'100u);
    EXPECT_EQ(charge_gas(g, CreateAsset{std::string(100, 'n'), std::string(50, 'c'), Rarity::Common}, s), 65'000u);
}

TEST(Gas, TransferSurchargeOnlyForFreshRecipients) {
    Ledger l(funded({{1, 1'000'000}, {2, 0}}));
    GasSchedule g;
    EXPECT_EQ(charge_gas(g, TransferAsset{1, addr(2)}, l.state), 42'000u);
    EXPECT_EQ(charge_gas(g, TransferAsset{1, addr(99)}, l.state), 50'000u);
}

TEST(Fees, NativeTransferArithmetic) {
    Ledger l(funded({{1, 1'000'000}, {2, 0}}));
    auto r = l.apply(key(1), NativeTransfer{addr(2), 100});
    ASSERT_TRUE(r.applied());
    EXPECT_EQ(r.gas_used, 21'000u);
    EXPECT_EQ(l.balance(addr(1)), 1'000'000u - 100 - 21'000);
    EXPECT_EQ(l.balance(addr(2)), 100u);
}

TEST(Fees, ExecutorRejectionStillCharges) {
    Ledger l(funded({{1, 50'000}, {2, 0}}));
    auto r = l.apply(key(1), NativeTransfer{addr(2), 40'000});
    ASSERT_FALSE(r.applied());
    EXPECT_EQ(*r.rejection, Reject::InsufficientFunds);
    EXPECT_EQ(r.gas_used, 21'000u);
    EXPECT_EQ(l.balance(addr(1)), 29'000u);
    EXPECT_EQ(l.balance(addr(2)), 0u);
    EXPECT_EQ(l.nonce(addr(1)), 1u);
    EXPECT_TRUE(r.events.empty());
}

TEST(Fees, UnpayableFeeIsFreeAndKeepsNonce) {
    Ledger l(funded({{1, 20'999}}));
    auto before = state_root(l.state);
    auto r = l.apply(key(1), NativeTransfer{addr(2), 1});
    EXPECT_EQ(*r.rejection, Reject::Fee);
    EXPECT_EQ(r.gas_used, 0u);
    EXPECT_EQ(state_root(l.state), before);
}

TEST(Fees, UnknownSenderCannotPay) {
    Ledger l;
    auto r = l.apply(key(5), CreateAsset{"a", "b", Rarity::Common});
    EXPECT_EQ(*r.rejection, Reject::Fee);
    EXPECT_TRUE(l.state.accounts.empty());
}

TEST(Nonce, InOrderBothApply) {
    Ledger l(funded({{1, 1'000'000}}));
    auto k = key(1);
    auto t0 = sign_transaction({k.public_key, 0, CreateAsset{"a", "b", Rarity::Common}}, k.secret);
    auto t1 = sign_transaction({k.public_key, 1, CreateAsset{"c", "d", Rarity::Common}}, k.secret);
    EXPECT_TRUE(apply_transaction(l.state, t0, 1, 0, 0).applied());
    EXPECT_TRUE(apply_transaction(l.state, t1, 1, 0, 0).applied());
}

TEST(Nonce, OutOfOrderFirstRejected) {
    Ledger l(funded({{1, 1'000'000}}));
    auto k = key(1);
    auto t0 = sign_transaction({k.public_key, 0, CreateAsset{"a", "b", Rarity::Common}}, k.secret);
    auto t1 = sign_transaction({k.public_key, 1, CreateAsset{"c", "d", Rarity::Common}}, k.secret);
    auto r1 = apply_transaction(l.state, t1, 1, 0, 0);
    EXPECT_EQ(*r1.rejection, Reject::Nonce);
    EXPECT_EQ(r1.gas_used, 0u);
    EXPECT_TRUE(apply_transaction(l.state, t0, 1, 0, 0).applied());
}

TEST(StateRoot, IdenticalContentIdenticalRoot) {
    auto g = funded({{1, 10}, {2, 20}});
    EXPECT_EQ(state_root(build_genesis_state(g)), state_root(build_genesis_state(g)));
    auto reordered = funded({{2, 20}, {1, 10}});
    EXPECT_EQ(state_root(build_genesis_state(g)), state_root(build_genesis_state(reordered)));
}

TEST(StateRoot, OneUnitChangesRoot) {
    auto s = build_genesis_state(funded({{1, 10}}));
    auto before = state_root(s);
    s.accounts.at(addr(1)).balance += 1;
    EXPECT_NE(state_root(s), before);
}

TEST(Conservation, HoldsAfterMixedTraffic) {
    Ledger l(funded({{1, 10'000'000}, {2, 10'000'000}}));
    l.apply(key(1), NativeTransfer{addr(2), 5});
    l.apply(key(1), CreateAsset{"x", "y", Rarity::Epic});
    l.apply(key(2), NativeTransfer{addr(3), 999'999'999});
    l.apply(key(2), Stake{1'000});
    auto c = check_conservation(l.state);
    EXPECT_TRUE(c.ok());
}

namespace {

Engine make_engine() { return Engine(funded({{1, 100'000'000}, {2, 100'000'000}})); }

}  // namespace

TEST(Blocks, EmptyBlockKeepsRoot) {
    auto e = make_engine();
    auto root = e.state_root();
    auto b = e.produce_block(10);
    EXPECT_TRUE(b.receipts.empty());
    EXPECT_EQ(b.state_root, root);
    EXPECT_EQ(b.parent_root, root);
}

TEST(Blocks, ConfirmationSecondsIsBlockMinusSubmission) {
    auto e = make_engine();
    auto k = key(1);
    e.submit(sign_transaction({k.public_key, 0, CreateAsset{"sword", "weapon", Rarity::Rare}}, k.secret));
    auto b = e.produce_block(20);
    ASSERT_EQ(b.receipts.size(), 1u);
    EXPECT_TRUE(b.receipts[0].applied());
    EXPECT_EQ(b.receipts[0].confirmation_seconds, 20u);
}

TEST(Blocks, TimestampsMustIncrease) {
    auto e = make_engine();
    e.produce_block(10);
    EXPECT_THROW(e.produce_block(10), std::invalid_argument);
}

TEST(Blocks, EventSequencesAreGlobalAndGapless) {
    auto e = make_engine();
    auto k1 = key(1), k2 = key(2);
    std::uint64_t expected = 0;
    for (int round = 0; round < 3; ++round) {
        e.submit(sign_transaction({k1.public_key, std::uint64_t(round), CreateAsset{"a", "b", Rarity::Common}}, k1.secret));
        e.submit(sign_transaction({k2.public_key, std::uint64_t(round), NativeTransfer{addr(9), 1}}, k2.secret));
        auto b = e.produce_block(10 * (round + 1));
        for (const auto& r : b.receipts)
            for (const auto& ev : r.events) EXPECT_EQ(ev.sequence, expected++);
    }
    EXPECT_EQ(expected, 6u);
}

namespace {

struct RecordedChain {
    GenesisConfig genesis;
    std::vector<Block> blocks;
};

RecordedChain record() {
    auto g = funded({{1, 100'000'000}, {2, 100'000'000}});
    Engine e(g);
    auto k1 = key(1), k2 = key(2);
    for (std::uint64_t i = 0; i < 4; ++i) {
        e.submit(sign_transaction({k1.public_key, i, CreateAsset{"gem", "loot", Rarity::Uncommon}}, k1.secret));
        e.submit(sign_transaction({k2.public_key, i, NativeTransfer{k1.public_key, 10}}, k2.secret));
        e.produce_block(15 * (i + 1));
    }
    return {g, e.blocks()};
}

}  // namespace

TEST(Replay, HonestRunMatches) {
    auto c = record();
    auto s = replay(c.genesis, c.blocks);
    EXPECT_EQ(state_root(s), c.blocks.back().state_root);
}

TEST(Replay, GenesisOnlyYieldsGenesisState) {
    auto g = funded({{1, 5}});
    auto s = replay(g, {genesis_block(g)});
    EXPECT_EQ(state_root(s), state_root(build_genesis_state(g)));
}

TEST(Replay, TamperedGasIsDetectedAtItsHeight) {
    auto c = record();
    c.blocks[3].receipts[0].gas_used += 1;
    try {
        replay(c.genesis, c.blocks);
        FAIL() << "tampering went unnoticed";
    } catch (const IntegrityError& e) {
        EXPECT_EQ(e.height(), 3u);
    }
}

TEST(Replay, ForgedSignatureDetected) {
    auto c = record();
    c.blocks[2].entries[1].tx.signature.bytes[0] ^= 1;
    EXPECT_THROW(replay(c.genesis, c.blocks), IntegrityError);
}

TEST(Replay, DroppedBlockDetected) {
    auto c = record();
    c.blocks.erase(c.blocks.begin() + 2);
    try {
        replay(c.genesis, c.blocks);
        FAIL();
    } catch (const IntegrityError& e) {
        EXPECT_EQ(e.height(), 2u);
    }
}

TEST(Replay, BlockEncodingRoundTrips) {
    auto c = record();
    for (const auto& b : c.blocks) EXPECT_EQ(encode(decode_block(encode(b))), encode(b));
}
