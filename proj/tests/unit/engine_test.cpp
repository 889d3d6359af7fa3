#include <gtest/gtest.h>

#include <thread>

#include "fixtures.hpp"
#include "gamefi/engine.hpp"

using namespace gamefi;
using gamefi::testing::addr;
using gamefi::testing::funded;
using gamefi::testing::key;

namespace {

SignedTransaction mint(std::uint64_t who, std::uint64_t nonce) {
    auto k = key(who);
    return sign_transaction({k.public_key, nonce, CreateAsset{"a", "b", Rarity::Common}}, k.secret);
}

}  // namespace

TEST(Engine, SubmitQueues) {
    Engine e(funded({{1, 10'000'000}}));
    auto tx = mint(1, 0);
    auto r = e.submit(tx);
    EXPECT_EQ(r.txid, tx.txid);
    EXPECT_FALSE(r.duplicate);
    EXPECT_EQ(e.pending_count(), 1u);
    EXPECT_EQ(e.lookup(tx.txid)->status, TxStatus::Queued);
}

TEST(Engine, ResubmissionIsIdempotent) {
    Engine e(funded({{1, 10'000'000}}));
    auto tx = mint(1, 0);
    e.submit(tx);
    auto again = e.submit(tx);
    EXPECT_TRUE(again.duplicate);
    EXPECT_EQ(again.txid, tx.txid);
    EXPECT_EQ(e.pending_count(), 1u);
    e.produce_block(10);
    EXPECT_TRUE(e.submit(tx).duplicate);
    EXPECT_EQ(e.produce_block(20).receipts.size(), 0u);
}

TEST(Engine, CorruptSignatureNeverQueued) {
    Engine e(funded({{1, 10'000'000}}));
    auto tx = mint(1, 0);
    tx.signature.bytes[10] ^= 0x40;
    EXPECT_THROW(e.submit(tx), SignatureInvalid);
    EXPECT_EQ(e.pending_count(), 0u);
    EXPECT_TRUE(e.produce_block(10).receipts.empty());
}

TEST(Engine, EncodedSubmission) {
    Engine e(funded({{1, 10'000'000}}));
    auto bytes = encode(mint(1, 0));
    EXPECT_NO_THROW(e.submit_encoded(bytes));
    bytes.resize(bytes.size() - 3);
    EXPECT_THROW(e.submit_encoded(bytes), DecodeError);
}

TEST(Engine, FifoWithinBlock) {
    Engine e(funded({{1, 10'000'000}}));
    auto t1 = mint(1, 1), t0 = mint(1, 0);
    e.submit(t1);
    e.submit(t0);
    auto b = e.produce_block(10);
    ASSERT_EQ(b.receipts.size(), 2u);
    EXPECT_EQ(*b.receipts[0].rejection, Reject::Nonce);
    EXPECT_TRUE(b.receipts[1].applied());
    EXPECT_EQ(e.lookup(t0.txid)->status, TxStatus::Included);
}

TEST(Engine, FaucetCreditsAreReplayable) {
    Engine e(funded({{1, 10'000'000}}));
    e.credit(addr(5), 1'000'000);
    EXPECT_EQ(e.snapshot().account(addr(5))->balance, 1'000'000u);
    auto b = e.produce_block(10);
    ASSERT_EQ(b.credits.size(), 1u);
    EXPECT_TRUE(check_conservation(e.snapshot()).ok());
    EXPECT_EQ(state_root(replay(e.genesis(), e.blocks())), e.state_root());
}

TEST(Engine, ConcurrentSubmissionsAllLand) {
    GenesisConfig g;
    for (std::uint64_t i = 1; i <= 8; ++i) g.accounts.push_back({addr(i), 100'000'000});
    Engine e(g);
    std::vector<std::thread> threads;
    for (std::uint64_t i = 1; i <= 8; ++i)
        threads.emplace_back([&, i] {
            for (std::uint64_t n = 0; n < 25; ++n) e.submit(mint(i, n));
        });
    for (auto& t : threads) t.join();
    auto b = e.produce_block(10);
    EXPECT_EQ(b.receipts.size(), 200u);
    for (const auto& r : b.receipts) EXPECT_TRUE(r.applied());
}

TEST(EventLog, ReadAndWait) {
    EventLog log;
    EXPECT_FALSE(log.wait(0, std::chrono::milliseconds(1)));
    Event ev;
    ev.sequence = 0;
    log.append({{ev, {}}});
    EXPECT_TRUE(log.wait(0, std::chrono::milliseconds(1)));
    EXPECT_EQ(log.read(0, 10).size(), 1u);
    EXPECT_TRUE(log.read(1, 10).empty());
    EXPECT_EQ(log.next_sequence(), 1u);
    log.close();
    EXPECT_FALSE(log.wait(1, std::chrono::seconds(5)));
}
