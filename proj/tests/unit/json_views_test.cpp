#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gamefi/encoding.hpp"
#include "gamefi/json_views.hpp"

using namespace gamefi;
using gamefi::testing::key;

namespace {

Bytes wire(const Payload& p) {
    Writer w;
    encode(w, p);
    return w.data();
}

}  // namespace

TEST(PayloadJson, EveryKindRoundTrips) {
    const auto to = key(2).public_key;
    const std::vector<Payload> payloads = {
        NativeTransfer{to, 5},          CreateAsset{"névé", "c", Rarity::Legendary},
        TransferAsset{9, to},           CreateToken{"GOLD", 1000},
        TokenTransfer{"GOLD", to, 7},   CreatePool{"A", "B", 30, 1, 2},
        AddLiquidity{1, 3, 4},          RemoveLiquidity{1, 5},
        SwapExactIn{1, Direction::BToA, 10, 9},
        Stake{100},                     Unstake{},
        SubmitReport{"GEM/GOLD", 1'000'000},
    };
    for (const auto& p : payloads) {
        const auto j = nlohmann::json::parse(payload_json(p).dump());
        EXPECT_EQ(wire(payload_from_json(j)), wire(p)) << j.dump();
    }
}

TEST(PayloadJson, NamesAcceptedForEnums) {
    auto p = payload_from_json({{"kind", "SwapExactIn"}, {"pool_id", 1}, {"direction", "b_to_a"}, {"amount_in", 3}});
    EXPECT_EQ(std::get<SwapExactIn>(p).direction, Direction::BToA);
    EXPECT_EQ(std::get<SwapExactIn>(p).min_out, 0u);
    auto c = payload_from_json({{"kind", "CreateAsset"}, {"name", "x"}, {"category", "y"}, {"rarity", "Epic"}});
    EXPECT_EQ(std::get<CreateAsset>(c).rarity, Rarity::Epic);
}

TEST(PayloadJson, MalformedObjectsThrow) {
    EXPECT_THROW(payload_from_json(nlohmann::json::array()), std::invalid_argument);
    EXPECT_THROW(payload_from_json({{"kind", "Mint"}}), std::invalid_argument);
    EXPECT_THROW(payload_from_json({{"kind", "Stake"}}), std::invalid_argument);
    EXPECT_THROW(payload_from_json({{"kind", "Stake"}, {"amount", -1}}), std::invalid_argument);
    EXPECT_THROW(payload_from_json({{"kind", "NativeTransfer"}, {"to", "abcd"}, {"amount", 1}}), std::invalid_argument);
    EXPECT_THROW(payload_from_json({{"kind", "SwapExactIn"}, {"pool_id", 1}, {"direction", 256}, {"amount_in", 3}}),
                 std::invalid_argument);
}
