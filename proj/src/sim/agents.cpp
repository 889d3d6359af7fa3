#include "gamefi/sim/agents.hpp"

#include <algorithm>
#include <array>
#include <boost/multiprecision/cpp_int.hpp>

#include "gamefi/defi.hpp"

namespace gamefi::sim {

namespace {

constexpr std::array<std::string_view, 8> kAdjectives = {"Ancient", "Blazing", "Cursed", "Gilded",
                                                         "Frozen",  "Shadow",  "Runic",  "Storm"};
constexpr std::array<std::string_view, 8> kNouns = {"Sword", "Shield", "Bow", "Helm", "Amulet", "Staff", "Ring", "Axe"};
constexpr std::array<std::string_view, 5> kCategories = {"weapon", "armor", "accessory", "consumable", "mount"};
// Relative weights of Common..Legendary.
constexpr std::array<std::uint64_t, 5> kRarityWeights = {50, 25, 15, 8, 2};

template <typename C>
const auto& pick(SplitMix64& rng, const C& c) {
    return c[rng.uniform(0, c.size() - 1)];
}

Rarity pick_rarity(SplitMix64& rng) {
    std::uint64_t total = 0;
    for (auto w : kRarityWeights) total += w;
    auto roll = rng.uniform(0, total - 1);
    for (std::size_t i = 0; i < kRarityWeights.size(); ++i) {
        if (roll < kRarityWeights[i]) return static_cast<Rarity>(i);
        roll -= kRarityWeights[i];
    }
    return Rarity::Common;
}

UnsignedTransaction make_tx(const AgentState& a, const Observation& obs, Payload p) {
    return {a.key.public_key, obs.self.nonce, std::move(p)};
}

std::uint64_t with_tolerance(std::uint64_t amount, std::uint64_t tolerance_bps) {
    return static_cast<std::uint64_t>(u128(amount) * (10'000 - tolerance_bps) / 10'000);
}

std::uint64_t token_balance(const Observation& obs, const std::string& symbol) {
    auto it = obs.tokens.find(symbol);
    return it == obs.tokens.end() ? 0 : it->second;
}

std::optional<UnsignedTransaction> minter_step(AgentState& a, const Observation& obs) {
    if (a.rng.chance(a.minter.mint_probability)) {
        CreateAsset p;
        p.name = std::string(pick(a.rng, kAdjectives)) + " " + std::string(pick(a.rng, kNouns)) + " #" +
                 std::to_string(++a.mint_counter);
        p.category = std::string(pick(a.rng, kCategories));
        p.rarity = pick_rarity(a.rng);
        return make_tx(a, obs, p);
    }
    if (!obs.owned_assets.empty() && !obs.peers.empty() && a.rng.chance(a.minter.transfer_probability)) {
        const auto id = pick(a.rng, obs.owned_assets);
        auto to = pick(a.rng, obs.peers);
        if (to == a.key.public_key) return std::nullopt;
        return make_tx(a, obs, TransferAsset{id, to});
    }
    return std::nullopt;
}

std::optional<UnsignedTransaction> trader_step(AgentState& a, const Observation& obs) {
    if (obs.pools.empty() || !a.rng.chance(a.trader.trade_probability)) return std::nullopt;
    const auto& pool = pick(a.rng, obs.pools);
    auto dir = a.rng.chance(0.5) ? Direction::AToB : Direction::BToA;
    const auto& token_in = dir == Direction::AToB ? pool.token_a : pool.token_b;
    const auto reserve_in = dir == Direction::AToB ? pool.reserve_a : pool.reserve_b;
    const auto cap = std::min(token_balance(obs, token_in),
                              static_cast<std::uint64_t>(u128(reserve_in) * a.trader.max_trade_bps / 10'000));
    if (cap == 0) return std::nullopt;
    const auto amount = a.rng.uniform(1, cap);
    try {
        auto q = quote_swap_exact_in(pool, dir, amount);
        if (q.amount_out == 0) return std::nullopt;
        return make_tx(a, obs,
                       SwapExactIn{pool.pool_id, dir, amount,
                                   std::max<std::uint64_t>(1, with_tolerance(q.amount_out, a.trader.slippage_tolerance_bps))});
    } catch (const Rejection&) {
        return std::nullopt;
    }
}

std::optional<UnsignedTransaction> arbitrage_step(AgentState& a, const Observation& obs) {
    for (const auto& link : obs.feed_links) {
        auto fv = obs.feed_values.find(link.feed_id);
        if (fv == obs.feed_values.end()) continue;
        auto pool = std::find_if(obs.pools.begin(), obs.pools.end(),
                                 [&](const Pool& p) { return p.pool_id == link.pool_id; });
        if (pool == obs.pools.end()) continue;

        const auto feed = fv->second;
        const auto spot = spot_ppm(*pool);
        a.last_observed_ppm = spot;
        const auto gap = spot > feed ? spot - feed : feed - spot;
        // |spot - feed| / feed > threshold
        if (u128(gap) * 10'000 <= u128(feed) * a.arbitrage.threshold_bps) continue;

        auto [dir, amount] = half_gap_trade(*pool, feed);
        const auto& token_in = dir == Direction::AToB ? pool->token_a : pool->token_b;
        amount = std::min(amount, token_balance(obs, token_in));
        if (amount == 0) continue;
        try {
            auto q = quote_swap_exact_in(*pool, dir, amount);
            if (q.amount_out == 0) continue;
            return make_tx(a, obs,
                           SwapExactIn{pool->pool_id, dir, amount,
                                       std::max<std::uint64_t>(
                                           1, with_tolerance(q.amount_out, a.arbitrage.slippage_tolerance_bps))});
        } catch (const Rejection&) {
            continue;
        }
    }
    return std::nullopt;
}

std::optional<UnsignedTransaction> staker_step(AgentState& a, const Observation& obs) {
    if (obs.stake) {
        if (obs.height >= obs.stake->start_block + a.staker.hold_blocks) return make_tx(a, obs, Unstake{});
        return std::nullopt;
    }
    if (obs.self.balance <= a.staker.fee_reserve) return std::nullopt;
    const auto spare = obs.self.balance - a.staker.fee_reserve;
    const auto amount = static_cast<std::uint64_t>(u128(spare) * a.staker.stake_fraction_bps / 10'000);
    if (amount == 0) return std::nullopt;
    return make_tx(a, obs, Stake{amount});
}

std::optional<UnsignedTransaction> reporter_step(AgentState& a, const Observation& obs) {
    if (obs.round % a.reporter.report_every != 0) return std::nullopt;
    auto value = a.reporter.price_ppm;
    if (a.reporter.jitter_ppm > 0) {
        const auto j = a.rng.uniform(0, 2 * a.reporter.jitter_ppm);
        value = value - a.reporter.jitter_ppm + j;
    }
    return make_tx(a, obs, SubmitReport{a.reporter.feed_id, value});
}

}  // namespace

std::uint64_t spot_ppm(const Pool& pool) {
    if (pool.reserve_a == 0) return 0;
    return static_cast<std::uint64_t>(u128(pool.reserve_b) * 1'000'000 / pool.reserve_a);
}

std::pair<Direction, std::uint64_t> half_gap_trade(const Pool& pool, std::uint64_t target_ppm) {
    // Integer-only so agent decisions do not depend on the platform's float
    // formats. Aim for the spot price halfway between current and target:
    // selling A moves reserve_a to sqrt(k / mid), selling B moves reserve_b
    // to sqrt(k * mid).
    using boost::multiprecision::uint256_t;
    const auto spot = spot_ppm(pool);
    if (pool.reserve_a == 0 || pool.reserve_b == 0 || spot == target_ppm) return {Direction::AToB, 0};
    const std::uint64_t mid = spot / 2 + target_ppm / 2 + (spot % 2 + target_ppm % 2) / 2;
    const uint256_t k = uint256_t(pool.reserve_a) * pool.reserve_b;
    if (spot > target_ppm) {
        const uint256_t ra_new = boost::multiprecision::sqrt(k * 1'000'000 / mid);
        const uint256_t in = ra_new > pool.reserve_a ? ra_new - pool.reserve_a : uint256_t(0);
        return {Direction::AToB, in > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(in)};
    }
    const uint256_t rb_new = boost::multiprecision::sqrt(k * mid / 1'000'000);
    const uint256_t in = rb_new > pool.reserve_b ? rb_new - pool.reserve_b : uint256_t(0);
    return {Direction::BToA, in > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(in)};
}

std::optional<UnsignedTransaction> agent_step(AgentState& agent, const Observation& obs) {
    switch (agent.role) {
        case Role::Minter: return minter_step(agent, obs);
        case Role::RandomTrader: return trader_step(agent, obs);
        case Role::Arbitrageur: return arbitrage_step(agent, obs);
        case Role::Staker: return staker_step(agent, obs);
        case Role::Reporter: return reporter_step(agent, obs);
    }
    return std::nullopt;
}

}  // namespace gamefi::sim
