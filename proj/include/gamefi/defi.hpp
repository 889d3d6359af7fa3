#pragma once

#include <cstdint>
#include <string>

#include "gamefi/exec.hpp"

namespace gamefi {

using u128 = unsigned __int128;

/// floor(sqrt(v))
std::uint64_t isqrt(u128 v);

struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    bool operator==(const Rational&) const = default;
};

struct SwapQuote {
    std::uint64_t amount_in = 0;
    std::uint64_t amount_out = 0;
    std::uint64_t spot_price_num = 0;  // reserve_out before the swap
    std::uint64_t spot_price_den = 1;  // reserve_in before the swap
    std::uint64_t slippage_bps = 0;
};

/// Constant-product output for an exact input, fee in basis points:
///   eff = amount_in * (10000 - fee_bps)
///   out = floor(reserve_out * eff / (reserve_in * 10000 + eff))
/// Pure. Throws Rejection(InvalidInput) for zero input, an unseeded pool or
/// an unknown direction.
SwapQuote quote_swap_exact_in(std::uint64_t reserve_in, std::uint64_t reserve_out, std::uint64_t fee_bps,
                              std::uint64_t amount_in);
SwapQuote quote_swap_exact_in(const Pool& pool, Direction direction, std::uint64_t amount_in);

/// reserve_out / reserve_in for the given direction.
Rational spot_price(const Pool& pool, Direction direction);

void exec_create_token(ExecContext& ctx, const CreateToken& p);
void exec_token_transfer(ExecContext& ctx, const TokenTransfer& p);
std::uint64_t exec_create_pool(ExecContext& ctx, const CreatePool& p);
std::uint64_t exec_add_liquidity(ExecContext& ctx, const AddLiquidity& p);  // returns lp minted

struct Withdrawal {
    std::uint64_t amount_a = 0;
    std::uint64_t amount_b = 0;
    bool closed = false;
};
Withdrawal exec_remove_liquidity(ExecContext& ctx, const RemoveLiquidity& p);

SwapQuote exec_swap_exact_in(ExecContext& ctx, const SwapExactIn& p);

void exec_stake(ExecContext& ctx, const Stake& p);
/// Returns principal + reward.
std::uint64_t exec_unstake(ExecContext& ctx);

/// floor(amount * blocks * num / den)
std::uint64_t staking_reward(std::uint64_t amount, std::uint64_t blocks, const StakingParams& params);

}  // namespace gamefi
