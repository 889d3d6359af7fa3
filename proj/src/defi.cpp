#include "gamefi/defi.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

namespace gamefi {

namespace {

using boost::multiprecision::uint256_t;

uint256_t wide(u128 v) {
    uint256_t out = static_cast<std::uint64_t>(v >> 64);
    out <<= 64;
    out |= static_cast<std::uint64_t>(v);
    return out;
}

std::uint64_t narrow(const uint256_t& v) {
    if (v > uint256_t(std::numeric_limits<std::uint64_t>::max()))
        throw Rejection(Reject::Overflow, "arithmetic overflow");
    return v.convert_to<std::uint64_t>();
}

void credit_token(LedgerState& s, const std::string& symbol, const Address& to, std::uint64_t amount) {
    if (amount == 0) return;
    auto& bal = s.tokens.at(symbol).balances[to];
    bal += amount;  // bounded by total_supply
}

void debit_token(LedgerState& s, const std::string& symbol, const Address& from, std::uint64_t amount) {
    if (amount == 0) return;
    auto& balances = s.tokens.at(symbol).balances;
    auto it = balances.find(from);
    it->second -= amount;
    if (it->second == 0) balances.erase(it);
}

void require_token(const LedgerState& s, const std::string& symbol) {
    if (!s.tokens.count(symbol)) throw Rejection(Reject::UnknownToken, "unknown token " + symbol);
}

void require_balance(const LedgerState& s, const std::string& symbol, const Address& who, std::uint64_t amount) {
    if (s.token_balance(symbol, who) < amount)
        throw Rejection(Reject::InsufficientFunds, "insufficient " + symbol + " balance");
}

Pool& require_pool(LedgerState& s, std::uint64_t id) {
    auto it = s.pools.find(id);
    if (it == s.pools.end()) throw Rejection(Reject::UnknownPool, "no pool with id " + std::to_string(id));
    return it->second;
}

std::uint64_t ceil_div(u128 num, std::uint64_t den) { return static_cast<std::uint64_t>((num + den - 1) / den); }

}  // namespace

std::uint64_t isqrt(u128 v) {
    if (v == 0) return 0;
    // Newton iteration from an over-estimate; converges monotonically downward.
    u128 x = v;
    u128 y = (x + 1) / 2;
    if (v >= (u128(1) << 64)) {
        x = u128(1) << 64;
        y = (x + v / x) / 2;
    }
    while (y < x) {
        x = y;
        y = (x + v / x) / 2;
    }
    return static_cast<std::uint64_t>(x);
}

SwapQuote quote_swap_exact_in(std::uint64_t reserve_in, std::uint64_t reserve_out, std::uint64_t fee_bps,
                              std::uint64_t amount_in) {
    if (amount_in == 0) throw Rejection(Reject::InvalidInput, "swap input must be positive");
    if (reserve_in == 0 || reserve_out == 0) throw Rejection(Reject::InvalidInput, "pool is empty");
    if (fee_bps > kBpsDenominator) throw Rejection(Reject::InvalidInput, "fee exceeds 100%");

    const u128 eff = u128(amount_in) * (kBpsDenominator - fee_bps);
    const u128 denom = u128(reserve_in) * kBpsDenominator + eff;
    const uint256_t numer = wide(reserve_out) * wide(eff);

    SwapQuote q;
    q.amount_in = amount_in;
    q.amount_out = narrow(numer / wide(denom));
    q.spot_price_num = reserve_out;
    q.spot_price_den = reserve_in;

    // slippage = floor(10000 * (1 - out*reserve_in / (in*reserve_out)))
    //          = 10000 - ceil(10000 * out * reserve_in / (in * reserve_out))
    const uint256_t realized = wide(kBpsDenominator) * q.amount_out * reserve_in;
    const uint256_t ideal = wide(amount_in) * reserve_out;
    const uint256_t ratio_ceil = (realized + ideal - 1) / ideal;
    q.slippage_bps = kBpsDenominator - std::min<std::uint64_t>(kBpsDenominator, ratio_ceil.convert_to<std::uint64_t>());
    return q;
}

SwapQuote quote_swap_exact_in(const Pool& pool, Direction direction, std::uint64_t amount_in) {
    if (!is_valid(direction)) throw Rejection(Reject::InvalidInput, "unknown swap direction");
    if (direction == Direction::AToB) return quote_swap_exact_in(pool.reserve_a, pool.reserve_b, pool.fee_bps, amount_in);
    return quote_swap_exact_in(pool.reserve_b, pool.reserve_a, pool.fee_bps, amount_in);
}

Rational spot_price(const Pool& pool, Direction direction) {
    if (pool.reserve_a == 0 || pool.reserve_b == 0) throw Rejection(Reject::InvalidInput, "pool is empty");
    if (direction == Direction::AToB) return {pool.reserve_b, pool.reserve_a};
    return {pool.reserve_a, pool.reserve_b};
}

void exec_create_token(ExecContext& ctx, const CreateToken& p) {
    auto& s = ctx.state;
    if (!is_valid_label(p.symbol, kMaxTokenSymbol)) throw Rejection(Reject::InvalidInput, "token symbol must be 1-8 bytes");
    if (p.supply == 0) throw Rejection(Reject::InvalidInput, "token supply must be positive");
    if (s.tokens.count(p.symbol)) throw Rejection(Reject::DuplicateSymbol, "token " + p.symbol + " already exists");

    Token t;
    t.total_supply = p.supply;
    t.balances[ctx.sender] = p.supply;
    s.tokens.emplace(p.symbol, std::move(t));
}

void exec_token_transfer(ExecContext& ctx, const TokenTransfer& p) {
    auto& s = ctx.state;
    if (p.amount == 0) throw Rejection(Reject::InvalidInput, "transfer amount must be positive");
    require_token(s, p.symbol);
    require_balance(s, p.symbol, ctx.sender, p.amount);

    debit_token(s, p.symbol, ctx.sender, p.amount);
    credit_token(s, p.symbol, p.to, p.amount);
    s.touch_account(p.to);
    ctx.emit(EventKind::TokenTransferred,
             {{"symbol", p.symbol}, {"from", to_hex(ctx.sender)}, {"to", to_hex(p.to)}, {"amount", p.amount}});
}

std::uint64_t exec_create_pool(ExecContext& ctx, const CreatePool& p) {
    auto& s = ctx.state;
    if (p.token_a == p.token_b) throw Rejection(Reject::InvalidInput, "pool tokens must differ");
    require_token(s, p.token_a);
    require_token(s, p.token_b);
    if (p.fee_bps > kMaxFeeBps) throw Rejection(Reject::InvalidInput, "fee_bps must be at most 1000");
    if (p.amount_a == 0 || p.amount_b == 0) throw Rejection(Reject::InvalidInput, "seed amounts must be positive");
    if (s.pool_for_pair(p.token_a, p.token_b)) throw Rejection(Reject::DuplicatePool, "pool for pair already exists");
    require_balance(s, p.token_a, ctx.sender, p.amount_a);
    require_balance(s, p.token_b, ctx.sender, p.amount_b);

    const bool swapped = p.token_b < p.token_a;
    Pool pool;
    pool.pool_id = s.next_pool_id;
    pool.token_a = swapped ? p.token_b : p.token_a;
    pool.token_b = swapped ? p.token_a : p.token_b;
    pool.reserve_a = swapped ? p.amount_b : p.amount_a;
    pool.reserve_b = swapped ? p.amount_a : p.amount_b;
    pool.fee_bps = p.fee_bps;
    pool.lp_supply = isqrt(u128(pool.reserve_a) * pool.reserve_b);
    pool.lp_balances[ctx.sender] = pool.lp_supply;

    s.next_pool_id = checked_add(s.next_pool_id, 1);
    debit_token(s, pool.token_a, ctx.sender, pool.reserve_a);
    debit_token(s, pool.token_b, ctx.sender, pool.reserve_b);
    auto id = pool.pool_id;
    ctx.emit(EventKind::LiquidityChanged, {{"pool_id", id},
                                           {"action", std::string("create")},
                                           {"provider", to_hex(ctx.sender)},
                                           {"amount_a", pool.reserve_a},
                                           {"amount_b", pool.reserve_b},
                                           {"lp", pool.lp_supply}});
    s.pools.emplace(id, std::move(pool));
    return id;
}

std::uint64_t exec_add_liquidity(ExecContext& ctx, const AddLiquidity& p) {
    auto& s = ctx.state;
    auto& pool = require_pool(s, p.pool_id);
    if (p.amount_a == 0 || p.amount_b == 0) throw Rejection(Reject::InvalidInput, "liquidity amounts must be positive");

    const u128 lp_by_a = u128(p.amount_a) * pool.lp_supply / pool.reserve_a;
    const u128 lp_by_b = u128(p.amount_b) * pool.lp_supply / pool.reserve_b;
    const auto lp = static_cast<std::uint64_t>(std::min(lp_by_a, lp_by_b));
    if (lp == 0) throw Rejection(Reject::DustLiquidity, "deposit too small to mint liquidity");

    // Deposit the pro-rata amounts implied by the minted lp, rounded up so
    // the pool never loses value to a new provider.
    const auto used_a = ceil_div(u128(lp) * pool.reserve_a, pool.lp_supply);
    const auto used_b = ceil_div(u128(lp) * pool.reserve_b, pool.lp_supply);
    require_balance(s, pool.token_a, ctx.sender, used_a);
    require_balance(s, pool.token_b, ctx.sender, used_b);
    const auto new_a = checked_add(pool.reserve_a, used_a);
    const auto new_b = checked_add(pool.reserve_b, used_b);
    const auto new_supply = checked_add(pool.lp_supply, lp);

    debit_token(s, pool.token_a, ctx.sender, used_a);
    debit_token(s, pool.token_b, ctx.sender, used_b);
    pool.reserve_a = new_a;
    pool.reserve_b = new_b;
    pool.lp_supply = new_supply;
    pool.lp_balances[ctx.sender] += lp;
    ctx.emit(EventKind::LiquidityChanged, {{"pool_id", pool.pool_id},
                                           {"action", std::string("add")},
                                           {"provider", to_hex(ctx.sender)},
                                           {"amount_a", used_a},
                                           {"amount_b", used_b},
                                           {"lp", lp}});
    return lp;
}

Withdrawal exec_remove_liquidity(ExecContext& ctx, const RemoveLiquidity& p) {
    auto& s = ctx.state;
    auto& pool = require_pool(s, p.pool_id);
    if (p.lp_amount == 0) throw Rejection(Reject::InvalidInput, "lp amount must be positive");
    auto held = pool.lp_balances.find(ctx.sender);
    if (held == pool.lp_balances.end() || held->second < p.lp_amount)
        throw Rejection(Reject::InsufficientFunds, "insufficient lp balance");

    Withdrawal w;
    w.closed = p.lp_amount == pool.lp_supply;
    w.amount_a = static_cast<std::uint64_t>(u128(p.lp_amount) * pool.reserve_a / pool.lp_supply);
    w.amount_b = static_cast<std::uint64_t>(u128(p.lp_amount) * pool.reserve_b / pool.lp_supply);
    if (w.amount_a == 0 && w.amount_b == 0) throw Rejection(Reject::DustLiquidity, "withdrawal too small");

    const auto id = pool.pool_id;
    const auto token_a = pool.token_a;
    const auto token_b = pool.token_b;
    held->second -= p.lp_amount;
    if (held->second == 0) pool.lp_balances.erase(held);
    pool.lp_supply -= p.lp_amount;
    pool.reserve_a -= w.amount_a;
    pool.reserve_b -= w.amount_b;
    if (w.closed) s.pools.erase(id);
    credit_token(s, token_a, ctx.sender, w.amount_a);
    credit_token(s, token_b, ctx.sender, w.amount_b);

    ctx.emit(EventKind::LiquidityChanged, {{"pool_id", id},
                                           {"action", std::string(w.closed ? "close" : "remove")},
                                           {"provider", to_hex(ctx.sender)},
                                           {"amount_a", w.amount_a},
                                           {"amount_b", w.amount_b},
                                           {"lp", p.lp_amount}});
    return w;
}

SwapQuote exec_swap_exact_in(ExecContext& ctx, const SwapExactIn& p) {
    auto& s = ctx.state;
    auto& pool = require_pool(s, p.pool_id);
    if (!is_valid(p.direction)) throw Rejection(Reject::InvalidInput, "unknown swap direction");
    if (p.amount_in == 0) throw Rejection(Reject::InvalidInput, "swap input must be positive");

    const bool a_to_b = p.direction == Direction::AToB;
    const auto& token_in = a_to_b ? pool.token_a : pool.token_b;
    const auto& token_out = a_to_b ? pool.token_b : pool.token_a;
    require_balance(s, token_in, ctx.sender, p.amount_in);

    auto q = quote_swap_exact_in(pool, p.direction, p.amount_in);
    if (q.amount_out == 0) throw Rejection(Reject::ZeroOutput, "swap output rounds to zero");
    if (q.amount_out < p.min_out)
        throw Rejection(Reject::Slippage, "output " + std::to_string(q.amount_out) + " below min_out " +
                                              std::to_string(p.min_out));
    auto& reserve_in = a_to_b ? pool.reserve_a : pool.reserve_b;
    auto& reserve_out = a_to_b ? pool.reserve_b : pool.reserve_a;
    const auto new_in = checked_add(reserve_in, p.amount_in);

    debit_token(s, token_in, ctx.sender, p.amount_in);
    credit_token(s, token_out, ctx.sender, q.amount_out);
    reserve_in = new_in;
    reserve_out -= q.amount_out;

    ctx.emit(EventKind::PoolSwapped, {{"pool_id", pool.pool_id},
                                      {"trader", to_hex(ctx.sender)},
                                      {"direction", std::string(to_string(p.direction))},
                                      {"in", q.amount_in},
                                      {"out", q.amount_out},
                                      {"slippage_bps", q.slippage_bps}});
    return q;
}

std::uint64_t staking_reward(std::uint64_t amount, std::uint64_t blocks, const StakingParams& params) {
    if (params.reward_den == 0) return 0;
    uint256_t v = uint256_t(amount) * blocks * params.reward_num / params.reward_den;
    return narrow(v);
}

void exec_stake(ExecContext& ctx, const Stake& p) {
    auto& s = ctx.state;
    if (p.amount == 0) throw Rejection(Reject::InvalidInput, "stake amount must be positive");
    if (s.stakes.count(ctx.sender)) throw Rejection(Reject::DoubleStake, "a stake position is already open");
    auto& acct = s.accounts.at(ctx.sender);
    if (acct.balance < p.amount) throw Rejection(Reject::InsufficientFunds, "insufficient balance to stake");

    acct.balance -= p.amount;
    s.stakes[ctx.sender] = StakePosition{p.amount, ctx.height};
    ctx.emit(EventKind::Staked, {{"owner", to_hex(ctx.sender)}, {"amount", p.amount}, {"start_block", ctx.height}});
}

std::uint64_t exec_unstake(ExecContext& ctx) {
    auto& s = ctx.state;
    auto it = s.stakes.find(ctx.sender);
    if (it == s.stakes.end()) throw Rejection(Reject::NoStake, "no open stake position");
    const auto pos = it->second;
    const auto reward = staking_reward(pos.amount, ctx.height - pos.start_block, s.params.staking);
    const auto payout = checked_add(pos.amount, reward);
    auto& acct = s.accounts.at(ctx.sender);
    const auto new_balance = checked_add(acct.balance, payout);
    const auto new_issued = checked_add(s.totals.reward_issued, reward);

    s.stakes.erase(it);
    acct.balance = new_balance;
    s.totals.reward_issued = new_issued;
    ctx.emit(EventKind::Unstaked,
             {{"owner", to_hex(ctx.sender)}, {"principal", pos.amount}, {"reward", reward}, {"payout", payout}});
    return payout;
}

}  // namespace gamefi
