#include "gamefi/ledger.hpp"

#include "gamefi/assets.hpp"
#include "gamefi/defi.hpp"
#include "gamefi/oracle.hpp"

namespace gamefi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out;
    return __builtin_add_overflow(a, b, &out) ? UINT64_MAX : out;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out;
    return __builtin_mul_overflow(a, b, &out) ? UINT64_MAX : out;
}

void exec_native_transfer(ExecContext& ctx, const NativeTransfer& p) {
    auto& s = ctx.state;
    if (p.amount == 0) throw Rejection(Reject::InvalidInput, "transfer amount must be positive");
    auto& from = s.accounts.at(ctx.sender);
    if (from.balance < p.amount) throw Rejection(Reject::InsufficientFunds, "insufficient balance");
    if (p.to != ctx.sender) {
        auto* existing = s.account(p.to);
        if (existing) checked_add(existing->balance, p.amount);
        from.balance -= p.amount;
        s.touch_account(p.to).balance += p.amount;
    }
    ctx.emit(EventKind::NativeTransferred, {{"from", to_hex(ctx.sender)}, {"to", to_hex(p.to)}, {"amount", p.amount}});
}

void dispatch(ExecContext& ctx, const Payload& payload) {
    std::visit(overloaded{
                   [&](const NativeTransfer& p) { exec_native_transfer(ctx, p); },
                   [&](const CreateAsset& p) { exec_create_asset(ctx, p); },
                   [&](const TransferAsset& p) { exec_transfer_asset(ctx, p); },
                   [&](const CreateToken& p) { exec_create_token(ctx, p); },
                   [&](const TokenTransfer& p) { exec_token_transfer(ctx, p); },
                   [&](const CreatePool& p) { exec_create_pool(ctx, p); },
                   [&](const AddLiquidity& p) { exec_add_liquidity(ctx, p); },
                   [&](const RemoveLiquidity& p) { exec_remove_liquidity(ctx, p); },
                   [&](const SwapExactIn& p) { exec_swap_exact_in(ctx, p); },
                   [&](const Stake& p) { exec_stake(ctx, p); },
                   [&](const Unstake&) { exec_unstake(ctx); },
                   [&](const SubmitReport& p) { exec_submit_report(ctx, p); },
               },
               payload);
}

}  // namespace

std::uint64_t charge_gas(const GasSchedule& g, const Payload& payload, const LedgerState& state) {
    return std::visit(
        overloaded{
            [&](const NativeTransfer&) { return g.native_transfer_base; },
            [&](const CreateAsset& p) {
                const auto bytes = saturating_add(p.name.size(), p.category.size());
                return saturating_add(g.create_asset_base, saturating_mul(g.create_asset_per_byte, bytes));
            },
            [&](const TransferAsset& p) {
                return state.has_account(p.to) ? g.transfer_asset_base
                                               : saturating_add(g.transfer_asset_base, g.new_account_surcharge);
            },
            [&](const CreateToken&) { return g.token_op_base; },
            [&](const TokenTransfer&) { return g.token_op_base; },
            [&](const CreatePool&) { return g.pool_op_base; },
            [&](const AddLiquidity&) { return g.pool_op_base; },
            [&](const RemoveLiquidity&) { return g.pool_op_base; },
            [&](const SwapExactIn&) { return g.swap_base; },
            [&](const Stake&) { return g.stake_base; },
            [&](const Unstake&) { return g.stake_base; },
            [&](const SubmitReport&) { return g.report_base; },
        },
        payload);
}

Receipt apply_transaction(LedgerState& state, const SignedTransaction& tx, std::uint64_t height, std::uint64_t now,
                          std::uint64_t submitted_at) {
    Receipt receipt;
    receipt.txid = tx.txid;
    receipt.block_height = height;
    receipt.confirmation_seconds = now >= submitted_at ? now - submitted_at : 0;

    const auto& sender = tx.body.sender;
    const auto* acct = state.account(sender);
    const std::uint64_t expected_nonce = acct ? acct->nonce : 0;
    if (tx.body.nonce != expected_nonce) {
        receipt.rejection = Reject::Nonce;
        return receipt;
    }

    const auto gas = charge_gas(state.params.gas, tx.body.payload, state);
    std::uint64_t fee;
    if (__builtin_mul_overflow(gas, state.params.gas.gas_price, &fee) || !acct || acct->balance < fee) {
        receipt.rejection = Reject::Fee;
        return receipt;
    }

    auto& payer = state.accounts.at(sender);
    payer.balance -= fee;
    payer.nonce += 1;
    state.totals.gas_burned += fee;
    receipt.gas_used = gas;

    ExecContext ctx{state, sender, height, {}};
    try {
        dispatch(ctx, tx.body.payload);
    } catch (const Rejection& r) {
        receipt.rejection = r.reason();
        return receipt;
    }

    receipt.events.reserve(ctx.events.size());
    for (auto& e : ctx.events) {
        Event event;
        event.kind = e.kind;
        event.sequence = state.next_event_sequence++;
        event.block_height = height;
        event.attributes = std::move(e.attributes);
        receipt.events.push_back(std::move(event));
    }
    return receipt;
}

void apply_credit(LedgerState& state, const Credit& credit) {
    auto* existing = state.account(credit.to);
    std::uint64_t balance = existing ? existing->balance : 0;
    std::uint64_t new_balance, new_issued;
    if (__builtin_add_overflow(balance, credit.amount, &new_balance) ||
        __builtin_add_overflow(state.totals.faucet_issued, credit.amount, &new_issued))
        throw std::overflow_error("credit overflows native supply");
    state.touch_account(credit.to).balance = new_balance;
    state.totals.faucet_issued = new_issued;
}

std::vector<Receipt> execute_entries(LedgerState& state, const std::vector<BlockEntry>& entries, std::uint64_t height,
                                     std::uint64_t timestamp) {
    std::vector<Receipt> receipts;
    receipts.reserve(entries.size());
    for (const auto& e : entries) receipts.push_back(apply_transaction(state, e.tx, height, timestamp, e.submitted_at));
    return receipts;
}

LedgerState replay(const GenesisConfig& genesis, const std::vector<Block>& blocks, const BlockObserver& observer) {
    LedgerState state;
    try {
        state = build_genesis_state(genesis);
    } catch (const GenesisError& e) {
        throw IntegrityError(0, e.what());
    }
    if (blocks.empty()) throw IntegrityError(0, "chain has no genesis block");

    const auto& g = blocks.front();
    if (g.height != 0) throw IntegrityError(g.height, "first block is not genesis");
    if (!g.entries.empty() || !g.receipts.empty() || !g.credits.empty() || !g.parent_root.is_zero())
        throw IntegrityError(0, "genesis block carries content");
    if (g.timestamp != genesis.timestamp) throw IntegrityError(0, "genesis timestamp mismatch");
    if (state_root(state) != g.state_root) throw IntegrityError(0, "genesis state root mismatch");
    if (observer) observer(g, state);

    for (std::size_t i = 1; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        const auto& prev = blocks[i - 1];
        const auto h = prev.height + 1;
        if (b.height != h) throw IntegrityError(h, "height gap (found " + std::to_string(b.height) + ")");
        if (b.timestamp <= prev.timestamp) throw IntegrityError(h, "timestamp does not increase");
        if (b.parent_root != prev.state_root) throw IntegrityError(h, "parent root mismatch");
        if (b.receipts.size() != b.entries.size()) throw IntegrityError(h, "receipt count mismatch");

        for (const auto& c : b.credits) {
            try {
                apply_credit(state, c);
            } catch (const std::overflow_error& e) {
                throw IntegrityError(h, e.what());
            }
        }
        for (std::size_t k = 0; k < b.entries.size(); ++k) {
            const auto& e = b.entries[k];
            if (e.submitted_at > b.timestamp) throw IntegrityError(h, "transaction submitted after its block");
            if (!e.tx.verify()) throw IntegrityError(h, "invalid signature in transaction " + std::to_string(k));
            auto rc = apply_transaction(state, e.tx, h, b.timestamp, e.submitted_at);
            if (!(rc == b.receipts[k])) throw IntegrityError(h, "receipt mismatch for transaction " + std::to_string(k));
        }
        if (state_root(state) != b.state_root) throw IntegrityError(h, "state root mismatch");
        if (observer) observer(b, state);
    }
    return state;
}

}  // namespace gamefi
