#include "gamefi/json_views.hpp"

namespace gamefi {

namespace {
template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

ojson asset_json(const Asset& a) {
    return {{"id", a.id},
            {"name", a.name},
            {"category", a.category},
            {"rarity", std::string(to_string(a.rarity))},
            {"owner", to_hex(a.owner)},
            {"created_at_block", a.created_at_block}};
}

ojson pool_json(const Pool& p) {
    return {{"pool_id", p.pool_id},     {"token_a", p.token_a}, {"token_b", p.token_b},
            {"reserve_a", p.reserve_a}, {"reserve_b", p.reserve_b}, {"fee_bps", p.fee_bps},
            {"lp_supply", p.lp_supply}};
}

ojson account_json(const LedgerState& s, const Address& addr) {
    ojson j;
    const auto* acct = s.account(addr);
    j["address"] = to_hex(addr);
    j["balance"] = acct ? acct->balance : 0;
    j["nonce"] = acct ? acct->nonce : 0;
    ojson tokens = ojson::object();
    for (const auto& [symbol, t] : s.tokens) {
        auto it = t.balances.find(addr);
        if (it != t.balances.end()) tokens[symbol] = it->second;
    }
    j["tokens"] = tokens;
    ojson lp = ojson::object();
    for (const auto& [id, p] : s.pools) {
        auto it = p.lp_balances.find(addr);
        if (it != p.lp_balances.end()) lp[std::to_string(id)] = it->second;
    }
    j["lp"] = lp;
    auto stake = s.stakes.find(addr);
    if (stake != s.stakes.end())
        j["stake"] = {{"amount", stake->second.amount}, {"start_block", stake->second.start_block}};
    else
        j["stake"] = nullptr;
    return j;
}

ojson feed_json(const std::string& feed_id, const FeedPrice& price) {
    return {{"feed_id", feed_id},
            {"value", price.value},
            {"round", price.round},
            {"last_updated_block", price.last_updated_block}};
}

ojson event_json(const Event& e) {
    ojson attrs = ojson::object();
    for (const auto& [k, v] : e.attributes) std::visit([&](const auto& x) { attrs[k] = x; }, v);
    return {{"sequence", e.sequence},
            {"kind", std::string(to_string(e.kind))},
            {"block_height", e.block_height},
            {"attributes", attrs}};
}

ojson frame_json(const EventFrame& f) {
    auto j = event_json(f.event);
    j["txid"] = to_hex(f.txid);
    return j;
}

ojson receipt_json(const Receipt& r) {
    ojson j;
    j["txid"] = to_hex(r.txid);
    j["status"] = r.applied() ? "applied" : "rejected";
    if (r.rejection) {
        j["error"] = {{"code", std::string(api_code(*r.rejection))}, {"reason", std::string(to_string(*r.rejection))}};
    }
    j["gas_used"] = r.gas_used;
    j["block_height"] = r.block_height;
    j["confirmation_seconds"] = r.confirmation_seconds;
    j["events"] = ojson::array();
    for (const auto& e : r.events) j["events"].push_back(event_json(e));
    return j;
}

ojson payload_json(const Payload& p) {
    ojson j;
    j["kind"] = std::string(payload_kind(p));
    std::visit(overloaded{
                   [&](const NativeTransfer& v) {
                       j["to"] = to_hex(v.to);
                       j["amount"] = v.amount;
                   },
                   [&](const CreateAsset& v) {
                       j["name"] = v.name;
                       j["category"] = v.category;
                       j["rarity"] = static_cast<int>(v.rarity);
                   },
                   [&](const TransferAsset& v) {
                       j["asset_id"] = v.asset_id;
                       j["to"] = to_hex(v.to);
                   },
                   [&](const CreateToken& v) {
                       j["symbol"] = v.symbol;
                       j["supply"] = v.supply;
                   },
                   [&](const TokenTransfer& v) {
                       j["symbol"] = v.symbol;
                       j["to"] = to_hex(v.to);
                       j["amount"] = v.amount;
                   },
                   [&](const CreatePool& v) {
                       j["token_a"] = v.token_a;
                       j["token_b"] = v.token_b;
                       j["fee_bps"] = v.fee_bps;
                       j["amount_a"] = v.amount_a;
                       j["amount_b"] = v.amount_b;
                   },
                   [&](const AddLiquidity& v) {
                       j["pool_id"] = v.pool_id;
                       j["amount_a"] = v.amount_a;
                       j["amount_b"] = v.amount_b;
                   },
                   [&](const RemoveLiquidity& v) {
                       j["pool_id"] = v.pool_id;
                       j["lp_amount"] = v.lp_amount;
                   },
                   [&](const SwapExactIn& v) {
                       j["pool_id"] = v.pool_id;
                       j["direction"] = static_cast<int>(v.direction);
                       j["amount_in"] = v.amount_in;
                       j["min_out"] = v.min_out;
                   },
                   [&](const Stake& v) { j["amount"] = v.amount; },
                   [&](const Unstake&) {},
                   [&](const SubmitReport& v) {
                       j["feed_id"] = v.feed_id;
                       j["value"] = v.value;
                   },
               },
               p);
    return j;
}

ojson transaction_json(const SignedTransaction& tx) {
    return {{"txid", to_hex(tx.txid)},
            {"sender", to_hex(tx.body.sender)},
            {"nonce", tx.body.nonce},
            {"payload", payload_json(tx.body.payload)},
            {"signature", to_hex(tx.signature)}};
}

ojson block_json(const Block& b) {
    ojson j;
    j["height"] = b.height;
    j["timestamp"] = b.timestamp;
    j["parent_root"] = to_hex(b.parent_root);
    j["state_root"] = to_hex(b.state_root);
    j["credits"] = ojson::array();
    for (const auto& c : b.credits) j["credits"].push_back({{"to", to_hex(c.to)}, {"amount", c.amount}});
    j["transactions"] = ojson::array();
    for (const auto& e : b.entries) {
        auto t = transaction_json(e.tx);
        t["submitted_at"] = e.submitted_at;
        j["transactions"].push_back(std::move(t));
    }
    j["receipts"] = ojson::array();
    for (const auto& r : b.receipts) j["receipts"].push_back(receipt_json(r));
    return j;
}

namespace {

template <typename T>
T required(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("payload: missing ") + key);
    if constexpr (std::is_same_v<T, std::uint64_t>)
        if (!j.at(key).is_number_unsigned() && !(j.at(key).is_number_integer() && j.at(key).get<std::int64_t>() >= 0))
            throw std::invalid_argument(std::string("payload: bad ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument(std::string("payload: bad ") + key);
    }
}

Address required_address(const nlohmann::json& j, const char* key) {
    return Address::from(from_hex(required<std::string>(j, key)));
}

template <typename E>
E enum_field(const nlohmann::json& j, const char* key, E (*by_name)(std::string_view)) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("payload: missing ") + key);
    const auto& v = j.at(key);
    if (v.is_string()) return by_name(v.get<std::string>());
    const auto n = required<std::uint64_t>(j, key);
    if (n > 255) throw std::invalid_argument(std::string("payload: bad ") + key);
    return static_cast<E>(n);
}

}  // namespace

Payload payload_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("payload: expected an object");
    const auto kind = required<std::string>(j, "kind");
    using u64 = std::uint64_t;
    if (kind == "NativeTransfer") return NativeTransfer{required_address(j, "to"), required<u64>(j, "amount")};
    if (kind == "CreateAsset")
        return CreateAsset{required<std::string>(j, "name"), required<std::string>(j, "category"),
                           enum_field<Rarity>(j, "rarity", rarity_from_string)};
    if (kind == "TransferAsset") return TransferAsset{required<u64>(j, "asset_id"), required_address(j, "to")};
    if (kind == "CreateToken") return CreateToken{required<std::string>(j, "symbol"), required<u64>(j, "supply")};
    if (kind == "TokenTransfer")
        return TokenTransfer{required<std::string>(j, "symbol"), required_address(j, "to"), required<u64>(j, "amount")};
    if (kind == "CreatePool")
        return CreatePool{required<std::string>(j, "token_a"), required<std::string>(j, "token_b"),
                          required<u64>(j, "fee_bps"), required<u64>(j, "amount_a"), required<u64>(j, "amount_b")};
    if (kind == "AddLiquidity")
        return AddLiquidity{required<u64>(j, "pool_id"), required<u64>(j, "amount_a"), required<u64>(j, "amount_b")};
    if (kind == "RemoveLiquidity") return RemoveLiquidity{required<u64>(j, "pool_id"), required<u64>(j, "lp_amount")};
    if (kind == "SwapExactIn")
        return SwapExactIn{required<u64>(j, "pool_id"), enum_field<Direction>(j, "direction", direction_from_string),
                           required<u64>(j, "amount_in"), j.contains("min_out") ? required<u64>(j, "min_out") : 0};
    if (kind == "Stake") return Stake{required<u64>(j, "amount")};
    if (kind == "Unstake") return Unstake{};
    if (kind == "SubmitReport") return SubmitReport{required<std::string>(j, "feed_id"), required<u64>(j, "value")};
    throw std::invalid_argument("payload: unknown kind " + kind);
}

}  // namespace gamefi
