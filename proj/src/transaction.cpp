#include "gamefi/transaction.hpp"

#include <stdexcept>

namespace gamefi {

namespace {
constexpr std::string_view kRarityNames[] = {"Common", "Uncommon", "Rare", "Epic", "Legendary"};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

bool is_valid(Rarity r) { return static_cast<std::uint8_t>(r) <= static_cast<std::uint8_t>(Rarity::Legendary); }
bool is_valid(Direction d) { return d == Direction::AToB || d == Direction::BToA; }

std::string_view to_string(Rarity r) {
    if (!is_valid(r)) return "Unknown";
    return kRarityNames[static_cast<std::uint8_t>(r)];
}

Rarity rarity_from_string(std::string_view s) {
    for (std::uint8_t i = 0; i < 5; ++i)
        if (kRarityNames[i] == s) return static_cast<Rarity>(i);
    throw std::invalid_argument("unknown rarity: " + std::string(s));
}

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::AToB: return "a_to_b";
        case Direction::BToA: return "b_to_a";
    }
    return "unknown";
}

Direction direction_from_string(std::string_view s) {
    if (s == "a_to_b") return Direction::AToB;
    if (s == "b_to_a") return Direction::BToA;
    throw std::invalid_argument("unknown direction: " + std::string(s));
}

std::string_view payload_kind(const Payload& p) {
    static constexpr std::string_view names[] = {
        "NativeTransfer", "CreateAsset",     "TransferAsset", "CreateToken", "TokenTransfer", "CreatePool",
        "AddLiquidity",   "RemoveLiquidity", "SwapExactIn",   "Stake",       "Unstake",       "SubmitReport"};
    return names[p.index()];
}

void encode(Writer& w, const Payload& p) {
    w.u8(static_cast<std::uint8_t>(p.index()));
    std::visit(overloaded{
                   [&](const NativeTransfer& v) {
                       w.fixed(v.to);
                       w.u64(v.amount);
                   },
                   [&](const CreateAsset& v) {
                       w.str(v.name);
                       w.str(v.category);
                       w.u8(static_cast<std::uint8_t>(v.rarity));
                   },
                   [&](const TransferAsset& v) {
                       w.u64(v.asset_id);
                       w.fixed(v.to);
                   },
                   [&](const CreateToken& v) {
                       w.str(v.symbol);
                       w.u64(v.supply);
                   },
                   [&](const TokenTransfer& v) {
                       w.str(v.symbol);
                       w.fixed(v.to);
                       w.u64(v.amount);
                   },
                   [&](const CreatePool& v) {
                       w.str(v.token_a);
                       w.str(v.token_b);
                       w.u64(v.fee_bps);
                       w.u64(v.amount_a);
                       w.u64(v.amount_b);
                   },
                   [&](const AddLiquidity& v) {
                       w.u64(v.pool_id);
                       w.u64(v.amount_a);
                       w.u64(v.amount_b);
                   },
                   [&](const RemoveLiquidity& v) {
                       w.u64(v.pool_id);
                       w.u64(v.lp_amount);
                   },
                   [&](const SwapExactIn& v) {
                       w.u64(v.pool_id);
                       w.u8(static_cast<std::uint8_t>(v.direction));
                       w.u64(v.amount_in);
                       w.u64(v.min_out);
                   },
                   [&](const Stake& v) { w.u64(v.amount); },
                   [&](const Unstake&) {},
                   [&](const SubmitReport& v) {
                       w.str(v.feed_id);
                       w.u64(v.value);
                   },
               },
               p);
}

Payload decode_payload(Reader& r) {
    auto tag = r.u8();
    switch (tag) {
        case 0: {
            NativeTransfer v;
            v.to = r.fixed<Address>();
            v.amount = r.u64();
            return v;
        }
        case 1: {
            CreateAsset v;
            v.name = r.str();
            v.category = r.str();
            v.rarity = static_cast<Rarity>(r.u8());
            return v;
        }
        case 2: {
            TransferAsset v;
            v.asset_id = r.u64();
            v.to = r.fixed<Address>();
            return v;
        }
        case 3: {
            CreateToken v;
            v.symbol = r.str();
            v.supply = r.u64();
            return v;
        }
        case 4: {
            TokenTransfer v;
            v.symbol = r.str();
            v.to = r.fixed<Address>();
            v.amount = r.u64();
            return v;
        }
        case 5: {
            CreatePool v;
            v.token_a = r.str();
            v.token_b = r.str();
            v.fee_bps = r.u64();
            v.amount_a = r.u64();
            v.amount_b = r.u64();
            return v;
        }
        case 6: {
            AddLiquidity v;
            v.pool_id = r.u64();
            v.amount_a = r.u64();
            v.amount_b = r.u64();
            return v;
        }
        case 7: {
            RemoveLiquidity v;
            v.pool_id = r.u64();
            v.lp_amount = r.u64();
            return v;
        }
        case 8: {
            SwapExactIn v;
            v.pool_id = r.u64();
            v.direction = static_cast<Direction>(r.u8());
            v.amount_in = r.u64();
            v.min_out = r.u64();
            return v;
        }
        case 9: return Stake{r.u64()};
        case 10: return Unstake{};
        case 11: {
            SubmitReport v;
            v.feed_id = r.str();
            v.value = r.u64();
            return v;
        }
        default: throw DecodeError("unknown payload tag " + std::to_string(tag));
    }
}

namespace {
void encode_body(Writer& w, const UnsignedTransaction& body) {
    w.fixed(body.sender);
    w.u64(body.nonce);
    encode(w, body.payload);
}
}  // namespace

Bytes encode(const UnsignedTransaction& body) {
    Writer w;
    encode_body(w, body);
    return std::move(w).take();
}

void encode(Writer& w, const SignedTransaction& tx) {
    encode_body(w, tx.body);
    w.fixed(tx.signature);
}

Bytes encode(const SignedTransaction& tx) {
    Writer w;
    encode(w, tx);
    return std::move(w).take();
}

Hash32 compute_txid(const UnsignedTransaction& body, const Signature& sig) {
    Writer w;
    encode_body(w, body);
    w.fixed(sig);
    return sha256(w.data());
}

SignedTransaction decode_signed_transaction(Reader& r) {
    SignedTransaction tx;
    tx.body.sender = r.fixed<Address>();
    tx.body.nonce = r.u64();
    tx.body.payload = decode_payload(r);
    tx.signature = r.fixed<Signature>();
    tx.txid = compute_txid(tx.body, tx.signature);
    return tx;
}

SignedTransaction decode_signed_transaction(ByteView data) {
    if (data.size() > kMaxTransactionBytes) throw DecodeError("transaction exceeds maximum size");
    Reader r(data);
    auto tx = decode_signed_transaction(r);
    r.expect_done();
    return tx;
}

bool SignedTransaction::verify() const {
    auto msg = encode(body);
    if (!gamefi::verify(body.sender, msg, signature)) return false;
    return compute_txid(body, signature) == txid;
}

SignedTransaction sign_transaction(const UnsignedTransaction& body, const Seed& secret) {
    auto kp = keygen(secret);
    if (kp.public_key != body.sender) throw SigningKeyError("secret does not match transaction sender");
    SignedTransaction tx;
    tx.body = body;
    tx.signature = sign(secret, encode(body));
    tx.txid = compute_txid(tx.body, tx.signature);
    return tx;
}

}  // namespace gamefi
