#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "gamefi/bytes.hpp"
#include "gamefi/crypto.hpp"
#include "gamefi/encoding.hpp"

namespace gamefi {

enum class Rarity : std::uint8_t { Common = 0, Uncommon = 1, Rare = 2, Epic = 3, Legendary = 4 };

/// Swap direction relative to a pool's ordered token pair.
enum class Direction : std::uint8_t { AToB = 0, BToA = 1 };

bool is_valid(Rarity r);
bool is_valid(Direction d);
std::string_view to_string(Rarity r);
Rarity rarity_from_string(std::string_view s);  // throws std::invalid_argument
std::string_view to_string(Direction d);
Direction direction_from_string(std::string_view s);  // throws std::invalid_argument

struct NativeTransfer {
    Address to;
    std::uint64_t amount = 0;
};
struct CreateAsset {
    std::string name;
    std::string category;
    Rarity rarity = Rarity::Common;
};
struct TransferAsset {
    std::uint64_t asset_id = 0;
    Address to;
};
struct CreateToken {
    std::string symbol;
    std::uint64_t supply = 0;
};
struct TokenTransfer {
    std::string symbol;
    Address to;
    std::uint64_t amount = 0;
};
struct CreatePool {
    std::string token_a;
    std::string token_b;
    std::uint64_t fee_bps = 30;
    std::uint64_t amount_a = 0;
    std::uint64_t amount_b = 0;
};
struct AddLiquidity {
    std::uint64_t pool_id = 0;
    std::uint64_t amount_a = 0;
    std::uint64_t amount_b = 0;
};
struct RemoveLiquidity {
    std::uint64_t pool_id = 0;
    std::uint64_t lp_amount = 0;
};
struct SwapExactIn {
    std::uint64_t pool_id = 0;
    Direction direction = Direction::AToB;
    std::uint64_t amount_in = 0;
    std::uint64_t min_out = 0;
};
struct Stake {
    std::uint64_t amount = 0;
};
struct Unstake {};
struct SubmitReport {
    std::string feed_id;
    std::uint64_t value = 0;
};

/// Variant order defines the wire tag (index 0..11).
using Payload = std::variant<NativeTransfer, CreateAsset, TransferAsset, CreateToken, TokenTransfer, CreatePool,
                             AddLiquidity, RemoveLiquidity, SwapExactIn, Stake, Unstake, SubmitReport>;

std::string_view payload_kind(const Payload& p);

struct UnsignedTransaction {
    Address sender;
    std::uint64_t nonce = 0;
    Payload payload;
};

struct SignedTransaction {
    UnsignedTransaction body;
    Signature signature;
    Hash32 txid;

    /// True when the signature verifies and the txid matches.
    bool verify() const;
};

void encode(Writer& w, const Payload& p);
Payload decode_payload(Reader& r);

Bytes encode(const UnsignedTransaction& body);
Bytes encode(const SignedTransaction& tx);
void encode(Writer& w, const SignedTransaction& tx);

/// Decodes a SignedTransaction and recomputes its txid. Does not verify the
/// signature. Throws DecodeError.
SignedTransaction decode_signed_transaction(ByteView data);
SignedTransaction decode_signed_transaction(Reader& r);

Hash32 compute_txid(const UnsignedTransaction& body, const Signature& sig);

/// Throws SigningKeyError if `secret` does not derive `body.sender`.
SignedTransaction sign_transaction(const UnsignedTransaction& body, const Seed& secret);

/// Upper bound on an encoded transaction accepted from the outside world.
inline constexpr std::size_t kMaxTransactionBytes = 16 * 1024;

}  // namespace gamefi
