#include "gamefi/crypto.hpp"

#include <sodium.h>

namespace gamefi {

namespace {
struct SodiumInit {
    SodiumInit() {
        if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
    }
};

void ensure_sodium() { static SodiumInit init; }

std::array<std::uint8_t, crypto_sign_SECRETKEYBYTES> expand(const Seed& seed, Address* pub) {
    ensure_sodium();
    std::array<std::uint8_t, crypto_sign_SECRETKEYBYTES> sk{};
    Address pk;
    crypto_sign_seed_keypair(pk.bytes.data(), sk.data(), seed.bytes.data());
    if (pub) *pub = pk;
    return sk;
}
}  // namespace

Keypair keygen(const Seed& seed) {
    Keypair kp;
    kp.secret = seed;
    auto sk = expand(seed, &kp.public_key);
    sodium_memzero(sk.data(), sk.size());
    return kp;
}

Signature sign(const Seed& secret, ByteView message) {
    auto sk = expand(secret, nullptr);
    Signature sig;
    crypto_sign_detached(sig.bytes.data(), nullptr, message.data(), message.size(), sk.data());
    sodium_memzero(sk.data(), sk.size());
    return sig;
}

bool verify(const Address& public_key, ByteView message, const Signature& sig) {
    ensure_sodium();
    return crypto_sign_verify_detached(sig.bytes.data(), message.data(), message.size(),
                                       public_key.bytes.data()) == 0;
}

Hash32 sha256(ByteView data) {
    ensure_sodium();
    Hash32 out;
    crypto_hash_sha256(out.bytes.data(), data.data(), data.size());
    return out;
}

}  // namespace gamefi
