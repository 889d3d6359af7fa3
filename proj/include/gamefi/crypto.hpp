#pragma once

#include <stdexcept>

#include "gamefi/bytes.hpp"

namespace gamefi {

/// Ed25519 keypair. The secret is the 32-byte seed; the expanded signing key
/// is re-derived on demand.
struct Keypair {
    Address public_key;
    Seed secret;
};

class SigningKeyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

Keypair keygen(const Seed& seed);

/// Deterministic Ed25519 signature over `message`.
Signature sign(const Seed& secret, ByteView message);
bool verify(const Address& public_key, ByteView message, const Signature& sig);

Hash32 sha256(ByteView data);

}  // namespace gamefi
