#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gamefi {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Fixed-width byte array compared bytewise. Used for addresses, hashes and
/// signatures.
template <std::size_t N, typename Tag>
struct FixedBytes {
    std::array<std::uint8_t, N> bytes{};

    static constexpr std::size_t size() { return N; }

    auto operator<=>(const FixedBytes&) const = default;
    bool operator==(const FixedBytes&) const = default;

    ByteView view() const { return {bytes.data(), N}; }
    bool is_zero() const {
        for (auto b : bytes)
            if (b != 0) return false;
        return true;
    }

    static FixedBytes from(ByteView v) {
        if (v.size() != N) throw std::invalid_argument("wrong byte length");
        FixedBytes out;
        std::copy(v.begin(), v.end(), out.bytes.begin());
        return out;
    }
};

struct AddressTag {};
struct HashTag {};
struct SignatureTag {};
struct SeedTag {};

using Address = FixedBytes<32, AddressTag>;
using Hash32 = FixedBytes<32, HashTag>;
using Signature = FixedBytes<64, SignatureTag>;
using Seed = FixedBytes<32, SeedTag>;

std::string to_hex(ByteView data);

template <std::size_t N, typename Tag>
std::string to_hex(const FixedBytes<N, Tag>& v) {
    return to_hex(v.view());
}

/// Accepts upper or lower case. Throws std::invalid_argument on odd length
/// or non-hex characters.
Bytes from_hex(std::string_view hex);

template <typename Fixed>
Fixed fixed_from_hex(std::string_view hex) {
    auto raw = from_hex(hex);
    return Fixed::from(raw);
}

inline Address address_from_hex(std::string_view hex) { return fixed_from_hex<Address>(hex); }
inline Hash32 hash_from_hex(std::string_view hex) { return fixed_from_hex<Hash32>(hex); }

struct FixedBytesHash {
    template <std::size_t N, typename Tag>
    std::size_t operator()(const FixedBytes<N, Tag>& v) const noexcept {
        std::size_t h = 0;
        for (std::size_t i = 0; i < sizeof(std::size_t) && i < N; ++i)
            h = (h << 8) | v.bytes[i];
        return h;
    }
};

}  // namespace gamefi
