#pragma once

// Canonical binary encoding shared by transactions, blocks and the state root.
//
//   u64            8 bytes big-endian
//   bytes/string   4-byte big-endian length, then the bytes
//   address/hash   raw fixed-width bytes
//   tagged union   1 tag byte, then the variant's fields in declared order
//   list/map       u64 entry count, then entries (maps in ascending key order)

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gamefi/bytes.hpp"

namespace gamefi {

class DecodeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class Writer {
  public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u32(std::uint32_t v) {
        for (int shift = 24; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
    }
    void u64(std::uint64_t v) {
        for (int shift = 56; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
    }
    void bytes(ByteView v) {
        if (v.size() > 0xffffffffu) throw std::length_error("byte string too long to encode");
        u32(static_cast<std::uint32_t>(v.size()));
        raw(v);
    }
    void str(std::string_view s) {
        bytes({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
    }
    void raw(ByteView v) { out_.insert(out_.end(), v.begin(), v.end()); }

    template <std::size_t N, typename Tag>
    void fixed(const FixedBytes<N, Tag>& v) {
        raw(v.view());
    }

    void count(std::size_t n) { u64(static_cast<std::uint64_t>(n)); }

    const Bytes& data() const& { return out_; }
    Bytes take() && { return std::move(out_); }

  private:
    Bytes out_;
};

class Reader {
  public:
    explicit Reader(ByteView in) : in_(in) {}

    std::uint8_t u8() {
        need(1);
        return in_[pos_++];
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | in_[pos_++];
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | in_[pos_++];
        return v;
    }
    Bytes bytes() {
        auto len = u32();
        need(len);
        Bytes out(in_.begin() + static_cast<std::ptrdiff_t>(pos_),
                  in_.begin() + static_cast<std::ptrdiff_t>(pos_ + len));
        pos_ += len;
        return out;
    }
    std::string str() {
        auto b = bytes();
        return {b.begin(), b.end()};
    }
    template <typename Fixed>
    Fixed fixed() {
        need(Fixed::size());
        auto v = Fixed::from(in_.subspan(pos_, Fixed::size()));
        pos_ += Fixed::size();
        return v;
    }
    /// Entry count for a list or map; rejects counts that cannot fit in the
    /// remaining input assuming at least `min_entry_size` bytes per entry.
    std::size_t count(std::size_t min_entry_size = 1) {
        auto n = u64();
        if (min_entry_size > 0 && n > remaining() / min_entry_size)
            throw DecodeError("entry count exceeds input size");
        return static_cast<std::size_t>(n);
    }

    std::size_t remaining() const { return in_.size() - pos_; }
    bool done() const { return pos_ == in_.size(); }
    void expect_done() const {
        if (!done()) throw DecodeError("trailing bytes after record");
    }

  private:
    void need(std::size_t n) const {
        if (in_.size() - pos_ < n) throw DecodeError("unexpected end of input");
    }

    ByteView in_;
    std::size_t pos_ = 0;
};

}  // namespace gamefi
