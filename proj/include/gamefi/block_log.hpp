#pragma once

#include <filesystem>
#include <vector>

#include "gamefi/chain.hpp"
#include "gamefi/genesis.hpp"

namespace gamefi {

/// Block log: a sequence of records, each a 4-byte big-endian length, the
/// canonical block encoding, and a 32-byte chained digest
/// sha256(previous digest || block bytes) starting from 32 zero bytes.
void write_block_log(const std::filesystem::path& path, const std::vector<Block>& blocks);

/// Throws DecodeError naming the failing record.
std::vector<Block> read_block_log(const std::filesystem::path& path);

Bytes encode_block_log(const std::vector<Block>& blocks);
std::vector<Block> decode_block_log(ByteView data);

/// JSON mirror of the block log for debugging.
void write_block_log_json(const std::filesystem::path& path, const std::vector<Block>& blocks);

struct ExportPaths {
    static constexpr const char* genesis = "genesis.json";
    static constexpr const char* block_log = "blocks.bin";
    static constexpr const char* block_json = "blocks.json";
    static constexpr const char* metrics = "metrics.json";
    static constexpr const char* prices = "prices.csv";
};

/// Writes genesis.json, blocks.bin and blocks.json into `dir`.
void export_chain(const std::filesystem::path& dir, const GenesisConfig& genesis, const std::vector<Block>& blocks);

/// Replays an exported chain. Throws IntegrityError (decode failures are
/// reported as integrity errors at the height of the unreadable record).
void verify_replay(const std::filesystem::path& dir);

}  // namespace gamefi
