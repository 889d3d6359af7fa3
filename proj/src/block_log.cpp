#include "gamefi/block_log.hpp"

#include <fstream>
#include <iterator>

#include "gamefi/crypto.hpp"
#include "gamefi/json_views.hpp"
#include "gamefi/ledger.hpp"

namespace gamefi {

namespace {

Hash32 chain_digest(const Hash32& prev, ByteView record) {
    Bytes buf(prev.bytes.begin(), prev.bytes.end());
    buf.insert(buf.end(), record.begin(), record.end());
    return sha256(buf);
}

}  // namespace

void write_block_log(const std::filesystem::path& path, const std::vector<Block>& blocks) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write block log " + path.string());
    const auto bytes = encode_block_log(blocks);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("failed writing block log " + path.string());
}

Bytes encode_block_log(const std::vector<Block>& blocks) {
    Writer w;
    Hash32 digest;
    for (const auto& b : blocks) {
        auto bytes = encode(b);
        digest = chain_digest(digest, bytes);
        w.u32(static_cast<std::uint32_t>(bytes.size()));
        w.raw(bytes);
        w.fixed(digest);
    }
    return std::move(w).take();
}

std::vector<Block> read_block_log(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open block log " + path.string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_block_log(data);
}

std::vector<Block> decode_block_log(ByteView data) {
    std::vector<Block> blocks;
    Hash32 digest;
    Reader r(data);
    while (!r.done()) {
        const auto index = blocks.size();
        try {
            auto len = r.u32();
            if (len > r.remaining()) throw DecodeError("record length exceeds file");
            Bytes record(len);
            for (auto& b : record) b = r.u8();
            const auto stored = r.fixed<Hash32>();
            digest = chain_digest(digest, record);
            if (stored != digest) throw DecodeError("digest mismatch");
            blocks.push_back(decode_block(record));
        } catch (const DecodeError& e) {
            throw DecodeError("block record " + std::to_string(index) + ": " + e.what());
        }
    }
    return blocks;
}

void write_block_log_json(const std::filesystem::path& path, const std::vector<Block>& blocks) {
    ojson arr = ojson::array();
    for (const auto& b : blocks) arr.push_back(block_json(b));
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << arr.dump(1) << '\n';
}

void export_chain(const std::filesystem::path& dir, const GenesisConfig& genesis, const std::vector<Block>& blocks) {
    std::filesystem::create_directories(dir);
    save_genesis(genesis, dir / ExportPaths::genesis);
    write_block_log(dir / ExportPaths::block_log, blocks);
    write_block_log_json(dir / ExportPaths::block_json, blocks);
}

void verify_replay(const std::filesystem::path& dir) {
    GenesisConfig genesis;
    try {
        genesis = load_genesis(dir / ExportPaths::genesis);
    } catch (const GenesisError& e) {
        throw IntegrityError(0, e.what());
    }
    std::vector<Block> blocks;
    try {
        blocks = read_block_log(dir / ExportPaths::block_log);
    } catch (const DecodeError& e) {
        // Record i holds height i in an honest log.
        std::string msg = e.what();
        std::uint64_t height = 0;
        auto pos = msg.find("block record ");
        if (pos != std::string::npos) height = std::stoull(msg.substr(pos + 13));
        throw IntegrityError(height, msg);
    }
    replay(genesis, blocks);
}

}  // namespace gamefi
