#include "gamefi/genesis.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "gamefi/defi.hpp"
#include "gamefi/exec.hpp"

namespace gamefi {

using nlohmann::json;

namespace {

std::uint64_t add_supply(std::uint64_t a, std::uint64_t b, const std::string& what) {
    std::uint64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw GenesisError(what + " overflows 64 bits");
    return out;
}

}  // namespace

LedgerState build_genesis_state(const GenesisConfig& config) {
    LedgerState s;
    s.params = config.params;
    if (s.params.staking.reward_den == 0) throw GenesisError("staking reward_den must be positive");

    for (const auto& a : config.accounts) {
        if (s.accounts.count(a.address)) throw GenesisError("duplicate genesis account " + to_hex(a.address));
        s.accounts[a.address].balance = a.balance;
        s.totals.genesis_supply = add_supply(s.totals.genesis_supply, a.balance, "genesis native supply");
    }

    for (const auto& t : config.tokens) {
        if (!is_valid_label(t.symbol, kMaxTokenSymbol)) throw GenesisError("invalid token symbol '" + t.symbol + "'");
        if (s.tokens.count(t.symbol)) throw GenesisError("duplicate token " + t.symbol);
        Token token;
        for (const auto& [addr, amount] : t.balances) {
            if (amount == 0) continue;
            token.balances[addr] = amount;
            token.total_supply = add_supply(token.total_supply, amount, "supply of " + t.symbol);
        }
        s.tokens.emplace(t.symbol, std::move(token));
    }

    for (const auto& gp : config.pools) {
        if (gp.token_a == gp.token_b) throw GenesisError("pool tokens must differ");
        if (!s.tokens.count(gp.token_a) || !s.tokens.count(gp.token_b))
            throw GenesisError("pool references unknown token");
        if (gp.reserve_a == 0 || gp.reserve_b == 0) throw GenesisError("pool reserves must be positive");
        if (gp.fee_bps > kMaxFeeBps) throw GenesisError("pool fee_bps must be at most 1000");
        if (s.pool_for_pair(gp.token_a, gp.token_b)) throw GenesisError("duplicate pool for pair");

        const bool swapped = gp.token_b < gp.token_a;
        Pool pool;
        pool.pool_id = s.next_pool_id++;
        pool.token_a = swapped ? gp.token_b : gp.token_a;
        pool.token_b = swapped ? gp.token_a : gp.token_b;
        pool.reserve_a = swapped ? gp.reserve_b : gp.reserve_a;
        pool.reserve_b = swapped ? gp.reserve_a : gp.reserve_b;
        pool.fee_bps = gp.fee_bps;
        pool.lp_supply = isqrt(u128(pool.reserve_a) * pool.reserve_b);
        pool.lp_balances[gp.provider] = pool.lp_supply;
        auto& ta = s.tokens.at(pool.token_a);
        auto& tb = s.tokens.at(pool.token_b);
        ta.total_supply = add_supply(ta.total_supply, pool.reserve_a, "supply of " + pool.token_a);
        tb.total_supply = add_supply(tb.total_supply, pool.reserve_b, "supply of " + pool.token_b);
        s.pools.emplace(pool.pool_id, std::move(pool));
    }

    for (const auto& gf : config.feeds) {
        if (!is_valid_label(gf.feed_id, kMaxFeedId)) throw GenesisError("invalid feed id '" + gf.feed_id + "'");
        if (s.feeds.count(gf.feed_id)) throw GenesisError("duplicate feed " + gf.feed_id);
        Feed feed;
        feed.reporters = gf.reporters;
        std::sort(feed.reporters.begin(), feed.reporters.end());
        if (std::adjacent_find(feed.reporters.begin(), feed.reporters.end()) != feed.reporters.end())
            throw GenesisError("duplicate reporter in feed " + gf.feed_id);
        if (feed.reporters.empty()) throw GenesisError("feed " + gf.feed_id + " has no reporters");
        if (gf.quorum < 1 || gf.quorum > feed.reporters.size())
            throw GenesisError("feed " + gf.feed_id + " quorum must be within 1..reporters");
        feed.quorum = gf.quorum;
        s.feeds.emplace(gf.feed_id, std::move(feed));
    }
    return s;
}

Block genesis_block(const GenesisConfig& config) {
    Block b;
    b.height = 0;
    b.timestamp = config.timestamp;
    b.state_root = state_root(build_genesis_state(config));
    return b;
}

namespace {

Address parse_address(const json& j, const char* field) {
    try {
        return address_from_hex(j.get<std::string>());
    } catch (const std::exception& e) {
        throw GenesisError(std::string("invalid address in ") + field + ": " + e.what());
    }
}

GasSchedule gas_from_json(const json& j, GasSchedule g) {
    g.create_asset_base = j.value("create_asset_base", g.create_asset_base);
    g.create_asset_per_byte = j.value("create_asset_per_byte", g.create_asset_per_byte);
    g.transfer_asset_base = j.value("transfer_asset_base", g.transfer_asset_base);
    g.new_account_surcharge = j.value("new_account_surcharge", g.new_account_surcharge);
    g.native_transfer_base = j.value("native_transfer_base", g.native_transfer_base);
    g.token_op_base = j.value("token_op_base", g.token_op_base);
    g.pool_op_base = j.value("pool_op_base", g.pool_op_base);
    g.swap_base = j.value("swap_base", g.swap_base);
    g.stake_base = j.value("stake_base", g.stake_base);
    g.report_base = j.value("report_base", g.report_base);
    g.gas_price = j.value("gas_price", g.gas_price);
    return g;
}

json gas_to_json(const GasSchedule& g) {
    return {{"create_asset_base", g.create_asset_base},
            {"create_asset_per_byte", g.create_asset_per_byte},
            {"transfer_asset_base", g.transfer_asset_base},
            {"new_account_surcharge", g.new_account_surcharge},
            {"native_transfer_base", g.native_transfer_base},
            {"token_op_base", g.token_op_base},
            {"pool_op_base", g.pool_op_base},
            {"swap_base", g.swap_base},
            {"stake_base", g.stake_base},
            {"report_base", g.report_base},
            {"gas_price", g.gas_price}};
}

}  // namespace

GenesisConfig genesis_from_json(const json& j) {
    GenesisConfig c;
    try {
        c.timestamp = j.value("timestamp", std::uint64_t{0});
        for (const auto& a : j.value("accounts", json::array()))
            c.accounts.push_back({parse_address(a.at("address"), "accounts"), a.at("balance").get<std::uint64_t>()});
        for (const auto& t : j.value("tokens", json::array())) {
            GenesisToken token;
            token.symbol = t.at("symbol").get<std::string>();
            const auto balances = t.value("balances", json::object());
            for (const auto& [addr, amount] : balances.items())
                token.balances[parse_address(json(addr), "token balances")] = amount.get<std::uint64_t>();
            c.tokens.push_back(std::move(token));
        }
        for (const auto& p : j.value("pools", json::array())) {
            GenesisPool pool;
            pool.token_a = p.at("token_a").get<std::string>();
            pool.token_b = p.at("token_b").get<std::string>();
            pool.fee_bps = p.value("fee_bps", std::uint64_t{30});
            pool.reserve_a = p.at("reserve_a").get<std::uint64_t>();
            pool.reserve_b = p.at("reserve_b").get<std::uint64_t>();
            pool.provider = parse_address(p.at("provider"), "pools");
            c.pools.push_back(std::move(pool));
        }
        for (const auto& f : j.value("feeds", json::array())) {
            GenesisFeed feed;
            feed.feed_id = f.at("feed_id").get<std::string>();
            for (const auto& r : f.at("reporters")) feed.reporters.push_back(parse_address(r, "feed reporters"));
            feed.quorum = f.at("quorum").get<std::uint64_t>();
            c.feeds.push_back(std::move(feed));
        }
        if (j.contains("gas_schedule")) c.params.gas = gas_from_json(j.at("gas_schedule"), c.params.gas);
        if (j.contains("staking")) {
            const auto& st = j.at("staking");
            c.params.staking.reward_num = st.value("reward_num", c.params.staking.reward_num);
            c.params.staking.reward_den = st.value("reward_den", c.params.staking.reward_den);
        }
    } catch (const json::exception& e) {
        throw GenesisError(std::string("malformed genesis: ") + e.what());
    }
    return c;
}

json to_json(const GenesisConfig& c) {
    json j;
    j["timestamp"] = c.timestamp;
    j["accounts"] = json::array();
    for (const auto& a : c.accounts) j["accounts"].push_back({{"address", to_hex(a.address)}, {"balance", a.balance}});
    j["tokens"] = json::array();
    for (const auto& t : c.tokens) {
        json balances = json::object();
        for (const auto& [addr, amount] : t.balances) balances[to_hex(addr)] = amount;
        j["tokens"].push_back({{"symbol", t.symbol}, {"balances", balances}});
    }
    j["pools"] = json::array();
    for (const auto& p : c.pools)
        j["pools"].push_back({{"token_a", p.token_a},
                              {"token_b", p.token_b},
                              {"fee_bps", p.fee_bps},
                              {"reserve_a", p.reserve_a},
                              {"reserve_b", p.reserve_b},
                              {"provider", to_hex(p.provider)}});
    j["feeds"] = json::array();
    for (const auto& f : c.feeds) {
        json reporters = json::array();
        for (const auto& r : f.reporters) reporters.push_back(to_hex(r));
        j["feeds"].push_back({{"feed_id", f.feed_id}, {"reporters", reporters}, {"quorum", f.quorum}});
    }
    j["gas_schedule"] = gas_to_json(c.params.gas);
    j["staking"] = {{"reward_num", c.params.staking.reward_num}, {"reward_den", c.params.staking.reward_den}};
    return j;
}

GenesisConfig load_genesis(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw GenesisError("cannot open genesis file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw GenesisError("cannot parse " + path.string() + ": " + e.what());
    }
    return genesis_from_json(j);
}

void save_genesis(const GenesisConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw GenesisError("cannot write genesis file " + path.string());
    out << to_json(config).dump(2) << '\n';
}

}  // namespace gamefi
