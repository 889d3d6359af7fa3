#include <csignal>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <mutex>

#include <CLI11.hpp>

#include "gamefi/api/server.hpp"
#include "gamefi/block_log.hpp"
#include "gamefi/crypto.hpp"
#include "gamefi/ledger.hpp"
#include "gamefi/sim/runner.hpp"

using namespace gamefi;

namespace {

std::mutex g_stop_mu;
std::condition_variable g_stop_cv;
volatile std::sig_atomic_t g_stop = 0;

void on_signal(int) { g_stop = 1; }

std::pair<std::string, int> parse_listen(const std::string& s) {
    auto colon = s.rfind(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--listen", "expected host:port");
    return {s.substr(0, colon), std::stoi(s.substr(colon + 1))};
}

std::pair<std::uint64_t, std::uint64_t> parse_interval(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--block-interval", "expected min,max");
    auto lo = std::stoull(s.substr(0, comma));
    auto hi = std::stoull(s.substr(comma + 1));
    if (lo == 0 || lo > hi) throw CLI::ValidationError("--block-interval", "need 0 < min <= max");
    return {lo, hi};
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed, const std::string& export_dir,
            const std::string& via_api, bool in_process) {
    auto scenario = sim::load_scenario(path);
    sim::RunOptions opts;
    opts.seed = seed;
    if (!via_api.empty()) opts.api_url = via_api;
    if (in_process) opts.mode = sim::Mode::InProcess;
    if (!export_dir.empty()) {
        std::filesystem::create_directories(export_dir);
        opts.export_dir = export_dir;
    }
    auto result = sim::run_scenario(std::move(scenario), opts);
    std::cout << result.metrics_json.dump(2) << '\n';
    const auto& t = result.transport;
    return (t.failures || t.server_errors || result.metrics.conservation_violations()) ? 1 : 0;
}

int cmd_serve(const std::string& listen, const std::string& genesis_path, const std::string& interval,
              std::optional<std::uint64_t> faucet, std::uint64_t seed, const std::string& export_dir, bool manual,
              std::uint64_t tick_ms, std::optional<std::string> cors_origin) {
    auto [host, port] = parse_listen(listen);
    auto [lo, hi] = parse_interval(interval);
    Engine engine(genesis_path.empty() ? GenesisConfig{} : load_genesis(genesis_path));
    api::ServerOptions opts;
    opts.faucet_cap = faucet;
    opts.manual_blocks = manual;
    opts.interval_min = lo;
    opts.interval_max = hi;
    opts.seed = seed;
    opts.tick_ms = tick_ms;
    opts.cors_origin = std::move(cors_origin);
    api::Server server(engine, opts);
    int bound = server.start(host, port);
    std::cerr << "listening on " << host << ':' << bound << '\n';

    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    {
        std::unique_lock lock(g_stop_mu);
        while (!g_stop) g_stop_cv.wait_for(lock, std::chrono::milliseconds(100));
    }
    server.stop();
    if (!export_dir.empty()) {
        std::filesystem::create_directories(export_dir);
        export_chain(export_dir, engine.genesis(), engine.blocks());
        std::cerr << "exported " << engine.height() + 1 << " blocks to " << export_dir << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gamefi economy engine"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a scenario and print its metrics report");
    std::string scenario_path, export_dir, via_api;
    std::optional<std::uint64_t> seed;
    bool in_process = false;
    run->add_option("scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--export", export_dir, "Directory for metrics, price series and block log");
    auto* api_opt = run->add_option("--via-api", via_api, "Drive a running gateway (manual block mode)");
    run->add_flag("--in-process", in_process, "Run against an embedded engine")->excludes(api_opt);

    auto* verify = app.add_subcommand("verify", "Replay an export directory and check every state root");
    std::string verify_dir;
    verify->add_option("export-dir", verify_dir)->required()->check(CLI::ExistingDirectory);

    auto* keygen_cmd = app.add_subcommand("keygen", "Derive an address from a 32-byte hex seed");
    std::string seed_hex;
    keygen_cmd->add_option("seed-hex", seed_hex)->required();

    auto* genesis_cmd = app.add_subcommand("genesis", "Write the genesis a scenario runs against");
    std::string genesis_scenario, genesis_out;
    genesis_cmd->add_option("scenario", genesis_scenario)->required()->check(CLI::ExistingFile);
    genesis_cmd->add_option("-o,--output", genesis_out, "Output file (default stdout)");

    auto* serve = app.add_subcommand("serve", "Run the HTTP/JSON gateway");
    std::string listen = "127.0.0.1:8080", genesis_path, interval = "15,45", serve_export;
    std::optional<std::uint64_t> faucet;
    std::uint64_t serve_seed = 0, tick_ms = 1000;
    bool manual = false;
    serve->add_option("--listen", listen, "host:port")->envname("GAMEFI_LISTEN");
    serve->add_option("--genesis", genesis_path, "Genesis JSON")->envname("GAMEFI_GENESIS")->check(CLI::ExistingFile);
    serve->add_option("--block-interval", interval, "min,max logical seconds")->envname("GAMEFI_BLOCK_INTERVAL");
    serve->add_option("--dev-faucet", faucet, "Enable the faucet with this per-request cap")->envname("GAMEFI_DEV_FAUCET");
    serve->add_option("--seed", serve_seed, "Seed for block interval draws")->envname("GAMEFI_SEED");
    serve->add_option("--export", serve_export, "Export the chain here on shutdown")->envname("GAMEFI_EXPORT");
    serve->add_flag("--manual-blocks", manual, "Produce blocks only on POST /blocks");
    serve->add_option("--tick-ms", tick_ms, "Wall-clock pause between scheduled blocks");
    std::optional<std::string> cors_origin;
    serve->add_option("--cors-origin", cors_origin, "Allow browser clients from this origin ('*' for any)")
        ->envname("GAMEFI_CORS_ORIGIN");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(scenario_path, seed, export_dir, via_api, in_process);
        if (*verify) {
            verify_replay(verify_dir);
            std::cout << "ok\n";
            return 0;
        }
        if (*keygen_cmd) {
            auto bytes = from_hex(seed_hex);
            if (bytes.size() != Seed::size()) throw std::invalid_argument("seed must be 32 bytes of hex");
            auto kp = keygen(Seed::from(bytes));
            std::cout << to_hex(kp.public_key) << '\n';
            return 0;
        }
        if (*genesis_cmd) {
            auto pop = sim::make_population(sim::load_scenario(genesis_scenario));
            auto text = to_json(pop.genesis).dump(2) + "\n";
            if (genesis_out.empty())
                std::cout << text;
            else
                std::ofstream(genesis_out) << text;
            return 0;
        }
        if (*serve)
            return cmd_serve(listen, genesis_path, interval, faucet, serve_seed, serve_export, manual, tick_ms,
                             cors_origin);
    } catch (const IntegrityError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
