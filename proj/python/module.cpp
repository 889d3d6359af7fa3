// Python bindings. Structured values cross the boundary as JSON text; the
// pure-Python package wraps them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gamefi/assets.hpp"
#include "gamefi/block_log.hpp"
#include "gamefi/crypto.hpp"
#include "gamefi/defi.hpp"
#include "gamefi/engine.hpp"
#include "gamefi/json_views.hpp"
#include "gamefi/oracle.hpp"
#include "gamefi/sim/runner.hpp"

namespace py = pybind11;
using namespace gamefi;

namespace {

Seed seed_from(const py::bytes& b) {
    const auto s = std::string(b);
    if (s.size() != Seed::size()) throw std::invalid_argument("seed must be 32 bytes");
    return Seed::from(ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

ByteView view_of(const std::string& s) { return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}; }

py::bytes to_py(const Bytes& b) { return py::bytes(reinterpret_cast<const char*>(b.data()), b.size()); }

Address address_from(const std::string& hex) { return Address::from(from_hex(hex)); }

sim::Mode mode_from(const std::string& m) {
    if (m == "in-process") return sim::Mode::InProcess;
    if (m == "api") return sim::Mode::Api;
    throw std::invalid_argument("mode must be 'in-process' or 'api'");
}

}  // namespace

PYBIND11_MODULE(_gamefi, m) {
    m.doc() = "Deterministic GameFi ledger engine";

    py::register_exception<IntegrityError>(m, "IntegrityError");
    py::register_exception<DecodeError>(m, "DecodeError", PyExc_ValueError);
    py::register_exception<sim::ScenarioError>(m, "ScenarioError", PyExc_ValueError);
    py::register_exception<GenesisError>(m, "GenesisError", PyExc_ValueError);
    py::register_exception<SignatureInvalid>(m, "SignatureInvalid", PyExc_ValueError);
    py::register_exception<Rejection>(m, "Rejection", PyExc_ValueError);

    m.def("keygen", [](const py::bytes& seed) { return to_hex(keygen(seed_from(seed)).public_key); },
          "Address (hex public key) for a 32-byte seed.");

    m.def(
        "sign_transaction",
        [](const py::bytes& seed, std::uint64_t nonce, const std::string& payload) {
            const auto kp = keygen(seed_from(seed));
            auto tx = sign_transaction({kp.public_key, nonce, payload_from_json(nlohmann::json::parse(payload))},
                                       kp.secret);
            return py::make_tuple(to_py(encode(tx)), to_hex(tx.txid));
        },
        py::arg("seed"), py::arg("nonce"), py::arg("payload"),
        "Signs a payload (JSON text). Returns (canonical bytes, txid hex).");

    m.def("decode_transaction",
          [](const py::bytes& raw) { return transaction_json(decode_signed_transaction(view_of(raw))).dump(); });

    m.def(
        "quote",
        [](std::uint64_t reserve_in, std::uint64_t reserve_out, std::uint64_t fee_bps, std::uint64_t amount_in) {
            auto q = quote_swap_exact_in(reserve_in, reserve_out, fee_bps, amount_in);
            return py::make_tuple(q.amount_out, q.slippage_bps);
        },
        py::arg("reserve_in"), py::arg("reserve_out"), py::arg("fee_bps"), py::arg("amount_in"),
        "Constant-product quote. Returns (amount_out, slippage_bps).");

    m.def("sha256", [](const py::bytes& data) { return to_hex(sha256(view_of(data))); });

    py::class_<Engine>(m, "Engine")
        .def(py::init([](const std::string& genesis) {
                 return std::make_unique<Engine>(genesis_from_json(nlohmann::json::parse(genesis)));
             }),
             py::arg("genesis"))
        .def(
            "submit",
            [](Engine& e, const py::bytes& raw, std::optional<std::uint64_t> submitted_at) {
                auto tx = decode_signed_transaction(view_of(raw));
                auto r = submitted_at ? e.submit(tx, *submitted_at) : e.submit(tx);
                return py::make_tuple(to_hex(r.txid), r.duplicate);
            },
            py::arg("tx"), py::arg("submitted_at") = py::none())
        .def("credit", [](Engine& e, const std::string& to, std::uint64_t amount) { e.credit(address_from(to), amount); })
        .def(
            "produce_block",
            [](Engine& e, std::uint64_t now) {
                Block b;
                {
                    py::gil_scoped_release release;
                    b = e.produce_block(now);
                }
                return block_json(b).dump();
            },
            py::arg("timestamp"))
        .def_property_readonly("height", &Engine::height)
        .def_property_readonly("pending", &Engine::pending_count)
        .def_property_readonly("state_root", [](const Engine& e) { return to_hex(e.state_root()); })
        .def("block",
             [](const Engine& e, std::uint64_t h) -> std::optional<std::string> {
                 if (auto b = e.block(h)) return block_json(*b).dump();
                 return std::nullopt;
             })
        .def("account",
             [](const Engine& e, const std::string& addr) {
                 return e.with_state([&](const LedgerState& s) { return account_json(s, address_from(addr)).dump(); });
             })
        .def("asset",
             [](const Engine& e, std::uint64_t id) -> std::optional<std::string> {
                 auto a = e.with_state([&](const LedgerState& s) { return get_asset(s, id); });
                 if (a) return asset_json(*a).dump();
                 return std::nullopt;
             })
        .def("assets_by_owner",
             [](const Engine& e, const std::string& owner) {
                 auto list = e.with_state([&](const LedgerState& s) { return get_assets_by_owner(s, address_from(owner)); });
                 ojson out = ojson::array();
                 for (const auto& a : list) out.push_back(asset_json(a));
                 return out.dump();
             })
        .def("pool",
             [](const Engine& e, std::uint64_t id) -> std::optional<std::string> {
                 return e.with_state([&](const LedgerState& s) -> std::optional<std::string> {
                     if (const auto* p = s.pool(id)) return pool_json(*p).dump();
                     return std::nullopt;
                 });
             })
        .def("price",
             [](const Engine& e, const std::string& feed) -> std::optional<std::string> {
                 auto p = e.with_state([&](const LedgerState& s) { return get_price(s, feed); });
                 if (p) return feed_json(feed, *p).dump();
                 return std::nullopt;
             })
        .def("export", [](const Engine& e, const std::filesystem::path& dir) {
            export_chain(dir, e.genesis(), e.blocks());
        });

    m.def("load_scenario", [](const std::filesystem::path& p) { return sim::to_json(sim::load_scenario(p)).dump(); });

    m.def("scenario_genesis", [](const std::string& scenario) {
        return to_json(sim::make_population(sim::scenario_from_json(nlohmann::json::parse(scenario))).genesis).dump();
    });

    m.def(
        "run_scenario",
        [](const std::string& scenario, std::optional<std::uint64_t> seed, std::optional<std::string> mode,
           std::optional<std::string> api_url, std::optional<std::filesystem::path> export_dir) {
            auto s = sim::scenario_from_json(nlohmann::json::parse(scenario));
            sim::RunOptions opts;
            opts.seed = seed;
            if (mode) opts.mode = mode_from(*mode);
            opts.api_url = std::move(api_url);
            opts.export_dir = std::move(export_dir);
            py::gil_scoped_release release;
            return sim::run_scenario(s, opts).metrics_json.dump();
        },
        py::arg("scenario"), py::arg("seed") = py::none(), py::arg("mode") = py::none(), py::arg("api_url") = py::none(),
        py::arg("export_dir") = py::none());

    m.def(
        "verify_replay",
        [](const std::filesystem::path& dir) {
            py::gil_scoped_release release;
            verify_replay(dir);
        },
        py::arg("directory"));
}
