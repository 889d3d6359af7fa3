#include "gamefi/api/client.hpp"

#include <httplib.h>

namespace gamefi::api {

Client::Client(const std::string& base_url) : http_(std::make_unique<httplib::Client>(base_url)) {
    http_->set_keep_alive(true);
    http_->set_tcp_nodelay(true);
    http_->set_connection_timeout(5, 0);
    http_->set_read_timeout(30, 0);
    http_->set_write_timeout(30, 0);
}

Client::~Client() = default;
Client::Client(Client&&) noexcept = default;
Client& Client::operator=(Client&&) noexcept = default;

std::optional<Client::Response> Client::finish(bool ok, int status, const std::string& body) {
    ++stats_.requests;
    if (!ok) {
        ++stats_.failures;
        return std::nullopt;
    }
    if (status >= 500) ++stats_.server_errors;
    Response r;
    r.status = status;
    r.body = nlohmann::json::parse(body, nullptr, false);
    return r;
}

std::optional<Client::Response> Client::get(const std::string& path) {
    auto res = http_->Get(path);
    if (!res) return finish(false, 0, {});
    return finish(true, res->status, res->body);
}

std::optional<Client::Response> Client::post(const std::string& path, const std::string& body,
                                             const std::string& content_type) {
    auto res = http_->Post(path, body, content_type);
    if (!res) return finish(false, 0, {});
    return finish(true, res->status, res->body);
}

}  // namespace gamefi::api
