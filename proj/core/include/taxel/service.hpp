#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "taxel/scene.hpp"

namespace taxel::service {

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

/// Routes one request. Pure: the response depends only on the arguments.
/// `target` may carry a query string (clip=1, bbox=WxH).
Response handle(std::string_view method, std::string_view target, std::string_view body);

/// Canonical JSON documents shared by the HTTP routes and the CLI's json format.
std::string catalog_document();
std::string catalog_entry_document(const std::string& name, std::optional<std::pair<int, int>> bbox);
std::string render_document(const Scene& scene, SceneOptions options = {});
std::string lint_document(const Scene& scene, SceneOptions options = {});
std::string diff_document(const Scene& before, const Scene& after, SceneOptions options = {});

/// Blocking HTTP server around handle(). Requests are served concurrently.
class Server {
public:
    Server();
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds and serves until stop(). Returns false if the port cannot be bound.
    bool listen(const std::string& host, int port);
    /// Binds an ephemeral port and returns it, or -1. Call listen_after_bind() next.
    int bind_any(const std::string& host);
    bool listen_after_bind();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace taxel::service
