#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "vnim/session.hpp"

namespace httplib {
class Server;
}

namespace vnim {

struct HttpReply
{
    int status = 200;
    nlohmann::json body;
};

/// JSON endpoints over a SessionStore, independent of the transport.
class GameService
{
public:
    explicit GameService(OracleBudget budget = {}) : store_(budget) {}

    HttpReply create_game(const std::string& body);
    HttpReply get_game(const std::string& id);
    HttpReply submit_move(const std::string& id, const std::string& body);
    HttpReply analysis(const std::string& id);

    SessionStore& store() noexcept { return store_; }

    /// Registers the /games routes and, when given, a static file mount at "/".
    void mount(httplib::Server& server, const std::optional<std::string>& static_dir = std::nullopt);

private:
    SessionStore store_;
};

struct ServeOptions
{
    std::string host = "0.0.0.0";
    int port = 8080;
    std::optional<std::string> static_dir;
    std::optional<std::string> state_file;
    OracleBudget budget{};
};

/// Blocks until SIGINT/SIGTERM; writes the state file on shutdown.
int serve(const ServeOptions& options);

} // namespace vnim
