#include "vnim/http_service.hpp"

#include <csignal>
#include <iostream>

#include <httplib.h>

namespace vnim {

using nlohmann::json;

namespace {

HttpReply error_reply(int status, const std::string& message)
{
    return {status, {{"error", message}}};
}

/// Maps domain exceptions onto status codes.
template <typename F>
HttpReply guarded(F&& handler)
{
    try {
        return handler();
    } catch (const UnknownSession& e) {
        return error_reply(404, e.what());
    } catch (const UnsupportedCombination& e) {
        return error_reply(422, e.what());
    } catch (const InvalidInstance& e) {
        HttpReply reply = error_reply(400, e.what());
        json fields = json::array();
        for (const auto& f : e.fields())
            fields.push_back({{"field", f.field}, {"message", f.message}});
        reply.body["fields"] = fields;
        return reply;
    } catch (const json::exception& e) {
        return error_reply(400, std::string("malformed JSON: ") + e.what());
    } catch (const Error& e) {
        return error_reply(400, e.what());
    }
}

json entry_json(const HistoryEntry& h)
{
    return history_to_json({h}).at(0);
}

httplib::Server* active_server = nullptr;

void on_signal(int)
{
    if (active_server)
        active_server->stop();
}

} // namespace

HttpReply GameService::create_game(const std::string& body)
{
    return guarded([&] {
        json request = json::parse(body);
        EngineSide side = EngineSide::second;
        if (request.contains("engine_side")) {
            auto parsed = request["engine_side"].is_string()
                              ? parse_engine_side(request["engine_side"].get<std::string>())
                              : std::nullopt;
            if (!parsed)
                throw InvalidInstance("engine_side", "expected \"none\", \"first\" or \"second\"");
            side = *parsed;
        }
        GameSession s = store_.create(position_from_json(request), side);
        return HttpReply{201, {{"id", s.id}, {"state", state_to_json(s)}, {"history", history_to_json(s.history)}}};
    });
}

HttpReply GameService::get_game(const std::string& id)
{
    return guarded([&] {
        GameSession s = store_.get(id);
        return HttpReply{200, {{"state", state_to_json(s)}, {"history", history_to_json(s.history)}}};
    });
}

HttpReply GameService::submit_move(const std::string& id, const std::string& body)
{
    return guarded([&] {
        store_.get(id); // 404 before validating the body
        json request = json::parse(body);
        if (!request.contains("reduce_to") || !request["reduce_to"].is_number_integer() ||
            request["reduce_to"].get<std::int64_t>() < 0)
            throw IllegalMove("bad reduction: reduce_to must be a non-negative integer");
        if (!request.contains("move_to") || !request["move_to"].is_string())
            throw IllegalMove("bad destination: move_to must be a vertex id or \"end\"");
        auto result =
            store_.submit(id, request["reduce_to"].get<Weight>(), request["move_to"].get<std::string>());
        json reply = {{"state", state_to_json(result.session)}};
        if (result.engine_reply)
            reply["engine_reply"] = entry_json(*result.engine_reply);
        return HttpReply{200, reply};
    });
}

HttpReply GameService::analysis(const std::string& id)
{
    return guarded([&] {
        SolveReport report = store_.analyze(id);
        return HttpReply{200, report_to_json(report, store_.get(id).position)};
    });
}

void GameService::mount(httplib::Server& server, const std::optional<std::string>& static_dir)
{
    auto send = [](httplib::Response& res, const HttpReply& reply) {
        res.status = reply.status;
        res.set_content(reply.body.dump(), "application/json");
    };
    server.Post("/games", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, create_game(req.body));
    });
    server.Get(R"(/games/([0-9a-f]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, get_game(req.matches[1]));
    });
    server.Post(R"(/games/([0-9a-f]+)/moves)", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, submit_move(req.matches[1], req.body));
    });
    server.Get(R"(/games/([0-9a-f]+)/analysis)", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, analysis(req.matches[1]));
    });
    if (static_dir)
        server.set_mount_point("/", *static_dir);
}

int serve(const ServeOptions& options)
{
    GameService service(options.budget);
    if (options.state_file)
        service.store().load(*options.state_file);

    httplib::Server server;
    service.mount(server, options.static_dir);
    active_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);

    std::cerr << "listening on " << options.host << ":" << options.port << "\n";
    const bool ok = server.listen(options.host, options.port);
    active_server = nullptr;

    if (options.state_file)
        service.store().save(*options.state_file);
    return ok ? 0 : 1;
}

} // namespace vnim
