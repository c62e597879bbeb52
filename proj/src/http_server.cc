#include "reconcile/http_server.h"

#include <httplib.h>

namespace reconcile {

using json = nlohmann::json;

namespace {

void send(httplib::Response &res, const Reply &reply) {
    res.status = reply.status;
    res.set_content(reply.body.dump(), "application/json");
}

// Empty bodies count as {}.
bool parse_body(const httplib::Request &req, httplib::Response &res, json &out) {
    if (req.body.empty()) {
        out = json::object();
        return true;
    }
    try {
        out = json::parse(req.body);
        return true;
    } catch (const json::parse_error &e) {
        send(res, {400, {{"error", {{"code", "BadRequest"}, {"message", e.what()}}}}});
        return false;
    }
}

}  // namespace

void register_routes(httplib::Server &server, DialogueService &service) {
    auto post = [&](const std::string &pattern, const std::string &op) {
        server.Post(pattern, [&service, op](const httplib::Request &req, httplib::Response &res) {
            json body;
            if (!parse_body(req, res, body))
                return;
            if (op == "refine" && req.has_param("strategy") && body.is_object())
                body["strategy"] = req.get_param_value("strategy");
            std::string id = req.matches.size() > 1 ? req.matches[1].str() : std::string();
            send(res, service.submit(op, id, body));
        });
    };
    post("/sessions", "create");
    post(R"(/sessions/([^/]+)/foil)", "foil");
    post(R"(/sessions/([^/]+)/explain)", "explain");
    post(R"(/sessions/([^/]+)/explain/accept)", "accept");
    post(R"(/sessions/([^/]+)/explain/veto)", "veto");
    post(R"(/sessions/([^/]+)/refine)", "refine");
    post(R"(/sessions/([^/]+)/respond)", "respond");
    post(R"(/sessions/([^/]+)/cancel)", "cancel");

    server.Get(R"(/sessions/([^/]+)/plan)", [&service](const httplib::Request &req,
                                                      httplib::Response &res) {
        send(res, service.call("plan", req.matches[1].str()));
    });
    server.Get(R"(/sessions/([^/]+)/transcript)", [&service](const httplib::Request &req,
                                                            httplib::Response &res) {
        send(res, service.call("transcript", req.matches[1].str()));
    });
    server.Delete(R"(/sessions/([^/]+))", [&service](const httplib::Request &req,
                                                    httplib::Response &res) {
        send(res, service.call("close", req.matches[1].str()));
    });
    server.Get(R"(/jobs/([^/]+))", [&service](const httplib::Request &req,
                                             httplib::Response &res) {
        send(res, service.job(req.matches[1].str()));
    });
}

bool serve(DialogueService &service, const std::string &host, int port) {
    httplib::Server server;
    register_routes(server, service);
    return server.listen(host, port);
}

}  // namespace reconcile
