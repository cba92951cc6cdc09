#include "trickmc/service.hpp"

#include "trickmc/ctl.hpp"
#include "trickmc/perform.hpp"
#include "trickmc/script.hpp"

#include <httplib.h>

#include <ostream>

namespace trickmc {

namespace {

ApiResponse json_response(int status, const Json& body) { return ApiResponse{status, body.dump(), "application/json"}; }

ApiResponse error_response(int status, const std::string& message)
{
    return json_response(status, Json{{"error", message}});
}

// Parses a request body; an empty body is an empty object.
std::optional<Json> parse_body(std::string_view body)
{
    if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return Json::object();
    Json json = Json::parse(body, nullptr, /*allow_exceptions=*/false);
    if (json.is_discarded() || !json.is_object()) return std::nullopt;
    return json;
}

struct Target {
    TrickProgram program;
    SlotMode mode;
};

// Program and slot mode named by a request, or the service defaults.
Target resolve_target(const Json& request, const TrickProgram& fallback, SlotMode fallback_mode)
{
    Target target{fallback, fallback_mode};
    if (request.contains("trick") && !request["trick"].is_null()) {
        if (!request["trick"].is_string()) throw std::invalid_argument("\"trick\" must be script text");
        target.program = parse(ScriptSource{request["trick"].get<std::string>(), "<request>"});
    }
    if (request.contains("slot_mode") && !request["slot_mode"].is_null()) {
        auto mode = request["slot_mode"].is_string() ? parse_slot_mode(request["slot_mode"].get<std::string>())
                                                     : std::nullopt;
        if (!mode) throw std::invalid_argument("unknown slot_mode");
        target.mode = *mode;
    }
    return target;
}

}  // namespace

SessionService::SessionService(TrickProgram program, SlotMode mode) : program_(std::move(program)), mode_(mode) {}

Json SessionService::render(const Session& session)
{
    const PathProgress& progress = session.progress;
    Json checkpoints = Json::array();
    for (const auto& state : progress.checkpoints) checkpoints.push_back(to_json(state));
    Json actions = Json::array();
    for (const auto& action : progress.actions) actions.push_back(action.label());

    Json out{{"session_id", session.id},
             {"complete", progress.complete()},
             {"deck", progress.deck.to_string()},
             {"hidden", progress.hidden ? Json(std::string(1, to_char(*progress.hidden))) : Json(nullptr)},
             {"binding", to_json(session.binding.in_declaration_order(session.program))},
             {"checkpoints", std::move(checkpoints)},
             {"actions", std::move(actions)}};
    if (progress.pending) {
        const auto& pending = *progress.pending;
        Json labels = Json::array();
        for (int value : pending.domain) labels.push_back(choice_value_label(pending.kind, value));
        out["pending"] = Json{{"name", pending.name},
                              {"kind", std::string(to_string(pending.kind))},
                              {"domain", pending.domain},
                              {"labels", std::move(labels)},
                              {"prompt", prompt_text(pending)}};
    } else {
        out["pending"] = nullptr;
        const PathRecord record = run_path(session.program, session.binding, session.mode);
        out["final"] = record.final_answer ? "yes" : "no";
        out["record"] = to_json(record);
    }
    return out;
}

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) const
{
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

ApiResponse SessionService::create_session(std::string_view body)
{
    auto request = parse_body(body);
    if (!request) return error_response(400, "request body must be a JSON object");
    auto session = std::make_shared<Session>();
    try {
        Target target = resolve_target(*request, program_, mode_);
        session->program = std::move(target.program);
        session->mode = target.mode;
        session->progress = advance(session->program, session->binding, session->mode);
    } catch (const std::exception& e) {
        return error_response(422, e.what());
    }
    {
        std::lock_guard lock(mutex_);
        session->id = "s" + std::to_string(next_id_++);
        sessions_.emplace(session->id, session);
    }
    std::lock_guard lock(session->mutex);
    return json_response(201, render(*session));
}

ApiResponse SessionService::choose(const std::string& id, std::string_view body)
{
    auto session = find(id);
    if (!session) return error_response(404, "unknown session '" + id + "'");
    auto request = parse_body(body);
    if (!request || !request->contains("value")) return error_response(400, "expected {\"value\": ...}");

    std::lock_guard lock(session->mutex);
    if (session->progress.complete()) return error_response(409, "session is complete");
    const PendingChoice pending = *session->progress.pending;
    const Json& raw = (*request)["value"];
    std::optional<int> value;
    if (raw.is_number_integer()) {
        value = accept_answer(pending, std::to_string(raw.get<long long>()));
    } else if (raw.is_string()) {
        value = accept_answer(pending, raw.get<std::string>());
    }
    if (!value) {
        return error_response(422, "value " + raw.dump() + " is not one of " + answer_hint(pending) + " for '" +
                                       pending.name + "'");
    }
    ChoiceBinding next = session->binding;
    next.set(pending.name, *value);
    try {
        session->progress = advance(session->program, next, session->mode);
    } catch (const std::exception& e) {
        return error_response(422, e.what());
    }
    session->binding = std::move(next);
    return json_response(200, render(*session));
}

ApiResponse SessionService::get_session(const std::string& id) const
{
    auto session = find(id);
    if (!session) return error_response(404, "unknown session '" + id + "'");
    std::lock_guard lock(session->mutex);
    return json_response(200, render(*session));
}

ApiResponse SessionService::check(std::string_view body) const
{
    auto request = parse_body(body);
    if (!request) return error_response(400, "request body must be a JSON object");
    if (!request->contains("formula") || !(*request)["formula"].is_string()) {
        return error_response(400, "expected {\"formula\": ...}");
    }
    try {
        const Formula formula = parse_formula((*request)["formula"].get<std::string>());
        Target target = resolve_target(*request, program_, mode_);
        const CheckpointTree tree = build_tree(target.program, target.mode);
        const Verdict verdict = eval(tree, formula);
        Json out{{"formula", formula.to_string()},
                 {"verdict", verdict.value},
                 {"m", verdict.m},
                 {"slot_mode", std::string(to_string(target.mode))}};
        out["evidence"] = verdict.evidence ? to_json(*verdict.evidence) : Json(nullptr);
        return json_response(200, out);
    } catch (const std::exception& e) {
        return error_response(422, e.what());
    }
}

ApiResponse SessionService::trick_text() const
{
    return ApiResponse{200, pretty_print(program_).text, "text/plain"};
}

void mount(httplib::Server& server, SessionService& service)
{
    auto reply = [](httplib::Response& res, const ApiResponse& api) {
        res.status = api.status;
        res.set_content(api.body, api.content_type);
    };
    server.Post("/api/session", [&service, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, service.create_session(req.body));
    });
    server.Post(R"(/api/session/([^/]+)/choose)",
                [&service, reply](const httplib::Request& req, httplib::Response& res) {
                    reply(res, service.choose(req.matches[1], req.body));
                });
    server.Get(R"(/api/session/([^/]+))", [&service, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, service.get_session(req.matches[1]));
    });
    server.Post("/api/check", [&service, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, service.check(req.body));
    });
    server.Get("/api/trick", [&service, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, service.trick_text());
    });
}

int serve(SessionService& service, const std::string& host, int port, std::ostream& log)
{
    httplib::Server server;
    mount(server, service);
    if (!server.bind_to_port(host, port)) {
        log << "cannot listen on " << host << ":" << port << '\n';
        return 2;
    }
    log << "listening on http://" << host << ":" << port << '\n' << std::flush;
    return server.listen_after_bind() ? 0 : 2;
}

}  // namespace trickmc
