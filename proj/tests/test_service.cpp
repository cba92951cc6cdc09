#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trickmc/service.hpp"

#include <httplib.h>

#include <set>
#include <thread>

using namespace trickmc;

namespace {

Json body(const ApiResponse& response) { return Json::parse(response.body); }

std::string value(const Json& v) { return Json{{"value", v}}.dump(); }

// Answers (2, 1, southerner, 1, male) one at a time.
Json play_male(SessionService& service, const std::string& id)
{
    Json state;
    for (const Json& v : {Json(2), Json(1), Json("southerner"), Json(1), Json("male")}) {
        const ApiResponse response = service.choose(id, value(v));
        REQUIRE(response.status == 200);
        state = body(response);
    }
    return state;
}

}  // namespace

TEST_CASE("create returns the first pending choice")
{
    SessionService service;
    const ApiResponse created = service.create_session("");
    CHECK(created.status == 201);
    const Json state = body(created);
    CHECK(state["deck"] == "a b c d a b c d");
    CHECK(state["complete"] == false);
    CHECK(state["hidden"].is_null());
    CHECK(state["pending"]["name"] == "n1");
    CHECK(state["pending"]["prompt"] == "how many words in your name?");
    CHECK(state["pending"]["domain"] == Json::array({2, 3}));
}

TEST_CASE("a full session mirrors run_path")
{
    SessionService service;
    const std::string id = body(service.create_session("{}"))["session_id"];
    const Json state = play_male(service, id);
    CHECK(state["complete"] == true);
    CHECK(state["final"] == "yes");
    CHECK(state["pending"].is_null());

    const PathRecord record = run_path(builtin_shousuigongcishi(),
                                       {{"n1", 2}, {"slot2", 1}, {"native", 1}, {"slot4", 1}, {"gender", 1}});
    CHECK(state["record"] == to_json(record));
    CHECK(state["checkpoints"] == to_json(record)["checkpoints"]);

    const Json fetched = body(service.get_session(id));
    CHECK(fetched == state);
}

TEST_CASE("intermediate snapshots")
{
    SessionService service;
    const std::string id = body(service.create_session(""))["session_id"];
    const Json after_n1 = body(service.choose(id, value(2)));
    CHECK(after_n1["deck"] == "c d a b c d a b");
    CHECK(after_n1["pending"]["name"] == "slot2");
    CHECK(after_n1["pending"]["domain"] == Json::array({1, 2, 3, 4}));
    CHECK(after_n1["actions"] == Json::array({"rotate1", "rotate1"}));
    const Json after_slot = body(service.choose(id, value(1)));
    CHECK(after_slot["hidden"] == "b");
    CHECK(after_slot["pending"]["labels"] == Json::array({"southerner", "northerner", "unknown"}));
}

TEST_CASE("error statuses")
{
    SessionService service;
    CHECK(service.choose("nope", value(2)).status == 404);
    CHECK(service.get_session("nope").status == 404);

    const std::string id = body(service.create_session(""))["session_id"];
    CHECK(service.choose(id, value(99)).status == 422);
    CHECK(service.choose(id, value("male")).status == 422);
    CHECK(service.choose(id, "not json").status == 400);
    CHECK(service.choose(id, "{}").status == 400);
    CHECK(body(service.get_session(id))["pending"]["name"] == "n1");

    play_male(service, id);
    CHECK(service.choose(id, value(1)).status == 409);

    CHECK(service.create_session("[1]").status == 400);
    CHECK(service.create_session(R"({"slot_mode":"sideways"})").status == 422);
    CHECK(service.create_session(R"({"trick":"deck a b\nfinal_check\n"})").status == 422);
}

TEST_CASE("custom trick and slot mode per session")
{
    SessionService service;
    const Json state =
        body(service.create_session(R"({"trick":"deck a b a\ntake_hidden\ncheckpoint 1\nfinal_check\n"})"));
    CHECK(state["complete"] == true);
    CHECK(state["final"] == "no");

    const std::string id = body(service.create_session(R"({"slot_mode":"exclude_adjacent"})"))["session_id"];
    const Json after_n1 = body(service.choose(id, value(2)));
    CHECK(after_n1["pending"]["domain"] == Json::array({2, 3}));
}

TEST_CASE("check endpoint")
{
    SessionService service;
    const ApiResponse ef = service.check(R"({"formula":"EF p"})");
    CHECK(ef.status == 200);
    CHECK(body(ef)["verdict"] == true);
    CHECK(body(ef)["m"] == 192);

    const Json ag = body(service.check(R"({"formula":"AG p"})"));
    CHECK(ag["verdict"] == false);
    CHECK(ag["evidence"]["checkpoint"] == 6);

    CHECK(body(service.check(R"({"formula":"AF p"})"))["evidence"].is_null());
    CHECK(body(service.check(R"({"formula":"AF p","slot_mode":"exclude_adjacent"})"))["m"] == 48);
    CHECK(service.check(R"({"formula":"AF ("})").status == 422);
    CHECK(service.check("{}").status == 400);
}

TEST_CASE("trick text")
{
    SessionService service;
    const ApiResponse text = service.trick_text();
    CHECK(text.content_type == "text/plain");
    CHECK(text.body.rfind("deck a b c d a b c d\n", 0) == 0);
}

TEST_CASE("concurrent sessions stay independent")
{
    SessionService service;
    std::vector<std::thread> threads;
    std::vector<Json> finals(8);
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&, t] {
            const std::string id = Json::parse(service.create_session("").body)["session_id"];
            const int gender = t % 2 + 1;
            for (int v : {2, 1, 1, 1, gender}) service.choose(id, value(v));
            finals[t] = Json::parse(service.get_session(id).body);
        });
    }
    for (auto& t : threads) t.join();
    std::set<std::string> ids;
    for (int t = 0; t < 8; ++t) {
        ids.insert(finals[t]["session_id"].get<std::string>());
        CHECK(finals[t]["final"] == "yes");
        CHECK(finals[t]["binding"]["gender"] == t % 2 + 1);
    }
    CHECK(ids.size() == 8);
}

TEST_CASE("HTTP round trip on a loopback port")
{
    SessionService service;
    httplib::Server server;
    mount(server, service);
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    auto created = client.Post("/api/session", "", "application/json");
    REQUIRE(created);
    CHECK(created->status == 201);
    const std::string id = Json::parse(created->body)["session_id"];
    for (const Json& v : {Json(2), Json(1), Json("southerner"), Json(1), Json("male")}) {
        auto res = client.Post("/api/session/" + id + "/choose", value(v), "application/json");
        REQUIRE(res);
        CHECK(res->status == 200);
    }
    auto state = client.Get("/api/session/" + id);
    REQUIRE(state);
    CHECK(Json::parse(state->body)["final"] == "yes");

    auto bad = client.Post("/api/session/" + id + "/choose", value(1), "application/json");
    REQUIRE(bad);
    CHECK(bad->status == 409);
    auto missing = client.Get("/api/session/zzz");
    REQUIRE(missing);
    CHECK(missing->status == 404);

    auto check = client.Post("/api/check", R"({"formula":"EF p"})", "application/json");
    REQUIRE(check);
    CHECK(Json::parse(check->body)["verdict"] == true);

    auto trick = client.Get("/api/trick");
    REQUIRE(trick);
    CHECK(trick->get_header_value("Content-Type") == "text/plain");

    server.stop();
    worker.join();
}
