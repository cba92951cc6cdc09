#pragma once

// Local HTTP/JSON API for stepping through a trick one choice at a time and
// for checking formulas.
//
//   POST /api/session                 create; optional {"trick": script, "slot_mode": ...}
//   POST /api/session/{id}/choose     {"value": 2} or {"value": "male"}
//   GET  /api/session/{id}            current state
//   POST /api/check                   {"formula": "EF p", "trick"?: script, "slot_mode"?: ...}
//   GET  /api/trick                   canonical script of the default trick
//
// Errors: 400 malformed request, 404 unknown session, 409 choose on a
// completed session, 422 value outside the pending domain or a bad trick or
// formula.

#include "trickmc/trick.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace trickmc {

struct ApiResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

class SessionService {
public:
    explicit SessionService(TrickProgram program = builtin_shousuigongcishi(),
                            SlotMode mode = SlotMode::internal_gaps);

    ApiResponse create_session(std::string_view body);
    ApiResponse choose(const std::string& id, std::string_view body);
    ApiResponse get_session(const std::string& id) const;
    ApiResponse check(std::string_view body) const;
    ApiResponse trick_text() const;

private:
    struct Session {
        std::mutex mutex;
        std::string id;
        TrickProgram program;
        SlotMode mode = SlotMode::internal_gaps;
        ChoiceBinding binding;
        PathProgress progress;
    };

    std::shared_ptr<Session> find(const std::string& id) const;
    static Json render(const Session& session);

    TrickProgram program_;
    SlotMode mode_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t next_id_ = 1;
};

// Registers the API routes on `server`; `service` must outlive it.
void mount(httplib::Server& server, SessionService& service);

// Blocks serving on host:port. Returns nonzero when the port cannot be bound.
int serve(SessionService& service, const std::string& host, int port, std::ostream& log);

}  // namespace trickmc
