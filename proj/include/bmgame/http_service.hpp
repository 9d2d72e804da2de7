#pragma once

// HTTP routes for SessionManager:
//   POST /sessions                    create
//   GET  /sessions/{id}               state
//   POST /sessions/{id}/moves         {"set": [["p/q","r/s"], ...]}
//   GET  /sessions/{id}/diagnostics
// Errors are JSON {code, stage?, reason}.

#include "service.hpp"

#include "httplib.h"

namespace bmgame {

namespace detail {

inline void reply(httplib::Response& res, int status, json const& body) {
	res.status = status;
	res.set_content(body.dump(), "application/json");
}

template <typename F>
void guarded(httplib::Response& res, F&& f) {
	try {
		f();
	} catch (ServiceError const& e) {
		reply(res, e.http_status(), e.to_json());
	} catch (json::exception const& e) {
		reply(res, 400, json{{"code", "BadRequest"}, {"reason", e.what()}});
	} catch (ParseError const& e) {
		reply(res, 400, json{{"code", "BadRequest"}, {"reason", e.what()}});
	}
}

} // namespace detail

inline void mount(httplib::Server& server, SessionManager& sessions) {
	server.Post("/sessions", [&sessions](httplib::Request const& req, httplib::Response& res) {
		detail::guarded(res, [&] {
			auto const spec = session_spec_from_json(json::parse(req.body));
			detail::reply(res, 201, to_json(sessions.create(spec)));
		});
	});
	server.Get(R"(/sessions/([^/]+))", [&sessions](httplib::Request const& req, httplib::Response& res) {
		detail::guarded(res, [&] { detail::reply(res, 200, to_json(sessions.get(req.matches[1]))); });
	});
	server.Post(R"(/sessions/([^/]+)/moves)", [&sessions](httplib::Request const& req, httplib::Response& res) {
		detail::guarded(res, [&] {
			json const body = json::parse(req.body);
			IntervalUnion const set = union_from_json_lenient(detail::field(body, "set"));
			detail::reply(res, 200, to_json(sessions.submit(req.matches[1], set)));
		});
	});
	server.Get(R"(/sessions/([^/]+)/diagnostics)", [&sessions](httplib::Request const& req, httplib::Response& res) {
		detail::guarded(res, [&] { detail::reply(res, 200, to_json(sessions.diagnostics(req.matches[1]))); });
	});
}

} // namespace bmgame
