#include <algorithm>
#include <future>
#include <numeric>
#include <random>
#include <thread>

#include "doctest.h"
#include "golden.hpp"
#include "httplib.h"
#include "json.hpp"
#include "taxel/service.hpp"

using taxel::service::handle;
using taxel::service::Response;

namespace {

std::string scene_text(const std::string& name) { return golden::read(golden::fixture("scenes/" + name + ".scene")); }

std::string diff_body(const std::string& a, const std::string& b) {
    return "{\"before\": " + scene_text(a) + ", \"after\": " + scene_text(b) + "}";
}

nlohmann::json body_of(const Response& r) { return nlohmann::json::parse(r.body); }

struct Request {
    std::string method, target, body;
};

std::vector<Request> sample_requests() {
    return {
        {"GET", "/api/health", ""},
        {"GET", "/api/catalog", ""},
        {"POST", "/api/render", scene_text("smiley_a")},
        {"POST", "/api/diff", diff_body("smiley_a", "smiley_b")},
        {"POST", "/api/lint", scene_text("extended_triangle")},
        {"GET", "/api/catalog/heart?bbox=17x15", ""},
        {"POST", "/api/render", "{\"grid\": 5}"},
        {"POST", "/api/render?clip=1", scene_text("house")},
        {"GET", "/api/nothing", ""},
    };
}

}  // namespace

TEST_CASE("service fixtures") {
    const Response catalog = handle("GET", "/api/catalog", "");
    CHECK(catalog.status == 200);
    CHECK(golden::matches("service/catalog.json", catalog.body));
    const auto entries = body_of(catalog)["entries"];
    CHECK(entries.size() >= 15);
    const auto heart = std::find_if(entries.begin(), entries.end(), [](const auto& e) { return e["name"] == "heart"; });
    REQUIRE(heart != entries.end());
    CHECK((*heart)["bbox"] == nlohmann::json::array({15, 15}));

    const Response render = handle("POST", "/api/render", scene_text("smiley_a"));
    CHECK(render.status == 200);
    CHECK(golden::matches("service/render_smiley_a.json", render.body));
    const auto doc = body_of(render);
    CHECK(doc["lint"]["counts"]["ADVISORY"] == 2);
    CHECK(doc["lint"]["pass"] == true);
    CHECK(doc["grid"]["rows"].size() == 27);

    const Response diff = handle("POST", "/api/diff", diff_body("smiley_a", "smiley_b"));
    CHECK(diff.status == 200);
    CHECK(golden::matches("service/diff_smiley.json", diff.body));
    CHECK(body_of(diff)["counts"]["removed"] == 6);
    CHECK(body_of(diff)["counts"]["added"] == 0);
}

TEST_CASE("service routes") {
    CHECK(handle("GET", "/api/health", "").body == "{\n  \"ok\": true\n}\n");

    const Response lint = handle("POST", "/api/lint", scene_text("eroded_triangle"));
    CHECK(lint.status == 200);
    CHECK(body_of(lint)["counts"]["G6"] == 2);
    CHECK(body_of(lint)["pass"] == false);

    const Response entry = handle("GET", "/api/catalog/circle", "");
    CHECK(entry.status == 200);
    CHECK(body_of(entry)["bbox"] == nlohmann::json::array({14, 14}));
    CHECK(body_of(handle("GET", "/api/catalog/circle?bbox=9x5", ""))["grid"]["rows"].size() == 5);
}

TEST_CASE("service errors") {
    Response r = handle("POST", "/api/render", "{\"grid\": {\"width\": 27,\n  \"height\": }");
    CHECK(r.status == 400);
    auto doc = body_of(r);
    CHECK(doc["code"] == "parse_error");
    CHECK(doc["detail"]["line"] == 2);

    r = handle("POST", "/api/render", scene_text("broken"));
    CHECK(r.status == 400);
    doc = body_of(r);
    CHECK(doc["detail"]["line"] == 16);
    CHECK(doc["detail"]["column"] == 15);

    r = handle("POST", "/api/render",
               R"({"grid": {"width": 5, "height": 5}, "items": [{"kind": "conic", "bbox": [0, 0, 9, 9]}]})");
    CHECK(r.status == 422);
    doc = body_of(r);
    CHECK(doc["code"] == "invalid_scene");
    CHECK(doc["detail"]["issues"][0]["item"] == 0);
    CHECK(handle("POST", "/api/render?clip=1",
                 R"({"grid": {"width": 5, "height": 5}, "items": [{"kind": "conic", "bbox": [0, 0, 9, 9]}]})")
              .status == 200);

    r = handle("POST", "/api/render", R"({"grid": {"width": 0, "height": 5}, "items": []})");
    CHECK(r.status == 422);

    CHECK(handle("GET", "/api/nope", "").status == 404);
    CHECK(handle("DELETE", "/api/catalog", "").status == 404);
    CHECK(handle("GET", "/api/render", "").status == 404);
    r = handle("GET", "/api/catalog/blob", "");
    CHECK(r.status == 404);
    CHECK(body_of(r)["code"] == "unknown_shape");
    CHECK(handle("GET", "/api/catalog/circle?bbox=big", "").status == 400);
    CHECK(handle("GET", "/api/catalog/circle?bbox=2x2", "").status == 422);

    CHECK(handle("POST", "/api/diff", "{\"before\": {}}").status == 400);
    CHECK(handle("POST", "/api/diff", "[]").status == 400);
    const std::string mismatched = "{\"before\": " + scene_text("smiley_a") +
                                   ", \"after\": {\"grid\": {\"width\": 9, \"height\": 9}, \"items\": []}}";
    CHECK(handle("POST", "/api/diff", mismatched).status == 422);

    for (const auto& req : sample_requests()) {
        const Response x = handle(req.method, req.target, req.body);
        CHECK((x.status == 200 || x.status == 400 || x.status == 404 || x.status == 422 || x.status == 500));
        if (x.status != 200) {
            const auto d = body_of(x);
            CHECK(d.contains("code"));
            CHECK(d.contains("message"));
            CHECK(d.contains("detail"));
        }
    }
}

TEST_CASE("service responses do not depend on request order") {
    const auto requests = sample_requests();
    std::vector<Response> baseline;
    for (const auto& r : requests) baseline.push_back(handle(r.method, r.target, r.body));

    std::mt19937 rng(17);
    std::vector<std::size_t> order(requests.size());
    std::iota(order.begin(), order.end(), 0);
    for (int round = 0; round < 5; ++round) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i : order) {
            const Response r = handle(requests[i].method, requests[i].target, requests[i].body);
            CHECK(r.status == baseline[i].status);
            CHECK(r.body == baseline[i].body);
        }
    }

    std::vector<std::future<Response>> futures;
    for (int copy = 0; copy < 3; ++copy)
        for (const auto& r : requests)
            futures.push_back(std::async(std::launch::async, [r] { return handle(r.method, r.target, r.body); }));
    for (std::size_t i = 0; i < futures.size(); ++i) CHECK(futures[i].get().body == baseline[i % requests.size()].body);
}

TEST_CASE("http server") {
    taxel::service::Server server;
    const int port = server.bind_any("127.0.0.1");
    REQUIRE(port > 0);
    std::thread t([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    auto health = client.Get("/api/health");
    REQUIRE(health);
    CHECK(health->status == 200);
    CHECK(health->get_header_value("Access-Control-Allow-Origin") == "*");

    auto render = client.Post("/api/render", scene_text("smiley_a"), "application/json");
    REQUIRE(render);
    CHECK(render->body == handle("POST", "/api/render", scene_text("smiley_a")).body);

    auto entry = client.Get("/api/catalog/circle?bbox=9x5");
    REQUIRE(entry);
    CHECK(entry->body == handle("GET", "/api/catalog/circle?bbox=9x5", "").body);

    auto missing = client.Get("/api/missing");
    REQUIRE(missing);
    CHECK(missing->status == 404);

    auto preflight = client.Options("/api/render");
    REQUIRE(preflight);
    CHECK(preflight->status == 204);
    CHECK(preflight->get_header_value("Access-Control-Allow-Origin") == "*");

    server.stop();
    t.join();
}
