#include "otk/http_judge_client.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

namespace otk::judge {

using nlohmann::json;

namespace {

struct SplitUrl {
    std::string base;  // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) return {url, "/v1/chat/completions"};
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/v1/chat/completions"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpJudgeClient::HttpJudgeClient(JudgeConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.check();
    if (cfg_.endpoint_url.empty()) {
        throw std::runtime_error("HttpJudgeClient: endpoint_url must be set");
    }
}

TransportResult HttpJudgeClient::send(const std::string& prompt) {
    const SplitUrl url = split_url(cfg_.endpoint_url);
    httplib::Client client(url.base);
    const auto timeout = cfg_.request_timeout;
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout));
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);

    httplib::Headers headers;
    if (const char* key = std::getenv(kApiKeyEnvVar); key != nullptr && key[0] != '\0') {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    json body;
    body["model"] = cfg_.judge_model_id;
    body["temperature"] = cfg_.temperature;
    body["max_tokens"] = cfg_.max_output_units;
    body["messages"] = json::array({json{{"role", "user"}, {"content", prompt}}});

    auto res = client.Post(url.path, headers, body.dump(), "application/json");
    if (!res) {
        return TransportResult::failure("request failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        return TransportResult::failure("http status " + std::to_string(res->status));
    }
    const json reply = json::parse(res->body, nullptr, /*allow_exceptions=*/false);
    if (reply.is_discarded() || !reply.contains("choices") || !reply["choices"].is_array() ||
        reply["choices"].empty()) {
        return TransportResult::failure("malformed completion envelope");
    }
    const json& first = reply["choices"][0];
    if (!first.contains("message") || !first["message"].contains("content") ||
        !first["message"]["content"].is_string()) {
        return TransportResult::failure("completion without message content");
    }
    return TransportResult::success(first["message"]["content"].get<std::string>());
}

}  // namespace otk::judge
