#include "otk/judge.hpp"

#include <cmath>
#include <thread>

#include <json.hpp>

#include "otk/util.hpp"

namespace otk::judge {

using nlohmann::json;

void JudgeConfig::check() const {
    if (temperature != 0.0 && !allow_nonzero_temperature) {
        throw std::runtime_error(
            "judge temperature must be 0 (set allow_nonzero_temperature to override)");
    }
    if (max_retries < 0) throw std::runtime_error("max_retries must be >= 0");
    if (max_output_units < 1) throw std::runtime_error("max_output_units must be >= 1");
    if (judge_model_id.empty()) throw std::runtime_error("judge_model_id must be set");
}

JudgeConfig JudgeConfig::from_config(const KeyValueConfig& cfg) {
    JudgeConfig out;
    out.endpoint_url = cfg.get("endpoint_url", "");
    out.judge_model_id = cfg.get("judge_model_id", "");
    out.temperature = cfg.get_double("temperature", 0.0);
    out.allow_nonzero_temperature = cfg.get_bool("allow_nonzero_temperature", false);
    out.max_output_units = static_cast<int>(cfg.get_int("max_output_units", 2048));
    out.max_retries = static_cast<int>(cfg.get_int("max_retries", 2));
    out.request_timeout = std::chrono::milliseconds(cfg.get_int("request_timeout_ms", 30000));
    out.cache_dir = cfg.get("cache_dir", "");
    out.prompt_version = cfg.get("prompt_version", std::string(kPromptVersion));
    out.check();
    return out;
}

std::string_view to_string(ParseErrorCode code) {
    switch (code) {
        case ParseErrorCode::no_answer_block: return "no_answer_block";
        case ParseErrorCode::bad_json: return "bad_json";
        case ParseErrorCode::bad_score: return "bad_score";
    }
    return "bad_json";
}

std::string_view to_string(FailureKind kind) {
    switch (kind) {
        case FailureKind::transport: return "transport";
        case FailureKind::unparseable: return "unparseable";
    }
    return "transport";
}

ParseError::ParseError(ParseErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

namespace {

constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";

std::optional<double> parse_score_value(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = trim(v.get<std::string>());
        if (s.empty()) return std::nullopt;
        try {
            std::size_t pos = 0;
            double d = std::stod(s, &pos);
            if (pos != s.size()) return std::nullopt;
            return d;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace

JudgeAnswer parse_judge_response(const std::string& raw) {
    // Judges sometimes restate their answer; the final block is the
    // committed one.
    std::string last_block;
    bool found = false;
    std::size_t pos = 0;
    while (true) {
        const std::size_t open = raw.find(kAnswerOpen, pos);
        if (open == std::string::npos) break;
        const std::size_t body = open + kAnswerOpen.size();
        const std::size_t close = raw.find(kAnswerClose, body);
        if (close == std::string::npos) break;
        last_block = raw.substr(body, close - body);
        found = true;
        pos = close + kAnswerClose.size();
    }
    if (!found) throw ParseError(ParseErrorCode::no_answer_block, "no <answer> block in response");

    const json j = json::parse(last_block, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
        throw ParseError(ParseErrorCode::bad_json, "answer block is not a JSON object");
    }
    if (!j.contains("overthinking_score")) {
        throw ParseError(ParseErrorCode::bad_score, "missing overthinking_score");
    }
    const auto score = parse_score_value(j.at("overthinking_score"));
    if (!score || !std::isfinite(*score)) {
        throw ParseError(ParseErrorCode::bad_score, "overthinking_score is not numeric");
    }
    if (*score < 0.0 || *score > 10.0) {
        throw ParseError(ParseErrorCode::bad_score,
                         "overthinking_score outside [0,10]: " + std::to_string(*score));
    }
    if (!j.contains("reasoning") || !j.at("reasoning").is_string() ||
        j.at("reasoning").get<std::string>().empty()) {
        throw ParseError(ParseErrorCode::bad_json, "missing or empty reasoning");
    }
    return JudgeAnswer{*score, j.at("reasoning").get<std::string>()};
}

ScriptedJudgeClient::ScriptedJudgeClient(Responder responder) : responder_(std::move(responder)) {}

TransportResult ScriptedJudgeClient::send(const std::string& prompt) {
    int attempt = 0;
    {
        std::lock_guard<std::mutex> lock(mu_);
        attempt = attempts_[fnv1a64(prompt)]++;
    }
    calls_.fetch_add(1);
    return responder_(prompt, attempt);
}

std::string ScriptedJudgeClient::answer_block(double score, const std::string& reasoning) {
    json j;
    j["overthinking_score"] = score;
    j["reasoning"] = reasoning;
    return "<answer>" + j.dump() + "</answer>";
}

std::string cache_key(std::string_view source_key, std::string_view prompt_version,
                      std::string_view judge_model_id) {
    return hex64(combined_hash({source_key, prompt_version, judge_model_id}));
}

namespace {

std::filesystem::path cache_path(const JudgeConfig& cfg, const std::string& key) {
    return cfg.cache_dir / (key + ".json");
}

std::optional<Assessment> cache_lookup(const JudgeConfig& cfg, const JudgeView& view,
                                       const std::string& key) {
    if (cfg.cache_dir.empty()) return std::nullopt;
    auto text = read_file(cache_path(cfg, key));
    if (!text) return std::nullopt;
    const json j = json::parse(*text, nullptr, /*allow_exceptions=*/false);
    // Corrupt or mismatched entries are treated as misses.
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    if (j.value("source_key", "") != view.source_key) return std::nullopt;
    if (j.value("prompt_version", "") != cfg.prompt_version) return std::nullopt;
    if (j.value("judge_model_id", "") != cfg.judge_model_id) return std::nullopt;
    if (!j.contains("score") || !j.at("score").is_number()) return std::nullopt;
    if (!j.contains("reasoning") || !j.at("reasoning").is_string()) return std::nullopt;
    Assessment a;
    a.score = j.at("score").get<double>();
    a.reasoning = j.at("reasoning").get<std::string>();
    a.judge_model_id = cfg.judge_model_id;
    a.prompt_version = cfg.prompt_version;
    a.cached = true;
    if (a.score < 0.0 || a.score > 10.0 || a.reasoning.empty()) return std::nullopt;
    return a;
}

void cache_store(const JudgeConfig& cfg, const JudgeView& view, const std::string& key,
                 const std::string& raw_response, const JudgeAnswer& answer) {
    if (cfg.cache_dir.empty()) return;
    json j;
    j["source_key"] = view.source_key;
    j["prompt_version"] = cfg.prompt_version;
    j["judge_model_id"] = cfg.judge_model_id;
    j["raw_response"] = raw_response;
    j["score"] = answer.score;
    j["reasoning"] = answer.reasoning;
    atomic_write_file(cache_path(cfg, key), j.dump());
}

}  // namespace

ScoreOutcome score_trajectory(const JudgeView& view, const JudgeConfig& cfg, JudgeClient& client) {
    cfg.check();
    const std::string key = cache_key(view.source_key, cfg.prompt_version, cfg.judge_model_id);
    if (auto hit = cache_lookup(cfg, view, key)) {
        return ScoreOutcome{std::move(hit), std::nullopt};
    }

    const std::string prompt = build_prompt(view);
    std::string last_error;
    FailureKind last_kind = FailureKind::transport;
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        const TransportResult reply = client.send(prompt);
        if (!reply.ok) {
            last_kind = FailureKind::transport;
            last_error = reply.error;
            continue;
        }
        try {
            const JudgeAnswer answer = parse_judge_response(reply.text);
            cache_store(cfg, view, key, reply.text, answer);
            Assessment a;
            a.score = answer.score;
            a.reasoning = answer.reasoning;
            a.judge_model_id = cfg.judge_model_id;
            a.prompt_version = cfg.prompt_version;
            a.cached = false;
            a.retries = attempt;
            return ScoreOutcome{std::move(a), std::nullopt};
        } catch (const ParseError& e) {
            last_kind = FailureKind::unparseable;
            last_error = e.what();
        }
    }
    JudgeFailure failure;
    failure.kind = last_kind;
    failure.detail = last_error;
    failure.retries = cfg.max_retries;
    return ScoreOutcome{std::nullopt, std::move(failure)};
}

CorpusScores score_corpus(const std::vector<KeyedView>& views, const JudgeConfig& cfg,
                          JudgeClient& client, int parallelism) {
    if (parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
    cfg.check();

    std::vector<ScoreOutcome> outcomes(views.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= views.size()) return;
            outcomes[i] = score_trajectory(views[i].view, cfg, client);
        }
    };
    const int threads = std::min<int>(parallelism, static_cast<int>(views.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    CorpusScores result;
    for (std::size_t i = 0; i < views.size(); ++i) {
        if (outcomes[i].ok()) {
            result.scored.push_back({views[i].key, std::move(*outcomes[i].assessment)});
        } else {
            result.failures.push_back({i, views[i].key, std::move(*outcomes[i].failure)});
        }
    }
    return result;
}

}  // namespace otk::judge
