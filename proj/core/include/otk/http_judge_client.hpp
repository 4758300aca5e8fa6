#pragma once

#include "otk/judge.hpp"

namespace otk::judge {

/// Environment variable holding the bearer token for the judge endpoint.
inline constexpr const char* kApiKeyEnvVar = "OT_JUDGE_API_KEY";

/// Chat-completion-style HTTP client: posts one user message with the
/// configured model, temperature, and output budget, and returns the first
/// choice's message content. Endpoint URL may carry an explicit path;
/// without one, /v1/chat/completions is used.
class HttpJudgeClient : public JudgeClient {
public:
    explicit HttpJudgeClient(JudgeConfig cfg);
    TransportResult send(const std::string& prompt) override;

private:
    JudgeConfig cfg_;
};

}  // namespace otk::judge
