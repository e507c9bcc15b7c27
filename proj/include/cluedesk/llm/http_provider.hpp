#pragma once

#include "cluedesk/llm/provider.hpp"

#include <chrono>
#include <functional>
#include <string>

namespace cluedesk::llm {

struct HttpProviderConfig {
    // e.g. "https://api.openai.com/v1" or "http://127.0.0.1:8080"; the
    // endpoint paths /chat/completions and /embeddings are appended.
    std::string base_url;
    std::string api_key;
    std::string model = "gpt-4o";
    std::string embedding_model = "text-embedding-3-small";
    std::chrono::milliseconds timeout{60000};
    int max_retries = 2;
    std::chrono::milliseconds initial_backoff{500};

    // VCA_LLM_ENDPOINT (required), VCA_LLM_API_KEY, VCA_LLM_MODEL,
    // VCA_LLM_EMBEDDING_MODEL. Throws ConfigError when the endpoint is unset.
    static HttpProviderConfig from_env();
};

// OpenAI-compatible chat-completions client. Each call opens its own
// connection, so one instance can serve many sessions concurrently.
class HttpProvider final : public Provider {
public:
    explicit HttpProvider(HttpProviderConfig config);

    Completion complete(const ModelRequest& request) override;
    std::vector<double> embed(std::string_view text) override;

    // Test hook; defaults to std::this_thread::sleep_for.
    void set_sleeper(std::function<void(std::chrono::milliseconds)> sleeper);

private:
    std::string post(const std::string& path, const std::string& body);

    HttpProviderConfig config_;
    std::string scheme_host_port_;
    std::string path_prefix_;
    std::function<void(std::chrono::milliseconds)> sleeper_;
};

// Runs `attempt`, retrying TransportError up to `max_retries` times with
// doubling backoff. Other exceptions propagate immediately.
std::string with_retries(int max_retries, std::chrono::milliseconds initial_backoff,
                         const std::function<void(std::chrono::milliseconds)>& sleeper,
                         const std::function<std::string()>& attempt);

} // namespace cluedesk::llm
