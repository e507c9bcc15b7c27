#include "cluedesk/llm/http_provider.hpp"

#include "cluedesk/common/error.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace cluedesk::llm {

using nlohmann::json;

namespace {

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : fallback;
}

} // namespace

HttpProviderConfig HttpProviderConfig::from_env() {
    HttpProviderConfig c;
    c.base_url = env_or("VCA_LLM_ENDPOINT", "");
    if (c.base_url.empty()) {
        throw ConfigError("VCA_LLM_ENDPOINT is not set");
    }
    c.api_key = env_or("VCA_LLM_API_KEY", "");
    c.model = env_or("VCA_LLM_MODEL", c.model);
    c.embedding_model = env_or("VCA_LLM_EMBEDDING_MODEL", c.embedding_model);
    return c;
}

std::string with_retries(int max_retries, std::chrono::milliseconds initial_backoff,
                         const std::function<void(std::chrono::milliseconds)>& sleeper,
                         const std::function<std::string()>& attempt) {
    auto backoff = initial_backoff;
    for (int i = 0;; ++i) {
        try {
            return attempt();
        } catch (const TransportError&) {
            if (i >= max_retries) {
                throw;
            }
            sleeper(backoff);
            backoff *= 2;
        }
    }
}

HttpProvider::HttpProvider(HttpProviderConfig config)
    : config_(std::move(config)),
      sleeper_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {
    const auto scheme_end = config_.base_url.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("LLM endpoint must include a scheme: " + config_.base_url);
    }
    const auto path_start = config_.base_url.find('/', scheme_end + 3);
    scheme_host_port_ = config_.base_url.substr(0, path_start);
    if (path_start != std::string::npos) {
        path_prefix_ = config_.base_url.substr(path_start);
        while (!path_prefix_.empty() && path_prefix_.back() == '/') {
            path_prefix_.pop_back();
        }
    }
}

void HttpProvider::set_sleeper(std::function<void(std::chrono::milliseconds)> sleeper) {
    sleeper_ = std::move(sleeper);
}

std::string HttpProvider::post(const std::string& path, const std::string& body) {
    return with_retries(config_.max_retries, config_.initial_backoff, sleeper_, [&] {
        httplib::Client client(scheme_host_port_);
        const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
        client.set_connection_timeout(secs.count(), 0);
        client.set_read_timeout(secs.count(), 0);
        httplib::Headers headers;
        if (!config_.api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + config_.api_key);
        }
        auto res = client.Post(path_prefix_ + path, headers, body, "application/json");
        if (!res) {
            throw TransportError("LLM endpoint unreachable: " + httplib::to_string(res.error()));
        }
        if (res->status == 429 || res->status >= 500) {
            throw TransportError("LLM endpoint returned HTTP " + std::to_string(res->status));
        }
        if (res->status != 200) {
            throw ProviderError("LLM endpoint returned HTTP " + std::to_string(res->status) +
                                ": " + res->body.substr(0, 200));
        }
        return res->body;
    });
}

Completion HttpProvider::complete(const ModelRequest& request) {
    json messages = json::array();
    if (!request.system_prompt.empty()) {
        messages.push_back({{"role", "system"}, {"content", request.system_prompt}});
    }
    for (const auto& m : request.messages) {
        messages.push_back({{"role", std::string(to_string(m.role))}, {"content", m.content}});
    }
    const json body{{"model", config_.model},
                    {"messages", messages},
                    {"max_tokens", request.max_output}};

    const auto started = std::chrono::steady_clock::now();
    const std::string raw = post("/chat/completions", body.dump());
    const auto elapsed = std::chrono::steady_clock::now() - started;

    Completion c;
    c.usage.node = request.node;
    c.usage.task = request.task;
    c.usage.api_seconds = std::chrono::duration<double>(elapsed).count();
    try {
        const json j = json::parse(raw);
        c.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
        if (j.contains("usage")) {
            const auto& u = j["usage"];
            c.usage.input_tokens = u.value("prompt_tokens", std::uint64_t{0});
            c.usage.output_tokens = u.value("completion_tokens", std::uint64_t{0});
            if (!u.contains("prompt_tokens") && u.contains("total_tokens")) {
                c.usage.input_tokens = u["total_tokens"].get<std::uint64_t>();
                c.usage.split_known = false;
            }
        }
    } catch (const json::exception& e) {
        throw ProviderError(std::string("malformed chat-completions response: ") + e.what());
    }
    return c;
}

std::vector<double> HttpProvider::embed(std::string_view text) {
    const json body{{"model", config_.embedding_model}, {"input", std::string(text)}};
    const std::string raw = post("/embeddings", body.dump());
    try {
        return json::parse(raw).at("data").at(0).at("embedding").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ProviderError(std::string("malformed embeddings response: ") + e.what());
    }
}

} // namespace cluedesk::llm
