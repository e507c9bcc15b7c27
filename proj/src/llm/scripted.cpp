#include "cluedesk/llm/scripted.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/files.hpp"
#include "cluedesk/common/text.hpp"

#include <cmath>

namespace cluedesk::llm {

std::string match_text(const ModelRequest& request) {
    std::string out;
    for (const auto& m : request.messages) {
        if (!out.empty()) {
            out += '\n';
        }
        out += m.content;
    }
    return out;
}

ScriptedProvider::ScriptedProvider(std::vector<Entry> entries) : entries_(std::move(entries)) {
    for (auto& e : entries_) {
        if (e.compiled.size() != e.patterns.size()) {
            e.compiled.clear();
            for (const auto& p : e.patterns) {
                e.compiled.emplace_back(p, std::regex::ECMAScript | std::regex::icase);
            }
        }
    }
}

ScriptedProvider ScriptedProvider::from_json(const nlohmann::json& j) {
    std::vector<Entry> entries;
    try {
        for (const auto& [key, list] : j.at("fixtures").items()) {
            const auto colon = key.find(':');
            const std::string node_name = key.substr(0, colon);
            auto node = node_from_string(node_name);
            if (!node) {
                throw ConfigError("scripted fixtures: unknown node '" + node_name + "'");
            }
            const std::string task = colon == std::string::npos ? "" : key.substr(colon + 1);
            for (const auto& item : list) {
                Entry e{*node, task, {}, {}, {}};
                if (item.contains("match")) {
                    const auto& m = item["match"];
                    if (m.is_string()) {
                        e.patterns.push_back(m.get<std::string>());
                    } else {
                        e.patterns = m.get<std::vector<std::string>>();
                    }
                }
                const auto& r = item.at("response");
                e.response = r.is_string() ? r.get<std::string>() : r.dump();
                entries.push_back(std::move(e));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed scripted fixtures: ") + e.what());
    } catch (const std::regex_error& e) {
        throw ConfigError(std::string("invalid fixture regex: ") + e.what());
    }
    return ScriptedProvider(std::move(entries));
}

ScriptedProvider ScriptedProvider::load(const std::filesystem::path& path) {
    return from_json(load_json_file(path));
}

std::uint64_t ScriptedProvider::synthetic_tokens(std::string_view s) {
    const std::uint64_t words = text::whitespace_token_count(s);
    return (words * 13 + 9) / 10;
}

double ScriptedProvider::synthetic_api_seconds(std::uint64_t input_tokens,
                                               std::uint64_t output_tokens) {
    return 0.25 + 0.0001 * static_cast<double>(input_tokens) +
           0.02 * static_cast<double>(output_tokens);
}

Completion ScriptedProvider::complete(const ModelRequest& request) {
    const std::string haystack = match_text(request);
    for (const auto& e : entries_) {
        if (e.node != request.node || e.task != request.task) {
            continue;
        }
        bool all = true;
        for (const auto& re : e.compiled) {
            if (!std::regex_search(haystack, re)) {
                all = false;
                break;
            }
        }
        if (!all) {
            continue;
        }
        std::string prompt = request.system_prompt;
        for (const auto& m : request.messages) {
            prompt += ' ';
            prompt += m.content;
        }
        Completion c;
        c.text = e.response;
        c.usage.node = request.node;
        c.usage.task = request.task;
        c.usage.input_tokens = synthetic_tokens(prompt);
        c.usage.output_tokens = synthetic_tokens(c.text);
        c.usage.api_seconds = synthetic_api_seconds(c.usage.input_tokens, c.usage.output_tokens);
        return c;
    }
    std::string key(to_string(request.node));
    if (!request.task.empty()) {
        key += ":" + request.task;
    }
    throw ConfigError("scripted provider: no fixture matches node '" + key + "'");
}

std::vector<double> ScriptedProvider::embed(std::string_view s) {
    std::vector<double> v(kEmbeddingDims, 0.0);
    for (const auto& tok : text::word_tokens(s)) {
        v[text::fnv1a(tok) % kEmbeddingDims] += 1.0;
    }
    double norm = 0.0;
    for (double x : v) {
        norm += x * x;
    }
    if (norm > 0.0) {
        norm = std::sqrt(norm);
        for (double& x : v) {
            x /= norm;
        }
    }
    return v;
}

} // namespace cluedesk::llm
