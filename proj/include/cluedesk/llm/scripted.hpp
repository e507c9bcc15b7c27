#pragma once

#include "cluedesk/llm/provider.hpp"

#include <filesystem>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

namespace cluedesk::llm {

// Deterministic stand-in for a model. Fixture file layout:
//
//   {"fixtures": {
//      "<node>[:<task>]": [
//        {"match": "<regex>" | ["<regex>", ...], "response": "<text>" | {...}},
//        {"response": "..."}                       // no match = catch-all
//      ], ...}}
//
// Entries are tried in file order; every regex in "match" must be found
// (case-insensitive) in the request's message contents joined by newlines.
// Object responses are returned as compact JSON text.
class ScriptedProvider final : public Provider {
public:
    struct Entry {
        NodeName node;
        std::string task;
        std::vector<std::string> patterns;
        std::vector<std::regex> compiled;
        std::string response;
    };

    explicit ScriptedProvider(std::vector<Entry> entries);

    static ScriptedProvider from_json(const nlohmann::json& j);
    static ScriptedProvider load(const std::filesystem::path& path);

    Completion complete(const ModelRequest& request) override;
    std::vector<double> embed(std::string_view text) override;

    const std::vector<Entry>& entries() const { return entries_; }

    static constexpr std::size_t kEmbeddingDims = 256;

    // ceil(1.3 x whitespace-token count)
    static std::uint64_t synthetic_tokens(std::string_view text);
    static double synthetic_api_seconds(std::uint64_t input_tokens, std::uint64_t output_tokens);

private:
    std::vector<Entry> entries_;
};

std::string match_text(const ModelRequest& request);

} // namespace cluedesk::llm
