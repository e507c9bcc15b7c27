#include "cluedesk/common/text.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cluedesk::text {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s) {
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) {
        ++start;
    }
    std::size_t end = s.size();
    while (end > start && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return std::string(s.substr(start, end - start));
}

std::vector<std::string> split(std::string_view s, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(delim, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            break;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view delim) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
            out += delim;
        }
        out += parts[i];
    }
    return out;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

bool icontains(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) {
        return true;
    }
    return to_lower(haystack).find(to_lower(needle)) != std::string::npos;
}

std::vector<std::string> word_tokens(std::string_view s) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        // Trailing punctuation from the inner-token set is sentence punctuation.
        while (!current.empty() &&
               (current.back() == '.' || current.back() == '-' || current.back() == '_')) {
            current.pop_back();
        }
        if (!current.empty()) {
            tokens.push_back(current);
        }
        current.clear();
    };
    for (char raw : s) {
        const auto c = static_cast<unsigned char>(raw);
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if ((raw == '_' || raw == '.' || raw == '-') && !current.empty()) {
            current.push_back(raw);
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

std::size_t whitespace_token_count(std::string_view s) {
    std::size_t count = 0;
    bool in_token = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++count;
        }
    }
    return count;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (char c : s) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::vector<std::string> sentences(std::string_view s) {
    std::vector<std::string> out;
    std::string current;
    for (std::size_t i = 0; i < s.size(); ++i) {
        current.push_back(s[i]);
        const bool terminal = s[i] == '.' || s[i] == '!' || s[i] == '?';
        const bool boundary =
            i + 1 == s.size() || std::isspace(static_cast<unsigned char>(s[i + 1]));
        if (terminal && boundary) {
            std::string t = trim(current);
            if (!t.empty()) {
                out.push_back(std::move(t));
            }
            current.clear();
        }
    }
    std::string t = trim(current);
    if (!t.empty()) {
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace cluedesk::text
