#include "cluedesk/pii/anonymizer.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/files.hpp"

#include <algorithm>
#include <cctype>

namespace cluedesk::pii {

namespace {

constexpr std::array<std::pair<PiiKind, std::string_view>, 6> kKindNames{{
    {PiiKind::Email, "email"},
    {PiiKind::Phone, "phone"},
    {PiiKind::PersonName, "person_name"},
    {PiiKind::IpAddress, "ip_address"},
    {PiiKind::CreditCard, "credit_card"},
    {PiiKind::NationalId, "national_id"},
}};

constexpr std::array<std::pair<PiiKind, std::string_view>, 6> kTags{{
    {PiiKind::Email, "EMAIL"},
    {PiiKind::Phone, "PHONE"},
    {PiiKind::PersonName, "PERSON_NAME"},
    {PiiKind::IpAddress, "IP_ADDRESS"},
    {PiiKind::CreditCard, "CREDIT_CARD"},
    {PiiKind::NationalId, "NATIONAL_ID"},
}};

std::size_t kind_index(PiiKind k) { return static_cast<std::size_t>(k); }

std::string name_alternation(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) {
            out += '|';
        }
        out += w;
    }
    return out;
}

bool ipv4_octets_ok(std::string_view text, std::size_t start, std::size_t end) {
    // Reject dotted runs that belong to a longer version string like 10.0.19045.1.
    if (start > 0 && (text[start - 1] == '.' || std::isdigit(static_cast<unsigned char>(text[start - 1])))) {
        return false;
    }
    if (end + 1 < text.size() && text[end] == '.' &&
        std::isdigit(static_cast<unsigned char>(text[end + 1]))) {
        return false;
    }
    std::size_t value = 0;
    std::size_t digits = 0;
    for (std::size_t i = start; i <= end; ++i) {
        if (i == end || text[i] == '.') {
            if (digits == 0 || value > 255) {
                return false;
            }
            value = 0;
            digits = 0;
        } else {
            value = value * 10 + static_cast<std::size_t>(text[i] - '0');
            ++digits;
        }
    }
    return true;
}

// Longest digit-group prefix of [start, end) that passes Luhn; 0 when none does.
// Greedy card matches can absorb an adjacent number ("... 0004 10.0.0.7").
std::size_t luhn_prefix_end(std::string_view text, std::size_t start, std::size_t end) {
    for (std::size_t e = end; e > start; --e) {
        const bool group_end = std::isdigit(static_cast<unsigned char>(text[e - 1])) &&
                               (e == text.size() || !std::isdigit(static_cast<unsigned char>(text[e])));
        if (group_end && luhn_valid(text.substr(start, e - start))) {
            return e;
        }
    }
    return 0;
}

} // namespace

std::string_view to_string(PiiKind k) { return kKindNames[kind_index(k)].second; }
std::string_view placeholder_tag(PiiKind k) { return kTags[kind_index(k)].second; }

std::optional<PiiKind> kind_from_string(std::string_view s) {
    for (const auto& [kind, name] : kKindNames) {
        if (name == s) {
            return kind;
        }
    }
    return std::nullopt;
}

const std::string& PlaceholderMap::placeholder_for(PiiKind kind, const std::string& original) {
    auto key = std::make_pair(kind, original);
    auto it = forward_.find(key);
    if (it != forward_.end()) {
        return it->second;
    }
    const std::size_t n = ++counters_[kind_index(kind)];
    std::string placeholder = "<" + std::string(placeholder_tag(kind)) + "_" + std::to_string(n) + ">";
    reverse_.emplace(placeholder, original);
    return forward_.emplace(std::move(key), std::move(placeholder)).first->second;
}

std::optional<std::string> PlaceholderMap::original_of(std::string_view placeholder) const {
    auto it = reverse_.find(placeholder);
    if (it == reverse_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool luhn_valid(std::string_view s) {
    int sum = 0;
    int count = 0;
    bool doubled = false;
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        if (!std::isdigit(static_cast<unsigned char>(*it))) {
            continue;
        }
        int d = *it - '0';
        if (doubled) {
            d *= 2;
            if (d > 9) {
                d -= 9;
            }
        }
        sum += d;
        doubled = !doubled;
        ++count;
    }
    return count >= 13 && count <= 19 && sum % 10 == 0;
}

AnonymizerConfig AnonymizerConfig::defaults() {
    AnonymizerConfig c;
    c.detectors = {
        {PiiKind::Email, R"([A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,})", Validator::None},
        {PiiKind::CreditCard, R"(\b(?:\d[ -]?){12,18}\d\b)", Validator::Luhn},
        {PiiKind::NationalId, R"(\b\d{3}-\d{2}-\d{4}\b)", Validator::None},
        {PiiKind::Phone,
         R"((?:\+\d{1,3}[ .-]?)?(?:\(\d{3}\) ?|\b\d{3}[ .-])\d{3}[ .-]\d{4}\b)", Validator::None},
        {PiiKind::IpAddress, R"(\b(?:\d{1,3}\.){3}\d{1,3}\b)", Validator::Ipv4Octets},
    };
    c.honorifics = {"Mr", "Mrs", "Ms", "Miss", "Dr", "Prof"};
    c.first_names = {
        "James",  "John",    "Robert",  "Michael", "David",   "Richard", "Joseph",  "Thomas",
        "Charles", "Daniel", "Matthew", "Anthony", "Steven",  "Andrew",  "Joshua",  "Kevin",
        "Brian",  "George",  "Edward",  "Ronald",  "Timothy", "Jason",   "Jeffrey", "Ryan",
        "Jacob",  "Gary",    "Nicholas", "Eric",   "Jonathan", "Stephen", "Larry",  "Justin",
        "Mary",   "Patricia", "Jennifer", "Linda", "Elizabeth", "Barbara", "Susan", "Jessica",
        "Sarah",  "Karen",   "Nancy",   "Lisa",    "Betty",   "Margaret", "Sandra", "Ashley",
        "Kimberly", "Emily", "Donna",   "Michelle", "Dorothy", "Carol",  "Amanda",  "Melissa",
        "Deborah", "Stephanie", "Rebecca", "Sharon", "Laura", "Cynthia", "Yael",    "Noa",
        "Omri",   "Tamar",   "Avi",     "Dana",    "Maria",   "Anna",    "Olga",    "Priya",
    };
    return c;
}

AnonymizerConfig AnonymizerConfig::from_json(const nlohmann::json& j) {
    AnonymizerConfig c;
    try {
        for (const auto& d : j.at("detectors")) {
            const auto kind_name = d.at("kind").get<std::string>();
            auto kind = kind_from_string(kind_name);
            if (!kind) {
                throw ConfigError("unknown PII kind '" + kind_name + "'");
            }
            Validator v = Validator::None;
            const auto vname = d.value("validator", std::string("none"));
            if (vname == "luhn") {
                v = Validator::Luhn;
            } else if (vname == "ipv4_octets") {
                v = Validator::Ipv4Octets;
            } else if (vname != "none") {
                throw ConfigError("unknown validator '" + vname + "'");
            }
            c.detectors.push_back({*kind, d.at("pattern").get<std::string>(), v});
        }
        if (j.contains("person_names")) {
            const auto& names = j["person_names"];
            c.honorifics = names.value("honorifics", std::vector<std::string>{});
            c.first_names = names.value("first_names", std::vector<std::string>{});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed PII pattern file: ") + e.what());
    }
    return c;
}

AnonymizerConfig AnonymizerConfig::load(const std::filesystem::path& path) {
    return from_json(load_json_file(path));
}

Anonymizer::Anonymizer() : Anonymizer(AnonymizerConfig::defaults()) {}

Anonymizer::Anonymizer(const AnonymizerConfig& config) {
    try {
        for (const auto& d : config.detectors) {
            detectors_.push_back({d.kind, std::regex(d.pattern, std::regex::ECMAScript), d.validator});
        }
        const std::string surname = R"((?:\s+[A-Z][a-z]+(?:-[A-Z][a-z]+)?)?)";
        if (!config.honorifics.empty()) {
            detectors_.push_back(
                {PiiKind::PersonName,
                 std::regex(R"(\b(?:)" + name_alternation(config.honorifics) +
                            R"()\.?\s+[A-Z][a-z]+)" + surname),
                 Validator::None});
        }
        if (!config.first_names.empty()) {
            detectors_.push_back({PiiKind::PersonName,
                                  std::regex(R"(\b(?:)" + name_alternation(config.first_names) +
                                             R"()\b)" + surname),
                                  Validator::None});
        }
    } catch (const std::regex_error& e) {
        throw ConfigError(std::string("invalid PII pattern: ") + e.what());
    }
}

std::vector<PiiSpan> Anonymizer::detect(std::string_view text) const {
    std::vector<PiiSpan> accepted;
    auto overlaps = [&](std::size_t s, std::size_t e) {
        return std::any_of(accepted.begin(), accepted.end(),
                           [&](const PiiSpan& a) { return s < a.end && a.start < e; });
    };
    for (const auto& d : detectors_) {
        // Manual search loop: a candidate that fails validation (a greedy card
        // match that swallowed a neighbouring number) is retried one byte later.
        const char* const first = text.data();
        const char* const last = first + text.size();
        std::size_t pos = 0;
        std::cmatch m;
        while (pos < text.size()) {
            auto flags = pos > 0 ? std::regex_constants::match_prev_avail
                                 : std::regex_constants::match_default;
            if (!std::regex_search(first + pos, last, m, d.re, flags)) {
                break;
            }
            const auto start = pos + static_cast<std::size_t>(m.position(0));
            if (m.length(0) == 0) {
                pos = start + 1;
                continue;
            }
            auto end = start + static_cast<std::size_t>(m.length(0));
            bool ok = true;
            if (d.validator == Validator::Luhn) {
                end = luhn_prefix_end(text, start, end);
                ok = end != 0;
            } else if (d.validator == Validator::Ipv4Octets) {
                ok = ipv4_octets_ok(text, start, end);
            }
            if (!ok) {
                pos = start + 1;
                continue;
            }
            if (!overlaps(start, end)) {
                accepted.push_back(PiiSpan{d.kind, start, end, {}});
            }
            pos = end;
        }
    }
    std::sort(accepted.begin(), accepted.end(),
              [](const PiiSpan& a, const PiiSpan& b) { return a.start < b.start; });
    return accepted;
}

AnonymizeResult Anonymizer::anonymize(std::string_view text, PlaceholderMap& map) const {
    AnonymizeResult result;
    result.spans = detect(text);
    std::size_t cursor = 0;
    for (auto& span : result.spans) {
        const std::string original(text.substr(span.start, span.end - span.start));
        span.placeholder = map.placeholder_for(span.kind, original);
        result.text.append(text.substr(cursor, span.start - cursor));
        result.text += span.placeholder;
        cursor = span.end;
    }
    result.text.append(text.substr(cursor));
    return result;
}

std::string reidentify(std::string_view text, const PlaceholderMap& map) {
    static const std::regex kPlaceholder(R"(<[A-Z_]+_\d+>)");
    std::string out;
    std::size_t cursor = 0;
    auto begin = std::cregex_iterator(text.data(), text.data() + text.size(), kPlaceholder);
    for (auto it = begin; it != std::cregex_iterator(); ++it) {
        const auto start = static_cast<std::size_t>(it->position(0));
        const auto len = static_cast<std::size_t>(it->length(0));
        out.append(text.substr(cursor, start - cursor));
        if (auto original = map.original_of(text.substr(start, len))) {
            out += *original;
        } else {
            out.append(text.substr(start, len));
        }
        cursor = start + len;
    }
    out.append(text.substr(cursor));
    return out;
}

} // namespace cluedesk::pii
