#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace cluedesk::pii {

enum class PiiKind { Email, Phone, PersonName, IpAddress, CreditCard, NationalId };

inline constexpr std::array<PiiKind, 6> kAllKinds = {
    PiiKind::Email,     PiiKind::Phone,      PiiKind::PersonName,
    PiiKind::IpAddress, PiiKind::CreditCard, PiiKind::NationalId,
};

std::string_view to_string(PiiKind k);            // "email", "phone", ...
std::string_view placeholder_tag(PiiKind k);      // "EMAIL", "PHONE", ...
std::optional<PiiKind> kind_from_string(std::string_view s);

struct PiiSpan {
    PiiKind kind;
    std::size_t start = 0;  // byte offsets into the original text
    std::size_t end = 0;
    std::string placeholder;
    bool operator==(const PiiSpan&) const = default;
};

// Per-session, reversible mapping between original values and "<KIND_n>"
// placeholders. The same (kind, value) always maps to the same placeholder.
class PlaceholderMap {
public:
    const std::string& placeholder_for(PiiKind kind, const std::string& original);
    std::optional<std::string> original_of(std::string_view placeholder) const;
    std::size_t size() const { return reverse_.size(); }

private:
    std::map<std::pair<PiiKind, std::string>, std::string> forward_;
    std::map<std::string, std::string, std::less<>> reverse_;
    std::array<std::size_t, kAllKinds.size()> counters_{};
};

enum class Validator { None, Luhn, Ipv4Octets };

struct DetectorSpec {
    PiiKind kind;
    std::string pattern;
    Validator validator = Validator::None;
};

struct AnonymizerConfig {
    std::vector<DetectorSpec> detectors;  // earlier entries win overlaps
    std::vector<std::string> honorifics;
    std::vector<std::string> first_names;

    static AnonymizerConfig defaults();
    static AnonymizerConfig from_json(const nlohmann::json& j);
    static AnonymizerConfig load(const std::filesystem::path& path);
};

struct AnonymizeResult {
    std::string text;
    std::vector<PiiSpan> spans;
};

// Pattern-based PII detection. Person names are caught only after an
// honorific or when the first name is in the configured dictionary; other
// names pass through undetected.
class Anonymizer {
public:
    Anonymizer();
    explicit Anonymizer(const AnonymizerConfig& config);

    // Non-overlapping detections, sorted by start offset.
    std::vector<PiiSpan> detect(std::string_view text) const;
    bool contains_pii(std::string_view text) const { return !detect(text).empty(); }

    AnonymizeResult anonymize(std::string_view text, PlaceholderMap& map) const;

private:
    struct Compiled {
        PiiKind kind;
        std::regex re;
        Validator validator;
    };
    std::vector<Compiled> detectors_;
};

// Replaces placeholders known to `map`; unknown ones stay verbatim.
std::string reidentify(std::string_view text, const PlaceholderMap& map);

bool luhn_valid(std::string_view digits_with_separators);

} // namespace cluedesk::pii
