#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gsn/diagnostics.hpp"

namespace gsn {

class MalformedVersion : public Error {
public:
    explicit MalformedVersion(std::string text)
        : Error("malformed version \"" + text + "\""), text_(std::move(text)) {}

    const std::string& text() const { return text_; }

private:
    std::string text_;
};

/// Dotted-numeric version identifier, e.g. "1.0", "2", "1.10".
///
/// Components are kept exactly as parsed; ordering pads the shorter
/// version with zeros, so "2" and "2.0" compare equal but render
/// differently.
struct Version {
    std::vector<std::uint64_t> components;

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < components.size(); ++i) {
            if (i > 0) out += '.';
            out += std::to_string(components[i]);
        }
        return out;
    }
};

/// Componentwise numeric comparison, zero-padding the shorter version.
inline std::weak_ordering compare(const Version& a, const Version& b) {
    std::size_t n = std::max(a.components.size(), b.components.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t x = i < a.components.size() ? a.components[i] : 0;
        std::uint64_t y = i < b.components.size() ? b.components[i] : 0;
        if (x != y) return x < y ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    return std::weak_ordering::equivalent;
}

inline std::weak_ordering operator<=>(const Version& a, const Version& b) {
    return compare(a, b);
}

inline bool operator==(const Version& a, const Version& b) {
    return compare(a, b) == std::weak_ordering::equivalent;
}

/// Strict total order that separates padding-equal forms ("2" before "2.0").
/// Used only to make sort orders reproducible.
inline bool structurally_less(const Version& a, const Version& b) {
    auto ord = compare(a, b);
    if (ord != std::weak_ordering::equivalent) return ord == std::weak_ordering::less;
    return a.components.size() < b.components.size();
}

inline std::string to_string(const Version& v) { return v.str(); }

/// Parses dotted decimal text: `[0-9]+(\.[0-9]+)*`. Rejects anything else.
inline Version parse_version(std::string_view text) {
    Version result;
    if (text.empty()) throw MalformedVersion(std::string(text));
    std::size_t pos = 0;
    while (true) {
        std::size_t dot = text.find('.', pos);
        std::string_view part =
            dot == std::string_view::npos ? text.substr(pos) : text.substr(pos, dot - pos);
        if (part.empty()) throw MalformedVersion(std::string(text));
        std::uint64_t value = 0;
        const char* first = part.data();
        const char* last = part.data() + part.size();
        auto [end, ec] = std::from_chars(first, last, value, 10);
        if (ec != std::errc() || end != last) throw MalformedVersion(std::string(text));
        result.components.push_back(value);
        if (dot == std::string_view::npos) break;
        pos = dot + 1;
        if (pos >= text.size()) throw MalformedVersion(std::string(text));
    }
    return result;
}

}  // namespace gsn
