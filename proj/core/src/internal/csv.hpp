#pragma once

// Internal CSV helpers shared by the ingest and temporal serializers.
// Not installed.

#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hotspot::detail {

inline bool is_blank(std::string_view s) {
    for (char c : s) {
        if (c != ' ' && c != '\t' && c != '\r' && c != '\n' && c != '\f' && c != '\v') return false;
    }
    return true;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && is_blank(s.substr(0, 1))) s.remove_prefix(1);
    while (!s.empty() && is_blank(s.substr(s.size() - 1))) s.remove_suffix(1);
    return s;
}

// Finite double, or nullopt for blank/unparseable/non-finite input.
inline std::optional<double> parse_double(std::string_view raw) {
    std::string_view s = trim(raw);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

// Integer, accepting an integral-valued decimal form ("18" or "18.0").
inline std::optional<long long> parse_int_lenient(std::string_view raw) {
    std::string_view s = trim(raw);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc{} && ptr == s.data() + s.size()) return value;
    const std::optional<double> d = parse_double(s);
    if (d && *d == std::floor(*d) && std::abs(*d) < 9.0e18) return static_cast<long long>(*d);
    return std::nullopt;
}

// Shortest representation that round-trips the exact double.
inline std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::string csv_escape(std::string_view field, char delimiter) {
    bool needs_quotes = false;
    for (char c : field) {
        if (c == delimiter || c == '"' || c == '\n' || c == '\r') {
            needs_quotes = true;
            break;
        }
    }
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline void write_csv_row(std::ostream& out, std::span<const std::string> fields, char delimiter) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out.put(delimiter);
        out << csv_escape(fields[i], delimiter);
    }
    out.put('\n');
}

// RFC-4180-style row reader: quoted fields may contain the delimiter,
// doubled quotes, and embedded newlines. Completely blank lines are skipped.
class CsvReader {
public:
    CsvReader(std::istream& in, char delimiter) : in_(in), delimiter_(delimiter) {}

    // Next logical row, or nullopt at end of input.
    std::optional<std::vector<std::string>> next_row() {
        while (true) {
            std::vector<std::string> fields;
            std::string field;
            bool in_quotes = false;
            bool saw_any = false;
            int c = 0;
            while ((c = in_.get()) != std::istream::traits_type::eof()) {
                saw_any = true;
                const char ch = static_cast<char>(c);
                if (in_quotes) {
                    if (ch == '"') {
                        if (in_.peek() == '"') {
                            in_.get();
                            field.push_back('"');
                        } else {
                            in_quotes = false;
                        }
                    } else {
                        field.push_back(ch);
                    }
                    continue;
                }
                if (ch == '"' && field.empty()) {
                    in_quotes = true;
                } else if (ch == delimiter_) {
                    fields.push_back(std::move(field));
                    field.clear();
                } else if (ch == '\r') {
                    if (in_.peek() == '\n') in_.get();
                    break;
                } else if (ch == '\n') {
                    break;
                } else {
                    field.push_back(ch);
                }
            }
            if (!saw_any) return std::nullopt;
            if (fields.empty() && field.empty()) continue;  // blank line
            fields.push_back(std::move(field));
            return fields;
        }
    }

    bool bad() const { return in_.bad(); }

private:
    std::istream& in_;
    char delimiter_;
};

}  // namespace hotspot::detail
