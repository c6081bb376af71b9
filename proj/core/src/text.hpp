// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for the line-oriented config formats. Internal to ivis_core.

#pragma once

#include "ivis/error.hpp"

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace ivis::text {

struct Token {
    std::string value;
    bool quoted = false;
};

struct Line {
    std::size_t number = 0;  // 1-based
    std::vector<Token> tokens;
};

/// Splits text into non-empty logical lines. Tokens are whitespace separated;
/// double-quoted tokens may contain spaces; '#' outside quotes starts a comment.
inline std::vector<Line> tokenize(std::string_view text)
{
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        pos = end + 1;
        if (!raw.empty() && raw.back() == '\r') {
            raw.remove_suffix(1);
        }

        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            const char c = raw[i];
            if (c == ' ' || c == '\t') {
                ++i;
                continue;
            }
            if (c == '#') {
                break;
            }
            Token tok;
            if (c == '"') {
                tok.quoted = true;
                ++i;
                const auto close = raw.find('"', i);
                if (close == std::string_view::npos) {
                    throw Error(Errc::parse, "unterminated quoted string", number);
                }
                tok.value = std::string(raw.substr(i, close - i));
                i = close + 1;
            } else {
                const auto start = i;
                while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '#') {
                    if (raw[i] == '"') {
                        // key="quoted value" style
                        const auto close = raw.find('"', i + 1);
                        if (close == std::string_view::npos) {
                            throw Error(Errc::parse, "unterminated quoted string", number);
                        }
                        i = close + 1;
                        continue;
                    }
                    ++i;
                }
                tok.value = std::string(raw.substr(start, i - start));
            }
            line.tokens.push_back(std::move(tok));
        }
        if (!line.tokens.empty()) {
            out.push_back(std::move(line));
        }
        if (end == text.size()) {
            break;
        }
    }
    return out;
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::io, "cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string lower(std::string_view s)
{
    std::string out(s);
    for (auto& c : out) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return out;
}

inline std::string upper(std::string_view s)
{
    std::string out(s);
    for (auto& c : out) {
        if (c >= 'a' && c <= 'z') {
            c = static_cast<char>(c - 'a' + 'A');
        }
    }
    return out;
}

inline bool iequals(std::string_view a, std::string_view b)
{
    return lower(a) == lower(b);
}

/// Strict non-negative decimal number; no exponent, no sign.
inline std::optional<double> parse_number(std::string_view s)
{
    if (s.empty()) {
        return std::nullopt;
    }
    bool dot = false;
    bool digit = false;
    for (char c : s) {
        if (c == '.' && !dot) {
            dot = true;
        } else if (c >= '0' && c <= '9') {
            digit = true;
        } else {
            return std::nullopt;
        }
    }
    if (!digit) {
        return std::nullopt;
    }
    return std::stod(std::string(s));
}

inline std::optional<long long> parse_integer(std::string_view s)
{
    if (s.empty() || s.size() > 15) {
        return std::nullopt;
    }
    long long v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') {
            return std::nullopt;
        }
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace ivis::text
