// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/error.hpp"
#include "ivis/time.hpp"

#include <cctype>
#include <cstdio>

namespace ivis {

std::string_view to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::unknown_item: return "unknown-item";
    case Errc::invalid_setting: return "invalid-setting";
    case Errc::dtc_format: return "dtc-format";
    case Errc::parse: return "parse";
    case Errc::duplicate_code: return "duplicate-code";
    case Errc::schema: return "schema";
    case Errc::io: return "io";
    case Errc::insufficient_data: return "insufficient-data";
    case Errc::validation: return "validation";
    case Errc::config: return "config";
    case Errc::replay_refused: return "replay-refused";
    }
    return "unknown";
}

namespace {

std::string decorate(Errc code, const std::string& message, std::optional<std::size_t> line)
{
    std::string out{to_string(code)};
    if (line) {
        out += " error at line " + std::to_string(*line);
    } else {
        out += " error";
    }
    out += ": ";
    out += message;
    return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message, std::optional<std::size_t> line)
    : std::runtime_error(decorate(code, message, line)), code_(code), message_(message), line_(line)
{
}

std::string format_seconds(Millis t)
{
    const auto ms = t.count();
    const auto whole = ms / 1000;
    auto frac = ms % 1000;
    std::string sign;
    if (ms < 0) {
        sign = "-";
        frac = -frac;
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "%03lld", static_cast<long long>(frac));
    return sign + std::to_string(whole < 0 ? -whole : whole) + "." + buf;
}

Millis parse_seconds(std::string_view text)
{
    const std::string original{text};
    if (!text.empty() && text.back() == 's') {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw Error(Errc::parse, "empty seconds literal");
    }
    std::int64_t whole = 0;
    std::int64_t frac = 0;
    int frac_digits = 0;
    bool seen_dot = false;
    bool seen_digit = false;
    for (char c : text) {
        if (c == '.' && !seen_dot) {
            seen_dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw Error(Errc::parse, "bad seconds literal '" + original + "'");
        }
        seen_digit = true;
        if (seen_dot) {
            if (++frac_digits > 3) {
                throw Error(Errc::parse, "more than millisecond precision in '" + original + "'");
            }
            frac = frac * 10 + (c - '0');
        } else {
            whole = whole * 10 + (c - '0');
            if (whole > 9'000'000'000'000LL) {
                throw Error(Errc::parse, "seconds literal out of range '" + original + "'");
            }
        }
    }
    if (!seen_digit) {
        throw Error(Errc::parse, "bad seconds literal '" + original + "'");
    }
    while (frac_digits < 3) {
        frac *= 10;
        ++frac_digits;
    }
    return Millis{whole * 1000 + frac};
}

}  // namespace ivis
