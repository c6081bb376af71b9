// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/procedure.hpp"
#include "ivis/error.hpp"

#include "text.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace ivis::interaction {

std::string describe(const ProcedureStep& step)
{
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            std::ostringstream os;
            if constexpr (std::is_same_v<T, SetIgnition>) {
                os << "ignition " << ecm::to_string(s.position);
            } else if constexpr (std::is_same_v<T, PressRelease>) {
                os << "press " << to_string(s.button) << " x" << s.count;
                if (!s.until.empty()) {
                    os << " until \"" << s.until << "\"";
                }
            } else if constexpr (std::is_same_v<T, HoldFor>) {
                os << "hold " << to_string(s.button) << " " << format_seconds(s.min_hold) << "s";
            } else if constexpr (std::is_same_v<T, HoldThrough>) {
                os << "hold_through " << to_string(s.button) << " ignition " << ecm::to_string(s.position);
            } else if constexpr (std::is_same_v<T, TurnKnob>) {
                os << "turn " << to_string(s.knob) << " x" << s.count << " "
                   << (s.direction ? to_string(*s.direction) : "any");
            } else {
                os << "wait_display \"" << s.pattern << "\"";
            }
            return os.str();
        },
        step);
}

namespace {

bool is_identifier(std::string_view s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
            return false;
        }
    }
    return true;
}

class Compiler {
public:
    explicit Compiler(const ParamOverrides& overrides) : overrides_(overrides) {}

    ProcedureSpec run(std::string_view source)
    {
        const auto lines = text::tokenize(source);

        // Parameters are collected first so that they may be used before
        // their declaration line.
        for (const auto& line : lines) {
            if (line.tokens[0].value == "param") {
                declare(line);
            }
        }
        for (const auto& [name, value] : overrides_) {
            spec_.params[name] = value;
        }
        if (const auto it = spec_.params.find("PAGES"); it != spec_.params.end()) {
            spec_.info_pages = positive_int(it->second, "PAGES", 0);
        }

        for (const auto& line : lines) {
            statement(line);
        }
        if (spec_.steps.empty()) {
            throw Error(Errc::parse, "procedure has no steps");
        }
        if (spec_.target_item.empty()) {
            throw Error(Errc::parse, "procedure has no target item");
        }
        if (spec_.procedure_id.empty()) {
            spec_.procedure_id = "procedure";
        }
        return std::move(spec_);
    }

private:
    [[noreturn]] void fail(const std::string& why, std::size_t line) const
    {
        throw Error(Errc::parse, why, line);
    }

    static int positive_int(double v, const std::string& what, std::size_t line)
    {
        if (!(v >= 1.0) || std::floor(v) != v || v > 1'000'000) {
            throw Error(Errc::parse, what + " must be a positive integer",
                        line ? std::optional<std::size_t>{line} : std::nullopt);
        }
        return static_cast<int>(v);
    }

    void declare(const text::Line& line)
    {
        if (line.tokens.size() != 2) {
            fail("expected: param NAME=<number>", line.number);
        }
        const auto& kv = line.tokens[1].value;
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            fail("expected: param NAME=<number>", line.number);
        }
        const auto name = kv.substr(0, eq);
        const auto value = text::parse_number(kv.substr(eq + 1));
        if (!is_identifier(name)) {
            fail("bad parameter name '" + name + "'", line.number);
        }
        if (!value) {
            fail("parameter " + name + " needs a non-negative number", line.number);
        }
        if (spec_.params.count(name)) {
            fail("parameter " + name + " declared twice", line.number);
        }
        spec_.params.emplace(name, *value);
    }

    std::optional<double> param(std::string_view name) const
    {
        if (const auto it = spec_.params.find(name); it != spec_.params.end()) {
            return it->second;
        }
        return std::nullopt;
    }

    int count(const std::string& token, std::size_t line) const
    {
        if (token.size() < 2 || token[0] != 'x') {
            fail("expected a count like x3, got '" + token + "'", line);
        }
        const auto body = token.substr(1);
        std::optional<double> v = text::parse_number(body);
        if (!v && is_identifier(body)) {
            v = param(body);
            if (!v) {
                fail("undeclared parameter '" + body + "'", line);
            }
        }
        if (!v) {
            fail("bad count '" + token + "'", line);
        }
        return positive_int(*v, "count", line);
    }

    Millis duration(const std::string& token, std::size_t line) const
    {
        std::optional<double> secs = param(token);
        if (!secs && token.size() > 1 && token.back() == 's') {
            secs = param(std::string_view(token).substr(0, token.size() - 1));
        }
        if (!secs) {
            if (is_identifier(token) && token.back() != 's') {
                fail("undeclared parameter '" + token + "'", line);
            }
            Millis literal{0};
            try {
                literal = parse_seconds(token);
            } catch (const Error&) {
                fail("bad duration '" + token + "'", line);
            }
            if (literal <= Millis{0}) {
                fail("duration must be positive", line);
            }
            return literal;
        }
        if (!(*secs > 0.0)) {
            fail("duration must be positive", line);
        }
        return Millis{std::llround(*secs * 1000.0)};
    }

    Button button(const text::Token& token, std::size_t line) const
    {
        const auto b = parse_button(token.value);
        if (!b) {
            fail("unknown button '" + token.value + "'", line);
        }
        return *b;
    }

    ecm::IgnitionPosition ignition(const text::Token& token, std::size_t line) const
    {
        const auto p = ecm::parse_ignition(token.value);
        if (!p) {
            fail("unknown ignition position '" + token.value + "'", line);
        }
        return *p;
    }

    void statement(const text::Line& line)
    {
        const auto& t = line.tokens;
        const auto& kw = t[0].value;
        const auto n = line.number;
        const auto arity = [&](std::size_t lo, std::size_t hi) {
            if (t.size() < lo || t.size() > hi) {
                fail("wrong number of arguments for '" + kw + "'", n);
            }
        };

        if (kw == "param") {
            return;
        }
        if (kw == "procedure") {
            arity(2, 2);
            spec_.procedure_id = t[1].value;
        } else if (kw == "target") {
            arity(2, 2);
            spec_.target_item = t[1].value;
        } else if (kw == "ignition") {
            arity(2, 2);
            spec_.steps.emplace_back(SetIgnition{ignition(t[1], n)});
        } else if (kw == "press") {
            arity(3, 5);
            PressRelease step{button(t[1], n), count(t[2].value, n), {}};
            if (t.size() > 3) {
                if (t.size() != 5 || t[3].value != "until" || !t[4].quoted || t[4].value.empty()) {
                    fail("expected: press <button> x<N> until \"<text>\"", n);
                }
                step.until = t[4].value;
            }
            spec_.steps.emplace_back(std::move(step));
        } else if (kw == "hold") {
            arity(3, 3);
            spec_.steps.emplace_back(HoldFor{button(t[1], n), duration(t[2].value, n)});
        } else if (kw == "hold_through") {
            arity(4, 4);
            if (t[2].value != "ignition") {
                fail("expected: hold_through <button> ignition <pos>", n);
            }
            spec_.steps.emplace_back(HoldThrough{button(t[1], n), ignition(t[3], n)});
        } else if (kw == "turn") {
            arity(3, 4);
            const auto k = parse_knob(t[1].value);
            if (!k) {
                fail("unknown knob '" + t[1].value + "'", n);
            }
            TurnKnob step{*k, count(t[2].value, n), std::nullopt};
            if (t.size() == 4 && text::lower(t[3].value) != "any") {
                step.direction = parse_direction(t[3].value);
                if (!step.direction) {
                    fail("direction must be any, cw or ccw", n);
                }
            }
            spec_.steps.emplace_back(step);
        } else if (kw == "wait_display") {
            arity(2, 2);
            if (t[1].value.empty()) {
                fail("wait_display needs a non-empty pattern", n);
            }
            spec_.steps.emplace_back(WaitDisplay{t[1].value});
        } else {
            fail("unknown step keyword '" + kw + "'", n);
        }
    }

    const ParamOverrides& overrides_;
    ProcedureSpec spec_;
};

}  // namespace

ProcedureSpec compile_procedure(std::string_view source, const ParamOverrides& overrides)
{
    return Compiler{overrides}.run(source);
}

ProcedureSpec load_procedure(const std::string& path, const ParamOverrides& overrides)
{
    return compile_procedure(text::read_file(path), overrides);
}

std::string serialize(const ProcedureSpec& spec)
{
    std::ostringstream os;
    os << "procedure " << spec.procedure_id << "\n";
    os << "target " << spec.target_item << "\n";
    for (const auto& [name, value] : spec.params) {
        os << "param " << name << "=" << value << "\n";
    }
    if (spec.info_pages != kDefaultInfoPages && !spec.params.count("PAGES")) {
        os << "param PAGES=" << spec.info_pages << "\n";
    }
    for (const auto& step : spec.steps) {
        os << describe(step) << "\n";
    }
    return os.str();
}

}  // namespace ivis::interaction
