// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/engine.hpp"
#include "ivis/error.hpp"

#include <cmath>

namespace ivis::interaction {

std::string_view to_string(DeviationKind k) noexcept
{
    switch (k) {
    case DeviationKind::WrongButton: return "wrong-button";
    case DeviationKind::PrematureRelease: return "premature-release";
    case DeviationKind::OutOfOrder: return "out-of-order";
    case DeviationKind::WrongIgnition: return "wrong-ignition";
    case DeviationKind::InvalidCode: return "invalid-code";
    case DeviationKind::Timeout: return "timeout";
    }
    return "?";
}

std::optional<DeviationKind> parse_deviation_kind(std::string_view name)
{
    for (auto k : {DeviationKind::WrongButton, DeviationKind::PrematureRelease, DeviationKind::OutOfOrder,
                   DeviationKind::WrongIgnition, DeviationKind::InvalidCode, DeviationKind::Timeout}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

EngineState make_conventional_engine(const ProcedureSpec& spec, Millis start)
{
    EngineState e;
    e.last_event_time = start;
    e.info_pages = spec.info_pages;
    return e;
}

EngineState make_icode_engine(const codes::ReferenceTable& table, Millis start)
{
    EngineState e;
    e.last_event_time = start;
    e.code_length = table.code_length();
    return e;
}

std::string code_prompt(std::string_view buffer, std::size_t code_length)
{
    std::string out = "CODE: ";
    out += buffer;
    for (std::size_t i = buffer.size(); i < code_length; ++i) {
        if (i > buffer.size()) {
            out += ' ';
        }
        out += '_';
    }
    return out;
}

ecm::LcdContent compose_display(const ecm::LcdContent& overlay, const ecm::LcdContent& lcd)
{
    ecm::LcdContent out;
    out.lines = overlay.lines;
    bool lcd_visible = false;
    for (const auto& line : lcd.lines) {
        if (out.lines.size() >= ecm::kLcdLines) {
            break;
        }
        out.lines.push_back(line);
        lcd_visible = true;
    }
    out.blink = lcd.blink && lcd_visible;
    return ecm::clip_to_geometry(std::move(out));
}

bool display_contains(const ecm::LcdContent& display, std::string_view pattern)
{
    for (const auto& line : display.lines) {
        if (line.find(pattern) != std::string::npos) {
            return true;
        }
    }
    return false;
}

namespace {

std::string info_page_text(const EngineState& engine, const ecm::VehicleState& vehicle)
{
    if (engine.info_page == engine.info_pages) {
        const auto pct = static_cast<long long>(std::floor(vehicle.oil_life));
        return "OIL LIFE " + std::to_string(pct) + "%";
    }
    switch (engine.info_page) {
    case 1: return "ODO " + std::to_string(static_cast<long long>(std::floor(vehicle.odometer))) + " MI";
    case 2: return "TIME " + ecm::local_clock_text(vehicle);
    default: return "INFO " + std::to_string(engine.info_page);
    }
}

}  // namespace

ecm::LcdContent engine_display(const EngineState& engine, const ecm::VehicleState& vehicle)
{
    ecm::LcdContent out;
    if (vehicle.ignition == ecm::IgnitionPosition::Off) {
        return out;
    }
    if (!engine.notice.empty()) {
        out.lines.push_back(engine.notice);
    }
    if (const auto* entry = std::get_if<CodeEntry>(&engine.mode)) {
        out.lines.push_back(code_prompt(entry->buffer, engine.code_length));
    } else if (engine.reset_mode) {
        out.lines.push_back("RESET MODE");
    } else if (engine.info_page > 0) {
        out.lines.push_back(info_page_text(engine, vehicle));
    }
    return ecm::clip_to_geometry(std::move(out));
}

namespace {

void check_time(const EngineState& engine, const InputEvent& event)
{
    if (event.time < engine.last_event_time) {
        throw Error(Errc::invalid_argument, "event at " + format_seconds(event.time) +
                                                " precedes previous event at " +
                                                format_seconds(engine.last_event_time));
    }
}

bool ignition_matches(ecm::IgnitionPosition actual, ecm::IgnitionPosition expected)
{
    if (actual == expected) {
        return true;
    }
    // The key passes through ON on its way to START.
    return expected == ecm::IgnitionPosition::On && actual == ecm::IgnitionPosition::Start;
}

bool step_uses(const ProcedureStep& step, Button b)
{
    return std::visit(
        [b](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PressRelease> || std::is_same_v<T, HoldFor> ||
                          std::is_same_v<T, HoldThrough>) {
                return s.button == b;
            } else {
                return false;
            }
        },
        step);
}

bool step_uses(const ProcedureStep& step, Knob k)
{
    const auto* turn = std::get_if<TurnKnob>(&step);
    return turn && turn->knob == k;
}

/// Mutable working copy of one conventional_step call.
class ProcedureRun {
public:
    ProcedureRun(EngineState& engine, const ProcedureSpec& spec, const InputEvent& event,
                 const ecm::VehicleState& vehicle, StepResult& result)
        : engine_(engine), spec_(spec), event_(event), vehicle_(vehicle), result_(result)
    {
        if (const auto* p = std::get_if<InProcedure>(&engine_.mode)) {
            proc_ = *p;
        }
    }

    void run()
    {
        const bool ignition_event = std::holds_alternative<IgnitionSet>(event_.kind);
        if (!ignition_event) {
            settle(true);
        }
        if (!done()) {
            std::visit([this](const auto& k) { consume(k); }, event_.kind);
        }
        settle(false);

        if (done()) {
            result_.actions.emplace_back(ecm::ResetItem{spec_.target_item});
            engine_.mode = Idle{};
            engine_.info_page = 0;
            engine_.reset_mode = false;
            return;
        }
        if (proc_.step_index == 0 && proc_.progress == StepProgress{}) {
            engine_.mode = Idle{};
        } else {
            engine_.mode = proc_;
        }
        engine_.reset_mode = in_reset_mode();
    }

private:
    bool done() const { return proc_.step_index >= spec_.steps.size(); }
    const ProcedureStep& current() const { return spec_.steps[proc_.step_index]; }

    void advance()
    {
        ++proc_.step_index;
        proc_.progress = {};
    }

    bool in_reset_mode() const
    {
        const auto* hold = std::get_if<HoldFor>(&current());
        if (!hold) {
            return false;
        }
        if (proc_.progress.hold_start) {
            return true;
        }
        for (std::size_t i = 0; i < proc_.step_index; ++i) {
            if (std::holds_alternative<HoldFor>(spec_.steps[i])) {
                return true;
            }
        }
        return false;
    }

    ecm::LcdContent display() const
    {
        EngineState probe = engine_;
        probe.mode = proc_;
        probe.reset_mode = false;
        return compose_display(engine_display(probe, vehicle_), vehicle_.lcd);
    }

    // Steps satisfied by the current state rather than by an event.
    void settle(bool allow_ignition)
    {
        while (!done()) {
            const auto& step = current();
            if (const auto* ign = std::get_if<SetIgnition>(&step);
                ign && allow_ignition && ignition_matches(vehicle_.ignition, ign->position)) {
                advance();
            } else if (const auto* wait = std::get_if<WaitDisplay>(&step);
                       wait && display_contains(display(), wait->pattern)) {
                advance();
            } else {
                break;
            }
        }
    }

    void flag(DeviationKind kind, std::string detail)
    {
        result_.flags.push_back(DeviationFlag{kind, event_.time, std::move(detail)});
    }

    DeviationKind classify_button(Button b) const
    {
        for (std::size_t i = 0; i < spec_.steps.size(); ++i) {
            if (i != proc_.step_index && step_uses(spec_.steps[i], b)) {
                return DeviationKind::OutOfOrder;
            }
        }
        return DeviationKind::WrongButton;
    }

    DeviationKind classify_knob(Knob k) const
    {
        for (std::size_t i = 0; i < spec_.steps.size(); ++i) {
            if (i != proc_.step_index && step_uses(spec_.steps[i], k)) {
                return DeviationKind::OutOfOrder;
            }
        }
        return DeviationKind::WrongButton;
    }

    // An unrelated event interrupts a hold in progress.
    void break_hold()
    {
        const auto& step = current();
        if (std::holds_alternative<HoldFor>(step) || std::holds_alternative<HoldThrough>(step)) {
            proc_.progress = {};
        }
    }

    bool current_is_hold_on(Button b) const
    {
        const auto& step = current();
        if (const auto* h = std::get_if<HoldFor>(&step)) return h->button == b;
        if (const auto* h = std::get_if<HoldThrough>(&step)) return h->button == b;
        return false;
    }

    void consume(const ButtonDown& ev)
    {
        auto& pr = proc_.progress;
        const auto& step = current();
        if (const auto* s = std::get_if<PressRelease>(&step); s && s->button == ev.button) {
            pr.pressed = true;
            return;
        }
        if (const auto* s = std::get_if<HoldFor>(&step); s && s->button == ev.button) {
            pr.hold_start = event_.time;
            return;
        }
        if (const auto* s = std::get_if<HoldThrough>(&step); s && s->button == ev.button && pr.phase == 0) {
            pr.phase = 1;
            pr.hold_start = event_.time;
            return;
        }
        break_hold();
        flag(classify_button(ev.button), std::string(to_string(ev.button)) + " pressed during: " + describe(step));
    }

    void consume(const ButtonUp& ev)
    {
        if (ev.button == Button::SelectReset && !current_is_hold_on(ev.button) &&
            vehicle_.ignition != ecm::IgnitionPosition::Off) {
            engine_.info_page = (engine_.info_page + 1) % (engine_.info_pages + 1);
        }

        auto& pr = proc_.progress;
        const auto& step = current();
        if (const auto* s = std::get_if<PressRelease>(&step); s && s->button == ev.button && pr.pressed) {
            pr.pressed = false;
            ++pr.count;
            if (pr.count >= s->count && (s->until.empty() || display_contains(display(), s->until))) {
                advance();
            }
            return;
        }
        if (const auto* s = std::get_if<HoldFor>(&step); s && s->button == ev.button && pr.hold_start) {
            const auto held = event_.time - *pr.hold_start;
            if (held >= s->min_hold) {
                advance();
            } else {
                pr = {};
                flag(DeviationKind::PrematureRelease, "released " + std::string(to_string(ev.button)) +
                                                          " after " + format_seconds(held) + "s of " +
                                                          format_seconds(s->min_hold) + "s");
            }
            return;
        }
        if (const auto* s = std::get_if<HoldThrough>(&step); s && s->button == ev.button && pr.phase > 0) {
            if (pr.phase == 2) {
                advance();
            } else {
                pr = {};
                flag(DeviationKind::PrematureRelease, "released " + std::string(to_string(ev.button)) +
                                                          " before ignition " +
                                                          std::string(ecm::to_string(s->position)));
            }
            return;
        }
        // Releases of unrelated buttons were already judged at press time.
    }

    void consume(const KnobTurn& ev)
    {
        const auto& step = current();
        if (const auto* s = std::get_if<TurnKnob>(&step); s && s->knob == ev.knob) {
            if (s->direction && *s->direction != ev.direction) {
                flag(DeviationKind::WrongButton, std::string(to_string(ev.knob)) + " turned " +
                                                     std::string(to_string(ev.direction)) + ", expected " +
                                                     std::string(to_string(*s->direction)));
                return;
            }
            if (++proc_.progress.count >= s->count) {
                advance();
            }
            return;
        }
        break_hold();
        flag(classify_knob(ev.knob), std::string(to_string(ev.knob)) + " turned during: " + describe(step));
    }

    void consume(const IgnitionSet& ev)
    {
        auto& pr = proc_.progress;
        const auto& step = current();
        if (const auto* s = std::get_if<SetIgnition>(&step)) {
            if (ignition_matches(ev.position, s->position)) {
                advance();
            } else {
                flag(DeviationKind::WrongIgnition, "ignition " + std::string(ecm::to_string(ev.position)) +
                                                       ", expected " + std::string(ecm::to_string(s->position)));
            }
            return;
        }
        if (const auto* s = std::get_if<HoldThrough>(&step); s && pr.phase == 1) {
            if (ignition_matches(ev.position, s->position)) {
                pr.phase = 2;
                return;
            }
        }
        break_hold();
        flag(DeviationKind::WrongIgnition,
             "ignition " + std::string(ecm::to_string(ev.position)) + " during: " + describe(step));
    }

    EngineState& engine_;
    const ProcedureSpec& spec_;
    const InputEvent& event_;
    const ecm::VehicleState& vehicle_;
    StepResult& result_;
    InProcedure proc_;
};

}  // namespace

StepResult conventional_step(EngineState engine, const ProcedureSpec& spec, const InputEvent& event,
                             const ecm::VehicleState& vehicle)
{
    check_time(engine, event);
    if (spec.steps.empty()) {
        throw Error(Errc::invalid_argument, "procedure '" + spec.procedure_id + "' has no steps");
    }
    engine.last_event_time = event.time;
    engine.notice.clear();
    if (std::holds_alternative<CodeEntry>(engine.mode)) {
        engine.mode = Idle{};
    }

    StepResult result;
    ProcedureRun{engine, spec, event, vehicle, result}.run();
    result.engine = std::move(engine);
    return result;
}

StepResult icode_step(EngineState engine, const codes::ReferenceTable& table, const InputEvent& event)
{
    check_time(engine, event);
    engine.last_event_time = event.time;
    engine.notice.clear();
    engine.code_length = table.code_length();

    StepResult result;
    auto* entry = std::get_if<CodeEntry>(&engine.mode);
    if (entry && !entry->buffer.empty() && event.time - entry->last_digit > kCodeEntryTimeout) {
        result.flags.push_back(DeviationFlag{DeviationKind::Timeout, event.time,
                                             "abandoned partial code " + entry->buffer});
        entry->buffer.clear();
        engine.notice = "CODE TIMEOUT";
    }

    if (const auto* up = std::get_if<ButtonUp>(&event.kind)) {
        if (up->button == Button::Mode) {
            if (entry) {
                engine.mode = Idle{};
            } else {
                engine.mode = CodeEntry{"", event.time};
            }
        } else if (const auto digit = digit_value(up->button)) {
            if (!entry) {
                result.flags.push_back(DeviationFlag{DeviationKind::WrongButton, event.time,
                                                     std::string(to_string(up->button)) +
                                                         " pressed outside code entry"});
            } else {
                entry->buffer.push_back(static_cast<char>('0' + *digit));
                entry->last_digit = event.time;
                if (entry->buffer.size() >= engine.code_length) {
                    if (const auto action = table.lookup(entry->buffer)) {
                        result.actions = codes::to_ecm_actions(*action);
                        engine.mode = Idle{};
                    } else {
                        result.flags.push_back(
                            DeviationFlag{DeviationKind::InvalidCode, event.time, "code " + entry->buffer});
                        entry->buffer.clear();
                        engine.notice = "INVALID CODE";
                    }
                }
            }
        }
    }

    result.engine = std::move(engine);
    return result;
}

}  // namespace ivis::interaction
