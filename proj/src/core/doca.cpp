#include "core/doca.hpp"

#include <numeric>
#include <span>

namespace slwin {

void Doca::validate() const {
    if (stable_count == 0) throw InputError("doca: at least one stable state required");
    if (state_count() > 255) throw InputError("doca: more than 255 states not supported");
    if (alphabet.empty()) throw InputError("doca: empty alphabet");
    if (state_names.size() != state_count()) throw InputError("doca: state name table size");
    if (initial >= state_count()) throw InputError("doca: initial state out of range");
    if (finals.size() != state_count()) throw InputError("doca: finals size mismatch");
    if (d_target.size() != static_cast<std::size_t>(stable_count) * alphabet.size() * 2 ||
        d_delta.size() != d_target.size())
        throw InputError("doca: transition table is not total");
    for (std::size_t i = 0; i < d_target.size(); ++i) {
        if (d_target[i] >= state_count()) throw InputError("doca: transition target out of range");
        bool zero_row = (i % 2) == 0;
        if (zero_row && d_delta[i] < 0)
            throw InputError("doca: decrement on a zero counter");
        if (d_delta[i] < -1 || d_delta[i] > 1)
            throw InputError("doca: counter delta must be -1, 0 or 1");
    }
    if (periods.size() != reset_count || reset_off.size() != reset_count)
        throw InputError("doca: reset metadata size mismatch");
    for (std::uint32_t i = 0; i < reset_count; ++i) {
        if (periods[i] == 0) throw InputError("doca: reset period must be positive");
        if (reset_off[i] + periods[i] > reset_map.size())
            throw InputError("doca: reset map is not total");
        for (std::uint32_t k = 0; k < periods[i]; ++k)
            if (reset_map[reset_off[i] + k] >= stable_count)
                throw InputError("doca: reset map must target stable states");
    }
}

void Doca::compute_lcm() {
    std::uint64_t p = 1;
    for (std::uint32_t per : periods) p = std::lcm<std::uint64_t>(p, per);
    if (p > 1u << 20) throw InputError("doca: combined reset period too large");
    period_lcm = static_cast<std::uint32_t>(p);
}

int Doca::symbol_code(const std::string& name) const {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == name) return static_cast<int>(i);
    return -1;
}

int Doca::state_code(const std::string& name) const {
    for (std::size_t i = 0; i < state_names.size(); ++i)
        if (state_names[i] == name) return static_cast<int>(i);
    return -1;
}

DocaConfig doca_step(const Doca& d, DocaConfig c, std::uint32_t sym, bool* touched_reset) {
    if (sym >= d.alphabet.size())
        throw InputError("doca_step: unknown symbol code " + std::to_string(sym));
    if (d.is_reset(c.state)) {
        c.state = d.resolve_reset(c.state, c.counter);
        c.counter = 0;
        if (touched_reset) *touched_reset = true;
    }
    std::size_t i = d.didx(c.state, sym, c.counter > 0);
    c.counter = static_cast<std::uint64_t>(static_cast<std::int64_t>(c.counter) + d.d_delta[i]);
    c.state = d.d_target[i];
    if (d.is_reset(c.state)) {
        c.state = d.resolve_reset(c.state, c.counter);
        c.counter = 0;
        if (touched_reset) *touched_reset = true;
    }
    return c;
}

DocaConfig doca_run(const Doca& d, std::span<const std::uint32_t> word) {
    DocaConfig c{d.initial, 0};
    for (std::uint32_t a : word) c = doca_step(d, c, a);
    return c;
}

bool doca_accepts(const Doca& d, std::span<const std::uint32_t> word) {
    return d.finals[doca_run(d, word).state] != 0;
}

Effect::Effect(const Doca& d, std::uint32_t len)
    : len_(len), p_(d.period_lcm), states_per_row_(d.state_count()) {
    entries_ = static_cast<std::size_t>(states_per_row_) *
               (static_cast<std::size_t>(len_) + p_ + 1);
    out_state_ = std::make_unique_for_overwrite<std::uint8_t[]>(entries_);
    out_count_ = std::make_unique_for_overwrite<std::uint32_t[]>(entries_);
    touched_top_.assign(states_per_row_, 0);
}

Effect Effect::of_letter(const Doca& d, std::uint32_t sym, CostCounters* cc) {
    Effect e(d, 1);
    const std::size_t cols = static_cast<std::size_t>(e.len_) + e.p_ + 1;
    for (std::uint32_t q = 0; q < e.states_per_row_; ++q) {
        for (std::size_t m = 0; m < cols; ++m) {
            bool touched = false;
            DocaConfig out = doca_step(d, {q, m}, sym, &touched);
            e.out_state_[q * cols + m] = static_cast<std::uint8_t>(out.state);
            e.out_count_[q * cols + m] = static_cast<std::uint32_t>(out.counter);
            if (cc) ++cc->table_entries_written;
            if (m + 1 == cols) e.touched_top_[q] = touched ? 1 : 0;
        }
    }
    e.filled_ = e.entries_;
    return e;
}

Effect Effect::epsilon(const Doca& d, CostCounters* cc) {
    Effect e(d, 0);
    const std::size_t cols = static_cast<std::size_t>(e.p_) + 1;
    for (std::uint32_t q = 0; q < e.states_per_row_; ++q)
        for (std::size_t m = 0; m < cols; ++m) {
            e.out_state_[q * cols + m] = static_cast<std::uint8_t>(q);
            e.out_count_[q * cols + m] = static_cast<std::uint32_t>(m);
            if (cc) ++cc->table_entries_written;
        }
    e.filled_ = e.entries_;
    return e;
}

std::size_t Effect::fill_step(const Doca& d, const Effect& lhs, const Effect& rhs,
                              std::size_t budget, CostCounters* cc) {
    if (!lhs.complete() || !rhs.complete())
        throw StateError("effect composition: operand still incomplete");
    const std::size_t cols = static_cast<std::size_t>(len_) + p_ + 1;
    const std::size_t total = entries_;
    std::size_t written = 0;
    while (filled_ < total && written < budget) {
        std::uint32_t q = static_cast<std::uint32_t>(filled_ / cols);
        std::uint64_t m = filled_ % cols;
        DocaConfig mid = lhs.apply(d, {q, m});
        DocaConfig out = rhs.apply(d, mid);
        out_state_[filled_] = static_cast<std::uint8_t>(out.state);
        out_count_[filled_] = static_cast<std::uint32_t>(out.counter);
        if (m + 1 == cols) {
            bool t = lhs.touched_from(q, m);
            if (!t) t = rhs.touched_from(mid.state, mid.counter);
            touched_top_[q] = t ? 1 : 0;
        }
        ++filled_;
        ++written;
    }
    if (cc) cc->table_entries_written += written;
    return written;
}

DocaConfig Effect::apply(const Doca& d, DocaConfig c, CostCounters* cc) const {
    (void)d;
    if (cc) ++cc->effect_applications;
    const std::size_t cols = static_cast<std::size_t>(len_) + p_ + 1;
    std::uint64_t top = static_cast<std::uint64_t>(len_) + p_;
    if (c.counter <= top) {
        std::size_t i = c.state * cols + c.counter;
        return {out_state_[i], out_count_[i]};
    }
    if (touched_top_[c.state]) {
        std::uint64_t m = len_ + (c.counter - len_) % p_;
        std::size_t i = c.state * cols + m;
        return {out_state_[i], out_count_[i]};
    }
    std::size_t i = c.state * cols + top;
    return {out_state_[i], out_count_[i] + (c.counter - top)};
}

bool Effect::touched_from(std::uint32_t state, std::uint64_t counter) const {
    // only meaningful at or above the tabulated top row
    (void)counter;
    return touched_top_[state] != 0;
}

} // namespace slwin
