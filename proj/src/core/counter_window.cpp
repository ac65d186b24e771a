#include "core/counter_window.hpp"

namespace slwin {

bool len_accepts(const LenSets& ls, std::uint64_t length) {
    if (length >= ls.period) return ls.large[length % ls.period] != 0;
    return ls.small[length] != 0;
}

void len_validate_against_dfa(const Dfa& dfa, const LenSets& ls) {
    dfa.validate();
    // breadth over lengths: the set of states reachable by words of length k
    std::vector<std::uint8_t> cur(dfa.state_count, 0), nxt(dfa.state_count, 0);
    cur[dfa.initial] = 1;
    for (std::uint64_t k = 0; k <= 4ull * ls.period; ++k) {
        int seen = -1;
        for (std::uint32_t q = 0; q < dfa.state_count; ++q) {
            if (!cur[q]) continue;
            int f = dfa.is_final(q) ? 1 : 0;
            if (seen == -1) seen = f;
            if (seen != f)
                throw InputError("length-language validation: membership at length " +
                                 std::to_string(k) + " depends on more than the length");
        }
        if ((seen == 1) != len_accepts(ls, k))
            throw InputError("length-language validation: DFA disagrees with (N, A, B) at length " +
                             std::to_string(k));
        std::fill(nxt.begin(), nxt.end(), 0);
        for (std::uint32_t q = 0; q < dfa.state_count; ++q)
            if (cur[q])
                for (std::uint32_t a = 0; a < dfa.alphabet.size(); ++a) nxt[dfa.step(q, a)] = 1;
        cur.swap(nxt);
    }
}

LenWindow::LenWindow(LenSets ls) : ls_(std::move(ls)), over_(&cc_) {
    if (ls_.period == 0) throw InputError("length language: period must be at least 1");
    if (ls_.large.size() != ls_.period || ls_.small.size() != ls_.period)
        throw InputError("length language: residue set sizes must equal the period");
}

void LenWindow::do_apply(WinOp op, std::uint32_t) {
    bool push = op == WinOp::RightPush || op == WinOp::LeftPush;
    if (push) {
        if (large_) {
            over_.inc();
            residue_ = residue_ + 1 == ls_.period ? 0 : residue_ + 1;
        } else if (small_n_ + 1 == ls_.period) {
            large_ = true;
            residue_ = 0;
            small_n_ = 0;
        } else {
            ++small_n_;
        }
        ++len_;
    } else {
        if (len_ == 0) throw StateError("length window: pop on empty");
        if (large_) {
            if (over_.is_zero()) {
                large_ = false;
                small_n_ = ls_.period - 1;
            } else {
                over_.dec();
                residue_ = residue_ == 0 ? ls_.period - 1 : residue_ - 1;
            }
        } else {
            --small_n_;
        }
        --len_;
    }
}

bool LenWindow::do_query() {
    return large_ ? ls_.large[residue_] != 0 : ls_.small[small_n_] != 0;
}

std::uint32_t validate_left_ideal_reversal(const Dfa& rev) {
    rev.validate();
    std::uint32_t final_state = rev.state_count;
    for (std::uint32_t q = 0; q < rev.state_count; ++q) {
        if (!rev.is_final(q)) continue;
        if (final_state != rev.state_count)
            throw InputError("left-ideal reversal automaton: final state is not unique");
        final_state = q;
    }
    if (final_state == rev.state_count)
        throw InputError("left-ideal reversal automaton: no final state");
    for (std::uint32_t a = 0; a < rev.alphabet.size(); ++a)
        if (rev.step(final_state, a) != final_state)
            throw InputError("left-ideal reversal automaton: final state is not a sink");
    return final_state;
}

Dfa left_ideal_reversal_from_language(const Dfa& dfa, std::size_t max_states) {
    Dfa rev = reverse_determinize(dfa, max_states);
    // A left ideal's reversal is a right ideal: acceptance, once reached, is
    // permanent, so accepting subsets must be closed under every letter and
    // can be merged into one sink.
    for (std::uint32_t q = 0; q < rev.state_count; ++q)
        if (rev.is_final(q))
            for (std::uint32_t a = 0; a < rev.alphabet.size(); ++a)
                if (!rev.is_final(rev.step(q, a)))
                    throw InputError("not a left ideal: reversal acceptance is not permanent");

    Dfa out;
    out.alphabet = rev.alphabet;
    // map accepting states to one fresh sink, keep rejecting states
    std::vector<std::uint32_t> remap(rev.state_count);
    std::uint32_t next = 0;
    for (std::uint32_t q = 0; q < rev.state_count; ++q)
        if (!rev.is_final(q)) remap[q] = next++;
    std::uint32_t sink = next;
    for (std::uint32_t q = 0; q < rev.state_count; ++q)
        if (rev.is_final(q)) remap[q] = sink;
    out.state_count = next + 1;
    out.initial = remap[rev.initial];
    out.finals.assign(out.state_count, 0);
    out.finals[sink] = 1;
    out.delta.assign(static_cast<std::size_t>(out.state_count) * out.alphabet.size(), sink);
    for (std::uint32_t q = 0; q < rev.state_count; ++q)
        for (std::uint32_t a = 0; a < rev.alphabet.size(); ++a)
            out.delta[static_cast<std::size_t>(remap[q]) * out.alphabet.size() + a] =
                remap[rev.step(q, a)];
    out.validate();
    return out;
}

namespace {
constexpr std::size_t MAX_SUMMARY_STATES = 1u << 15;
}

PathSummaryWindow::PathSummaryWindow(Dfa reversal_dfa) : rev_(std::move(reversal_dfa)) {
    final_state_ = validate_left_ideal_reversal(rev_);
    if (rev_.state_count > MAX_SUMMARY_STATES)
        throw ResourceError("path summary: reversal automaton too large");
    std::size_t words = (rev_.state_count + 63) / 64;
    chunks_.assign(rev_.state_count, Chunk{});
    for (auto& c : chunks_) c.states.assign(words, 0);
    scratch_.assign(words, 0);
    add_final_chunk(); // empty window: only the empty suffix reaches q_F, from q_F
}

std::size_t PathSummaryWindow::active_chunks() const {
    std::size_t n = 0;
    for (const auto& c : chunks_)
        if (c.active) ++n;
    return n;
}

void PathSummaryWindow::add_final_chunk() {
    for (auto& c : chunks_) {
        if (c.active) continue;
        std::fill(c.states.begin(), c.states.end(), 0);
        c.states[final_state_ >> 6] |= 1ull << (final_state_ & 63);
        c.m = len_;
        c.active = true;
        return;
    }
    throw StateError("path summary: no free chunk"); // cannot happen: <= |Q| active
}

void PathSummaryWindow::do_apply(WinOp op, std::uint32_t symbol) {
    if (op == WinOp::LeftPush || op == WinOp::RightPop)
        throw StateError("path summary window: two-way operation not supported");
    if (op == WinOp::RightPush) {
        if (symbol >= rev_.alphabet.size())
            throw InputError("path summary window: unknown symbol code");
        ++len_;
        for (auto& c : chunks_) {
            if (!c.active) continue;
            // predecessors of the chunk's states under the letter, minus q_F
            std::fill(scratch_.begin(), scratch_.end(), 0);
            bool any = false;
            for (std::uint32_t q = 0; q < rev_.state_count; ++q) {
                if (q == final_state_) continue;
                std::uint32_t t = rev_.step(q, symbol);
                if ((c.states[t >> 6] >> (t & 63)) & 1u) {
                    scratch_[q >> 6] |= 1ull << (q & 63);
                    any = true;
                }
            }
            if (any)
                c.states = scratch_;
            else
                c.active = false;
        }
        add_final_chunk();
    } else { // LeftPop
        if (len_ == 0) throw StateError("path summary window: pop on empty");
        for (auto& c : chunks_)
            if (c.active && c.m == 0) c.active = false; // the full-window suffix leaves
        for (auto& c : chunks_)
            if (c.active) --c.m;
        --len_;
    }
}

bool PathSummaryWindow::do_query() {
    for (const auto& c : chunks_)
        if (c.active && ((c.states[rev_.initial >> 6] >> (rev_.initial & 63)) & 1u)) return true;
    return false;
}

ComboWindow::ComboWindow(std::unique_ptr<Node> formula,
                         std::vector<std::unique_ptr<Window>> leaves,
                         std::vector<std::vector<std::uint32_t>> symbol_maps)
    : formula_(std::move(formula)),
      leaves_(std::move(leaves)),
      symbol_maps_(std::move(symbol_maps)) {
    if (!symbol_maps_.empty() && symbol_maps_.size() != leaves_.size())
        throw InputError("combo window: one symbol map per component expected");
    for (const auto& l : leaves_)
        if (dynamic_cast<PathSummaryWindow*>(l.get())) one_way_only_ = true;
}

void ComboWindow::do_apply(WinOp op, std::uint32_t symbol) {
    if (one_way_only_ && (op == WinOp::LeftPush || op == WinOp::RightPop))
        throw StateError("combo window: a component only supports one-way operations");
    bool push = op == WinOp::RightPush || op == WinOp::LeftPush;
    if (!push && len_ == 0) throw StateError("combo window: pop on empty");
    for (std::size_t i = 0; i < leaves_.size(); ++i) {
        std::uint32_t s = symbol;
        if (push && !symbol_maps_.empty()) {
            const auto& map = symbol_maps_[i];
            if (symbol >= map.size() || map[symbol] == UNMAPPED)
                throw InputError("combo window: symbol unknown to a component");
            s = map[symbol];
        }
        leaves_[i]->apply(op, s);
    }
    if (push)
        ++len_;
    else
        --len_;
}

bool ComboWindow::eval(const Node& n) {
    switch (n.kind) {
    case Node::Leaf: return leaves_[n.leaf]->query();
    case Node::And: return eval(*n.lhs) && eval(*n.rhs);
    case Node::Or: return eval(*n.lhs) || eval(*n.rhs);
    case Node::Not: return !eval(*n.lhs);
    }
    return false;
}

bool ComboWindow::do_query() { return eval(*formula_); }

} // namespace slwin
