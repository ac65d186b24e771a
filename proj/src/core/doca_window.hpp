#pragma once

#include <deque>
#include <memory>
#include <vector>

#include "core/doca.hpp"
#include "core/window.hpp"

namespace slwin {

// Logarithmic-latency two-way window for a deterministic one-counter
// language. The window is tiled by maximal blocks of power-of-two lengths
// whose exponents first strictly ascend, then strictly descend; each block
// is a full binary tree of half-blocks. A push runs a binary-counter merge
// on the pushing side, a pop dissolves the extremal block along its
// extremal root-leaf path. Effects of merged blocks are computed in the
// background: every update gives each unfinished merge chain a fixed entry
// budget, which completes a level-a block within 2^a - 1 updates of its
// creation. A query folds the effects of the O(log n) completed blocks that
// tile the window.
class DocaWindow final : public Window {
public:
    explicit DocaWindow(Doca doca);
    ~DocaWindow() override;

    std::size_t length() const override { return symbols_.size(); }

    const Doca& doca() const { return doca_; }

    // --- introspection for tests ---
    struct Block {
        std::uint32_t level = 0;
        std::uint32_t symbol = 0; // leaves
        Block* left = nullptr;
        Block* right = nullptr;
        Effect eff;
        bool completed = false;
        bool dead = false;
        std::uint64_t birth = 0;
        std::uint8_t side = 0; // end it entered on: 0 left, 1 right
    };

    bool shape_ok() const;           // invariant: lengths tile, exponents bitonic
    bool trees_ok() const;           // invariant: every node splits in halves
    bool deadlines_ok() const { return !overdue_; } // invariant: age bound met
    bool chain_overflow_seen() const { return chain_overflow_; }
    std::size_t factor_count();      // completed-block factorization size
    std::uint64_t live_table_entries() const { return table_entries_; }
    const std::deque<Block*>& maximal_blocks() const { return blocks_; }
    const std::deque<std::uint32_t>& symbols() const { return symbols_; }
    std::size_t work_budget_unit() const { return budget_unit_; }

protected:
    void do_apply(WinOp op, std::uint32_t symbol) override;
    bool do_query() override;

    std::uint64_t work_metric(const CostCounters& delta) const override {
        return delta.table_entries_written + delta.node_constructions +
               delta.effect_applications;
    }

private:
    struct Chain {
        std::vector<Block*> members; // bottom level first
        std::size_t next = 0;        // first incomplete member
        std::uint8_t side = 0;
    };

    Block* new_block();
    void recycle(Block* b);
    void push_side(bool right, std::uint32_t sym);
    void pop_side(bool right);
    void advance();
    void prune_chains();
    void collect_completed(Block* b, std::vector<Block*>& out);

    Doca doca_;
    std::deque<Block*> blocks_;        // maximal blocks, left to right
    std::deque<std::uint32_t> symbols_; // raw window mirror
    std::vector<Chain> chains_;
    std::uint64_t now_ = 0;

    std::deque<Block> arena_;
    std::vector<Block*> free_;
    std::vector<Block*> graveyard_; // dead this update, recycled after pruning

    std::size_t budget_unit_; // entries per chain per update
    std::uint64_t table_entries_ = 0;
    bool overdue_ = false;
    bool chain_overflow_ = false;
    std::vector<Block*> factor_scratch_;
};

} // namespace slwin
