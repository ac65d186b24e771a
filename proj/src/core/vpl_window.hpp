#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/resizing_deque.hpp"
#include "core/vpa.hpp"
#include "core/window.hpp"

namespace slwin {

class VplWindow;

// Node of the tree T(w) of a well-nested word w. Four shapes:
//   Eps    - the empty word; a per-window singleton
//   Leaf   - one internal letter
//   Prime  - a (call, body, return) unit; one child, the body
//   Comp   - a product of two or more primes; children in their own deque
// Every node caches phi(w), the state transformation of its word.
struct VplNode {
    enum class Kind : std::uint8_t { Eps, Leaf, Prime, Comp };

    struct ChildOps {
        using Payload = VplNode*;
        std::size_t q = 0;
        CostCounters* cc = nullptr;
        std::size_t dim() const { return q; }
        CostCounters* counters() const { return cc; }
        void value_into(std::span<std::uint32_t> dst, VplNode* const& n) const {
            auto src = n->phi.map();
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i];
        }
    };
    using ChildDeque = ResizingDeque<ChildOps>;

    Kind kind = Kind::Eps;
    std::uint32_t sym_a = 0; // Leaf: the letter; Prime: the call letter
    std::uint32_t sym_b = 0; // Prime: the return letter
    StateTransform phi;
    VplNode* child = nullptr;          // Prime body
    std::unique_ptr<ChildDeque> kids;  // Comp children
};

// Entry of the top-level descending/ascending lists: either a tree handle or
// a bare call/return letter marker.
struct TopEntry {
    VplNode* node = nullptr;
    std::int32_t marker = -1; // >= 0: symbol code, node unused
};

// Constant-latency two-way window for a visibly pushdown language. The
// window splits uniquely as w0 a1 w1 ... as ws as+1 ... ak wk with returns
// a1..as before the separation position and calls after; the wi are
// well-nested and kept as trees. The descending list holds
// [T(w0), <a1>, ..., <as>], the ascending list [<as+1>, ..., T(wk)], and the
// separating tree T(ws) sits between them. A query composes the two list
// aggregates with phi(ws) and applies the result to the initial state.
class VplWindow final : public Window {
public:
    explicit VplWindow(Vpa vpa);
    VplWindow(Vpa vpa, std::size_t fixed_capacity);
    ~VplWindow() override;

    std::size_t length() const override { return len_; }

    const Vpa& vpa() const { return vpa_; }

    // --- introspection for tests ---
    std::size_t live_nodes() const { return live_; }
    std::string spell() const;               // window text, symbol names joined
    std::vector<std::uint32_t> spell_codes() const;
    bool structure_ok() const;                // list shapes and label sanity
    bool phi_labels_ok() const;               // recomputes phi bottom-up

protected:
    void do_apply(WinOp op, std::uint32_t symbol) override;
    bool do_query() override;

    std::uint64_t work_metric(const CostCounters& delta) const override {
        return delta.deque_ops + delta.node_constructions + delta.monoid_compositions;
    }

private:
    struct TopOps {
        using Payload = TopEntry;
        const std::vector<StateTransform>* letters = nullptr;
        std::size_t q = 0;
        CostCounters* cc = nullptr;
        std::size_t dim() const { return q; }
        CostCounters* counters() const { return cc; }
        void value_into(std::span<std::uint32_t> dst, const TopEntry& e) const {
            auto src = e.marker >= 0 ? (*letters)[e.marker].map() : e.node->phi.map();
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i];
        }
    };
    using TopDeque = ResizingDeque<TopOps>;

    void init();

    VplNode* alloc_node();
    void release_node(VplNode* n); // deferred; finalized two per operation
    void drain_released();

    VplNode* make_leaf(std::uint32_t sym);
    VplNode* construct_prime(std::uint32_t call_sym, VplNode* body, std::uint32_t ret_sym);
    VplNode* concat_right(VplNode* u, VplNode* v); // T(uv), v prime
    VplNode* concat_left(VplNode* v, VplNode* u);  // T(vu), v prime
    void refresh_phi(VplNode* comp);

    struct PrimePop {
        VplNode* first = nullptr;
        VplNode* rest = nullptr;
    };
    PrimePop left_prime_pop(VplNode* w);
    PrimePop right_prime_pop(VplNode* w);

    // Removing one letter either leaves a well-nested remainder (rest) or
    // breaks a prime open, exposing its other bracket: for a left pop of
    // (a u' b) v the parts are inner = T(u'), letter = b, rest = T(v); the
    // right pop of v (c u' d) exposes letter = c symmetrically.
    struct SymbolPop {
        bool exposed = false;
        std::int32_t letter = -1;
        VplNode* inner = nullptr;
        VplNode* rest = nullptr;
    };
    SymbolPop left_symbol_pop(VplNode* w);
    SymbolPop right_symbol_pop(VplNode* w);

    void push_right_sym(std::uint32_t b);
    void push_left_sym(std::uint32_t b);
    void pop_left_sym();
    void pop_right_sym();

    bool is_eps(const VplNode* n) const { return n == &eps_; }
    void spell_tree(const VplNode* n, std::vector<std::uint32_t>& out) const;
    bool check_phi(const VplNode* n) const;

    Vpa vpa_;
    std::vector<StateTransform> letters_; // phi of each letter
    VplNode eps_;
    std::unique_ptr<TopDeque> desc_, asc_;
    VplNode* sep_ = nullptr;
    std::size_t len_ = 0;

    std::vector<std::unique_ptr<VplNode>> arena_;
    std::vector<VplNode*> free_list_;
    std::vector<VplNode*> deferred_;
    std::size_t live_ = 0;

    std::vector<std::uint32_t> scratch_a_, scratch_b_;
};

} // namespace slwin
