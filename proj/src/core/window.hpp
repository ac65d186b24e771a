#pragma once

#include <cstdint>
#include <memory>

#include "core/cost.hpp"
#include "core/errors.hpp"

namespace slwin {

enum class WinOp : std::uint8_t { RightPush, LeftPush, LeftPop, RightPop };

enum class Model : std::uint8_t { OneFixed, OneVar, TwoFixed, TwoVar };

inline bool model_is_fixed(Model m) { return m == Model::OneFixed || m == Model::TwoFixed; }
inline bool model_is_one_way(Model m) { return m == Model::OneFixed || m == Model::OneVar; }

inline bool op_allowed(Model m, WinOp op) {
    if (model_is_one_way(m))
        return op == WinOp::RightPush || op == WinOp::LeftPop;
    return true;
}

// Uniform surface over the per-language-class window structures. apply() and
// query() both count as one operation for the per-op cost maxima.
class Window {
public:
    virtual ~Window() = default;

    void apply(WinOp op, std::uint32_t symbol) {
        CostCounters before = cc_;
        do_apply(op, symbol);
        note_op(before);
    }

    bool query() {
        CostCounters before = cc_;
        bool r = do_query();
        note_op(before);
        return r;
    }

    virtual std::size_t length() const = 0;

    const CostCounters& totals() const { return cc_; }
    const CostCounters& op_maxima() const { return max_; }
    std::uint64_t max_work_units() const { return max_work_; }
    void reset_maxima() {
        max_ = CostCounters{};
        max_work_ = 0;
    }

protected:
    virtual void do_apply(WinOp, std::uint32_t) = 0;
    virtual bool do_query() = 0;

    // per-class scalar combining the counters into one work figure
    virtual std::uint64_t work_metric(const CostCounters& delta) const {
        return delta.monoid_compositions;
    }

    CostCounters cc_;

private:
    void note_op(const CostCounters& before) {
        CostCounters delta = cc_ - before;
        max_.max_with(delta);
        std::uint64_t w = work_metric(delta);
        if (w > max_work_) max_work_ = w;
    }

    CostCounters max_;
    std::uint64_t max_work_ = 0;
};

} // namespace slwin
