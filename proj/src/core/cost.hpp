#pragma once

#include <cstdint>

namespace slwin {

// Work-unit counters shared by the window structures. Counts algorithmic
// events (products computed, cells touched), never allocator internals.
// Every window instance owns one; the structures it is built from hold a
// pointer into it.
struct CostCounters {
    std::uint64_t monoid_compositions = 0; // compose() calls
    std::uint64_t entry_copies = 0;        // payloads written into ring storage
    std::uint64_t node_constructions = 0;  // tree/forest nodes created
    std::uint64_t table_entries_written = 0;
    std::uint64_t bit_writes = 0;          // marked-counter bit mutations
    std::uint64_t deque_ops = 0;           // public aggregation-deque operations
    std::uint64_t effect_applications = 0;

    CostCounters operator-(const CostCounters& o) const {
        return {monoid_compositions - o.monoid_compositions,
                entry_copies - o.entry_copies,
                node_constructions - o.node_constructions,
                table_entries_written - o.table_entries_written,
                bit_writes - o.bit_writes,
                deque_ops - o.deque_ops,
                effect_applications - o.effect_applications};
    }

    void max_with(const CostCounters& o) {
        auto up = [](std::uint64_t& a, std::uint64_t b) { if (b > a) a = b; };
        up(monoid_compositions, o.monoid_compositions);
        up(entry_copies, o.entry_copies);
        up(node_constructions, o.node_constructions);
        up(table_entries_written, o.table_entries_written);
        up(bit_writes, o.bit_writes);
        up(deque_ops, o.deque_ops);
        up(effect_applications, o.effect_applications);
    }
};

} // namespace slwin
