#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "lsr/instruction.hpp"

namespace lsr {

/// Instruction dependency DAG with a ready queue. Edges connect consecutive
/// instructions per qubit (transitive reduction), so construction is O(m).
class DependencyGraph {
public:
    /// height_key, when given, is evaluated once when an instruction becomes
    /// ready and frozen as its priority. Without it the queue orders by index.
    static DependencyGraph build(const InstructionList& instrs,
                                 std::function<uint64_t(int)> height_key = {});

    bool empty() const { return executed_count_ == size_t(m_); }
    int size() const { return m_; }

    /// Indices of ready, unexecuted instructions in ascending index order.
    std::vector<int> executable_indices() const;

    /// Removes and returns the ready index with minimum (key, index).
    int pop_min_height();

    /// Marks i executed; children whose last parent this was become ready.
    void mark_executed(int i);

    /// Total ready-queue pushes + pops so far (cost accounting).
    size_t queue_operations() const { return queue_ops_; }

private:
    void push_ready(int i);

    int m_ = 0;
    std::vector<std::vector<int>> children_;
    std::vector<int> unexecuted_parent_count_;
    std::vector<bool> executed_;
    std::vector<bool> in_ready_;
    std::vector<uint64_t> key_of_;
    std::set<std::pair<uint64_t, int>> ready_;
    std::function<uint64_t(int)> height_key_;
    size_t executed_count_ = 0;
    size_t queue_ops_ = 0;
};

}  // namespace lsr
