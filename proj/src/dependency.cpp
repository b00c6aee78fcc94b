#include "lsr/dependency.hpp"

#include <unordered_map>

#include "lsr/errors.hpp"

namespace lsr {

DependencyGraph DependencyGraph::build(const InstructionList& instrs,
                                       std::function<uint64_t(int)> height_key) {
    DependencyGraph dg;
    dg.m_ = int(instrs.size());
    dg.children_.resize(dg.m_);
    dg.unexecuted_parent_count_.assign(dg.m_, 0);
    dg.executed_.assign(dg.m_, false);
    dg.in_ready_.assign(dg.m_, false);
    dg.key_of_.assign(dg.m_, 0);
    dg.height_key_ = std::move(height_key);

    std::unordered_map<std::string, int> last_touch;
    for (int i = 0; i < dg.m_; ++i) {
        int prev_parent = -1;
        for (const auto& q : instrs[i].qubits) {
            auto it = last_touch.find(q);
            if (it != last_touch.end() && it->second != prev_parent) {
                dg.children_[it->second].push_back(i);
                ++dg.unexecuted_parent_count_[i];
                prev_parent = it->second;
            }
            last_touch[q] = i;
        }
    }
    for (int i = 0; i < dg.m_; ++i)
        if (dg.unexecuted_parent_count_[i] == 0) dg.push_ready(i);
    return dg;
}

void DependencyGraph::push_ready(int i) {
    key_of_[i] = height_key_ ? height_key_(i) : 0;
    ready_.insert({key_of_[i], i});
    in_ready_[i] = true;
    ++queue_ops_;
}

std::vector<int> DependencyGraph::executable_indices() const {
    std::vector<int> out;
    out.reserve(ready_.size());
    for (const auto& [key, i] : ready_) out.push_back(i);
    std::sort(out.begin(), out.end());
    return out;
}

int DependencyGraph::pop_min_height() {
    if (ready_.empty()) throw StateError("no executable instruction");
    auto it = ready_.begin();
    int i = it->second;
    ready_.erase(it);
    in_ready_[i] = false;
    ++queue_ops_;
    return i;
}

void DependencyGraph::mark_executed(int i) {
    if (i < 0 || i >= m_) throw StateError("instruction index out of range");
    if (executed_[i]) throw StateError("instruction executed twice: " + std::to_string(i));
    if (in_ready_[i]) {
        ready_.erase({key_of_[i], i});
        in_ready_[i] = false;
        ++queue_ops_;
    }
    executed_[i] = true;
    ++executed_count_;
    for (int c : children_[i]) {
        if (--unexecuted_parent_count_[c] == 0) push_ready(c);
    }
}

}  // namespace lsr
