#include "augtree/lists.hpp"

#include <algorithm>
#include <string>

namespace augtree {

ListAssignment::Builder::Builder(std::size_t expected_vertices) {
    offset_.reserve(expected_vertices + 1);
}

void ListAssignment::Builder::append(std::span<const Color> list) {
    colors_.insert(colors_.end(), list.begin(), list.end());
    std::sort(colors_.end() - static_cast<std::ptrdiff_t>(list.size()), colors_.end());
    offset_.push_back(static_cast<std::int64_t>(colors_.size()));
}

void ListAssignment::Builder::append(std::initializer_list<Color> list) {
    append(std::span<const Color>(list.begin(), list.size()));
}

ListAssignment ListAssignment::Builder::finish() && {
    ListAssignment out;
    out.offset_ = std::move(offset_);
    out.colors_ = std::move(colors_);
    out.finalize();
    return out;
}

ListAssignment::ListAssignment(const std::vector<std::vector<Color>>& lists) {
    Builder b(lists.size());
    for (const auto& l : lists) b.append(l);
    *this = std::move(b).finish();
}

bool ListAssignment::contains(Vertex v, Color c) const {
    auto l = list(v);
    return std::binary_search(l.begin(), l.end(), c);
}

void ListAssignment::finalize() {
    universe_ = colors_;
    std::sort(universe_.begin(), universe_.end());
    universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
    next_ = universe_.empty() ? 1 : universe_.back() + 1;
}

ValidationReport validate_lists(const ListAssignment& lists) {
    ValidationReport report;
    std::vector<Color> all;
    for (Vertex v = 0; v < lists.vertex_count(); ++v) {
        auto l = lists.list(v);
        if (l.empty()) report.add("vertex " + std::to_string(v) + " has an empty list");
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (l[i] < 1) report.add("vertex " + std::to_string(v) + " lists a nonpositive color");
            if (i > 0 && l[i] <= l[i - 1]) {
                report.add("list of vertex " + std::to_string(v) + " is not strictly increasing");
            }
        }
        all.insert(all.end(), l.begin(), l.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    if (all != lists.universe()) report.add("universe differs from the union of the lists");
    if (!all.empty() && lists.allocator_next() <= all.back()) {
        report.add("allocator would reissue a used color");
    }
    return report;
}

}  // namespace augtree
