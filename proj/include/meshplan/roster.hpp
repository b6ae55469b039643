#pragma once

#include "meshplan/types.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace meshplan {

struct NodeRecord {
    std::string id;
    std::optional<double> latitude;     // decimal degrees
    std::optional<double> longitude;    // decimal degrees
    std::optional<double> elevation_m;  // meters above datum
};

/// Ordered node list. The order is stable and defines matrix row/column
/// indexing everywhere downstream.
class NodeRoster {
public:
    NodeRoster() = default;

    explicit NodeRoster(std::vector<NodeRecord> nodes) : nodes_(std::move(nodes))
    {
        for (Index i = 0; i < size(); ++i) {
            const auto& id = nodes_[static_cast<std::size_t>(i)].id;
            if (id.empty())
                throw std::invalid_argument("roster: empty node id at index " + std::to_string(i));
            if (!index_.emplace(id, i).second)
                throw std::invalid_argument("roster: duplicate node id \"" + id + "\"");
        }
    }

    Index size() const { return static_cast<Index>(nodes_.size()); }

    const NodeRecord& operator[](Index i) const { return nodes_[static_cast<std::size_t>(i)]; }

    const std::vector<NodeRecord>& nodes() const { return nodes_; }

    std::optional<Index> index_of(const std::string& id) const
    {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::vector<NodeRecord> nodes_;
    std::unordered_map<std::string, Index> index_;
};

}  // namespace meshplan
