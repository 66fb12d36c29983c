#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tamarkin/core/error.hpp"
#include "tamarkin/core/rat.hpp"

namespace tamarkin::morse {

struct CriticalPoint {
    std::string id;
    int index = 0;
    Rat value;
};

/// Critical points and the flow connections between them. A connection (p, q)
/// runs from p of index k+1 down to q of index k.
class MorseGraph {
public:
    MorseGraph() = default;
    MorseGraph(std::vector<CriticalPoint> points, std::vector<std::pair<std::string, std::string>> connections)
        : points_(std::move(points)), connections_(std::move(connections)) {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (!points_[i].value.is_finite()) throw structure_error("critical point '" + points_[i].id + "' has an infinite value");
            if (!by_id_.emplace(points_[i].id, i).second) throw structure_error("duplicate critical point '" + points_[i].id + "'");
        }
        for (const auto& [p, q] : connections_) {
            const CriticalPoint& a = point(p);
            const CriticalPoint& b = point(q);
            if (a.index != b.index + 1)
                throw structure_error("connection " + p + " -> " + q + " needs index difference exactly 1");
        }
    }

    const std::vector<CriticalPoint>& points() const { return points_; }
    const std::vector<std::pair<std::string, std::string>>& connections() const { return connections_; }

    const CriticalPoint& point(const std::string& id) const {
        auto it = by_id_.find(id);
        if (it == by_id_.end()) throw structure_error("unknown critical point '" + id + "'");
        return points_[it->second];
    }

    MorseGraph shifted(const Rat& c) const {
        auto pts = points_;
        for (CriticalPoint& p : pts) p.value += c;
        return MorseGraph(pts, connections_);
    }

private:
    std::vector<CriticalPoint> points_;
    std::vector<std::pair<std::string, std::string>> connections_;
    std::map<std::string, std::size_t> by_id_;
};

/// max over p of min over q connected to p of |f(p) - f(q)|.
inline Rat morse_energy_estimate(const MorseGraph& g) {
    std::map<std::string, Rat> nearest;
    for (const auto& [p, q] : g.connections()) {
        Rat gap = abs(g.point(p).value - g.point(q).value);
        auto it = nearest.find(p);
        if (it == nearest.end())
            nearest.emplace(p, gap);
        else
            it->second = min(it->second, gap);
    }
    if (nearest.empty()) throw undefined_error("the estimate needs at least one connected pair");
    Rat best = nearest.begin()->second;
    for (const auto& [p, gap] : nearest) best = max(best, gap);
    return best;
}

}  // namespace tamarkin::morse
