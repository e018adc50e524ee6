#include <htasp/dl.h>

#include <htasp/error.h>

#include <algorithm>
#include <deque>

namespace htasp {

DiffConstraint negate_diff(const Term& x, const Term& y, Int k) { return DiffConstraint{y, x, -k - 1}; }

unsigned DiffGraph::vertex(const Term& x) {
    auto [it, fresh] = index_.emplace(x, static_cast<unsigned>(names_.size()));
    if (fresh) {
        names_.push_back(x);
        potential_.push_back(0);
        out_.emplace_back();
    }
    return it->second;
}

void DiffGraph::add_vertex(const Term& x) { vertex(x); }

void DiffGraph::record(bool failed, ConstraintId id) {
    trail_.push_back({failed, id});
    level_ids_.back().insert(id);
    failed_ += failed ? 1 : 0;
}

DlResult DiffGraph::assert_diff(const Term& x, const Term& y, Int k, ConstraintId id) {
    if (level_ids_.back().contains(id)) {
        throw Error("duplicate constraint id " + std::to_string(id) + " at level " + std::to_string(depth()));
    }
    const unsigned u = vertex(y);
    const unsigned v = vertex(x);

    if (u == v && k < 0) {
        record(true, id);
        return {false, {id}};
    }
    if (u == v || potential_[u] + k >= potential_[v]) {
        edges_.push_back({u, v, k, id});
        out_[u].push_back(static_cast<unsigned>(edges_.size() - 1));
        record(false, id);
        return {};
    }

    constexpr long                         none = -1, fresh_edge = -2;
    std::vector<long>                      pred(names_.size(), none);
    std::vector<std::pair<unsigned, Int>>  saved;
    std::vector<bool>                      queued(names_.size(), false);
    std::deque<unsigned>                   queue;

    auto lower = [&](unsigned w, Int p, long via) {
        saved.emplace_back(w, potential_[w]);
        potential_[w] = p;
        pred[w]       = via;
        if (!queued[w]) {
            queued[w] = true;
            queue.push_back(w);
        }
    };
    auto restore = [&] {
        for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
            potential_[it->first] = it->second;
        }
    };

    lower(v, potential_[u] + k, fresh_edge);
    while (!queue.empty()) {
        unsigned a = queue.front();
        queue.pop_front();
        queued[a] = false;
        for (unsigned ei : out_[a]) {
            const Edge& e = edges_[ei];
            if (potential_[a] + e.weight >= potential_[e.to]) {
                continue;
            }
            if (e.to == u) {
                // u -> v -> ... -> a -> u has negative weight
                std::vector<ConstraintId> cycle{e.id};
                unsigned                  w = a;
                for (std::size_t guard = 0; pred[w] != fresh_edge; ++guard) {
                    if (pred[w] == none || guard > edges_.size()) {
                        throw Error("corrupt predecessor chain");
                    }
                    const Edge& pe = edges_[static_cast<std::size_t>(pred[w])];
                    cycle.push_back(pe.id);
                    w = pe.from;
                }
                cycle.push_back(id);
                std::reverse(cycle.begin(), cycle.end());
                restore();
                record(true, id);
                return {false, std::move(cycle)};
            }
            lower(e.to, potential_[a] + e.weight, static_cast<long>(ei));
        }
    }
    edges_.push_back({u, v, k, id});
    out_[u].push_back(static_cast<unsigned>(edges_.size() - 1));
    record(false, id);
    return {};
}

DiffGraph::Level DiffGraph::push_level() {
    level_start_.push_back(trail_.size());
    level_ids_.emplace_back();
    return level_start_.size();
}

void DiffGraph::pop_level(Level level) {
    if (level == 0 || level > level_start_.size()) {
        throw Error("unknown level " + std::to_string(level));
    }
    std::size_t keep = level_start_[level - 1];
    while (trail_.size() > keep) {
        TrailEntry t = trail_.back();
        trail_.pop_back();
        if (t.failed) {
            --failed_;
        }
        else {
            const Edge& e = edges_.back();
            out_[e.from].pop_back();
            edges_.pop_back();
        }
    }
    level_start_.resize(level - 1);
    level_ids_.resize(level);
}

Valuation DiffGraph::solution() const {
    if (in_conflict()) {
        throw Error("difference constraints are in conflict");
    }
    std::vector<Int> dist(names_.size(), 0);
    for (std::size_t round = 0; round <= names_.size(); ++round) {
        bool changed = false;
        for (const auto& e : edges_) {
            if (dist[e.from] + e.weight < dist[e.to]) {
                dist[e.to] = dist[e.from] + e.weight;
                changed    = true;
            }
        }
        if (!changed) {
            break;
        }
    }
    Valuation v;
    for (std::size_t i = 0; i < names_.size(); ++i) {
        v.emplace(names_[i], dist[i]);
    }
    return v;
}

std::vector<DiffEdge> DiffGraph::edges() const {
    std::vector<DiffEdge> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) {
        out.push_back({names_[e.from], names_[e.to], e.weight, e.id});
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace htasp
