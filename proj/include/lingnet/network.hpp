#pragma once

// Reply graph, vertex metrics, strength partition and list summary.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "betweenness.hpp"
#include "error.hpp"
#include "format.hpp"
#include "ingest.hpp"

namespace lingnet {

enum class Direction { information, status };

struct InteractionNetwork {
    std::vector<std::string> vertices;                              // sorted author ids
    std::map<std::pair<std::string, std::string>, long long> edges;  // (src, dst) -> reply count
    Direction direction = Direction::information;

    std::size_t index(const std::string& v) const {
        return std::size_t(std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin());
    }
    bool operator==(const InteractionNetwork&) const = default;
};

// An edge goes from the replied-to author to the responder. Self-replies add
// no edge but their author is still a vertex.
inline InteractionNetwork build_information_network(const MessageStore& store) {
    InteractionNetwork net;
    std::set<std::string> authors;
    for (const auto& m : store.messages()) {
        authors.insert(m.author);
        if (!m.in_reply_to) continue;
        const RawMessage* p = store.find(*m.in_reply_to);
        if (!p || p->author == m.author) continue;
        ++net.edges[{p->author, m.author}];
    }
    net.vertices.assign(authors.begin(), authors.end());
    return net;
}

inline InteractionNetwork invert_to_status_network(const InteractionNetwork& net) {
    if (net.direction == Direction::status) throw AlreadyInverted();
    InteractionNetwork out;
    out.vertices = net.vertices;
    out.direction = Direction::status;
    for (const auto& [e, w] : net.edges) out.edges[{e.second, e.first}] = w;
    return out;
}

inline InteractionNetwork invert(const InteractionNetwork& net) {
    InteractionNetwork out = net;
    out.edges.clear();
    for (const auto& [e, w] : net.edges) out.edges[{e.second, e.first}] = w;
    out.direction = net.direction == Direction::information ? Direction::status : Direction::information;
    return out;
}

struct VertexMetric {
    long long d = 0, d_in = 0, d_out = 0;
    long long s = 0, s_in = 0, s_out = 0;
    double bc = 0, cc = 0;
    long long tri = 0;
};

struct VertexMetrics {
    std::vector<std::string> ids;  // same order as the network's vertices
    std::vector<VertexMetric> v;

    const VertexMetric& at(const std::string& id) const {
        auto it = std::lower_bound(ids.begin(), ids.end(), id);
        if (it == ids.end() || *it != id) throw PartitionMismatch("unknown author: " + id);
        return v[std::size_t(it - ids.begin())];
    }
};

inline std::vector<std::vector<std::size_t>> adjacency(const InteractionNetwork& net) {
    std::vector<std::vector<std::size_t>> adj(net.vertices.size());
    for (const auto& [e, w] : net.edges) adj[net.index(e.first)].push_back(net.index(e.second));
    return adj;
}

inline VertexMetrics compute_vertex_metrics(const InteractionNetwork& net) {
    const std::size_t n = net.vertices.size();
    if (n == 0) throw EmptyNetwork();
    VertexMetrics m;
    m.ids = net.vertices;
    m.v.resize(n);
    std::vector<std::set<std::size_t>> und(n);
    for (const auto& [e, w] : net.edges) {
        std::size_t a = net.index(e.first), b = net.index(e.second);
        m.v[a].d_out += 1;
        m.v[b].d_in += 1;
        m.v[a].s_out += w;
        m.v[b].s_in += w;
        und[a].insert(b);
        und[b].insert(a);
    }
    auto bc = brandes_betweenness<double>(adjacency(net));
    for (std::size_t i = 0; i < n; ++i) {
        auto& x = m.v[i];
        x.d = x.d_in + x.d_out;
        x.s = x.s_in + x.s_out;
        x.bc = bc[i];
        std::vector<std::size_t> nb(und[i].begin(), und[i].end());
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b) x.tri += und[nb[a]].count(nb[b]);
        double k = double(nb.size());
        x.cc = nb.size() < 2 ? 0.0 : double(x.tri) / (k * (k - 1) / 2);
    }
    return m;
}

enum class Sector { periphery = 0, intermediary = 1, hub = 2 };

inline const char* sector_name(Sector s) {
    switch (s) {
    case Sector::hub: return "hub";
    case Sector::intermediary: return "intermediary";
    default: return "periphery";
    }
}

struct SectorPartition {
    std::vector<std::string> ranked;  // by s descending, then id
    std::map<std::string, Sector> label;
    double f_h = 0.05, f_i = 0.15, f_p = 0.80;

    Sector of(const std::string& author) const {
        auto it = label.find(author);
        if (it == label.end()) throw PartitionMismatch("author not in partition: " + author);
        return it->second;
    }
    std::size_t count(Sector s) const {
        std::size_t n = 0;
        for (const auto& [a, l] : label) n += l == s;
        return n;
    }
};

// ceil with a little slack so that 0.3 * 10 lands on 3, not 4.
inline std::size_t sector_size(double f, std::size_t n) {
    return std::size_t(std::ceil(f * double(n) - 1e-9));
}

inline SectorPartition partition_by_strength(const VertexMetrics& m, double f_h = 0.05, double f_i = 0.15) {
    if (!(f_h > 0) || !(f_i >= 0) || !(f_h + f_i < 1))
        throw DegenerateNetwork("sector fractions must satisfy 0 < f_h, 0 <= f_i, f_h + f_i < 1");
    const std::size_t n = m.ids.size();
    if (n < 3) throw DegenerateNetwork("need at least 3 vertices for three sectors, got " + std::to_string(n));
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (m.v[a].s != m.v[b].s) return m.v[a].s > m.v[b].s;
        return m.ids[a] < m.ids[b];
    });
    std::size_t nh = std::min(sector_size(f_h, n), n);
    std::size_t ni = std::min(sector_size(f_i, n), n - nh);
    SectorPartition p;
    p.f_h = f_h;
    p.f_i = f_i;
    p.f_p = 1 - f_h - f_i;
    for (std::size_t r = 0; r < n; ++r) {
        const auto& id = m.ids[idx[r]];
        p.ranked.push_back(id);
        p.label[id] = r < nh ? Sector::hub : (r < nh + ni ? Sector::intermediary : Sector::periphery);
    }
    return p;
}

inline std::size_t count_threads(const MessageStore& store) {
    std::size_t n = 0;
    for (const auto& m : store.messages()) n += store.is_root(m);
    return n;
}

struct ListSummary {
    std::size_t N = 0, M = 0, threads = 0, dangling = 0;
    std::int64_t first = 0, last = 0;
    double years = 0;
    // indexed by Sector
    std::size_t n_by[3] = {0, 0, 0}, m_by[3] = {0, 0, 0}, t_by[3] = {0, 0, 0};

    Measure n_pct(Sector s) const { return Measure::pct(double(n_by[int(s)]), double(N)); }
    Measure m_pct(Sector s) const { return Measure::pct(double(m_by[int(s)]), double(M)); }
    Measure t_pct(Sector s) const { return Measure::pct(double(t_by[int(s)]), double(threads)); }
};

inline ListSummary list_summary(const MessageStore& store, const SectorPartition& p) {
    ListSummary s;
    std::set<std::string> authors;
    bool any = false;
    for (const auto& m : store.messages()) {
        Sector sec = p.of(m.author);
        authors.insert(m.author);
        ++s.M;
        ++s.m_by[int(sec)];
        if (store.is_root(m)) {
            ++s.threads;
            ++s.t_by[int(sec)];
        }
        if (!any || m.sent_at < s.first) s.first = m.sent_at;
        if (!any || m.sent_at > s.last) s.last = m.sent_at;
        any = true;
    }
    s.N = authors.size();
    for (const auto& a : authors) ++s.n_by[int(p.of(a))];
    s.dangling = store.dangling_refs().size();
    s.years = double(s.last - s.first) / (365.25 * 86400);
    return s;
}

}  // namespace lingnet
