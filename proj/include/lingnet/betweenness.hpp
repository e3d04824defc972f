#pragma once

#include <cstddef>
#include <vector>

namespace lingnet {

// Brandes accumulation over a directed graph with unit-length edges.
// adj[v] lists out-neighbours. Returns unnormalized betweenness: the sum over
// ordered pairs (s,t), s != v != t, of sigma_st(v) / sigma_st. T may be an
// exact rational type for testing.
template <class T = double>
std::vector<T> brandes_betweenness(const std::vector<std::vector<std::size_t>>& adj) {
    const std::size_t n = adj.size();
    std::vector<T> bc(n, T(0));
    std::vector<std::vector<std::size_t>> pred(n);
    std::vector<T> sigma(n), delta(n);
    std::vector<long> dist(n);
    std::vector<std::size_t> order, queue;
    order.reserve(n);
    queue.reserve(n);

    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t v = 0; v < n; ++v) {
            pred[v].clear();
            sigma[v] = T(0);
            delta[v] = T(0);
            dist[v] = -1;
        }
        order.clear();
        queue.clear();
        sigma[s] = T(1);
        dist[s] = 0;
        queue.push_back(s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::size_t v = queue[head];
            order.push_back(v);
            for (std::size_t w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    pred[w].push_back(v);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::size_t w = *it;
            for (std::size_t v : pred[w]) delta[v] += sigma[v] / sigma[w] * (T(1) + delta[w]);
            if (w != s) bc[w] += delta[w];
        }
    }
    return bc;
}

}  // namespace lingnet
