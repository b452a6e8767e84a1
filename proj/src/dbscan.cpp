#include <deque>

#include "laughtrack/context_graph.hpp"

namespace laughtrack::graph {

std::vector<int> dbscan(const std::vector<lexicon::Vector>& points, double eps, int min_pts) {
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> neighbours(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i == j || 1.0 - lexicon::cosine_similarity(points[i], points[j]) <= eps) neighbours[i].push_back(j);

    constexpr int kUnvisited = -2, kNoise = -1;
    std::vector<int> label(n, kUnvisited);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (label[i] != kUnvisited) continue;
        if (neighbours[i].size() < static_cast<std::size_t>(min_pts)) {
            label[i] = kNoise;
            continue;
        }
        const int id = next++;
        label[i] = id;
        std::deque<std::size_t> queue(neighbours[i].begin(), neighbours[i].end());
        while (!queue.empty()) {
            const auto p = queue.front();
            queue.pop_front();
            if (label[p] == kNoise) label[p] = id;  // border point
            if (label[p] != kUnvisited) continue;
            label[p] = id;
            if (neighbours[p].size() >= static_cast<std::size_t>(min_pts))
                queue.insert(queue.end(), neighbours[p].begin(), neighbours[p].end());
        }
    }
    for (auto& l : label)
        if (l == kUnvisited) l = kNoise;
    return label;
}

}  // namespace laughtrack::graph
