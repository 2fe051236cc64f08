#pragma once

#include <conjecturer/graph.hpp>

#include <vector>

namespace conjecturer {

/// The nine connected graphs of the built-in "figure1" dataset, ids G_1..G_9.
inline std::vector<Graph> figure1_graphs()
{
    std::vector<Edge> k44;
    for (int u = 0; u < 4; ++u)
        for (int v = 4; v < 8; ++v)
            k44.emplace_back(u, v);

    return {
        Graph("G_1", 3, {{0, 1}, {1, 2}}),                                 // path P3
        Graph("G_2", 3, {{0, 1}, {1, 2}, {0, 2}}),                         // cycle C3
        Graph("G_3", 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}),                 // cycle C4
        Graph("G_4", 4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}),         // diamond
        Graph("G_5", 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}), // K4
        Graph("G_6", 8, k44),                                              // K4,4
        Graph("G_7", 4, {{0, 1}, {0, 2}, {0, 3}}),                         // star K1,3
        Graph("G_8", 6, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}}),         // double star S(2,2)
        Graph("G_9", 6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}}), // two triangles and a bridge
    };
}

} // namespace conjecturer
