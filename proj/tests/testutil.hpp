#pragma once

#include "minorpack/io.hpp"

namespace testutil {

using minorpack::Graph;
using minorpack::Rng;

inline Graph path(int n) { return minorpack::named_graph("P" + std::to_string(n)); }
inline Graph clique(int n) { return minorpack::named_graph("K" + std::to_string(n)); }
inline Graph cycle(int n) { return minorpack::named_graph("C" + std::to_string(n)); }
inline Graph star(int leaves) { return minorpack::named_graph("S" + std::to_string(leaves)); }

inline Graph random_graph(int n, Rng& rng, uint32_t p_num = 0, uint32_t p_den = 10) {
    if (p_num == 0) p_num = 1 + rng.below(9);
    return minorpack::random_graph(n, p_num, p_den, rng);
}

inline Graph random_connected(int n, Rng& rng) {
    for (;;) {
        Graph g = random_graph(n, rng);
        if (minorpack::is_connected(g)) return g;
    }
}

}  // namespace testutil
