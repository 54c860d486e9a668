#pragma once

#include <utility>

#include "augtree/graph.hpp"
#include "augtree/lists.hpp"
#include "augtree/types.hpp"

namespace augtree {

/// Bipartite graph whose adjacent lists share at least two colors: one side
/// takes its largest color, the other its smallest.
Coloring two_common_color(const Graph& g, const ListAssignment& lists);

/// Colors g from k-lists whose union U satisfies |U| <= floor(j(k-1)/(j-1)),
/// given a proper j-coloring f with colors in [j].
Coloring smallcup_color(const Graph& g, const Coloring& f, int j, const ListAssignment& lists);

/// Largest union size for which smallcup_color always succeeds.
int smallcup_bound(int j, int k);

/// Complete j-partite graph with one vertex per k-subset of a universe of
/// smallcup_bound(j,k)+1 colors in every part; not colorable from its lists.
std::pair<Graph, ListAssignment> smallcup_sharp(int j, int k);

}  // namespace augtree
