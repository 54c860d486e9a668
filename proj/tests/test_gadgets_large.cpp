#include <doctest.h>

#include "augtree/gadgets.hpp"
#include "augtree/verifier.hpp"

using namespace augtree;

TEST_CASE("H_3 lists draw from 5 colors and resist random choices") {
    const GadgetBundle h = build_Hk_smallunion(3, 4, aligned_provider(), 50'000'000);
    CHECK(h.vertex_count() == 12582910);
    CHECK(h.lists->universe().size() == 5);
    CHECK(h.graph.edge_count() == static_cast<std::size_t>(2 * h.vertex_count() + 1));
    CHECK_FALSE(check_orientation(h.graph, *h.orientation, 3).has_value());
    for (Vertex v = 0; v < h.vertex_count(); v += 9973) CHECK(h.lists->list(v).size() == 3);
    const TrialReport rep = run_witness_trials(h, 6, 11);
    CHECK(rep.failures == 0);
}
