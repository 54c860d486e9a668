#include "augtree/verifier.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "augtree/errors.hpp"

namespace augtree {

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw PreconditionError("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num_ = num / g;
    den_ = den / g;
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
}

// ---------------------------------------------------------------------------
// Girth

namespace {

// BFS from every source over vertices with id >= source; the shortest cycle
// is found from its smallest vertex.
GirthResult girth_of(Vertex n, const Adjacency& adj) {
    GirthResult result;
    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(n, -1);
    std::vector<Vertex> parent(n, -1);
    std::vector<Vertex> seen;
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        if (best == 3) break;
        queue.assign(1, s);
        dist[s] = 0;
        seen.assign(1, s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex u = queue[head];
            if (2 * dist[u] + 1 >= best) break;
            for (Vertex w : adj.neighbors(u)) {
                if (w < s || w == parent[u]) continue;
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                    seen.push_back(w);
                } else if (dist[u] + dist[w] + 1 < best) {
                    best = dist[u] + dist[w] + 1;
                    // close the cycle through the lowest common ancestor
                    std::vector<Vertex> left, right;
                    Vertex a = u, b = w;
                    while (dist[a] > dist[b]) { left.push_back(a); a = parent[a]; }
                    while (dist[b] > dist[a]) { right.push_back(b); b = parent[b]; }
                    while (a != b) {
                        left.push_back(a);
                        right.push_back(b);
                        a = parent[a];
                        b = parent[b];
                    }
                    left.push_back(a);
                    left.insert(left.end(), right.rbegin(), right.rend());
                    result.cycle = std::move(left);
                    best = static_cast<int>(result.cycle.size());
                }
            }
        }
        for (Vertex v : seen) {
            dist[v] = -1;
            parent[v] = -1;
        }
    }
    if (best != std::numeric_limits<int>::max()) result.length = best;
    return result;
}

}  // namespace

GirthResult girth(const Graph& g) { return girth_of(g.vertex_count, Adjacency(g)); }

std::optional<int> hypergraph_girth(const Hypergraph& h) {
    std::vector<Edge> incidence;
    incidence.reserve(h.members.size());
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        for (Vertex v : h.edge(i)) incidence.push_back({v, h.vertex_count + static_cast<Vertex>(i)});
    }
    const Vertex n = h.vertex_count + static_cast<Vertex>(h.edge_count());
    const GirthResult r = girth_of(n, Adjacency(n, incidence));
    if (r.infinite()) return std::nullopt;
    return *r.length / 2;
}

// ---------------------------------------------------------------------------
// Maximum average degree

namespace {

class MaxFlow {
public:
    explicit MaxFlow(int n) : head_(n, -1), level_(n), it_(n) {}

    void add(int u, int v, std::int64_t cap, std::int64_t rev_cap = 0) {
        arcs_.push_back({v, head_[u], cap});
        head_[u] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({u, head_[v], rev_cap});
        head_[v] = static_cast<int>(arcs_.size()) - 1;
    }

    std::int64_t run(int s, int t) {
        std::int64_t flow = 0;
        while (bfs(s, t)) {
            for (std::size_t v = 0; v < head_.size(); ++v) it_[v] = head_[v];
            flow += augment(s, t);
        }
        return flow;
    }

    /// Vertices reachable from s in the residual network.
    std::vector<bool> source_side(int s) const {
        std::vector<bool> seen(head_.size(), false);
        std::vector<int> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int a = head_[u]; a >= 0; a = arcs_[a].next) {
                if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
                    seen[arcs_[a].to] = true;
                    stack.push_back(arcs_[a].to);
                }
            }
        }
        return seen;
    }

private:
    struct ArcRec {
        int to;
        int next;
        std::int64_t cap;
    };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::deque<int> q{s};
        level_[s] = 0;
        while (!q.empty()) {
            const int u = q.front();
            q.pop_front();
            for (int a = head_[u]; a >= 0; a = arcs_[a].next) {
                if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
                    level_[arcs_[a].to] = level_[u] + 1;
                    q.push_back(arcs_[a].to);
                }
            }
        }
        return level_[t] >= 0;
    }

    // Blocking flow with an explicit path stack.
    std::int64_t augment(int s, int t) {
        std::int64_t total = 0;
        std::vector<int> path;   // arc ids from s
        int u = s;
        while (true) {
            if (u == t) {
                std::int64_t push = std::numeric_limits<std::int64_t>::max();
                for (int a : path) push = std::min(push, arcs_[a].cap);
                std::size_t cut = path.size();
                for (std::size_t i = 0; i < path.size(); ++i) {
                    arcs_[path[i]].cap -= push;
                    arcs_[path[i] ^ 1].cap += push;
                    if (arcs_[path[i]].cap == 0 && cut == path.size()) cut = i;
                }
                total += push;
                path.resize(cut);
                u = path.empty() ? s : arcs_[path.back()].to;
                continue;
            }
            int& a = it_[u];
            while (a >= 0 && (arcs_[a].cap == 0 || level_[arcs_[a].to] != level_[u] + 1)) a = arcs_[a].next;
            if (a >= 0) {
                path.push_back(a);
                u = arcs_[a].to;
                continue;
            }
            // dead end: retreat
            if (u == s) break;
            level_[u] = -1;
            path.pop_back();
            u = path.empty() ? s : arcs_[path.back()].to;
        }
        return total;
    }

    std::vector<int> head_;
    std::vector<ArcRec> arcs_;
    std::vector<int> level_;
    std::vector<int> it_;
};

}  // namespace

Rational mad_exact(const Graph& g) {
    const Vertex n = g.vertex_count;
    if (n < 1) throw PreconditionError("mad needs at least one vertex");
    const auto m = static_cast<std::int64_t>(g.edges.size());
    std::vector<std::int64_t> deg(n, 0);
    for (const Edge& e : g.edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    // Dinkelbach: lambda = p/q is the edge density of the best set so far.
    std::int64_t p = m, q = n;
    while (true) {
        const std::int64_t gcd = std::gcd(p, q);
        p /= gcd;
        q /= gcd;
        // cut({s} + S) = 2qm - 2q|E(S)| + 2p|S|
        MaxFlow net(n + 2);
        const int s = n, t = n + 1;
        for (Vertex v = 0; v < n; ++v) {
            if (deg[v] > 0) net.add(s, v, q * deg[v]);
            net.add(v, t, 2 * p);
        }
        for (const Edge& e : g.edges) net.add(e.u, e.v, q, q);
        const std::int64_t cut = net.run(s, t);
        if (cut >= 2 * q * m) break;
        const std::vector<bool> side = net.source_side(s);
        std::int64_t size = 0, inner = 0;
        for (Vertex v = 0; v < n; ++v) size += side[v];
        for (const Edge& e : g.edges) inner += side[e.u] && side[e.v];
        if (size == 0 || inner * q <= p * size) break;
        p = inner;
        q = size;
    }
    return Rational(2 * p, q);
}

// ---------------------------------------------------------------------------
// Orientation

std::optional<std::string> check_orientation(const Graph& g, const Orientation& o, int k) {
    if (o.arcs.size() != g.edges.size()) return "orientation does not cover every edge exactly once";
    if (o.root < 0 || o.root >= g.vertex_count) return "root is out of range";
    std::vector<int> out(g.vertex_count, 0);
    std::vector<std::vector<Vertex>> succ(g.vertex_count);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const Arc& a = o.arcs[i];
        if (make_edge(a.tail, a.head) != g.edges[i]) {
            return "arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) + ") is not edge " +
                   std::to_string(i);
        }
        ++out[a.tail];
        succ[a.tail].push_back(a.head);
    }
    for (Vertex v = 0; v < g.vertex_count; ++v) {
        const int want = v == o.root ? k : k - 1;
        if (out[v] != want) {
            return std::string(v == o.root ? "root " : "vertex ") + std::to_string(v) + " has outdegree " +
                   std::to_string(out[v]) + ", expected " + std::to_string(want);
        }
    }
    std::vector<bool> seen(g.vertex_count, false);
    std::vector<Vertex> stack{o.root};
    seen[o.root] = true;
    while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        for (Vertex w : succ[u]) {
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    for (Vertex v = 0; v < g.vertex_count; ++v) {
        if (!seen[v]) return "vertex " + std::to_string(v) + " is not reachable from the root";
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// List coloring search

SearchResult list_color_search(const Graph& g, const ListAssignment& lists, std::uint64_t node_budget) {
    const Vertex n = g.vertex_count;
    if (lists.vertex_count() != n) throw PreconditionError("list assignment size differs from the graph");
    const Adjacency adj(g);
    std::vector<std::int64_t> base(n + 1, 0);
    for (Vertex v = 0; v < n; ++v) base[v + 1] = base[v] + static_cast<std::int64_t>(lists.list(v).size());
    std::vector<int> removed(base[n], 0);   // per (vertex, list position)
    std::vector<int> domain(n);
    std::set<std::pair<int, Vertex>> open;
    for (Vertex v = 0; v < n; ++v) {
        domain[v] = static_cast<int>(lists.list(v).size());
        open.insert({domain[v], v});
    }
    Coloring color(n, kUncolored);
    std::vector<std::int64_t> trail;   // removal counters bumped by assignments

    struct Frame {
        Vertex v;
        int next_pos;
        std::size_t trail_mark;
    };
    std::vector<Frame> stack;
    SearchResult result;

    auto undo_to = [&](std::size_t mark) {
        while (trail.size() > mark) {
            const std::int64_t slot = trail.back();
            trail.pop_back();
            if (--removed[slot] == 0) {
                const Vertex w = static_cast<Vertex>(std::upper_bound(base.begin(), base.end(), slot) - base.begin()) - 1;
                if (color[w] == kUncolored) open.erase({domain[w], w});
                ++domain[w];
                if (color[w] == kUncolored) open.insert({domain[w], w});
            }
        }
    };
    // Assigns c to v; false on a wipe-out (the trail still records the changes).
    auto assign = [&](Vertex v, Color c) {
        color[v] = c;
        bool ok = true;
        for (Vertex w : adj.neighbors(v)) {
            if (color[w] != kUncolored) continue;
            auto l = lists.list(w);
            auto it = std::lower_bound(l.begin(), l.end(), c);
            if (it == l.end() || *it != c) continue;
            const std::int64_t slot = base[w] + (it - l.begin());
            trail.push_back(slot);
            if (removed[slot]++ == 0) {
                open.erase({domain[w], w});
                --domain[w];
                open.insert({domain[w], w});
                if (domain[w] == 0) ok = false;
            }
        }
        return ok;
    };

    auto descend = [&]() -> bool {   // false when no vertex is left
        if (open.empty()) return false;
        const Vertex v = open.begin()->second;
        open.erase(open.begin());
        stack.push_back({v, 0, trail.size()});
        return true;
    };

    if (!descend()) {
        result.status = SearchStatus::sat;
        result.coloring = color;
        return result;
    }
    while (!stack.empty()) {
        Frame& fr = stack.back();
        const Vertex v = fr.v;
        undo_to(fr.trail_mark);
        color[v] = kUncolored;
        auto l = lists.list(v);
        int pos = fr.next_pos;
        while (pos < static_cast<int>(l.size()) && removed[base[v] + pos] > 0) ++pos;
        if (pos >= static_cast<int>(l.size())) {
            open.insert({domain[v], v});
            stack.pop_back();
            continue;
        }
        fr.next_pos = pos + 1;
        if (++result.nodes > node_budget) {
            result.status = SearchStatus::inconclusive;
            return result;
        }
        if (!assign(v, l[pos])) continue;
        if (!descend()) {
            result.status = SearchStatus::sat;
            result.coloring = color;
            for (Vertex x = 0; x < n; ++x) {
                if (!lists.contains(x, color[x])) throw Error("search produced a color outside a list");
            }
            if (check_proper(g, color)) throw Error("search produced an improper coloring");
            return result;
        }
    }
    result.status = SearchStatus::unsat;
    return result;
}

std::optional<Edge> check_proper(const Graph& g, const Coloring& f) {
    if (f.size() < static_cast<std::size_t>(g.vertex_count) ||
        std::any_of(f.begin(), f.begin() + g.vertex_count, [](Color c) { return c == kUncolored; })) {
        throw PreconditionError("coloring is partial");
    }
    for (const Edge& e : g.edges) {
        if (f[e.u] == f[e.v]) return e;
    }
    return std::nullopt;
}

std::optional<std::size_t> check_proper(const Hypergraph& h, const Coloring& f) {
    if (f.size() < static_cast<std::size_t>(h.vertex_count) ||
        std::any_of(f.begin(), f.begin() + h.vertex_count, [](Color c) { return c == kUncolored; })) {
        throw PreconditionError("coloring is partial");
    }
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        auto e = h.edge(i);
        if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return f[v] == f[e[0]]; })) return i;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Height sequence

namespace {

// ceil(2^(x/2)) for x >= 0
BigNat ceil_pow2_half(const BigNat& x) {
    if (x % 2 == 0) return checked_pow(2, x / 2);
    const BigNat whole = checked_pow(2, x);
    BigNat root;
    mpz_sqrt(root.get_mpz_t(), whole.get_mpz_t());
    return root + 1;   // 2^x is not a square for odd x
}

BigNat q_of(int g) { return ceil_pow2_half(BigNat(g / 2 - 4)); }

}  // namespace

HeightBoundSeq height_bound_seq(int g) {
    if (g < 8 || g % 2 != 0) throw ParameterError("the height sequence is defined for even g >= 8");
    HeightBoundSeq seq;
    seq.g = g;
    seq.q = q_of(g);
    seq.k.push_back(g - 1);
    for (BigNat i = 0; i < seq.q; ++i) {
        const BigNat x = seq.k.back() - g / 2 + 4;
        seq.k.push_back(ceil_pow2_half(x) + seq.k.back());
    }
    return seq;
}

int forced_cycle_girth_cap(std::uint64_t m) {
    if (m < 1) throw ParameterError("m must be positive");
    // k_q(g) for g = 8, 10, ... until it passes 2^64; it grows with g
    static const std::vector<std::pair<int, BigNat>> reach = [] {
        std::vector<std::pair<int, BigNat>> out;
        const BigNat saturated = BigNat(1) << 64;
        for (int g = 8;; g += 2) {
            const BigNat q = q_of(g);
            BigNat k = g - 1;
            for (BigNat i = 0; i < q && k < saturated; ++i) {
                const BigNat x = k - g / 2 + 4;
                k = x >= 130 ? saturated : k + ceil_pow2_half(x);
            }
            out.emplace_back(g, k);
            if (k >= saturated) return out;
        }
    }();
    const BigNat target = static_cast<unsigned long>(m);
    for (const auto& [g, k] : reach) {
        if (k >= target) return g;
    }
    return reach.back().first;
}

}  // namespace augtree
