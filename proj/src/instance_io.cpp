#include "augtree/instance_io.hpp"

#include <charconv>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string_view>

#include "augtree/errors.hpp"

namespace augtree {

namespace {

constexpr std::size_t kValuesPerLine = 32;

// ---------------------------------------------------------------------------
// Writing

void write_ints(std::ostream& out, const char* name, const std::vector<int>& values) {
    out << "ints " << name << ' ' << values.size() << '\n';
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << values[i] << ((i + 1) % kValuesPerLine == 0 || i + 1 == values.size() ? '\n' : ' ');
    }
}

void write_tree(std::ostream& out, const AugmentedTree& t) {
    out << "tree d=" << t.params.d << " r=" << t.params.r << " g=" << t.params.girth_target
        << " reduced=" << (t.reduced ? 1 : 0) << " vertices=" << t.vertex_count() << " aug=" << t.aug_edges.size()
        << '\n';
    for (Vertex v = 1; v < t.vertex_count(); ++v) out << "t " << v << ' ' << t.parent[v] << ' ' << t.edge_color[v] << '\n';
    for (const AugEdge& e : t.aug_edges) out << "a " << e.leaf << ' ' << e.ancestor << '\n';
    out << "end tree\n";
}

void write_graph(std::ostream& out, const Graph& g) {
    out << "graph vertices=" << g.vertex_count << " edges=" << g.edge_count() << '\n';
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        out << "e " << g.edges[i].u << ' ' << g.edges[i].v << ' ' << to_string(g.tags[i]) << '\n';
    }
    out << "end graph\n";
}

void write_lists(std::ostream& out, const ListAssignment& l) {
    out << "lists vertices=" << l.vertex_count() << " next=" << l.allocator_next() << '\n';
    for (Vertex v = 0; v < l.vertex_count(); ++v) {
        out << v << ':';
        for (Color c : l.list(v)) out << ' ' << c;
        out << '\n';
    }
    out << "end lists\n";
}

void write_orientation(std::ostream& out, const Orientation& o) {
    out << "orientation root=" << o.root << " arcs=" << o.arcs.size() << '\n';
    for (const Arc& a : o.arcs) out << "o " << a.tail << ' ' << a.head << '\n';
    out << "end orientation\n";
}

void write_hypergraph(std::ostream& out, const HypergraphBundle& h) {
    const Hypergraph& hg = h.hypergraph;
    out << "hypergraph k=" << h.k << " t=" << h.t << " vertices=" << hg.vertex_count
        << " uniformity=" << hg.uniformity << " edges=" << hg.edge_count() << '\n';
    for (std::size_t i = 0; i < hg.edge_count(); ++i) {
        out << "h " << hg.origin_leaf[i];
        for (Vertex v : hg.edge(i)) out << ' ' << v;
        out << '\n';
    }
    write_tree(out, h.skeleton);
    out << "end hypergraph\n";
}

void write_bundle(std::ostream& out, const GadgetBundle& b) {
    out << "bundle kind=" << to_string(b.kind) << " k=" << b.k << " g=" << b.g << " copy_base=" << b.copy_base
        << " root_merged=" << (b.root_merged ? 1 : 0) << " twin_lists=" << static_cast<int>(b.twin_lists)
        << " table_width=" << b.copy_table_width << '\n';
    write_graph(out, b.graph);
    if (b.lists) write_lists(out, *b.lists);
    if (b.orientation) write_orientation(out, *b.orientation);
    if (b.skeleton) write_tree(out, *b.skeleton);
    std::vector<int> copy(b.origin.size()), vertex(b.origin.size());
    for (std::size_t i = 0; i < b.origin.size(); ++i) {
        copy[i] = b.origin[i].copy;
        vertex[i] = b.origin[i].vertex;
    }
    write_ints(out, "origin_copy", copy);
    write_ints(out, "origin_vertex", vertex);
    write_ints(out, "added_color", b.added_color);
    write_ints(out, "tree_label", b.tree_label);
    write_ints(out, "copy_color_offset", b.copy_color_offset);
    write_ints(out, "copy_color_table", b.copy_color_table);
    write_ints(out, "mate_slot", b.mate_slot);
    if (b.child) {
        out << "child\n";
        write_bundle(out, *b.child);
    }
    out << "end bundle\n";
}

// ---------------------------------------------------------------------------
// Reading

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) { advance(); }

    bool done() const { return eof_; }
    std::size_t line_number() const { return line_no_; }
    const std::vector<std::string_view>& tokens() const { return tokens_; }
    std::string_view head() const { return tokens_.empty() ? std::string_view{} : tokens_[0]; }
    const std::string& line() const { return line_; }

    void advance() {
        tokens_.clear();
        while (std::getline(in_, line_)) {
            ++line_no_;
            split();
            if (!tokens_.empty()) return;
        }
        eof_ = true;
        line_.clear();
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("line " + std::to_string(line_no_) + ": " + what);
    }

    void expect_head(std::string_view want) {
        if (done() || head() != want) fail("expected '" + std::string(want) + "'");
    }

    void expect_end(std::string_view block) {
        if (done() || tokens_.size() != 2 || tokens_[0] != "end" || tokens_[1] != block) {
            fail("expected 'end " + std::string(block) + "'");
        }
        advance();
    }

    template <class Int>
    Int number(std::string_view s) const {
        Int value{};
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size()) fail("bad number '" + std::string(s) + "'");
        return value;
    }

    template <class Int>
    Int token(std::size_t i) const {
        if (i >= tokens_.size()) fail("missing field");
        return number<Int>(tokens_[i]);
    }

    void arity(std::size_t n) const {
        if (tokens_.size() != n) fail("expected " + std::to_string(n) + " fields");
    }

    // key=value fields after the head token
    template <class Int>
    Int attr(std::string_view key) const {
        return number<Int>(attr_text(key));
    }

    std::string_view attr_text(std::string_view key) const {
        for (std::size_t i = 1; i < tokens_.size(); ++i) {
            const std::string_view t = tokens_[i];
            if (t.size() > key.size() && t.substr(0, key.size()) == key && t[key.size()] == '=') {
                return t.substr(key.size() + 1);
            }
        }
        fail("missing attribute '" + std::string(key) + "'");
    }

private:
    void split() {
        std::string_view s(line_);
        std::size_t i = 0;
        while (i < s.size()) {
            while (i < s.size() && s[i] == ' ') ++i;
            std::size_t j = i;
            while (j < s.size() && s[j] != ' ') ++j;
            if (j > i) tokens_.push_back(s.substr(i, j - i));
            i = j;
        }
    }

    std::istream& in_;
    std::string line_;
    std::vector<std::string_view> tokens_;
    std::size_t line_no_ = 0;
    bool eof_ = false;
};

std::vector<int> read_ints(Reader& r, std::string_view name) {
    r.expect_head("ints");
    r.arity(3);
    if (r.tokens()[1] != name) r.fail("expected ints block '" + std::string(name) + "'");
    const auto count = r.token<std::size_t>(2);
    r.advance();
    std::vector<int> values;
    values.reserve(count);
    while (values.size() < count) {
        if (r.done()) r.fail("ints block '" + std::string(name) + "' is truncated");
        for (std::string_view t : r.tokens()) values.push_back(r.number<int>(t));
        r.advance();
    }
    if (values.size() != count) r.fail("ints block '" + std::string(name) + "' has too many values");
    return values;
}

AugmentedTree read_tree(Reader& r) {
    r.expect_head("tree");
    TreeParams params{r.attr<int>("d"), r.attr<int>("r"), r.attr<int>("g")};
    const bool reduced = r.attr<int>("reduced") != 0;
    const auto n = r.attr<Vertex>("vertices");
    const auto m = r.attr<std::size_t>("aug");
    if (n < 1) r.fail("a tree needs a root");
    r.advance();
    std::vector<Vertex> parent(n, 0);
    std::vector<int> color(n, 0);
    for (Vertex v = 1; v < n; ++v) {
        r.expect_head("t");
        r.arity(4);
        if (r.token<Vertex>(1) != v) r.fail("tree vertices must be listed in ascending order");
        parent[v] = r.token<Vertex>(2);
        color[v] = r.token<int>(3);
        r.advance();
    }
    std::vector<AugEdge> aug(m);
    for (auto& e : aug) {
        r.expect_head("a");
        r.arity(3);
        e = {r.token<Vertex>(1), r.token<Vertex>(2)};
        r.advance();
    }
    r.expect_end("tree");
    try {
        return assemble_tree(params, reduced, std::move(parent), std::move(color), std::move(aug));
    } catch (const PreconditionError& e) {
        r.fail(e.what());
    }
}

EdgeTag parse_tag(const Reader& r, std::string_view s) {
    for (EdgeTag t : {EdgeTag::tree, EdgeTag::aug, EdgeTag::gadget}) {
        if (s == to_string(t)) return t;
    }
    r.fail("unknown edge tag '" + std::string(s) + "'");
}

Graph read_graph(Reader& r) {
    r.expect_head("graph");
    Graph g;
    g.vertex_count = r.attr<Vertex>("vertices");
    const auto m = r.attr<std::size_t>("edges");
    r.advance();
    g.edges.reserve(m);
    g.tags.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        r.expect_head("e");
        r.arity(4);
        g.edges.push_back({r.token<Vertex>(1), r.token<Vertex>(2)});
        g.tags.push_back(parse_tag(r, r.tokens()[3]));
        r.advance();
    }
    r.expect_end("graph");
    return g;
}

ListAssignment read_lists(Reader& r) {
    r.expect_head("lists");
    const auto n = r.attr<Vertex>("vertices");
    const auto next = r.attr<Color>("next");
    r.advance();
    ListAssignment::Builder b(n);
    std::vector<Color> buf;
    for (Vertex v = 0; v < n; ++v) {
        if (r.done() || r.head() != std::to_string(v) + ":") r.fail("expected list of vertex " + std::to_string(v));
        buf.clear();
        for (std::size_t i = 1; i < r.tokens().size(); ++i) buf.push_back(r.token<Color>(i));
        b.append(buf);
        r.advance();
    }
    r.expect_end("lists");
    ListAssignment l = std::move(b).finish();
    if (next < l.allocator_next()) r.fail("allocator position below a used color");
    while (l.allocator_next() < next) l.allocate();
    return l;
}

Orientation read_orientation(Reader& r) {
    r.expect_head("orientation");
    Orientation o;
    o.root = r.attr<Vertex>("root");
    o.arcs.resize(r.attr<std::size_t>("arcs"));
    r.advance();
    for (Arc& a : o.arcs) {
        r.expect_head("o");
        r.arity(3);
        a = {r.token<Vertex>(1), r.token<Vertex>(2)};
        r.advance();
    }
    r.expect_end("orientation");
    return o;
}

HypergraphBundle read_hypergraph(Reader& r) {
    r.expect_head("hypergraph");
    HypergraphBundle h;
    h.k = r.attr<int>("k");
    h.t = r.attr<int>("t");
    Hypergraph& hg = h.hypergraph;
    hg.vertex_count = r.attr<Vertex>("vertices");
    hg.uniformity = r.attr<int>("uniformity");
    const auto m = r.attr<std::size_t>("edges");
    r.advance();
    for (std::size_t i = 0; i < m; ++i) {
        r.expect_head("h");
        r.arity(2 + static_cast<std::size_t>(hg.uniformity));
        hg.origin_leaf.push_back(r.token<Vertex>(1));
        for (int x = 0; x < hg.uniformity; ++x) hg.members.push_back(r.token<Vertex>(2 + x));
        r.advance();
    }
    h.skeleton = read_tree(r);
    r.expect_end("hypergraph");
    return h;
}

GadgetKind parse_kind(const Reader& r, std::string_view s) {
    for (GadgetKind k : {GadgetKind::odd_cycle, GadgetKind::twin_cycles, GadgetKind::sparse, GadgetKind::choosable,
                         GadgetKind::listcap, GadgetKind::small_union}) {
        if (s == to_string(k)) return k;
    }
    r.fail("unknown gadget kind '" + std::string(s) + "'");
}

GadgetBundle read_bundle(Reader& r) {
    r.expect_head("bundle");
    GadgetBundle b;
    b.kind = parse_kind(r, r.attr_text("kind"));
    b.k = r.attr<int>("k");
    b.g = r.attr<int>("g");
    b.copy_base = r.attr<Vertex>("copy_base");
    b.root_merged = r.attr<int>("root_merged") != 0;
    const int twin = r.attr<int>("twin_lists");
    if (twin < 0 || twin > 2) r.fail("bad twin_lists value");
    b.twin_lists = static_cast<TwinLists>(twin);
    b.copy_table_width = r.attr<int>("table_width");
    r.advance();
    b.graph = read_graph(r);
    if (r.head() == "lists") b.lists = read_lists(r);
    if (r.head() == "orientation") b.orientation = read_orientation(r);
    if (r.head() == "tree") b.skeleton = read_tree(r);
    const std::vector<int> copy = read_ints(r, "origin_copy");
    const std::vector<int> vertex = read_ints(r, "origin_vertex");
    if (copy.size() != vertex.size()) r.fail("origin blocks differ in length");
    b.origin.resize(copy.size());
    for (std::size_t i = 0; i < copy.size(); ++i) b.origin[i] = {copy[i], vertex[i]};
    b.added_color = read_ints(r, "added_color");
    b.tree_label = read_ints(r, "tree_label");
    b.copy_color_offset = read_ints(r, "copy_color_offset");
    b.copy_color_table = read_ints(r, "copy_color_table");
    b.mate_slot = read_ints(r, "mate_slot");
    if (r.head() == "child") {
        r.advance();
        b.child = std::make_shared<const GadgetBundle>(read_bundle(r));
    }
    r.expect_end("bundle");
    return b;
}

}  // namespace

void write_instance(std::ostream& out, const InstanceFile& file) {
    out << "augtree-instance " << kInstanceFormatVersion << '\n';
    out << "construction " << file.construction << '\n';
    out << "params";
    for (const auto& [k, v] : file.params) out << ' ' << k << '=' << v;
    out << '\n';
    out << "seed " << file.seed << '\n';
    out << "meta " << file.meta.dump() << '\n';
    if (file.tree) write_tree(out, *file.tree);
    if (file.graph) write_graph(out, *file.graph);
    if (file.lists) write_lists(out, *file.lists);
    if (file.orientation) write_orientation(out, *file.orientation);
    if (file.hypergraph) write_hypergraph(out, *file.hypergraph);
    if (file.bundle) write_bundle(out, *file.bundle);
    out << "end\n";
}

std::string serialize(const InstanceFile& file) {
    std::ostringstream out;
    write_instance(out, file);
    return out.str();
}

InstanceFile read_instance(std::istream& in) {
    Reader r(in);
    InstanceFile file;
    r.expect_head("augtree-instance");
    r.arity(2);
    if (r.token<int>(1) != kInstanceFormatVersion) r.fail("unsupported format version");
    r.advance();
    r.expect_head("construction");
    r.arity(2);
    file.construction = std::string(r.tokens()[1]);
    r.advance();
    r.expect_head("params");
    for (std::size_t i = 1; i < r.tokens().size(); ++i) {
        const std::string_view t = r.tokens()[i];
        const auto eq = t.find('=');
        if (eq == std::string_view::npos || eq == 0) r.fail("parameters are written as key=value");
        file.params.emplace(std::string(t.substr(0, eq)), std::string(t.substr(eq + 1)));
    }
    r.advance();
    r.expect_head("seed");
    r.arity(2);
    file.seed = r.token<std::uint64_t>(1);
    r.advance();
    r.expect_head("meta");
    {
        const std::string& line = r.line();
        const auto pos = line.find("meta") + 4;
        try {
            file.meta = nlohmann::json::parse(line.substr(pos));
        } catch (const nlohmann::json::exception& e) {
            r.fail(std::string("bad metadata: ") + e.what());
        }
    }
    r.advance();
    if (r.head() == "tree") file.tree = read_tree(r);
    if (r.head() == "graph") file.graph = read_graph(r);
    if (r.head() == "lists") file.lists = read_lists(r);
    if (r.head() == "orientation") file.orientation = read_orientation(r);
    if (r.head() == "hypergraph") file.hypergraph = read_hypergraph(r);
    if (r.head() == "bundle") file.bundle = read_bundle(r);
    if (r.done() || r.tokens().size() != 1 || r.head() != "end") r.fail("expected 'end'");
    r.advance();
    if (!r.done()) r.fail("trailing content after 'end'");
    return file;
}

InstanceFile parse_instance(const std::string& text) {
    std::istringstream in(text);
    return read_instance(in);
}

std::optional<Graph> instance_graph(const InstanceFile& file) {
    if (file.bundle) return file.bundle->graph;
    if (file.graph) return file.graph;
    if (file.tree) return flatten(*file.tree);
    if (file.hypergraph && file.hypergraph->hypergraph.uniformity == 2) return as_simple_graph(file.hypergraph->hypergraph);
    return std::nullopt;
}

const ListAssignment* instance_lists(const InstanceFile& file) {
    if (file.bundle && file.bundle->lists) return &*file.bundle->lists;
    return file.lists ? &*file.lists : nullptr;
}

const Orientation* instance_orientation(const InstanceFile& file) {
    if (file.bundle && file.bundle->orientation) return &*file.bundle->orientation;
    return file.orientation ? &*file.orientation : nullptr;
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.vertex_count << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges) out << e.u << ' ' << e.v << '\n';
}

void write_dimacs(std::ostream& out, const Graph& g, const ListAssignment* lists) {
    out << "p edge " << g.vertex_count << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
    if (!lists) return;
    for (Vertex v = 0; v < lists->vertex_count(); ++v) {
        out << "l " << v + 1;
        for (Color c : lists->list(v)) out << ' ' << c;
        out << '\n';
    }
}

}  // namespace augtree
