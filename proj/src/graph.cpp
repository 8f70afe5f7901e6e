#include "rgk/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace rgk {

namespace {

// Union-find over strings, small scale.
struct UF {
    std::map<std::string, std::string> parent;
    void add(const std::string& x) { parent.emplace(x, x); }
    std::string find(const std::string& x) {
        std::string r = x;
        while (parent[r] != r) r = parent[r];
        return r;
    }
    // Returns false if already joined.
    bool join(const std::string& a, const std::string& b) {
        auto ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent[ra] = rb;
        return true;
    }
};

}  // namespace

Graph::Graph(std::set<std::string> vertices, std::vector<Edge> edges)
    : verts_(std::move(vertices)), edges_(std::move(edges)) {
    auto errs = diagnose(verts_, edges_);
    if (!errs.empty()) throw std::invalid_argument("invalid graph: " + errs.front());
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < edges_.size(); ++i) by_id_[edges_[i].id] = i;
}

std::vector<std::string> Graph::diagnose(const std::set<std::string>& vertices,
                                         const std::vector<Edge>& edges) {
    std::vector<std::string> errs;
    std::set<std::string> ids;
    for (const Edge& e : edges) {
        if (!ids.insert(e.id).second) errs.push_back("duplicate edge id '" + e.id + "'");
        if (e.end[0] && e.end[1] && *e.end[0] == *e.end[1])
            errs.push_back("edge '" + e.id + "' is a loop at '" + *e.end[0] +
                           "' (subdivide it with a fresh bivalent vertex)");
        if (!(e.lo < e.hi))
            errs.push_back("edge '" + e.id + "' has a degenerate coordinate interval");
        for (int s = 0; s < 2; ++s)
            if (e.end[s] && !vertices.count(*e.end[s]))
                errs.push_back("edge '" + e.id + "' references unknown vertex '" + *e.end[s] + "'");
    }
    return errs;
}

const Edge& Graph::edge(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw std::invalid_argument("unknown edge '" + id + "'");
    return edges_[it->second];
}

bool Graph::has_edge(const std::string& id) const { return by_id_.count(id) != 0; }

std::size_t Graph::degree(const std::string& v) const { return half_edges_at(v).size(); }

std::vector<HalfEdge> Graph::half_edges_at(const std::string& v) const {
    std::vector<HalfEdge> out;
    for (const Edge& e : edges_)
        for (int s = 0; s < 2; ++s)
            if (e.end[s] && *e.end[s] == v) out.push_back({e.id, s});
    return out;
}

std::vector<std::string> Graph::incident(const std::string& v) const {
    std::vector<std::string> out;
    for (const HalfEdge& h : half_edges_at(v)) out.push_back(h.edge);
    return out;
}

std::vector<std::set<std::string>> Graph::components() const {
    UF uf;
    for (const auto& v : verts_) uf.add(v);
    for (const Edge& e : edges_)
        if (e.compact()) uf.join(*e.end[0], *e.end[1]);
    std::map<std::string, std::set<std::string>> groups;
    for (const auto& v : verts_) groups[uf.find(v)].insert(v);
    std::vector<std::set<std::string>> out;
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    return out;
}

bool Graph::connected() const {
    std::size_t iso = 0;
    for (const Edge& e : edges_)
        if (e.isolated()) ++iso;
    std::size_t comps = components().size() + iso;
    return comps <= 1;
}

bool Graph::acyclic() const {
    UF uf;
    for (const auto& v : verts_) uf.add(v);
    for (const Edge& e : edges_)
        if (e.compact() && !uf.join(*e.end[0], *e.end[1])) return false;
    return true;
}

bool Graph::compact() const {
    for (const Edge& e : edges_)
        if (!e.compact()) return false;
    return true;
}

Graph Graph::star(const std::string& v) const {
    if (!verts_.count(v)) throw std::invalid_argument("star: unknown vertex '" + v + "'");
    std::vector<Edge> es;
    for (const Edge& e : edges_) {
        Edge cut = e;
        bool touches = false;
        for (int s = 0; s < 2; ++s) {
            if (e.end[s] && *e.end[s] == v)
                touches = true;
            else
                cut.end[s].reset();
        }
        if (touches) es.push_back(cut);
    }
    return Graph({v}, es);
}

Graph Graph::subdivide(const std::string& edge_id, const std::string& new_vertex,
                       const std::string& id_a, const std::string& id_b) const {
    if (verts_.count(new_vertex)) throw std::invalid_argument("subdivide: vertex exists");
    const Edge& e = edge(edge_id);
    Rat mid = (e.lo + e.hi) / 2;
    Edge a{id_a, {e.end[0], new_vertex}, e.lo, mid};
    Edge b{id_b, {new_vertex, e.end[1]}, mid, e.hi};
    std::vector<Edge> es;
    for (const Edge& x : edges_)
        if (x.id != edge_id) es.push_back(x);
    es.push_back(a);
    es.push_back(b);
    auto vs = verts_;
    vs.insert(new_vertex);
    return Graph(vs, es);
}

// --- Morphisms ---------------------------------------------------------------

GraphMorphism GraphMorphism::identity(const Graph& g) {
    GraphMorphism m{g, g, {}, {}};
    for (const auto& v : g.vertices()) m.vertex_map[v] = v;
    for (const Edge& e : g.edges()) m.edge_action[e.id] = EdgeAction{false, e.id, 1, 0};
    return m;
}

std::vector<std::string> GraphMorphism::diagnose() const {
    std::vector<std::string> errs;
    for (const auto& v : source.vertices()) {
        auto it = vertex_map.find(v);
        if (it == vertex_map.end()) {
            errs.push_back("vertex '" + v + "' has no image");
            continue;
        }
        if (!target.vertices().count(it->second))
            errs.push_back("vertex '" + v + "' maps outside the target");
    }
    for (const Edge& e : source.edges()) {
        auto it = edge_action.find(e.id);
        if (it == edge_action.end()) {
            errs.push_back("edge '" + e.id + "' has no action");
            continue;
        }
        const EdgeAction& act = it->second;
        if (act.collapse) {
            if (!target.vertices().count(act.target)) {
                errs.push_back("edge '" + e.id + "' collapses to unknown vertex");
                continue;
            }
            if (e.isolated()) errs.push_back("edge '" + e.id + "' is isolated and cannot collapse");
            for (int s = 0; s < 2; ++s)
                if (e.end[s] && vertex_map.at(*e.end[s]) != act.target)
                    errs.push_back("edge '" + e.id + "' collapses away from its endpoints' image");
            continue;
        }
        if (!target.has_edge(act.target)) {
            errs.push_back("edge '" + e.id + "' maps to unknown edge '" + act.target + "'");
            continue;
        }
        const Edge& f = target.edge(act.target);
        if (act.a == 0) {
            errs.push_back("edge '" + e.id + "' has a = 0");
            continue;
        }
        Rat im_lo = act.a * e.lo + act.b, im_hi = act.a * e.hi + act.b;
        if (act.a > 0 ? !(im_lo == f.lo && im_hi == f.hi) : !(im_lo == f.hi && im_hi == f.lo))
            errs.push_back("edge '" + e.id + "' affine data misses the target interval");
        for (int s = 0; s < 2; ++s) {
            if (!e.end[s]) continue;
            int t = act.a > 0 ? s : 1 - s;
            if (!f.end[t])
                errs.push_back("edge '" + e.id + "' sends a vertex end to a free end");
            else if (vertex_map.at(*e.end[s]) != *f.end[t])
                errs.push_back("edge '" + e.id + "' endpoint image disagrees with vertex map");
        }
    }
    return errs;
}

HalfEdge GraphMorphism::map_half_edge(const HalfEdge& h) const {
    const EdgeAction& act = edge_action.at(h.edge);
    if (act.collapse) throw std::invalid_argument("map_half_edge: edge is collapsed");
    return {act.target, act.a > 0 ? h.slot : 1 - h.slot};
}

GraphMorphism compose(const GraphMorphism& g, const GraphMorphism& f) {
    if (!(f.target == g.source)) throw std::invalid_argument("compose: interface mismatch");
    GraphMorphism out{f.source, g.target, {}, {}};
    for (const auto& [v, w] : f.vertex_map) out.vertex_map[v] = g.vertex_map.at(w);
    for (const auto& [e, act] : f.edge_action) {
        if (act.collapse) {
            out.edge_action[e] = EdgeAction{true, g.vertex_map.at(act.target)};
            continue;
        }
        const EdgeAction& act2 = g.edge_action.at(act.target);
        if (act2.collapse)
            out.edge_action[e] = EdgeAction{true, act2.target};
        else
            out.edge_action[e] =
                EdgeAction{false, act2.target, act2.a * act.a, act2.a * act.b + act2.b};
    }
    return out;
}

// --- Open subgraphs ----------------------------------------------------------

OpenSubgraph OpenSubgraph::full(const Graph& g) {
    OpenSubgraph o;
    o.vertices = g.vertices();
    for (const Edge& e : g.edges())
        o.edge_parts[e.id] = {e.end[0].has_value(), e.end[1].has_value()};
    return o;
}

OpenSubgraph OpenSubgraph::star_of(const Graph& g, const std::string& v) {
    if (!g.vertices().count(v)) throw std::invalid_argument("star_of: unknown vertex");
    OpenSubgraph o;
    o.vertices = {v};
    for (const Edge& e : g.edges()) {
        bool a0 = e.end[0] && *e.end[0] == v;
        bool a1 = e.end[1] && *e.end[1] == v;
        if (a0 || a1) o.edge_parts[e.id] = {a0, a1};
    }
    return o;
}

std::vector<std::string> OpenSubgraph::diagnose(const Graph& g) const {
    std::vector<std::string> errs;
    for (const auto& v : vertices)
        if (!g.vertices().count(v)) errs.push_back("open subgraph has unknown vertex '" + v + "'");
    for (const auto& [id, part] : edge_parts) {
        if (!g.has_edge(id)) {
            errs.push_back("open subgraph has unknown edge '" + id + "'");
            continue;
        }
        const Edge& e = g.edge(id);
        for (int s = 0; s < 2; ++s) {
            bool keep = s == 0 ? part.first : part.second;
            if (keep && (!e.end[s] || !vertices.count(*e.end[s])))
                errs.push_back("edge '" + id + "' keeps an attachment at a missing vertex");
        }
    }
    for (const auto& v : vertices)
        for (const HalfEdge& h : g.half_edges_at(v)) {
            auto it = edge_parts.find(h.edge);
            bool keep = it != edge_parts.end() &&
                        (h.slot == 0 ? it->second.first : it->second.second);
            if (!keep)
                errs.push_back("not open: vertex '" + v + "' misses the germ of edge '" + h.edge + "'");
        }
    return errs;
}

Graph OpenSubgraph::realize(const Graph& g) const {
    std::vector<Edge> es;
    for (const auto& [id, part] : edge_parts) {
        Edge e = g.edge(id);
        if (!part.first) e.end[0].reset();
        if (!part.second) e.end[1].reset();
        es.push_back(e);
    }
    return Graph(vertices, es);
}

OpenSubgraph OpenSubgraph::intersect(const OpenSubgraph& o) const {
    OpenSubgraph out;
    for (const auto& v : vertices)
        if (o.vertices.count(v)) out.vertices.insert(v);
    for (const auto& [id, part] : edge_parts) {
        auto it = o.edge_parts.find(id);
        if (it == o.edge_parts.end()) continue;
        out.edge_parts[id] = {part.first && it->second.first, part.second && it->second.second};
    }
    return out;
}

bool OpenSubgraph::contains(const OpenSubgraph& o) const {
    for (const auto& v : o.vertices)
        if (!vertices.count(v)) return false;
    for (const auto& [id, part] : o.edge_parts) {
        auto it = edge_parts.find(id);
        if (it == edge_parts.end()) return false;
        if ((part.first && !it->second.first) || (part.second && !it->second.second)) return false;
    }
    return true;
}

GraphMorphism OpenSubgraph::inclusion(const Graph& g) const {
    GraphMorphism m{realize(g), g, {}, {}};
    for (const auto& v : vertices) m.vertex_map[v] = v;
    for (const auto& [id, part] : edge_parts) m.edge_action[id] = EdgeAction{false, id, 1, 0};
    return m;
}

OpenSubgraph preimage(const GraphMorphism& f, const OpenSubgraph& v) {
    OpenSubgraph out;
    for (const auto& [u, w] : f.vertex_map)
        if (v.vertices.count(w)) out.vertices.insert(u);
    for (const Edge& e : f.source.edges()) {
        const EdgeAction& act = f.edge_action.at(e.id);
        if (act.collapse) {
            if (v.vertices.count(act.target))
                out.edge_parts[e.id] = {e.end[0].has_value(), e.end[1].has_value()};
            continue;
        }
        auto it = v.edge_parts.find(act.target);
        if (it == v.edge_parts.end()) continue;
        bool keep[2];
        for (int s = 0; s < 2; ++s) {
            int t = act.a > 0 ? s : 1 - s;
            bool target_keep = t == 0 ? it->second.first : it->second.second;
            keep[s] = target_keep && e.end[s].has_value();
        }
        out.edge_parts[e.id] = {keep[0], keep[1]};
    }
    return out;
}

}  // namespace rgk
