#include "rgk/ribbon.hpp"

#include <algorithm>
#include <stdexcept>

namespace rgk {

std::vector<std::string> RibbonGraph::diagnose() const {
    std::vector<std::string> errs;
    for (const auto& v : graph.vertices()) {
        auto inc = graph.incident(v);
        if (inc.size() < 2) errs.push_back("vertex '" + v + "' has degree < 2");
        auto it = orders.find(v);
        if (it == orders.end()) {
            errs.push_back("vertex '" + v + "' has no cyclic order");
            continue;
        }
        std::set<std::string> have(inc.begin(), inc.end());
        std::set<std::string> got(it->second.sequence().begin(), it->second.sequence().end());
        if (have != got) errs.push_back("cyclic order at '" + v + "' does not match its half-edges");
    }
    for (const auto& [v, c] : orders)
        if (!graph.vertices().count(v)) errs.push_back("cyclic order at unknown vertex '" + v + "'");
    return errs;
}

namespace {

struct Dir {
    std::string edge;
    int dir;  // 0: slot0 -> slot1, 1: reverse
    bool operator==(const Dir& o) const = default;
    auto operator<=>(const Dir& o) const = default;
};

std::optional<std::string> head_of(const Graph& g, const Dir& d) {
    return g.edge(d.edge).end[d.dir == 0 ? 1 : 0];
}
std::optional<std::string> tail_of(const Graph& g, const Dir& d) {
    return g.edge(d.edge).end[d.dir == 0 ? 0 : 1];
}

// Face tracing step: arrive at the head along d, leave along the successor
// half-edge in the vertex's cyclic order.
Dir step(const RibbonGraph& r, const Dir& d, std::string& witness) {
    auto v = head_of(r.graph, d);
    if (!v) throw std::logic_error("step past a free end");
    witness = *v;
    std::string f = r.orders.at(*v).succ(d.edge);
    const Edge& fe = r.graph.edge(f);
    int slot = (fe.end[0] && *fe.end[0] == *v) ? 0 : 1;
    return {f, slot == 0 ? 0 : 1};
}

Walk canonical_compact(std::vector<std::string> edges, std::vector<std::string> wits) {
    // Rotate to the lexicographically least (edges, witnesses) presentation.
    std::size_t n = edges.size(), best = 0;
    auto rotation = [&](std::size_t k) {
        std::pair<std::vector<std::string>, std::vector<std::string>> out;
        for (std::size_t i = 0; i < n; ++i) {
            out.first.push_back(edges[(k + i) % n]);
            out.second.push_back(wits[(k + i) % n]);
        }
        return out;
    };
    auto best_val = rotation(0);
    for (std::size_t k = 1; k < n; ++k) {
        auto cand = rotation(k);
        if (cand < best_val) {
            best_val = cand;
            best = k;
        }
    }
    (void)best;
    return Walk{best_val.first, best_val.second, true, false};
}

}  // namespace

std::vector<Walk> boundary_components(const RibbonGraph& r) {
    auto errs = r.diagnose();
    if (!errs.empty()) throw std::invalid_argument("boundary_components: " + errs.front());
    std::vector<Walk> out;
    std::set<Dir> visited;

    std::vector<Dir> all;
    for (const Edge& e : r.graph.edges()) {
        if (e.isolated()) {
            out.push_back(Walk{{e.id}, {}, false, true});
            out.push_back(Walk{{e.id}, {}, false, true});
            continue;
        }
        all.push_back({e.id, 0});
        all.push_back({e.id, 1});
    }

    // Noncompact components start where the tail is free.
    for (const Dir& d0 : all) {
        if (tail_of(r.graph, d0) || visited.count(d0)) continue;
        Walk w;
        w.compact = false;
        Dir d = d0;
        while (true) {
            visited.insert(d);
            w.edges.push_back(d.edge);
            if (!head_of(r.graph, d)) break;
            std::string wit;
            d = step(r, d, wit);
            w.witnesses.push_back(wit);
        }
        out.push_back(std::move(w));
    }
    // Remaining directed sides split into cycles.
    for (const Dir& d0 : all) {
        if (visited.count(d0)) continue;
        std::vector<std::string> edges, wits;
        Dir d = d0;
        do {
            visited.insert(d);
            edges.push_back(d.edge);
            std::string wit;
            d = step(r, d, wit);
            wits.push_back(wit);
        } while (!(d == d0));
        out.push_back(canonical_compact(std::move(edges), std::move(wits)));
    }
    std::sort(out.begin(), out.end(), [](const Walk& a, const Walk& b) {
        return std::tie(a.compact, a.edges, a.witnesses) < std::tie(b.compact, b.edges, b.witnesses);
    });
    return out;
}

bool Walk::simple(const Graph& g) const {
    std::map<std::string, int> count;
    for (const auto& e : edges) {
        for (int s = 0; s < 2; ++s)
            if (g.edge(e).end[s]) count[*g.edge(e).end[s]]++;
    }
    for (auto& [v, c] : count)
        if (c > 2) return false;
    return true;
}

std::size_t genus(const RibbonGraph& r) {
    if (!r.graph.compact()) throw std::invalid_argument("genus: graph has noncompact edges");
    if (!r.graph.connected()) throw std::invalid_argument("genus: graph is disconnected");
    long long v = static_cast<long long>(r.graph.vertices().size());
    long long e = static_cast<long long>(r.graph.edges().size());
    long long b = static_cast<long long>(boundary_components(r).size());
    long long twice_g = 2 - v + e - b;
    if (twice_g < 0 || twice_g % 2 != 0) throw std::logic_error("genus: Euler identity violated");
    return static_cast<std::size_t>(twice_g / 2);
}

CyclicOrder leaf_cyclic_order(const RibbonGraph& tree) {
    if (!tree.graph.is_tree()) throw std::invalid_argument("leaf_cyclic_order: not a tree");
    std::vector<std::string> leaves;
    for (const Edge& e : tree.graph.edges())
        if (!e.compact()) leaves.push_back(e.id);
    if (leaves.empty()) throw std::invalid_argument("leaf_cyclic_order: tree has no leaves");
    if (tree.graph.vertices().empty()) return CyclicOrder::from_list({leaves.front()});

    std::map<std::string, std::string> next;
    for (const Walk& w : boundary_components(tree)) {
        if (w.compact) throw std::logic_error("tree with a compact boundary component");
        next[w.edges.front()] = w.edges.back();
    }
    // The operator must be a single cycle through all leaves.
    std::vector<std::string> cyc;
    std::string start = *std::min_element(leaves.begin(), leaves.end());
    std::string cur = start;
    do {
        cyc.push_back(cur);
        auto it = next.find(cur);
        if (it == next.end()) throw std::logic_error("leaf operator undefined at '" + cur + "'");
        cur = it->second;
    } while (cur != start && cyc.size() <= leaves.size());
    if (cyc.size() != leaves.size())
        throw std::logic_error("leaf operator is not a single cycle");
    return CyclicOrder::from_list(cyc);
}

RibbonGraph restrict_ribbon(const RibbonGraph& r, const OpenSubgraph& open) {
    auto errs = open.diagnose(r.graph);
    if (!errs.empty()) throw std::invalid_argument("restrict_ribbon: " + errs.front());
    RibbonGraph out;
    out.graph = open.realize(r.graph);
    for (const auto& v : open.vertices) out.orders[v] = r.orders.at(v);
    return out;
}

RibbonGraph closed_subgraph(const RibbonGraph& r, const std::set<std::string>& edge_ids) {
    std::set<std::string> verts;
    std::vector<Edge> edges;
    for (const auto& id : edge_ids) {
        const Edge& e = r.graph.edge(id);
        edges.push_back(e);
        for (int s = 0; s < 2; ++s)
            if (e.end[s]) verts.insert(*e.end[s]);
    }
    RibbonGraph out;
    out.graph = Graph(verts, edges);
    for (const auto& v : verts) {
        auto inc = out.graph.incident(v);
        if (inc.size() < 2)
            throw std::invalid_argument("closed_subgraph: degree-1 vertex '" + v + "'");
        out.orders[v] = induced_order(r.orders.at(v), {inc.begin(), inc.end()});
    }
    return out;
}

// --- Chordal -----------------------------------------------------------------

std::vector<std::string> ChordalStructure::z_edges_at(const std::string& v) const {
    std::vector<std::string> out;
    for (const auto& id : ribbon.graph.incident(v))
        if (zero_section.count(id)) out.push_back(id);
    return out;
}

std::vector<std::string> validate_chordal(const RibbonGraph& r, const std::set<std::string>& z) {
    std::vector<std::string> errs = r.diagnose();
    if (!errs.empty()) return errs;
    for (const auto& id : z)
        if (!r.graph.has_edge(id)) errs.push_back("zero section names unknown edge '" + id + "'");
    if (!errs.empty()) return errs;
    for (const auto& v : r.graph.vertices()) {
        std::vector<std::string> zs, rest;
        for (const auto& id : r.graph.incident(v))
            (z.count(id) ? zs : rest).push_back(id);
        if (zs.size() != 2) {
            errs.push_back("zero section is not bivalent at vertex '" + v + "'");
            continue;
        }
        if (r.graph.degree(v) > 4) {
            errs.push_back("vertex '" + v + "' has degree " + std::to_string(r.graph.degree(v)) +
                           "; chordal vertices have degree at most 4");
            continue;
        }
        const CyclicOrder& c = r.orders.at(v);
        int side_a = 0, side_b = 0;
        for (const auto& g : rest) {
            if (c.rel(zs[0], g, zs[1])) ++side_a;
            if (c.rel(zs[1], g, zs[0])) ++side_b;
        }
        if (side_a > 1 || side_b > 1)
            errs.push_back("two half-edges on one side of the zero section at vertex '" + v + "'");
    }
    return errs;
}

std::map<std::string, std::set<std::string>> zero_section_components(const ChordalStructure& c) {
    RibbonGraph z = closed_subgraph(c.ribbon, c.zero_section);
    std::map<std::string, std::set<std::string>> out;
    for (const auto& comp : z.graph.components()) out[*comp.begin()] = comp;
    return out;
}

std::map<std::string, std::pair<std::string, std::string>> orient_zero_section(
    const ChordalStructure& c, const std::set<std::string>& flip) {
    std::map<std::string, std::pair<std::string, std::string>> out;
    for (const auto& [rep, comp] : zero_section_components(c)) {
        std::vector<std::string> zs = c.z_edges_at(rep);
        if (zs.size() != 2)
            throw std::invalid_argument("orient_zero_section: zero section not bivalent");
        std::sort(zs.begin(), zs.end());
        bool flipped = flip.count(rep) != 0;
        std::string fwd = flipped ? zs[1] : zs[0];
        std::string bwd = flipped ? zs[0] : zs[1];
        out[rep] = {fwd, bwd};
        for (int pass = 0; pass < 2; ++pass) {
            std::string v = rep;
            std::string out_edge = pass == 0 ? fwd : bwd;
            while (true) {
                const Edge& e = c.ribbon.graph.edge(out_edge);
                std::optional<std::string> nxt;
                for (int s = 0; s < 2; ++s)
                    if (e.end[s] && *e.end[s] != v) nxt = e.end[s];
                if (!nxt || *nxt == rep || out.count(*nxt)) break;
                v = *nxt;
                auto vz = c.z_edges_at(v);
                std::string other = vz[0] == out_edge ? vz[1] : vz[0];
                if (pass == 0)
                    out[v] = {other, out_edge};
                else
                    out[v] = {out_edge, other};
                out_edge = other;
            }
        }
    }
    return out;
}

// --- Contractions ------------------------------------------------------------

std::vector<std::string> validate_simple_contraction(const RibbonGraph& r, const RibbonGraph& s,
                                                     const GraphMorphism& map) {
    std::vector<std::string> errs;
    if (!(map.source == r.graph) || !(map.target == s.graph)) {
        errs.push_back("contraction endpoints do not match the given ribbon graphs");
        return errs;
    }
    auto morph_errs = map.diagnose();
    if (!morph_errs.empty()) return morph_errs;

    for (const auto& v : s.graph.vertices()) {
        OpenSubgraph pre = preimage(map, OpenSubgraph::star_of(s.graph, v));
        RibbonGraph t = restrict_ribbon(r, pre);
        if (!t.graph.is_tree() || t.graph.vertices().empty()) {
            errs.push_back("preimage of star('" + v + "') is not a ribbon tree");
            continue;
        }
        // Leaves of the preimage tree against the star's leaves.
        std::map<std::string, std::string> img;
        bool bad = false;
        for (const Edge& e : t.graph.edges()) {
            if (e.compact()) continue;
            const EdgeAction& act = map.edge_action.at(e.id);
            if (act.collapse) {
                errs.push_back("leaf '" + e.id + "' of the preimage tree is collapsed");
                bad = true;
                break;
            }
            img[e.id] = act.target;
        }
        if (bad) continue;
        std::set<std::string> star_leaves;
        for (const auto& id : s.graph.incident(v)) star_leaves.insert(id);
        std::set<std::string> images;
        for (auto& [l, f] : img) images.insert(f);
        if (images.size() != img.size() || images != star_leaves) {
            errs.push_back("leaves of the preimage of star('" + v +
                           "') do not biject onto the star's leaves");
            continue;
        }
        CyclicOrder lco = leaf_cyclic_order(t);
        const CyclicOrder& sv = s.orders.at(v);
        for (const auto& [l, f] : img) {
            if (img.at(lco.succ(l)) != sv.succ(f)) {
                errs.push_back("leaf order mismatch at vertex '" + v + "': minimal pair (" + f +
                               ", " + img.at(lco.succ(l)) + ") should be (" + f + ", " +
                               sv.succ(f) + ")");
                break;
            }
        }
    }
    return errs;
}

PartialContraction PartialContraction::identity(const RibbonGraph& x) {
    PartialContraction pc;
    pc.source = x;
    pc.open = OpenSubgraph::full(x.graph);
    pc.target = x;
    pc.contraction = GraphMorphism::identity(x.graph);
    return pc;
}

PartialContraction PartialContraction::open_inclusion(const RibbonGraph& x,
                                                      const OpenSubgraph& u) {
    PartialContraction pc;
    pc.source = x;
    pc.open = u;
    pc.target = restrict_ribbon(x, u);
    pc.contraction = GraphMorphism::identity(pc.target.graph);
    return pc;
}

PartialContraction PartialContraction::full_contraction(const RibbonGraph& x,
                                                        const RibbonGraph& y,
                                                        const GraphMorphism& map) {
    PartialContraction pc;
    pc.source = x;
    pc.open = OpenSubgraph::full(x.graph);
    pc.target = y;
    pc.contraction = map;
    return pc;
}

std::vector<std::string> PartialContraction::diagnose() const {
    std::vector<std::string> errs = open.diagnose(source.graph);
    if (!errs.empty()) return errs;
    RibbonGraph mid = restrict_ribbon(source, open);
    if (!(contraction.source == mid.graph)) {
        errs.push_back("contraction source is not the realized open subgraph");
        return errs;
    }
    return validate_simple_contraction(mid, target, contraction);
}

PartialContraction compose_partial(const PartialContraction& g, const PartialContraction& f) {
    if (!(f.target == g.source))
        throw std::invalid_argument("compose_partial: interface mismatch");
    OpenSubgraph w = preimage(f.contraction, g.open);
    RibbonGraph mid_f = restrict_ribbon(f.source, f.open);
    // Restrict f's contraction to the pulled-back open part.
    GraphMorphism p;
    p.source = w.realize(f.source.graph);
    p.target = g.open.realize(g.source.graph);
    for (const auto& v : w.vertices) p.vertex_map[v] = f.contraction.vertex_map.at(v);
    for (const auto& [id, part] : w.edge_parts) p.edge_action[id] = f.contraction.edge_action.at(id);
    PartialContraction out;
    out.source = f.source;
    out.open = w;
    out.target = g.target;
    out.contraction = compose(g.contraction, p);
    (void)mid_f;
    return out;
}

BuiltContraction contract_edges(const RibbonGraph& r, const std::set<std::string>& edge_ids) {
    RibbonGraph cur = r;
    std::map<std::string, std::string> vmap;
    for (const auto& v : r.graph.vertices()) vmap[v] = v;
    std::map<std::string, std::string> collapse_to;

    for (const auto& id : edge_ids) {
        const Edge& e = cur.graph.edge(id);
        if (!e.compact()) throw std::invalid_argument("contract_edges: noncompact edge '" + id + "'");
        std::string u = *e.end[0], v = *e.end[1];
        if (u == v) throw std::invalid_argument("contract_edges: edge set contains a cycle");
        std::string merged = std::min(u, v);
        CyclicOrder joined = join(cur.orders.at(u), id, cur.orders.at(v), id);

        std::set<std::string> verts = cur.graph.vertices();
        verts.erase(u);
        verts.erase(v);
        verts.insert(merged);
        std::vector<Edge> edges;
        for (const Edge& x : cur.graph.edges()) {
            if (x.id == id) continue;
            Edge y = x;
            for (int s = 0; s < 2; ++s)
                if (y.end[s] && (*y.end[s] == u || *y.end[s] == v)) y.end[s] = merged;
            edges.push_back(y);
        }
        RibbonGraph next;
        next.graph = Graph(verts, edges);
        for (const auto& vv : verts)
            next.orders[vv] = (vv == merged) ? joined : cur.orders.at(vv);
        cur = std::move(next);
        for (auto& [a, b] : vmap)
            if (b == u || b == v) b = merged;
        collapse_to[id] = merged;
        for (auto& [eid, tgt] : collapse_to)
            if (tgt == u || tgt == v) tgt = merged;
    }

    GraphMorphism m;
    m.source = r.graph;
    m.target = cur.graph;
    m.vertex_map = vmap;
    for (const Edge& e : r.graph.edges()) {
        if (edge_ids.count(e.id))
            m.edge_action[e.id] = EdgeAction{true, collapse_to.at(e.id)};
        else
            m.edge_action[e.id] = EdgeAction{false, e.id, 1, 0};
    }
    return BuiltContraction{cur, m};
}

}  // namespace rgk
