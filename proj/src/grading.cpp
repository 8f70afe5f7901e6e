#include "rgk/grading.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace rgk {

std::vector<std::string> ZGrading::diagnose() const {
    std::vector<std::string> errs = ribbon.diagnose();
    if (!errs.empty()) return errs;
    for (const auto& v : ribbon.graph.vertices()) {
        auto it = vertex_unwinding.find(v);
        if (it == vertex_unwinding.end()) {
            errs.push_back("vertex '" + v + "' has no unwinding");
            continue;
        }
        if (!(it->second.base() == ribbon.orders.at(v)))
            errs.push_back("unwinding base at '" + v + "' differs from the cyclic order");
        auto uerrs = it->second.validate();
        errs.insert(errs.end(), uerrs.begin(), uerrs.end());

        auto tv = theta.find(v);
        if (tv == theta.end()) {
            errs.push_back("vertex '" + v + "' has no theta data");
            continue;
        }
        for (const auto& e : ribbon.graph.incident(v)) {
            auto te = tv->second.find(e);
            if (te == tv->second.end()) {
                errs.push_back("theta missing at ('" + v + "', '" + e + "')");
                continue;
            }
            int sign = 0;
            if (auto es = z2.edge_sign.find(e); es != z2.edge_sign.end()) sign = es->second & 1;
            long long want = (it->second.sigma_even() + sign) & 1;
            if (((te->second % 2) + 2) % 2 != want)
                errs.push_back("theta parity clash at ('" + v + "', '" + e + "')");
        }
    }
    return errs;
}


ChordalGradingResult chordal_grading(const ChordalStructure& c,
                                     const std::set<std::string>& flip_components) {
    auto errs = validate_chordal(c.ribbon, c.zero_section);
    if (!errs.empty()) throw std::invalid_argument("chordal_grading: " + errs.front());

    ChordalGradingResult out;
    out.grading.ribbon = c.ribbon;
    for (const Edge& e : c.ribbon.graph.edges()) out.grading.z2.edge_sign[e.id] = 0;

    Unwinding compass = Unwinding::compass();
    auto orientation = orient_zero_section(c, flip_components);
    for (const auto& [rep, comp] : zero_section_components(c)) {
        for (const auto& v : comp) {
            auto [fwd, bwd] = orientation.at(v);
            const CyclicOrder& ord = c.ribbon.orders.at(v);
            std::map<Label, Label> names = {{"E", fwd}, {"W", bwd}};
            std::set<Label> present = {"E", "W"};
            out.labels[v][fwd] = 'E';
            out.labels[v][bwd] = 'W';
            for (const auto& g : c.ribbon.graph.incident(v)) {
                if (g == fwd || g == bwd) continue;
                if (ord.rel(fwd, g, bwd)) {
                    names["N"] = g;
                    present.insert("N");
                    out.labels[v][g] = 'N';
                } else {
                    names["S"] = g;
                    present.insert("S");
                    out.labels[v][g] = 'S';
                }
            }
            out.grading.vertex_unwinding.emplace(v, compass.induced(present).relabeled(names));
            for (const auto& e : c.ribbon.graph.incident(v)) out.grading.theta[v][e] = 0;
        }
    }
    auto zerrs = out.grading.diagnose();
    if (!zerrs.empty()) throw std::logic_error("chordal_grading produced: " + zerrs.front());
    return out;
}

long long boundary_monodromy(const ZGrading& g, const Walk& walk) {
    if (walk.edges.empty()) throw std::invalid_argument("boundary_monodromy: empty walk");
    std::size_t steps = walk.witnesses.size();
    long long total = 0;
    for (std::size_t i = 0; i < steps; ++i) {
        const std::string& v = walk.witnesses[i];
        const std::string& ein = walk.edges[i];
        const std::string& eout = walk.edges[(i + 1) % walk.edges.size()];
        const Unwinding& u = g.vertex_unwinding.at(v);
        if (u.base().succ(ein) != eout)
            throw std::invalid_argument("boundary_monodromy: walk violates the minimal-pair rule at '" + v + "'");
        total += -g.theta.at(v).at(ein) + u.rshift().at(ein) + g.theta.at(v).at(eout);
    }
    return total;
}

long long LeafUnwinding::total() const {
    long long t = 0;
    for (const auto& [l, m] : rmono) t += m;
    return t;
}

LeafUnwinding leaf_unwinding(const ZGrading& tree) {
    if (!tree.ribbon.graph.is_tree())
        throw std::invalid_argument("leaf_unwinding: not a tree");
    LeafUnwinding out;
    out.leaves = leaf_cyclic_order(tree.ribbon);
    for (const Walk& w : boundary_components(tree.ribbon)) {
        if (w.compact) throw std::logic_error("leaf_unwinding: compact boundary in a tree");
        // One reversal of the ray direction per interior edge traversal.
        long long interior = static_cast<long long>(w.edges.size()) - 2;
        out.rmono[w.edges.front()] = boundary_monodromy(tree, w) - interior;
    }
    return out;
}

std::vector<std::string> validate_graded_contraction(const ZGrading& x, const ZGrading& y,
                                                     const GraphMorphism& map,
                                                     const GradedContractionData& data) {
    std::vector<std::string> errs = validate_simple_contraction(x.ribbon, y.ribbon, map);
    if (!errs.empty()) return errs;
    auto ex = x.diagnose();
    auto ey = y.diagnose();
    errs.insert(errs.end(), ex.begin(), ex.end());
    errs.insert(errs.end(), ey.begin(), ey.end());
    if (!errs.empty()) return errs;

    for (const Edge& e : x.ribbon.graph.edges()) {
        if (map.edge_action.at(e.id).collapse) continue;
        if (!data.edge_offset.count(e.id))
            errs.push_back("missing torsor offset for surviving edge '" + e.id + "'");
    }
    if (data.tau_sign != 0 && data.tau_sign != 1) errs.push_back("tau identification must be 0 or 1");
    if (!errs.empty()) return errs;

    for (const auto& v : y.ribbon.graph.vertices()) {
        ZGrading t = induced_grading_open(x, preimage(map, OpenSubgraph::star_of(y.ribbon.graph, v)));
        LeafUnwinding lt = leaf_unwinding(t);
        LeafUnwinding ls =
            leaf_unwinding(induced_grading_open(y, OpenSubgraph::star_of(y.ribbon.graph, v)));
        for (const Label& l : lt.leaves.sequence()) {
            Label rl = lt.leaves.succ(l);
            Label fl = map.edge_action.at(l).target;
            long long lhs = ls.rmono.at(fl) + data.edge_offset.at(l);
            long long rhs = data.edge_offset.at(rl) + lt.rmono.at(l);
            if (lhs != rhs) {
                errs.push_back("unwinding compatibility fails at vertex '" + v + "', leaf pair (" +
                               l + ", " + rl + ")");
                return errs;
            }
        }
    }
    return errs;
}

std::optional<GradedContractionData> induced_contraction_data(const ZGrading& x,
                                                              const ZGrading& y,
                                                              const GraphMorphism& map) {
    if (!validate_simple_contraction(x.ribbon, y.ribbon, map).empty()) return std::nullopt;
    // Difference constraints k_{Rl} - k_l between surviving-edge offsets.
    struct Constraint {
        Label from, to;
        long long diff;
    };
    std::vector<Constraint> cons;
    for (const auto& v : y.ribbon.graph.vertices()) {
        ZGrading t = induced_grading_open(x, preimage(map, OpenSubgraph::star_of(y.ribbon.graph, v)));
        LeafUnwinding lt = leaf_unwinding(t);
        LeafUnwinding ls =
            leaf_unwinding(induced_grading_open(y, OpenSubgraph::star_of(y.ribbon.graph, v)));
        for (const Label& l : lt.leaves.sequence()) {
            Label rl = lt.leaves.succ(l);
            Label fl = map.edge_action.at(l).target;
            cons.push_back({l, rl, ls.rmono.at(fl) - lt.rmono.at(l)});
        }
    }
    GradedContractionData data;
    for (const Edge& e : x.ribbon.graph.edges())
        if (!map.edge_action.at(e.id).collapse) data.edge_offset[e.id] = 0;
    // Propagate to a fixed point (the constraint graph is tiny).
    std::map<Label, bool> pinned;
    for (auto& [e, k] : data.edge_offset) pinned[e] = false;
    for (auto& [e, k] : data.edge_offset) {
        if (pinned[e]) continue;
        pinned[e] = true;  // anchor at zero
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Constraint& c : cons) {
                if (pinned[c.from] && !pinned[c.to]) {
                    data.edge_offset[c.to] = data.edge_offset[c.from] + c.diff;
                    pinned[c.to] = true;
                    changed = true;
                }
                if (pinned[c.to] && !pinned[c.from]) {
                    data.edge_offset[c.from] = data.edge_offset[c.to] - c.diff;
                    pinned[c.from] = true;
                    changed = true;
                }
            }
        }
    }
    for (const Constraint& c : cons)
        if (data.edge_offset.at(c.to) - data.edge_offset.at(c.from) != c.diff) return std::nullopt;
    if (!validate_graded_contraction(x, y, map, data).empty()) return std::nullopt;
    return data;
}

ZGrading induced_grading_open(const ZGrading& g, const OpenSubgraph& open) {
    ZGrading out;
    out.ribbon = restrict_ribbon(g.ribbon, open);
    out.z2.tau_labels = g.z2.tau_labels;
    for (const auto& [id, part] : open.edge_parts)
        if (auto it = g.z2.edge_sign.find(id); it != g.z2.edge_sign.end())
            out.z2.edge_sign[id] = it->second;
    for (const auto& v : open.vertices) {
        out.vertex_unwinding.emplace(v, g.vertex_unwinding.at(v));
        out.theta[v] = g.theta.at(v);
    }
    return out;
}

ZGrading relabel_grading(const ZGrading& g, const std::map<std::string, std::string>& vmap,
                         const std::map<std::string, std::string>& emap) {
    ZGrading out;
    std::set<std::string> verts;
    for (const auto& v : g.ribbon.graph.vertices()) verts.insert(vmap.at(v));
    std::vector<Edge> edges;
    for (Edge e : g.ribbon.graph.edges()) {
        e.id = emap.at(e.id);
        for (int s = 0; s < 2; ++s)
            if (e.end[s]) e.end[s] = vmap.at(*e.end[s]);
        edges.push_back(e);
    }
    out.ribbon.graph = Graph(verts, edges);
    for (const auto& [v, ord] : g.ribbon.orders) {
        std::vector<Label> seq;
        for (const Label& l : ord.sequence()) seq.push_back(emap.at(l));
        out.ribbon.orders[vmap.at(v)] = CyclicOrder::from_list(seq);
    }
    out.z2.tau_labels = g.z2.tau_labels;
    for (const auto& [e, s] : g.z2.edge_sign) out.z2.edge_sign[emap.at(e)] = s;
    std::map<Label, Label> lmap;
    for (const auto& [a, b] : emap) lmap[a] = b;
    for (const auto& [v, u] : g.vertex_unwinding)
        out.vertex_unwinding.emplace(vmap.at(v), u.relabeled(lmap));
    for (const auto& [v, row] : g.theta)
        for (const auto& [e, o] : row) out.theta[vmap.at(v)][emap.at(e)] = o;
    return out;
}

bool graded_isomorphic(const ZGrading& a, const ZGrading& b) {
    const Graph& ga = a.ribbon.graph;
    const Graph& gb = b.ribbon.graph;
    if (ga.vertices().size() != gb.vertices().size() || ga.edges().size() != gb.edges().size())
        return false;
    std::vector<std::string> va(ga.vertices().begin(), ga.vertices().end());
    std::vector<std::string> vb(gb.vertices().begin(), gb.vertices().end());
    std::sort(vb.begin(), vb.end());
    do {
        std::map<std::string, std::string> vmap;
        bool deg_ok = true;
        for (std::size_t i = 0; i < va.size(); ++i) {
            if (ga.degree(va[i]) != gb.degree(vb[i])) {
                deg_ok = false;
                break;
            }
            vmap[va[i]] = vb[i];
        }
        if (!deg_ok) continue;
        // Match edges by endpoint signature under vmap, one group at a time.
        auto sig_a = [&](const Edge& e) {
            std::vector<std::string> s;
            for (int k = 0; k < 2; ++k) s.push_back(e.end[k] ? vmap.at(*e.end[k]) : "*");
            std::sort(s.begin(), s.end());
            return s[0] + "|" + s[1];
        };
        auto sig_b = [&](const Edge& e) {
            std::vector<std::string> s;
            for (int k = 0; k < 2; ++k) s.push_back(e.end[k] ? *e.end[k] : "*");
            std::sort(s.begin(), s.end());
            return s[0] + "|" + s[1];
        };
        std::map<std::string, std::vector<std::string>> groups_a, groups_b;
        for (const Edge& e : ga.edges()) groups_a[sig_a(e)].push_back(e.id);
        for (const Edge& e : gb.edges()) groups_b[sig_b(e)].push_back(e.id);
        bool shape_ok = groups_a.size() == groups_b.size();
        if (shape_ok)
            for (auto& [s, ids] : groups_a)
                if (!groups_b.count(s) || groups_b[s].size() != ids.size()) shape_ok = false;
        if (!shape_ok) continue;

        // Enumerate edge matchings group by group.
        std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> gs;
        for (auto& [s, ids] : groups_a) gs.push_back({ids, groups_b[s]});
        std::vector<std::vector<std::size_t>> perms(gs.size());
        std::function<bool(std::size_t, std::map<std::string, std::string>&)> go =
            [&](std::size_t gi, std::map<std::string, std::string>& emap) -> bool {
            if (gi == gs.size()) {
                ZGrading moved = relabel_grading(a, vmap, emap);
                // Compare combinatorially: coordinate slots and intervals are
                // immaterial (same topological graph, unique isomorphism).
                if (moved.ribbon.orders != b.ribbon.orders) return false;
                for (const Edge& e : moved.ribbon.graph.edges()) {
                    if (!b.ribbon.graph.has_edge(e.id)) return false;
                    const Edge& o = b.ribbon.graph.edge(e.id);
                    std::multiset<std::string> ea, eb;
                    for (int s = 0; s < 2; ++s) {
                        ea.insert(e.end[s] ? *e.end[s] : "*");
                        eb.insert(o.end[s] ? *o.end[s] : "*");
                    }
                    if (ea != eb) return false;
                }
                // Align endpoint slots with b before solving for offsets.
                ZGrading aligned = moved;
                aligned.ribbon = b.ribbon;
                return induced_contraction_data(aligned, b, GraphMorphism::identity(b.ribbon.graph))
                    .has_value();
            }
            std::vector<std::size_t> idx(gs[gi].first.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end());
            do {
                for (std::size_t i = 0; i < idx.size(); ++i)
                    emap[gs[gi].first[i]] = gs[gi].second[idx[i]];
                if (go(gi + 1, emap)) return true;
            } while (std::next_permutation(idx.begin(), idx.end()));
            return false;
        };
        std::map<std::string, std::string> emap;
        if (go(0, emap)) return true;
    } while (std::next_permutation(vb.begin(), vb.end()));
    return false;
}

ZGrading induced_grading_closed(const ZGrading& g, const std::set<std::string>& edge_ids) {
    ZGrading out;
    out.ribbon = closed_subgraph(g.ribbon, edge_ids);
    out.z2.tau_labels = g.z2.tau_labels;
    for (const auto& id : edge_ids)
        if (auto it = g.z2.edge_sign.find(id); it != g.z2.edge_sign.end())
            out.z2.edge_sign[id] = it->second;
    for (const auto& v : out.ribbon.graph.vertices()) {
        auto inc = out.ribbon.graph.incident(v);
        std::set<Label> kept(inc.begin(), inc.end());
        out.vertex_unwinding.emplace(v, g.vertex_unwinding.at(v).induced(kept));
        for (const auto& e : inc) out.theta[v][e] = g.theta.at(v).at(e);
    }
    return out;
}

}  // namespace rgk
