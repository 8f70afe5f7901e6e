#include "rgk/cpm.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace rgk {

namespace {

// Side of a non-zero-section half-edge at v: 0 ("up") when it sits between
// the forward and backward zero-section half-edges, 1 otherwise.
int side_of(const ChordalStructure& c,
            const std::map<std::string, std::pair<std::string, std::string>>& orient,
            const std::string& v, const std::string& chord) {
    auto [fwd, bwd] = orient.at(v);
    return c.ribbon.orders.at(v).rel(fwd, chord, bwd) ? 0 : 1;
}

}  // namespace

BaseGraphInfo base_graph(const ChordalStructure& c) {
    auto errs = validate_chordal(c.ribbon, c.zero_section);
    if (!errs.empty()) throw std::invalid_argument("base_graph: " + errs.front());
    BaseGraphInfo out;
    out.components = zero_section_components(c);
    auto orient = orient_zero_section(c);
    std::map<std::string, std::string> comp_of;
    for (const auto& [key, verts] : out.components)
        for (const auto& v : verts) comp_of[v] = key;

    // Group chords by their attachment signature (component, side) pairs.
    std::map<std::vector<std::pair<std::string, int>>, std::vector<std::string>> groups;
    for (const Edge& e : c.ribbon.graph.edges()) {
        if (c.zero_section.count(e.id)) continue;
        std::vector<std::pair<std::string, int>> ends;
        for (int s = 0; s < 2; ++s)
            if (e.end[s]) ends.push_back({comp_of.at(*e.end[s]), side_of(c, orient, *e.end[s], e.id)});
        if (ends.empty()) {
            out.notes.push_back("isolated chord '" + e.id + "' ignored by the base graph");
            continue;
        }
        if (ends.size() == 2 && ends[0].first == ends[1].first) out.has_loop = true;
        std::sort(ends.begin(), ends.end());
        groups[ends].push_back(e.id);
    }
    for (auto& [ends, chords] : groups) {
        std::sort(chords.begin(), chords.end());
        out.edges.push_back(BaseEdgeInfo{chords.front(), ends, chords});
    }
    std::sort(out.edges.begin(), out.edges.end(),
              [](const BaseEdgeInfo& a, const BaseEdgeInfo& b) { return a.id < b.id; });

    // Shape: degrees count base-edge ends.
    std::map<std::string, int> degree;
    std::size_t compact = 0, noncompact = 0;
    for (const BaseEdgeInfo& e : out.edges) {
        for (const auto& [comp, side] : e.ends) degree[comp]++;
        (e.compact() ? compact : noncompact)++;
    }
    bool all_deg2 = true;
    for (const auto& [key, verts] : out.components)
        if (degree[key] != 2) all_deg2 = false;
    // Connectivity over compact base edges.
    std::map<std::string, std::string> parent;
    for (const auto& [key, verts] : out.components) parent[key] = key;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) {
        std::string r = x;
        while (parent[r] != r) r = parent[r];
        return r;
    };
    std::size_t joins = 0;
    for (const BaseEdgeInfo& e : out.edges) {
        if (!e.compact()) continue;
        auto a = find(e.ends[0].first), b = find(e.ends[1].first);
        if (a != b) {
            parent[a] = b;
            ++joins;
        }
    }
    bool connected = joins + 1 == out.components.size();
    if (!out.has_loop && all_deg2 && connected && noncompact == 2 &&
        compact + 1 == out.components.size())
        out.shape = BaseShape::PATH;
    else if (!out.has_loop && all_deg2 && connected && noncompact == 0 &&
             compact == out.components.size())
        out.shape = BaseShape::CYCLE;
    else
        out.shape = BaseShape::OTHER;
    return out;
}

DualizableResult dualizable(const ChordalStructure& c) {
    BaseGraphInfo b = base_graph(c);
    DualizableResult out;
    out.shape = b.shape;
    // Exactly one base edge per side of every component.
    std::map<std::pair<std::string, int>, int> side_count;
    for (const BaseEdgeInfo& e : b.edges)
        for (const auto& end : e.ends) side_count[end]++;
    for (const auto& [key, verts] : b.components)
        for (int s = 0; s < 2; ++s)
            if (side_count[{key, s}] != 1) {
                out.ok = false;
                out.offender = key;
                return out;
            }
    if (b.has_loop || b.shape == BaseShape::OTHER) {
        out.ok = false;
        out.offender = b.has_loop ? "base loop" : "base shape";
        return out;
    }
    out.ok = true;

    // Order the base edges and components along the path or cycle.
    auto edge_at = [&](const std::string& comp, const std::string& not_id) -> const BaseEdgeInfo* {
        for (const BaseEdgeInfo& e : b.edges)
            for (const auto& end : e.ends)
                if (end.first == comp && e.id != not_id) return &e;
        return nullptr;
    };
    auto other_end = [&](const BaseEdgeInfo& e, const std::string& comp) -> std::string {
        for (const auto& end : e.ends)
            if (end.first != comp) return end.first;
        return "";
    };
    if (b.shape == BaseShape::PATH) {
        const BaseEdgeInfo* start = nullptr;
        for (const BaseEdgeInfo& e : b.edges)
            if (!e.compact() && (!start || e.id < start->id)) start = &e;
        std::string comp = start->ends[0].first;
        const BaseEdgeInfo* cur = start;
        out.base_edge_order.push_back(cur->id);
        while (true) {
            out.component_order.push_back(comp);
            cur = edge_at(comp, cur->id);
            out.base_edge_order.push_back(cur->id);
            if (!cur->compact()) break;
            comp = other_end(*cur, comp);
        }
    } else {
        const BaseEdgeInfo* start = &b.edges.front();  // least id (sorted)
        // Two directions; take the one whose second edge id is smaller.
        auto walk = [&](std::string comp) {
            std::vector<std::string> eo = {start->id}, co;
            const BaseEdgeInfo* cur = start;
            while (true) {
                co.push_back(comp);
                cur = edge_at(comp, cur->id);
                if (cur->id == start->id) break;
                eo.push_back(cur->id);
                comp = other_end(*cur, comp);
            }
            return std::pair{eo, co};
        };
        auto w0 = walk(start->ends[0].first);
        auto w1 = walk(start->ends[1].first);
        auto pick = (w0.first.size() > 1 && w1.first.size() > 1 && w1.first[1] < w0.first[1]) ? w1 : w0;
        out.base_edge_order = pick.first;
        // Components flank their trailing edge: rotate so component i sits
        // between edges i and i+1.
        out.component_order = pick.second;
    }
    std::map<std::string, const BaseEdgeInfo*> by_id;
    for (const BaseEdgeInfo& e : b.edges) by_id[e.id] = &e;
    for (const auto& id : out.base_edge_order)
        out.indices.push_back(static_cast<long long>(by_id.at(id)->chords.size()));
    return out;
}

WheelCover wheel_cover(const ChordalStructure& c) {
    DualizableResult dual = dualizable(c);
    if (!dual.ok) throw std::invalid_argument("wheel_cover: graph is not dualizable (" +
                                              dual.offender + ")");
    WheelCover cover;
    cover.shape = dual.shape;
    cover.indices = dual.indices;
    auto comps = zero_section_components(c);
    auto orient = orient_zero_section(c);

    for (const auto& key : dual.component_order) {
        const auto& verts = comps.at(key);
        WheelChart chart;
        chart.component = key;

        // Order the vertices along the orientation.  For line components
        // start from the backward-most end.
        std::string start = key;
        bool circle = true;
        {
            std::set<std::string> seen;
            std::string v = key;
            while (true) {
                seen.insert(v);
                const Edge& bwd = c.ribbon.graph.edge(orient.at(v).second);
                std::optional<std::string> prev;
                for (int s = 0; s < 2; ++s)
                    if (bwd.end[s] && *bwd.end[s] != v) prev = bwd.end[s];
                if (!prev) {
                    circle = false;
                    start = v;
                    break;
                }
                if (*prev == key) break;  // closed up
                if (seen.count(*prev)) break;
                v = *prev;
            }
        }
        std::string v = start;
        while (true) {
            chart.vertex_cycle.push_back(v);
            const Edge& fwd = c.ribbon.graph.edge(orient.at(v).first);
            std::optional<std::string> nxt;
            for (int s = 0; s < 2; ++s)
                if (fwd.end[s] && *fwd.end[s] != v) nxt = fwd.end[s];
            if (!nxt || *nxt == start) break;
            v = *nxt;
        }
        if (chart.vertex_cycle.size() != verts.size())
            throw std::logic_error("wheel_cover: component walk missed vertices");

        const long long k = static_cast<long long>(chart.vertex_cycle.size());
        std::vector<Spoke> spokes;
        for (long long i = 0; i < k; ++i) {
            const std::string& vb = chart.vertex_cycle[i];
            for (const auto& g : c.ribbon.graph.incident(vb)) {
                if (c.zero_section.count(g)) continue;
                Rat pos = circle ? Rat(i, k) : Rat(i);
                SpokeDir dir =
                    side_of(c, orient, vb, g) == 0 ? SpokeDir::UP : SpokeDir::DOWN;
                spokes.push_back({pos, dir});
                chart.chord_pos[g] = pos;
            }
        }
        chart.lagrangian =
            ConicLagrangian::make(circle ? BaseKind::CIRCLE : BaseKind::LINE, spokes);
        chart.quiver = quiver_from_lagrangian(chart.lagrangian);
        for (const auto& [chord, pos] : chart.chord_pos) {
            // Recover the direction from the attachment side again.
            std::string vb;
            const Edge& e = c.ribbon.graph.edge(chord);
            for (int s = 0; s < 2; ++s)
                if (e.end[s] && verts.count(*e.end[s])) vb = *e.end[s];
            SpokeDir dir = side_of(c, orient, vb, chord) == 0 ? SpokeDir::UP : SpokeDir::DOWN;
            auto idx = chart.quiver.arrow_at(pos, dir);
            if (!idx) throw std::logic_error("wheel_cover: missing arrow for chord");
            chart.chord_arrow[chord] = *idx;
        }
        cover.wheels.push_back(std::move(chart));
    }

    // Overlaps along compact base edges.
    BaseGraphInfo b = base_graph(c);
    std::map<std::string, const BaseEdgeInfo*> by_id;
    for (const BaseEdgeInfo& e : b.edges) by_id[e.id] = &e;
    const std::size_t m = cover.wheels.size();
    for (std::size_t i = 0; i < dual.base_edge_order.size(); ++i) {
        const BaseEdgeInfo* e = by_id.at(dual.base_edge_order[i]);
        if (!e->compact()) continue;
        OverlapInfo ov;
        ov.base_edge = e->id;
        ov.chords = e->chords;
        if (dual.shape == BaseShape::PATH) {
            ov.left = i - 1;
            ov.right = i;
        } else {
            ov.left = (i + m - 1) % m;
            ov.right = i;
        }
        cover.overlaps.push_back(std::move(ov));
    }
    return cover;
}

// A chord attached at a wheel but not part of the graph is impossible; the
// helper locates the chord's attachment within a chart.
namespace {

struct ChordSide {
    std::size_t wheel;
    std::size_t arrow;
};

std::vector<std::string> check_obj(const WheelCover& cover, const GluedObject& obj,
                                   const char* name) {
    std::vector<std::string> errs;
    if (obj.reps.size() != cover.wheels.size()) {
        errs.push_back(std::string(name) + ": one representation per wheel required");
        return errs;
    }
    for (std::size_t i = 0; i < cover.wheels.size(); ++i) {
        auto re = obj.reps[i].diagnose(cover.wheels[i].quiver);
        for (auto& e : re) errs.push_back(std::string(name) + " wheel " + std::to_string(i) + ": " + e);
    }
    if (!errs.empty()) return errs;
    for (const OverlapInfo& ov : cover.overlaps)
        for (const auto& chord : ov.chords) {
            auto it = obj.glue.find(chord);
            if (it == obj.glue.end()) {
                errs.push_back(std::string(name) + ": missing gluing at chord '" + chord + "'");
                continue;
            }
            const WheelChart& wl = cover.wheels[ov.left];
            const WheelChart& wr = cover.wheels[ov.right];
            Stalk sl = microlocal_stalk(wl.quiver, obj.reps[ov.left], wl.chord_arrow.at(chord));
            Stalk sr = microlocal_stalk(wr.quiver, obj.reps[ov.right], wr.chord_arrow.at(chord));
            if (sl.h_minus1 != sr.h_minus1 || sl.h0 != sr.h0) {
                errs.push_back(std::string(name) + ": stalk dimensions differ across '" + chord + "'");
                continue;
            }
            if (it->second.g_minus1.rows() != sr.h_minus1 ||
                it->second.g_minus1.cols() != sl.h_minus1 || !invertible(it->second.g_minus1))
                errs.push_back(std::string(name) + ": degree -1 gluing at '" + chord +
                               "' is not invertible of the right shape");
            if (it->second.g0.rows() != sr.h0 || it->second.g0.cols() != sl.h0 ||
                !invertible(it->second.g0))
                errs.push_back(std::string(name) + ": degree 0 gluing at '" + chord +
                               "' is not invertible of the right shape");
        }
    return errs;
}

}  // namespace

std::vector<std::string> validate_glued(const WheelCover& cover, const GluedObject& obj) {
    return check_obj(cover, obj, "object");
}

GluedObject structure_sheaf(const WheelCover& cover) {
    // Choose one distinguished chord per base edge so that in each wheel the
    // up-distinguished and down-distinguished points only collide head-on.
    struct SideInfo {
        std::vector<std::string> chords;  // of the base edge restricted to wheel side
    };
    // Collect, per wheel, the chords on each side with their positions.
    const std::size_t m = cover.wheels.size();
    std::vector<std::map<std::string, Rat>> up_pos(m), down_pos(m);
    for (std::size_t i = 0; i < m; ++i) {
        const WheelChart& ch = cover.wheels[i];
        for (const auto& [chord, arrow] : ch.chord_arrow) {
            if (ch.quiver.arrows[arrow].spoke.dir == SpokeDir::UP)
                up_pos[i][chord] = ch.chord_pos.at(chord);
            else
                down_pos[i][chord] = ch.chord_pos.at(chord);
        }
    }
    // Base-edge groups: overlaps plus per-wheel end groups (chords outside
    // every overlap, grouped per side).
    std::vector<std::vector<std::string>> groups;
    std::set<std::string> in_overlap;
    for (const OverlapInfo& ov : cover.overlaps) {
        groups.push_back(ov.chords);
        for (const auto& cd : ov.chords) in_overlap.insert(cd);
    }
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::string> endsup, endsdown;
        for (const auto& [cd, pos] : up_pos[i])
            if (!in_overlap.count(cd)) endsup.push_back(cd);
        for (const auto& [cd, pos] : down_pos[i])
            if (!in_overlap.count(cd)) endsdown.push_back(cd);
        if (!endsup.empty()) groups.push_back(endsup);
        if (!endsdown.empty()) groups.push_back(endsdown);
    }

    // Backtracking over the distinguished choice per group: in every wheel
    // the chosen up point may carry a down spoke only if it is the chosen
    // down point, and vice versa.
    std::vector<std::string> choice(groups.size());
    std::function<bool(std::size_t)> pick = [&](std::size_t gi) -> bool {
        if (gi == groups.size()) {
            for (std::size_t i = 0; i < m; ++i) {
                std::set<std::string> chosen;
                for (const auto& cd : choice) chosen.insert(cd);
                std::optional<Rat> du, dd;
                for (const auto& [cd, pos] : up_pos[i])
                    if (chosen.count(cd)) du = pos;
                for (const auto& [cd, pos] : down_pos[i])
                    if (chosen.count(cd)) dd = pos;
                if (!du || !dd) return false;
                // Collision rule at the distinguished points.
                for (const auto& [cd, pos] : down_pos[i])
                    if (pos == *du && !chosen.count(cd)) return false;
                for (const auto& [cd, pos] : up_pos[i])
                    if (pos == *dd && !chosen.count(cd)) return false;
            }
            return true;
        }
        auto sorted = groups[gi];
        std::sort(sorted.begin(), sorted.end());
        for (const auto& cd : sorted) {
            choice[gi] = cd;
            if (pick(gi + 1)) return true;
        }
        return false;
    };
    if (!pick(0))
        throw std::invalid_argument("structure_sheaf: no collision-free distinguished chords");

    std::set<std::string> chosen(choice.begin(), choice.end());
    GluedObject obj;
    for (std::size_t i = 0; i < m; ++i) {
        const WheelChart& ch = cover.wheels[i];
        Rat d, u;
        for (const auto& [cd, pos] : down_pos[i])
            if (chosen.count(cd)) d = pos;
        for (const auto& [cd, pos] : up_pos[i])
            if (chosen.count(cd)) u = pos;

        Rep r;
        r.dims.assign(ch.quiver.cells.size(), 0);
        bool circle = ch.lagrangian.base == BaseKind::CIRCLE;
        Rat arc_len;
        if (circle) {
            arc_len = rat_mod1(u - d);
            if (arc_len == 0) arc_len = 1;
        } else {
            if (!(d < u))
                throw std::invalid_argument("structure_sheaf: line chart needs the down "
                                            "point left of the up point");
            arc_len = u - d;
        }
        for (std::size_t cidx = 0; cidx < ch.quiver.cells.size(); ++cidx) {
            const Cell& cell = ch.quiver.cells[cidx];
            if (cell.lo_unbounded || cell.hi_unbounded) continue;
            Rat s = circle ? rat_mod1(cell.lo - d) : cell.lo - d;
            Rat e = s + (cell.hi - cell.lo);
            bool inside;
            if (cell.point)
                inside = s > 0 && s < arc_len;
            else {
                if (circle && cell.hi - cell.lo == 0) continue;  // degenerate
                if (circle && s == 0 && cell.lo_closed) continue;
                inside = s >= 0 && e <= arc_len && (s > 0 || !cell.lo_closed) &&
                         (e < arc_len || !cell.hi_closed);
            }
            if (inside) r.dims[cidx] = 1;
        }
        for (const Arrow& a : ch.quiver.arrows) {
            Mat f(r.dims[a.dst], r.dims[a.src]);
            if (r.dims[a.dst] == 1 && r.dims[a.src] == 1) f(0, 0) = 1;
            r.maps.push_back(f);
        }
        obj.reps.push_back(std::move(r));
    }
    for (const OverlapInfo& ov : cover.overlaps)
        for (const auto& cd : ov.chords) {
            bool dist = chosen.count(cd) != 0;
            GluePair gp;
            gp.g_minus1 = Mat(0, 0);
            gp.g0 = dist ? Mat::identity(1) : Mat(0, 0);
            obj.glue[cd] = gp;
        }
    auto errs = validate_glued(cover, obj);
    if (!errs.empty()) throw std::logic_error("structure_sheaf: " + errs.front());
    return obj;
}

namespace {

Mat block_diag(const Mat& a, const Mat& b) {
    Mat out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

}  // namespace

GluedObject direct_sum(const WheelCover& cover, const GluedObject& a, const GluedObject& b) {
    GluedObject out;
    for (std::size_t i = 0; i < cover.wheels.size(); ++i) {
        Rep r;
        for (std::size_t v = 0; v < a.reps[i].dims.size(); ++v)
            r.dims.push_back(a.reps[i].dims[v] + b.reps[i].dims[v]);
        for (std::size_t x = 0; x < a.reps[i].maps.size(); ++x)
            r.maps.push_back(block_diag(a.reps[i].maps[x], b.reps[i].maps[x]));
        out.reps.push_back(std::move(r));
    }
    for (const auto& [cd, ga] : a.glue) {
        const GluePair& gb = b.glue.at(cd);
        out.glue[cd] = GluePair{block_diag(ga.g_minus1, gb.g_minus1), block_diag(ga.g0, gb.g0)};
    }
    return out;
}

CpmHom cpm_hom(const WheelCover& cover, const GluedObject& a, const GluedObject& b) {
    {
        auto ea = check_obj(cover, a, "left object");
        auto eb = check_obj(cover, b, "right object");
        if (!ea.empty()) throw std::invalid_argument("cpm_hom: " + ea.front());
        if (!eb.empty()) throw std::invalid_argument("cpm_hom: " + eb.front());
    }
    const std::size_t m = cover.wheels.size();

    // Wheel blocks.  A spoke-free circle chart carries constant local
    // systems: its Hom complex is Hom(V,W) in both degrees with zero
    // differential (the circle's cohomology).
    struct WBlock {
        HomComplex hc;
        bool bare = false;
        std::size_t dim0 = 0, dim1 = 0, off0 = 0, off1 = 0;
    };
    std::vector<WBlock> wb(m);
    std::size_t w0 = 0, w1 = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const WheelChart& ch = cover.wheels[i];
        if (ch.lagrangian.base == BaseKind::CIRCLE && ch.quiver.arrows.empty()) {
            wb[i].bare = true;
            wb[i].dim0 = wb[i].dim1 = a.reps[i].dims[0] * b.reps[i].dims[0];
        } else {
            wb[i].hc = hom_complex(ch.quiver, a.reps[i], b.reps[i]);
            wb[i].dim0 = wb[i].hc.dim0;
            wb[i].dim1 = wb[i].hc.dim1;
        }
        wb[i].off0 = w0;
        wb[i].off1 = w1;
        w0 += wb[i].dim0;
        w1 += wb[i].dim1;
    }

    // Overlap blocks per chord.
    struct OBlock {
        std::size_t left, right, arrow_l, arrow_r;
        Stalk al, ar, bl, br;
        GluePair ga, gb;
        std::size_t dm1 = 0, d0 = 0, d1 = 0;        // graded Hom dims
        std::size_t off_m1 = 0, off_0 = 0, off_1 = 0;
    };
    std::vector<OBlock> ob;
    std::size_t om1 = 0, o0 = 0, o1 = 0;
    for (const OverlapInfo& ov : cover.overlaps)
        for (const auto& cd : ov.chords) {
            OBlock blk;
            blk.left = ov.left;
            blk.right = ov.right;
            blk.arrow_l = cover.wheels[ov.left].chord_arrow.at(cd);
            blk.arrow_r = cover.wheels[ov.right].chord_arrow.at(cd);
            blk.al = microlocal_stalk(cover.wheels[ov.left].quiver, a.reps[ov.left], blk.arrow_l);
            blk.ar = microlocal_stalk(cover.wheels[ov.right].quiver, a.reps[ov.right], blk.arrow_r);
            blk.bl = microlocal_stalk(cover.wheels[ov.left].quiver, b.reps[ov.left], blk.arrow_l);
            blk.br = microlocal_stalk(cover.wheels[ov.right].quiver, b.reps[ov.right], blk.arrow_r);
            blk.ga = a.glue.at(cd);
            blk.gb = b.glue.at(cd);
            blk.dm1 = blk.al.h0 * blk.bl.h_minus1;
            blk.d0 = blk.al.h_minus1 * blk.bl.h_minus1 + blk.al.h0 * blk.bl.h0;
            blk.d1 = blk.al.h_minus1 * blk.bl.h0;
            blk.off_m1 = om1;
            blk.off_0 = o0;
            blk.off_1 = o1;
            om1 += blk.dm1;
            o0 += blk.d0;
            o1 += blk.d1;
            ob.push_back(std::move(blk));
        }

    const std::size_t f0 = w0 + om1, f1 = w1 + o0, f2 = o1;
    Mat d0(f1, f0), d1(f2, f1);

    // Wheel differentials.
    for (std::size_t i = 0; i < m; ++i) {
        if (wb[i].bare) continue;  // zero differential
        for (std::size_t r = 0; r < wb[i].dim1; ++r)
            for (std::size_t c = 0; c < wb[i].dim0; ++c)
                d0(wb[i].off1 + r, wb[i].off0 + c) = wb[i].hc.delta(r, c);
    }

    // Restriction-to-overlap maps.  Each entry of the graded Hom receives
    // P * phi_v * Q; the coefficient of phi_v[p][q] in entry (r, s) is
    // P(r, p) * Q(q, s).
    auto add_piece = [&](Mat& target, std::size_t row0, std::size_t phi_col0, std::size_t phi_rows,
                         std::size_t phi_cols, const Mat& p, const Mat& q, int sign) {
        for (std::size_t r = 0; r < p.rows(); ++r)
            for (std::size_t s = 0; s < q.cols(); ++s)
                for (std::size_t pp = 0; pp < phi_rows; ++pp)
                    for (std::size_t qq = 0; qq < phi_cols; ++qq) {
                        Rat coef = p(r, pp) * q(qq, s) * sign;
                        if (coef != 0)
                            target(row0 + r * q.cols() + s, phi_col0 + pp * phi_cols + qq) += coef;
                    }
    };

    for (const OBlock& blk : ob) {
        for (int side = 0; side < 2; ++side) {
            std::size_t wi = side == 0 ? blk.left : blk.right;
            std::size_t arrow = side == 0 ? blk.arrow_l : blk.arrow_r;
            const Quiver& q = cover.wheels[wi].quiver;
            const Stalk& sa = side == 0 ? blk.al : blk.ar;
            const Stalk& sb = side == 0 ? blk.bl : blk.br;
            int sign = side == 0 ? 1 : -1;
            std::size_t src = q.arrows[arrow].src, dst = q.arrows[arrow].dst;
            std::size_t phi_src_off = wb[wi].off0 + wb[wi].hc.vertex_offset[src];
            std::size_t phi_dst_off = wb[wi].off0 + wb[wi].hc.vertex_offset[dst];
            std::size_t psi_off = wb[wi].off1 + wb[wi].hc.arrow_offset[arrow];

            // Conjugators into the reference (left) stalk spaces.
            Mat pk = sb.ker_retraction;   // ker part of B
            Mat qk = sa.ker_basis;        // ker part of A
            Mat pc = sb.coker_proj;       // coker part of B
            Mat qc = sa.coker_sec;
            if (side == 1) {
                pk = inverse(blk.gb.g_minus1) * pk;
                qk = qk * blk.ga.g_minus1;
                pc = inverse(blk.gb.g0) * pc;
                qc = qc * blk.ga.g0;
            }
            // Degree 0: Hom(ker A, ker B) then Hom(coker A, coker B).
            add_piece(d0, w1 + blk.off_0, phi_src_off, b.reps[wi].dims[src], a.reps[wi].dims[src],
                      pk, qk, sign);
            add_piece(d0, w1 + blk.off_0 + blk.al.h_minus1 * blk.bl.h_minus1, phi_dst_off,
                      b.reps[wi].dims[dst], a.reps[wi].dims[dst], pc, qc, sign);
            // Degree 1: Hom(ker A, coker B) from the arrow block.
            add_piece(d1, blk.off_1, psi_off, b.reps[wi].dims[dst], a.reps[wi].dims[src], pc, qk,
                      sign);
        }
    }

    auto h = complex_cohomology({f0, f1, f2}, {d0, d1});
    if (h[2] != 0) throw std::logic_error("cpm_hom: unexpected cohomology in degree 2");
    return CpmHom{0, h[0], h[1]};
}

// --- corpus builders ----------------------------------------------------------

ChordalStructure make_balloon_graph(BaseShape shape, const std::vector<long long>& indices) {
    if (shape == BaseShape::OTHER) throw std::invalid_argument("make_balloon_graph: shape");
    const std::size_t n = indices.size();
    if (n < 2) throw std::invalid_argument("make_balloon_graph: need at least two indices");
    for (long long a : indices)
        if (a < 1) throw std::invalid_argument("make_balloon_graph: indices must be positive");
    const std::size_t m = shape == BaseShape::PATH ? n - 1 : n;

    std::set<std::string> verts;
    std::vector<Edge> edges;
    std::map<std::string, CyclicOrder> orders;
    auto vname = [](std::size_t w, long long i) {
        return "w" + std::to_string(w) + "v" + std::to_string(i);
    };
    auto zname = [](std::size_t w, long long i) {
        return "w" + std::to_string(w) + "z" + std::to_string(i);
    };
    auto cname = [](std::size_t e, long long t) {
        return "e" + std::to_string(e) + "c" + std::to_string(t);
    };

    std::vector<long long> ksz(m);
    for (std::size_t j = 0; j < m; ++j) {
        long long aprev = indices[j];
        long long anext = indices[(j + 1) % n];
        ksz[j] = aprev + anext;
        for (long long i = 0; i < ksz[j]; ++i) verts.insert(vname(j, i));
        for (long long i = 0; i < ksz[j]; ++i) {
            Edge z;
            z.id = zname(j, i);
            z.end[0] = vname(j, i);
            z.end[1] = vname(j, (i + 1) % ksz[j]);
            edges.push_back(z);
        }
    }
    // Chords per base edge; slot t attaches to the next-side of the earlier
    // wheel and the previous-side of the later wheel.
    std::map<std::string, std::string> chord_at;  // vertex -> chord id
    std::map<std::string, bool> chord_up;         // vertex-level side flag
    auto attach = [&](std::size_t wheel, long long slot_vertex, const std::string& chord,
                      bool up) {
        chord_at[vname(wheel, slot_vertex)] = chord;
        chord_up[vname(wheel, slot_vertex)] = up;
    };
    for (std::size_t e = 0; e < n; ++e) {
        long long cnt = indices[e];
        bool has_left = shape == BaseShape::CYCLE || e > 0;
        bool has_right = shape == BaseShape::CYCLE || e + 1 < n;
        for (long long t = 0; t < cnt; ++t) {
            Edge cd;
            cd.id = cname(e + 1, t);
            std::size_t lw = (e + m - 1) % m;  // wheel with this edge on its next side
            std::size_t rw = e % m;            // wheel with this edge on its previous side
            if (has_left) {
                cd.end[0] = vname(lw, indices[lw] + t);
                attach(lw, indices[lw] + t, cd.id, true);
            }
            if (has_right) {
                cd.end[1] = vname(rw, t);
                attach(rw, t, cd.id, false);
            }
            edges.push_back(cd);
        }
    }

    Graph g(verts, edges);
    std::set<std::string> zset;
    for (std::size_t j = 0; j < m; ++j)
        for (long long i = 0; i < ksz[j]; ++i) zset.insert(zname(j, i));
    for (std::size_t j = 0; j < m; ++j)
        for (long long i = 0; i < ksz[j]; ++i) {
            std::string v = vname(j, i);
            std::string zf = zname(j, i);
            std::string zb = zname(j, (i + ksz[j] - 1) % ksz[j]);
            auto it = chord_at.find(v);
            if (it == chord_at.end())
                orders[v] = CyclicOrder::from_list({zf, zb});
            else if (chord_up[v])
                orders[v] = CyclicOrder::from_list({zf, it->second, zb});
            else
                orders[v] = CyclicOrder::from_list({zf, zb, it->second});
        }
    RibbonGraph r{g, orders};
    ChordalStructure c{r, zset};
    auto errs = validate_chordal(r, zset);
    if (!errs.empty()) throw std::logic_error("make_balloon_graph: " + errs.front());
    return c;
}

ChordalStructure subdivide_zero_section(const ChordalStructure& c) {
    ChordalStructure out = c;
    std::vector<std::string> zs(c.zero_section.begin(), c.zero_section.end());
    for (const auto& id : zs) {
        const Edge e = out.ribbon.graph.edge(id);
        std::string mid = id + "_m", ida = id + "_a", idb = id + "_b";
        out.ribbon.graph = out.ribbon.graph.subdivide(id, mid, ida, idb);
        // Fix the cyclic orders: the old label splits by endpoint side.
        for (int s = 0; s < 2; ++s) {
            if (!e.end[s]) continue;
            const std::string nid = s == 0 ? ida : idb;
            std::vector<Label> seq;
            for (const Label& l : out.ribbon.orders.at(*e.end[s]).sequence())
                seq.push_back(l == id ? nid : l);
            out.ribbon.orders[*e.end[s]] = CyclicOrder::from_list(seq);
        }
        out.ribbon.orders[mid] = CyclicOrder::from_list({ida, idb});
        out.zero_section.erase(id);
        out.zero_section.insert(ida);
        out.zero_section.insert(idb);
    }
    auto errs = validate_chordal(out.ribbon, out.zero_section);
    if (!errs.empty()) throw std::logic_error("subdivide_zero_section: " + errs.front());
    return out;
}

// --- Sieves --------------------------------------------------------------------

bool Sieve::contains(const PartialContraction& f) const {
    for (const PartialContraction& m : members)
        if (m == f) return true;
    return false;
}

Sieve generate_sieve(const std::vector<PartialContraction>& generators,
                     const std::vector<PartialContraction>& universe, int depth) {
    Sieve s;
    for (const PartialContraction& g : generators)
        if (!s.contains(g)) s.members.push_back(g);
    for (int d = 0; d < depth; ++d) {
        std::vector<PartialContraction> fresh;
        for (const PartialContraction& mem : s.members)
            for (const PartialContraction& u : universe) {
                if (!(u.source == mem.target)) continue;
                PartialContraction comp = compose_partial(u, mem);
                if (!s.contains(comp)) {
                    bool dup = false;
                    for (const PartialContraction& f : fresh)
                        if (f == comp) dup = true;
                    if (!dup) fresh.push_back(comp);
                }
            }
        if (fresh.empty()) break;
        for (auto& f : fresh) s.members.push_back(std::move(f));
    }
    return s;
}

std::vector<PartialContraction> standard_morphisms(const RibbonGraph& x,
                                                   const std::vector<PartialContraction>& extra) {
    std::vector<PartialContraction> out;
    out.push_back(PartialContraction::identity(x));
    for (const auto& v : x.graph.vertices())
        out.push_back(PartialContraction::open_inclusion(x, OpenSubgraph::star_of(x.graph, v)));
    for (const PartialContraction& e : extra) out.push_back(e);
    return out;
}

Sieve pullback_sieve(const PartialContraction& f, const Sieve& u,
                     const std::vector<PartialContraction>& candidates_on_target) {
    Sieve out;
    for (const PartialContraction& g : candidates_on_target) {
        if (!(g.source == f.target)) continue;
        if (u.contains(compose_partial(g, f))) out.members.push_back(g);
    }
    return out;
}

bool is_covering(const RibbonGraph& x, const Sieve& u) {
    std::set<std::string> hit;
    for (const PartialContraction& m : u.members)
        for (const auto& v : m.open.vertices) hit.insert(v);
    for (const auto& v : x.graph.vertices())
        if (!hit.count(v)) return false;
    return true;
}

}  // namespace rgk
