#include "rgk/quiver.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rgk {

ConicLagrangian ConicLagrangian::make(BaseKind base, std::vector<Spoke> spokes) {
    ConicLagrangian lag;
    lag.base = base;
    if (base == BaseKind::CIRCLE)
        for (Spoke& s : spokes) s.at = rat_mod1(s.at);
    std::sort(spokes.begin(), spokes.end(), [](const Spoke& a, const Spoke& b) {
        if (a.at != b.at) return a.at < b.at;
        return a.dir == SpokeDir::UP && b.dir == SpokeDir::DOWN;
    });
    for (std::size_t i = 1; i < spokes.size(); ++i)
        if (spokes[i] == spokes[i - 1])
            throw std::invalid_argument("duplicate spoke at " + rat_str(spokes[i].at));
    lag.spokes = std::move(spokes);
    return lag;
}

std::vector<Rat> ConicLagrangian::points() const {
    std::vector<Rat> out;
    for (const Spoke& s : spokes)
        if (out.empty() || out.back() != s.at) out.push_back(s.at);
    return out;
}

bool ConicLagrangian::has(const Rat& at, SpokeDir d) const {
    for (const Spoke& s : spokes)
        if (s.at == at && s.dir == d) return true;
    return false;
}

std::string Cell::label() const {
    if (point) return "{" + rat_str(lo) + "}";
    std::string l = lo_unbounded ? "(-inf" : (lo_closed ? "[" : "(") + rat_str(lo);
    std::string h = hi_unbounded ? "+inf)" : rat_str(hi) + (hi_closed ? "]" : ")");
    return l + "," + h;
}

std::vector<Cell> partition(const ConicLagrangian& lag) {
    std::vector<Rat> xs = lag.points();
    const std::size_t k = xs.size();
    auto up = [&](std::size_t i) { return lag.has(xs[i], SpokeDir::UP); };
    auto down = [&](std::size_t i) { return lag.has(xs[i], SpokeDir::DOWN); };
    auto up_only = [&](std::size_t i) { return up(i) && !down(i); };
    auto down_only = [&](std::size_t i) { return down(i) && !up(i); };

    std::vector<Cell> cells;
    if (lag.base == BaseKind::LINE) {
        if (k == 0) {
            Cell whole;
            whole.lo_unbounded = whole.hi_unbounded = true;
            return {whole};
        }
        Cell left;
        left.lo_unbounded = true;
        left.hi = xs[0];
        left.hi_closed = down_only(0);
        cells.push_back(left);
        for (std::size_t i = 0; i < k; ++i) {
            if (up(i) && down(i)) {
                Cell pt;
                pt.point = true;
                pt.lo = pt.hi = xs[i];
                pt.lo_closed = pt.hi_closed = true;
                cells.push_back(pt);
            }
            Cell iv;
            iv.lo = xs[i];
            iv.lo_closed = up_only(i);
            if (i + 1 < k) {
                iv.hi = xs[i + 1];
                iv.hi_closed = down_only(i + 1);
            } else {
                iv.hi_unbounded = true;
            }
            cells.push_back(iv);
        }
        return cells;
    }
    // CIRCLE
    if (k == 0) {
        Cell whole;
        whole.lo = 0;
        whole.hi = 1;
        return {whole};
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (up(i) && down(i)) {
            Cell pt;
            pt.point = true;
            pt.lo = pt.hi = xs[i];
            pt.lo_closed = pt.hi_closed = true;
            cells.push_back(pt);
        }
        Cell iv;
        iv.lo = xs[i];
        iv.lo_closed = up_only(i);
        std::size_t j = (i + 1) % k;
        iv.hi = (j == 0) ? xs[0] + 1 : xs[j];  // wraps past 1 on the last arc
        iv.hi_closed = down_only(j);
        cells.push_back(iv);
    }
    return cells;
}

bool Quiver::acyclic() const {
    std::vector<int> state(cells.size(), 0);
    std::vector<std::vector<std::size_t>> out(cells.size());
    for (std::size_t a = 0; a < arrows.size(); ++a) out[arrows[a].src].push_back(arrows[a].dst);
    // Iterative DFS with colors.
    for (std::size_t root = 0; root < cells.size(); ++root) {
        if (state[root]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        state[root] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < out[v].size()) {
                std::size_t w = out[v][i++];
                if (state[w] == 1) return false;
                if (state[w] == 0) {
                    state[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

bool Quiver::is_sink(std::size_t v) const {
    for (const Arrow& a : arrows)
        if (a.src == v) return false;
    return true;
}

bool Quiver::is_source(std::size_t v) const {
    for (const Arrow& a : arrows)
        if (a.dst == v) return false;
    return true;
}

std::optional<std::size_t> Quiver::arrow_at(const Rat& at, SpokeDir d) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].spoke.at == at && arrows[i].spoke.dir == d) return i;
    return std::nullopt;
}

std::string Quiver::shape() const {
    std::string out;
    for (const Arrow& a : arrows) {
        if (!out.empty()) out += ' ';
        out += std::to_string(a.src) + "->" + std::to_string(a.dst);
    }
    return out;
}

Quiver quiver_from_lagrangian(const ConicLagrangian& lag) {
    Quiver q;
    q.base = lag.base;
    q.cells = partition(lag);
    std::vector<Rat> xs = lag.points();
    const std::size_t k = xs.size();
    if (k == 0) return q;

    // Locate, per marked point, the interval cell starting there, the point
    // cell if any, and the interval cell ending there.
    std::map<std::size_t, std::size_t> start_iv, point_cell;
    for (std::size_t c = 0; c < q.cells.size(); ++c) {
        const Cell& cell = q.cells[c];
        for (std::size_t i = 0; i < k; ++i) {
            if (cell.point && cell.lo == xs[i]) point_cell[i] = c;
            if (!cell.point && !cell.lo_unbounded && cell.lo == xs[i]) start_iv[i] = c;
        }
    }
    auto left_cell = [&](std::size_t i) -> std::size_t {
        if (lag.base == BaseKind::LINE) return i == 0 ? 0 : start_iv.at(i - 1);
        return start_iv.at((i + k - 1) % k);
    };
    auto right_cell = [&](std::size_t i) { return start_iv.at(i); };

    for (std::size_t i = 0; i < k; ++i) {
        bool u = lag.has(xs[i], SpokeDir::UP), d = lag.has(xs[i], SpokeDir::DOWN);
        if (u && d) {
            q.arrows.push_back({point_cell.at(i), left_cell(i), {xs[i], SpokeDir::UP}});
            q.arrows.push_back({point_cell.at(i), right_cell(i), {xs[i], SpokeDir::DOWN}});
        } else if (u) {
            q.arrows.push_back({right_cell(i), left_cell(i), {xs[i], SpokeDir::UP}});
        } else {
            q.arrows.push_back({left_cell(i), right_cell(i), {xs[i], SpokeDir::DOWN}});
        }
    }
    return q;
}

Quiver type_a_quiver(const std::vector<bool>& arrow_points_left) {
    std::vector<Spoke> spokes;
    for (std::size_t i = 0; i < arrow_points_left.size(); ++i)
        spokes.push_back({Rat(static_cast<int>(i) + 1),
                          arrow_points_left[i] ? SpokeDir::UP : SpokeDir::DOWN});
    return quiver_from_lagrangian(ConicLagrangian::make(BaseKind::LINE, spokes));
}

Rep Rep::zero(const Quiver& q) {
    Rep r;
    r.dims.assign(q.cells.size(), 0);
    for (const Arrow& a : q.arrows) r.maps.push_back(Mat(0, 0));
    return r;
}

Rep Rep::simple(const Quiver& q, std::size_t v) {
    Rep r;
    r.dims.assign(q.cells.size(), 0);
    r.dims[v] = 1;
    for (const Arrow& a : q.arrows) r.maps.push_back(Mat(r.dims[a.dst], r.dims[a.src]));
    return r;
}

Rep Rep::constant(const Quiver& q) {
    Rep r;
    r.dims.assign(q.cells.size(), 1);
    for (const Arrow& a : q.arrows) r.maps.push_back(Mat::identity(1));
    return r;
}

std::vector<std::string> Rep::diagnose(const Quiver& q) const {
    std::vector<std::string> errs;
    if (dims.size() != q.cells.size()) errs.push_back("dimension vector length mismatch");
    if (maps.size() != q.arrows.size()) errs.push_back("one matrix per arrow required");
    if (!errs.empty()) return errs;
    for (std::size_t a = 0; a < maps.size(); ++a)
        if (maps[a].rows() != dims[q.arrows[a].dst] || maps[a].cols() != dims[q.arrows[a].src])
            errs.push_back("matrix shape mismatch at arrow " + std::to_string(a));
    return errs;
}

HomComplex hom_complex(const Quiver& q, const Rep& m, const Rep& n) {
    auto em = m.diagnose(q), en = n.diagnose(q);
    if (!em.empty() || !en.empty())
        throw std::invalid_argument("hom_complex: invalid representation");
    HomComplex hc;
    hc.vertex_offset.resize(q.cells.size());
    for (std::size_t v = 0; v < q.cells.size(); ++v) {
        hc.vertex_offset[v] = hc.dim0;
        hc.dim0 += n.dims[v] * m.dims[v];
    }
    hc.arrow_offset.resize(q.arrows.size());
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        hc.arrow_offset[a] = hc.dim1;
        hc.dim1 += n.dims[q.arrows[a].dst] * m.dims[q.arrows[a].src];
    }
    // Coordinates of Hom(A, B) blocks are row-major (i, j), i in B, j in A.
    hc.delta = Mat(hc.dim1, hc.dim0);
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        std::size_t s = q.arrows[a].src, t = q.arrows[a].dst;
        std::size_t ms = m.dims[s], nt = n.dims[t];
        for (std::size_t i = 0; i < nt; ++i)
            for (std::size_t j = 0; j < ms; ++j) {
                std::size_t row = hc.arrow_offset[a] + i * ms + j;
                // (N_a phi_s)[i,j] = sum_k N_a[i,k] phi_s[k,j]
                for (std::size_t kk = 0; kk < n.dims[s]; ++kk)
                    hc.delta(row, hc.vertex_offset[s] + kk * m.dims[s] + j) += n.maps[a](i, kk);
                // -(phi_t M_a)[i,j] = -sum_k phi_t[i,k] M_a[k,j]
                for (std::size_t kk = 0; kk < m.dims[t]; ++kk)
                    hc.delta(row, hc.vertex_offset[t] + i * m.dims[t] + kk) -= m.maps[a](kk, j);
            }
    }
    return hc;
}

std::pair<std::size_t, std::size_t> hom_ext(const Quiver& q, const Rep& m, const Rep& n) {
    HomComplex hc = hom_complex(q, m, n);
    std::size_t r = rank(hc.delta);
    return {hc.dim0 - r, hc.dim1 - r};
}

long long euler_form(const Quiver& q, const std::vector<long long>& d,
                     const std::vector<long long>& e) {
    if (d.size() != q.cells.size() || e.size() != q.cells.size())
        throw std::invalid_argument("euler_form: dimension vector shape mismatch");
    long long out = 0;
    for (std::size_t v = 0; v < d.size(); ++v) out += d[v] * e[v];
    for (const Arrow& a : q.arrows) out -= d[a.src] * e[a.dst];
    return out;
}

std::vector<long long> reflect_dim_vector(const Quiver& q, std::size_t x,
                                          const std::vector<long long>& d) {
    std::vector<long long> out = d;
    long long nbr = 0;
    for (const Arrow& a : q.arrows) {
        if (a.src == x && a.dst == x) throw std::invalid_argument("reflection at a loop vertex");
        if (a.src == x) nbr += d[a.dst];
        if (a.dst == x) nbr += d[a.src];
    }
    out[x] = nbr - d[x];
    return out;
}

Stalk microlocal_stalk(const Quiver& q, const Rep& m, std::size_t arrow) {
    if (arrow >= q.arrows.size()) throw std::invalid_argument("microlocal_stalk: bad arrow");
    const Mat& f = m.maps[arrow];
    Stalk s;
    s.ker_basis = kernel_basis(f);
    s.ker_retraction = kernel_retraction(f);
    s.coker_proj = coker_projection(f);
    s.coker_sec = coker_section(f);
    s.h_minus1 = s.ker_basis.cols();
    s.h0 = s.coker_proj.rows();
    return s;
}

Reflected bgp_reflect(const Quiver& q, std::size_t x, const Rep& m) {
    auto errs = m.diagnose(q);
    if (!errs.empty()) throw std::invalid_argument("bgp_reflect: invalid representation");
    bool sink = q.is_sink(x), source = q.is_source(x);
    if (!sink && !source) throw std::invalid_argument("bgp_reflect: vertex is neither sink nor source");

    Reflected out;
    out.quiver = q;
    std::vector<std::size_t> touched;
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
        if (q.arrows[a].src == x || q.arrows[a].dst == x) {
            std::swap(out.quiver.arrows[a].src, out.quiver.arrows[a].dst);
            out.quiver.arrows[a].spoke.dir = out.quiver.arrows[a].spoke.dir == SpokeDir::UP
                                                 ? SpokeDir::DOWN
                                                 : SpokeDir::UP;
            touched.push_back(a);
        }

    out.rep = m;
    if (touched.empty()) return out;

    if (sink) {
        // New space at x: kernel of (+) M_s(a) -> M_x.
        std::size_t total = 0;
        std::vector<std::size_t> off;
        for (std::size_t a : touched) {
            off.push_back(total);
            total += m.dims[q.arrows[a].src];
        }
        Mat big(m.dims[x], total);
        for (std::size_t ai = 0; ai < touched.size(); ++ai) {
            const Mat& f = m.maps[touched[ai]];
            for (std::size_t i = 0; i < f.rows(); ++i)
                for (std::size_t j = 0; j < f.cols(); ++j) big(i, off[ai] + j) = f(i, j);
        }
        Mat k = kernel_basis(big);
        out.rep.dims[x] = k.cols();
        for (std::size_t ai = 0; ai < touched.size(); ++ai) {
            std::size_t a = touched[ai];
            std::size_t s = q.arrows[a].src;  // new target
            Mat proj(m.dims[s], k.cols());
            for (std::size_t i = 0; i < m.dims[s]; ++i)
                for (std::size_t j = 0; j < k.cols(); ++j) proj(i, j) = k(off[ai] + i, j);
            out.rep.maps[a] = proj;
        }
    } else {
        // New space at x: cokernel of M_x -> (+) M_t(a).
        std::size_t total = 0;
        std::vector<std::size_t> off;
        for (std::size_t a : touched) {
            off.push_back(total);
            total += m.dims[q.arrows[a].dst];
        }
        Mat big(total, m.dims[x]);
        for (std::size_t ai = 0; ai < touched.size(); ++ai) {
            const Mat& f = m.maps[touched[ai]];
            for (std::size_t i = 0; i < f.rows(); ++i)
                for (std::size_t j = 0; j < f.cols(); ++j) big(off[ai] + i, j) = f(i, j);
        }
        Mat qq = coker_projection(big);
        out.rep.dims[x] = qq.rows();
        for (std::size_t ai = 0; ai < touched.size(); ++ai) {
            std::size_t a = touched[ai];
            std::size_t t = q.arrows[a].dst;  // new source
            Mat incl(qq.rows(), m.dims[t]);
            for (std::size_t i = 0; i < qq.rows(); ++i)
                for (std::size_t j = 0; j < m.dims[t]; ++j) incl(i, j) = qq(i, off[ai] + j);
            out.rep.maps[a] = incl;
        }
    }
    return out;
}

ConicLagrangian normalize_spokes(const ConicLagrangian& lag) {
    std::vector<Rat> xs = lag.points();
    const std::size_t k = xs.size();
    if (k == 0) return lag;
    std::vector<std::pair<bool, bool>> flags;
    for (const Rat& x : xs)
        flags.push_back({lag.has(x, SpokeDir::UP), lag.has(x, SpokeDir::DOWN)});

    std::size_t shift = 0;
    if (lag.base == BaseKind::CIRCLE) {
        auto rotated = [&](std::size_t s) {
            std::vector<std::pair<bool, bool>> out;
            for (std::size_t i = 0; i < k; ++i) out.push_back(flags[(s + i) % k]);
            return out;
        };
        auto best = rotated(0);
        for (std::size_t s = 1; s < k; ++s) {
            auto cand = rotated(s);
            if (cand < best) {
                best = cand;
                shift = s;
            }
        }
        flags = best;
    }
    std::vector<Spoke> spokes;
    for (std::size_t i = 0; i < k; ++i) {
        Rat pos = lag.base == BaseKind::CIRCLE ? Rat(static_cast<int>(i), static_cast<int>(k))
                                               : Rat(static_cast<int>(i) + 1);
        if (flags[i].first) spokes.push_back({pos, SpokeDir::UP});
        if (flags[i].second) spokes.push_back({pos, SpokeDir::DOWN});
    }
    (void)shift;
    return ConicLagrangian::make(lag.base, spokes);
}

Rep projective(const Quiver& q, std::size_t v) {
    if (!q.acyclic()) throw std::invalid_argument("projective: quiver has an oriented cycle");
    // Enumerate all paths out of v in arrow-index order.
    std::vector<std::vector<std::vector<std::size_t>>> paths(q.cells.size());
    std::vector<std::vector<std::size_t>> frontier = {{}};
    paths[v].push_back({});
    while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& p : frontier) {
            std::size_t end = v;
            for (std::size_t a : p) end = q.arrows[a].dst;
            for (std::size_t a = 0; a < q.arrows.size(); ++a) {
                if (q.arrows[a].src != end) continue;
                auto p2 = p;
                p2.push_back(a);
                paths[q.arrows[a].dst].push_back(p2);
                next.push_back(p2);
            }
        }
        frontier = std::move(next);
    }
    Rep r;
    r.dims.resize(q.cells.size());
    for (std::size_t w = 0; w < q.cells.size(); ++w) r.dims[w] = paths[w].size();
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        std::size_t s = q.arrows[a].src, t = q.arrows[a].dst;
        Mat f(r.dims[t], r.dims[s]);
        for (std::size_t j = 0; j < paths[s].size(); ++j) {
            auto p2 = paths[s][j];
            p2.push_back(a);
            for (std::size_t i = 0; i < paths[t].size(); ++i)
                if (paths[t][i] == p2) f(i, j) = 1;
        }
        r.maps.push_back(f);
    }
    return r;
}

}  // namespace rgk
