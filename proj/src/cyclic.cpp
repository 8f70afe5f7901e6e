#include "rgk/cyclic.hpp"

#include <algorithm>
#include <stdexcept>

namespace rgk {

void CyclicOrder::index() {
    pos_.clear();
    for (std::size_t i = 0; i < seq_.size(); ++i) pos_[seq_[i]] = i;
}

CyclicOrder CyclicOrder::from_list(const std::vector<Label>& labels) {
    if (labels.empty()) throw std::invalid_argument("cyclic order on empty set");
    std::set<Label> seen;
    for (const Label& l : labels)
        if (!seen.insert(l).second)
            throw std::invalid_argument("duplicate label in cyclic order: '" + l + "'");
    CyclicOrder c;
    c.seq_ = labels;
    auto least = std::min_element(c.seq_.begin(), c.seq_.end());
    std::rotate(c.seq_.begin(), least, c.seq_.end());
    c.index();
    return c;
}

bool CyclicOrder::contains(const Label& x) const { return pos_.count(x) != 0; }

Label CyclicOrder::succ(const Label& x) const {
    auto it = pos_.find(x);
    if (it == pos_.end()) throw std::invalid_argument("label not in cyclic order: '" + x + "'");
    return seq_[(it->second + 1) % seq_.size()];
}

Label CyclicOrder::pred(const Label& x) const {
    auto it = pos_.find(x);
    if (it == pos_.end()) throw std::invalid_argument("label not in cyclic order: '" + x + "'");
    return seq_[(it->second + seq_.size() - 1) % seq_.size()];
}

bool CyclicOrder::rel(const Label& x, const Label& y, const Label& z) const {
    if (x == y || y == z || x == z) return false;
    Label cur = succ(x);
    while (cur != x) {
        if (cur == y) return true;
        if (cur == z) return false;
        cur = succ(cur);
    }
    throw std::logic_error("cyclic order walk did not meet y or z");
}

CyclicOrder induced_order(const CyclicOrder& c, const std::set<Label>& sub) {
    if (sub.empty()) throw std::invalid_argument("induced order on empty subset");
    for (const Label& s : sub)
        if (!c.contains(s)) throw std::invalid_argument("subset label not in cyclic order: " + s);
    std::vector<Label> out;
    Label start = *sub.begin();
    Label cur = start;
    do {
        out.push_back(cur);
        cur = c.succ(cur);
        while (!sub.count(cur)) cur = c.succ(cur);
    } while (cur != start);
    return CyclicOrder::from_list(out);
}

bool noninterlacing(const CyclicOrder& c, const std::set<Label>& a, const std::set<Label>& b) {
    for (const Label& x1 : a)
        for (const Label& y1 : a) {
            if (x1 == y1) continue;
            for (const Label& x2 : b)
                for (const Label& y2 : b) {
                    if (x2 == y2 || x2 == x1 || x2 == y1 || y2 == x1 || y2 == y1) continue;
                    CyclicOrder four = induced_order(c, {x1, y1, x2, y2});
                    if (!four.minimal_pair(x1, y1) && !four.minimal_pair(y1, x1)) return false;
                }
        }
    return true;
}

CyclicOrder join(const CyclicOrder& c1, const Label& p, const CyclicOrder& c2, const Label& q) {
    if (!c1.contains(p) || !c2.contains(q))
        throw std::invalid_argument("join: element not in its cyclic order");
    std::vector<Label> out;
    for (Label cur = c1.succ(p); cur != p; cur = c1.succ(cur)) out.push_back(cur);
    std::set<Label> left(out.begin(), out.end());
    for (Label cur = c2.succ(q); cur != q; cur = c2.succ(cur)) {
        if (left.count(cur)) throw std::invalid_argument("join: label collision at '" + cur + "'");
        out.push_back(cur);
    }
    if (out.empty()) throw std::invalid_argument("join: both sides are singletons");
    return CyclicOrder::from_list(out);
}

std::vector<CyclicOrder> all_cyclic_orders(const std::vector<Label>& labels) {
    if (labels.empty()) return {};
    std::vector<Label> rest(labels.begin() + 1, labels.end());
    std::sort(rest.begin(), rest.end());
    std::vector<CyclicOrder> out;
    do {
        std::vector<Label> seq = {labels[0]};
        seq.insert(seq.end(), rest.begin(), rest.end());
        out.push_back(CyclicOrder::from_list(seq));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

// --- Unwinding --------------------------------------------------------------

Unwinding::Unwinding(CyclicOrder base, std::map<Label, long long> rshift,
                     std::pair<Label, Label> tau, int sigma_even)
    : base_(std::move(base)), rshift_(std::move(rshift)), tau_(std::move(tau)),
      sigma_even_(sigma_even) {
    long long total = 0;
    for (const Label& l : base_.sequence()) {
        auto it = rshift_.find(l);
        if (it == rshift_.end())
            throw std::invalid_argument("unwinding: missing R-shift for '" + l + "'");
        if (it->second % 2 != 0)
            throw std::invalid_argument("unwinding: odd R-shift at '" + l + "'");
        total += it->second;
    }
    if (rshift_.size() != base_.size())
        throw std::invalid_argument("unwinding: R-shift labels do not match the base");
    if (total != 2) throw std::invalid_argument("unwinding: R-shifts must sum to 2 (R^n = S^2)");
}

Unwinding Unwinding::compass() {
    CyclicOrder d = CyclicOrder::from_list({"E", "N", "W", "S"});
    return Unwinding(d, {{"E", 0}, {"N", 0}, {"W", 0}, {"S", 2}});
}

CoverElem Unwinding::act_R(const CoverElem& x) const {
    return {base_.succ(x.base), x.level + rshift_.at(x.base)};
}

CoverElem Unwinding::act_R_inv(const CoverElem& x) const {
    Label p = base_.pred(x.base);
    return {p, x.level - rshift_.at(p)};
}

CoverElem Unwinding::act_word(const std::string& word, const CoverElem& x) const {
    CoverElem cur = x;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        switch (*it) {
            case 'R': cur = act_R(cur); break;
            case 'r': cur = act_R_inv(cur); break;
            case 'S': cur = act_S(cur); break;
            case 's': cur = act_S_inv(cur); break;
            default: throw std::invalid_argument("unwinding word: bad letter");
        }
    }
    return cur;
}

Label Unwinding::sigma(const CoverElem& x) const {
    long long parity = ((x.level % 2) + 2) % 2;
    bool even_class = (parity == sigma_even_ % 2);
    return even_class ? tau_.first : tau_.second;
}

Unwinding Unwinding::induced(const std::set<Label>& sub) const {
    if (sub.empty()) throw std::invalid_argument("induced unwinding on empty subset");
    CyclicOrder c = induced_order(base_, sub);
    std::map<Label, long long> shifts;
    for (const Label& x : c.sequence()) {
        // Compose the shifts along the minimal chain in the ambient base from
        // x to its subset-successor.  For a singleton subset the chain is the
        // full ambient lap, giving R = S^2 on the fiber.
        Label target = c.succ(x);
        long long total = 0;
        Label cur = x;
        do {
            total += rshift_.at(cur);
            cur = base_.succ(cur);
        } while (cur != target);
        shifts[x] = total;
    }
    return Unwinding(c, shifts, tau_, sigma_even_);
}

Unwinding Unwinding::relabeled(const std::map<Label, Label>& names) const {
    std::vector<Label> seq;
    for (const Label& l : base_.sequence()) seq.push_back(names.at(l));
    std::map<Label, long long> shifts;
    for (const auto& [l, s] : rshift_) shifts[names.at(l)] = s;
    return Unwinding(CyclicOrder::from_list(seq), shifts, tau_, sigma_even_);
}

std::vector<std::string> Unwinding::validate() const {
    std::vector<std::string> errs;
    const long long n = static_cast<long long>(base_.size());
    for (const Label& l : base_.sequence()) {
        CoverElem x{l, 0};
        CoverElem rn = x;
        for (long long i = 0; i < n; ++i) rn = act_R(rn);
        CoverElem s2 = act_S(act_S(x));
        if (!(rn == s2)) errs.push_back("R^n != S^2 over '" + l + "'");
        if (!(act_R(act_S(x)) == act_S(act_R(x)))) errs.push_back("R and S do not commute at '" + l + "'");
        if (rho(act_R(x)) != base_.succ(l)) errs.push_back("rho not R-equivariant at '" + l + "'");
        if (sigma(act_R(x)) != sigma(x)) errs.push_back("sigma not R-invariant at '" + l + "'");
        if (sigma(act_S(x)) == sigma(x)) errs.push_back("sigma does not flip under S at '" + l + "'");
    }
    // Free transitive action on a window: from any anchor, words R^a S^b
    // reach each (label, level) exactly once.
    std::set<CoverElem> seen;
    CoverElem anchor{base_.sequence().front(), 0};
    for (long long b = -4; b <= 4; ++b)
        for (long long a = 0; a < n; ++a) {
            CoverElem y = anchor;
            for (long long i = 0; i < a; ++i) y = act_R(y);
            y.level += b;  // S^b
            if (!seen.insert(y).second) {
                errs.push_back("G_n action is not free on the sampled window");
                return errs;
            }
        }
    return errs;
}

}  // namespace rgk
