#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace rgk {

using Label = std::string;

// A cyclic order on a finite label set, stored as a successor map (a single
// n-cycle), canonically rotated so the lexicographically least label comes
// first.  The ternary relation and minimal pairs are derived on demand.
class CyclicOrder {
  public:
    CyclicOrder() = default;

    // Successor order given by the list; throws on duplicates or empty input.
    static CyclicOrder from_list(const std::vector<Label>& labels);

    std::size_t size() const { return seq_.size(); }
    bool contains(const Label& x) const;
    const std::vector<Label>& sequence() const { return seq_; }  // canonical rotation

    Label succ(const Label& x) const;
    Label pred(const Label& x) const;

    // Ternary relation: walking from x by succ, y appears strictly before z.
    // Requires x, y, z distinct.
    bool rel(const Label& x, const Label& y, const Label& z) const;

    bool minimal_pair(const Label& x, const Label& y) const { return succ(x) == y; }

    bool operator==(const CyclicOrder& o) const { return seq_ == o.seq_; }
    bool operator!=(const CyclicOrder& o) const { return seq_ != o.seq_; }

  private:
    std::vector<Label> seq_;
    std::map<Label, std::size_t> pos_;
    void index();
};

// Induced cyclic order on a nonempty subset.
CyclicOrder induced_order(const CyclicOrder& c, const std::set<Label>& sub);

// Noninterlacing test for two subsets of c, per the minimal-pair clause on
// every 4-tuple of distinct elements x1,y1 in a and x2,y2 in b.
bool noninterlacing(const CyclicOrder& c, const std::set<Label>& a, const std::set<Label>& b);

// Join of c1 and c2 along p and q.  Labels of c1-{p} and c2-{q} must be
// disjoint.
CyclicOrder join(const CyclicOrder& c1, const Label& p, const CyclicOrder& c2, const Label& q);

// All cyclic orders on the given label set (test helper; (n-1)! of them).
std::vector<CyclicOrder> all_cyclic_orders(const std::vector<Label>& labels);

// --- Unwindings ------------------------------------------------------------
//
// The group G_n is generated by commuting R, S with R^n = S^2.  A cover
// element is a pair (base label, integer level); S raises the level by one,
// and R steps to the successor adding an even per-element shift whose total
// around the cycle is 2, so R^n = S^2 holds on the nose.  Fibers are
// Z-torsors under S; sigma sends (c, m) to the parity class of m.

struct CoverElem {
    Label base;
    long long level = 0;
    bool operator==(const CoverElem& o) const = default;
    auto operator<=>(const CoverElem& o) const = default;
};

class Unwinding {
  public:
    Unwinding() = default;
    // rshift values must be even and sum to 2.
    Unwinding(CyclicOrder base, std::map<Label, long long> rshift,
              std::pair<Label, Label> tau = {"+", "-"}, int sigma_even = 0);

    // The standard compass unwinding on [E,N,W,S] with E <-> 0; the level-2
    // jump sits on the S -> E step.
    static Unwinding compass();

    const CyclicOrder& base() const { return base_; }
    const std::map<Label, long long>& rshift() const { return rshift_; }
    const std::pair<Label, Label>& tau() const { return tau_; }
    int sigma_even() const { return sigma_even_; }

    CoverElem act_R(const CoverElem& x) const;
    CoverElem act_R_inv(const CoverElem& x) const;
    CoverElem act_S(const CoverElem& x) const { return {x.base, x.level + 1}; }
    CoverElem act_S_inv(const CoverElem& x) const { return {x.base, x.level - 1}; }

    // Apply a word in {'R','r','S','s'} (lower case = inverse), leftmost
    // letter acting last.
    CoverElem act_word(const std::string& word, const CoverElem& x) const;

    Label rho(const CoverElem& x) const { return x.base; }
    Label sigma(const CoverElem& x) const;

    // Induced unwinding on a nonempty subset of the base: R over x composes
    // the shifts along the minimal chain from x to its subset-successor.
    Unwinding induced(const std::set<Label>& sub) const;

    // Same torsor with base labels renamed through the given bijection.
    Unwinding relabeled(const std::map<Label, Label>& names) const;

    // Checks the torsor axioms (R^n = S^2, commutation, equivariance,
    // freeness/transitivity on a level window); returns diagnostics.
    std::vector<std::string> validate() const;

    bool operator==(const Unwinding& o) const = default;

  private:
    CyclicOrder base_;
    std::map<Label, long long> rshift_;
    std::pair<Label, Label> tau_{"+", "-"};
    int sigma_even_ = 0;
};

}  // namespace rgk
