#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "hypcyc/group.hpp"
#include "hypcyc/rational.hpp"

namespace hypcyc {

// Canonical representative of the conjugacy class of g: an element of
// minimal word length, lexicographically smallest among those reachable by
// letter conjugations. Greedy descent followed by a closure search at
// levels <= min+1; single-letter conjugation paths between minimal-length
// elements of the supported models stay within one unit of the minimum
// (splitting a cyclic syllable costs at most one).
inline GroupElement class_canonical(const GroupElement& g,
                                    size_t visit_cap = 2000000) {
  const GroupModel& m = g.model();
  GroupElement cur = g;
  // greedy descent
  bool improved = true;
  while (improved) {
    improved = false;
    for (Letter l = 0; l < m.num_letters(); ++l) {
      GroupElement c = cur.conj(GroupElement::from_letters(m, {l}));
      if (c.length() < cur.length()) {
        cur = c;
        improved = true;
        break;
      }
    }
  }
  // closure at the bottom two levels, tracking the true minimum
  while (true) {
    int bound = cur.length() + 1;
    std::set<GroupElement> seen{cur};
    std::deque<GroupElement> q{cur};
    GroupElement best = cur;
    while (!q.empty()) {
      GroupElement x = q.front();
      q.pop_front();
      for (Letter l = 0; l < m.num_letters(); ++l) {
        GroupElement c = x.conj(GroupElement::from_letters(m, {l}));
        if (c.length() > bound) continue;
        if (!seen.insert(c).second) continue;
        if (seen.size() > visit_cap)
          throw resource_limit_error("class_canonical: visit cap exceeded");
        if (c.length() < best.length() ||
            (c.length() == best.length() && c.word() < best.word()))
          best = c;
        q.push_back(c);
      }
    }
    if (best == cur) return best;
    cur = best;  // found a shorter level; rerun closure from there
  }
}

inline bool is_torsion(const GroupElement& g) {
  const GroupModel& m = g.model();
  if (g.is_identity()) return true;
  switch (m.kind()) {
    case GroupKind::free_group:
      return false;
    case GroupKind::finite_cyclic:
      return true;
    case GroupKind::free_product:
    case GroupKind::infinite_dihedral: {
      // torsion iff conjugate into a single factor: the cyclically reduced
      // core is one syllable
      GroupElement core = class_canonical(g);
      if (core.is_identity()) return true;
      int factor = m.letter(core.word().front()).factor;
      for (Letter l : core.word())
        if (m.letter(l).factor != factor) return false;
      return true;
    }
  }
  return false;
}

// Order of a torsion element, exact by model knowledge.
inline long torsion_order(const GroupElement& g) {
  const GroupModel& m = g.model();
  if (g.is_identity()) return 1;
  if (!is_torsion(g)) throw invalid_input_error("torsion_order: infinite order");
  GroupElement core = class_canonical(g);
  int factor = m.letter(core.word().front()).factor;
  long n = (m.kind() == GroupKind::finite_cyclic) ? m.group_order()
                                                  : m.factor_orders()[size_t(factor)];
  long k = long(core.word().size());  // canonical exponent in [0, n)
  return n / std::gcd(n, k);
}

struct ConjugacyClass {
  GroupElement rep;                    // minimal-length canonical representative
  std::vector<GroupElement> members;   // class elements found in the input ball
  std::map<GroupElement, GroupElement> conjugator;  // u -> g with g rep g^-1 = u
  bool torsion = false;
  long order = 0;      // witnessed order when torsion
  bool truncated = false;  // orbit under generator conjugation leaves work ball
};

// Partitions the ball into conjugacy classes, with conjugator witnesses
// found by breadth-first orbit search inside the working ball.
inline std::vector<ConjugacyClass> conjugacy_classes(const CayleyBall& B,
                                                     int work_radius) {
  if (work_radius < B.radius())
    throw invalid_input_error("conjugacy_classes: workRadius < ball radius");
  const GroupModel& m = B.model();
  std::map<GroupElement, ConjugacyClass> by_rep;
  for (const auto& g : B.elements()) {
    GroupElement rep = class_canonical(g);
    auto it = by_rep.find(rep);
    if (it == by_rep.end()) {
      ConjugacyClass c;
      c.rep = rep;
      c.torsion = is_torsion(rep);
      c.order = c.torsion ? torsion_order(rep) : 0;
      it = by_rep.emplace(rep, std::move(c)).first;
    }
    it->second.members.push_back(g);
  }
  std::vector<ConjugacyClass> out;
  for (auto& [rep, cls] : by_rep) {
    // orbit BFS from the representative inside the working ball
    std::map<GroupElement, GroupElement> conj;  // element -> witness
    std::deque<GroupElement> q;
    conj.emplace(rep, GroupElement::identity(m));
    q.push_back(rep);
    while (!q.empty()) {
      GroupElement x = q.front();
      q.pop_front();
      for (Letter l = 0; l < m.num_letters(); ++l) {
        GroupElement gl = GroupElement::from_letters(m, {l});
        GroupElement y = x.conj(gl);
        if (y.length() > work_radius) {
          cls.truncated = true;
          continue;
        }
        if (conj.count(y)) continue;
        conj.emplace(y, gl * conj.at(x));
        q.push_back(y);
      }
    }
    for (const auto& u : cls.members) {
      auto it = conj.find(u);
      if (it == conj.end()) {
        cls.truncated = true;  // witness not reachable inside work ball
      } else {
        cls.conjugator.emplace(u, it->second);
      }
    }
    out.push_back(std::move(cls));
  }
  return out;
}

// Section sigma_v of g -> g v g^-1 by minimal-length conjugator, ties broken
// by the working ball's (length, lex) element order. sigma_v(v) = e.
struct SigmaSection {
  GroupElement v;                                   // class representative
  std::map<GroupElement, GroupElement> table;       // u -> sigma_v(u)
  std::vector<GroupElement> missing;                // members with no conjugator found
  Rat bound_constant = Rat(0);  // sup_u ( l(sigma_v(u)) - l(u)/2 ), the measured
                                // surrogate for the conjugacy-section bound

  const GroupElement& operator()(const GroupElement& u) const {
    auto it = table.find(u);
    if (it == table.end())
      throw boundary_truncation_error("sigma section: entry missing for " + u.str());
    return it->second;
  }
  bool covers(const GroupElement& u) const { return table.count(u) > 0; }
};

inline SigmaSection sigma_section(const ConjugacyClass& cls, const CayleyBall& work) {
  SigmaSection s;
  s.v = cls.rep;
  for (const auto& g : work.elements()) {  // (length, lex) order
    GroupElement u = cls.rep.conj(g);
    if (!s.table.count(u)) s.table.emplace(u, g);
  }
  for (const auto& u : cls.members) {
    auto it = s.table.find(u);
    if (it == s.table.end()) {
      s.missing.push_back(u);
      continue;
    }
    Rat slack = Rat(it->second.length()) - Rat(u.length()) / 2;
    if (slack > s.bound_constant) s.bound_constant = slack;
  }
  return s;
}

struct CentralizerData {
  GroupElement v;
  std::vector<GroupElement> elements;     // Z(v) intersected with the ball
  std::vector<GroupElement> sigma_prime;  // coset reps of v^Z in Z(v) (infinite order)
  long quotient_size = 0;                 // number of v^Z-cosets found
  Rat bound_constant = Rat(0);            // sup ( l(rep) - l_S(<v>) ), measured
  bool truncated = false;
};

// Exhaustive commutation test over the ball; for infinite-order v the
// cosets of v^Z are folded by translating with powers of v.
inline CentralizerData centralizer(const GroupElement& v, const CayleyBall& B,
                                   int work_radius) {
  CentralizerData out;
  out.v = v;
  for (const auto& h : B.elements())
    if (h * v == v * h) out.elements.push_back(h);
  if (is_torsion(v)) {
    out.quotient_size = 0;  // N(v) is defined for infinite-order v only
    return out;
  }
  // fold h by v^k to its minimal representative
  auto fold = [&](const GroupElement& h) {
    GroupElement best = h;
    long kmax = 2 * (h.length() + v.length()) + 4;
    GroupElement vp = GroupElement::identity(v.model());
    GroupElement vn = GroupElement::identity(v.model());
    for (long k = 1; k <= kmax; ++k) {
      vp = vp * v;
      vn = vn * v.inverse();
      for (const GroupElement* p : {&vp, &vn}) {
        GroupElement cand = (*p) * h;
        if (cand.length() < best.length() ||
            (cand.length() == best.length() && cand.word() < best.word()))
          best = cand;
      }
    }
    return best;
  };
  std::set<GroupElement> reps;
  int min_class_len = class_canonical(v).length();
  for (const auto& h : out.elements) {
    GroupElement r = fold(h);
    if (reps.insert(r).second) {
      out.sigma_prime.push_back(r);
      Rat slack = Rat(r.length()) - Rat(min_class_len);
      if (slack > out.bound_constant) out.bound_constant = slack;
    }
  }
  out.quotient_size = long(out.sigma_prime.size());
  (void)work_radius;
  // evidence the centralizer continues past the ball boundary
  for (const auto& h : out.elements)
    if (B.on_boundary(h)) out.truncated = true;
  return out;
}

struct StableLength {
  Rat estimate;               // l(g^n)/n at n = maxPower
  std::vector<Rat> profile;   // running minimum of l(g^k)/k, k = 1..maxPower
};

inline StableLength stable_length(const GroupElement& g, int max_power) {
  if (max_power < 1) throw invalid_input_error("stable_length: maxPower >= 1");
  StableLength out;
  if (is_torsion(g)) {
    out.estimate = 0;
    out.profile.assign(size_t(max_power), Rat(0));
    // the subadditive profile of a torsion element still decays to 0;
    // report the true running minimum
    GroupElement p = GroupElement::identity(g.model());
    Rat best(-1);
    for (int k = 1; k <= max_power; ++k) {
      p = p * g;
      Rat v = Rat(p.length()) / k;
      if (best < 0 || v < best) best = v;
      out.profile[size_t(k - 1)] = best;
    }
    out.estimate = 0;
    return out;
  }
  GroupElement p = GroupElement::identity(g.model());
  Rat best(-1);
  for (int k = 1; k <= max_power; ++k) {
    p = p * g;
    Rat v = Rat(p.length()) / k;
    if (best < 0 || v < best) best = v;
    out.profile.push_back(best);
    if (k == max_power) out.estimate = v;
  }
  return out;
}

}  // namespace hypcyc
