#pragma once

#include <deque>
#include <functional>
#include <set>

#include "hypcyc/conjugacy.hpp"
#include "hypcyc/forms.hpp"

namespace hypcyc {

// All class elements of word length <= cap, by conjugation orbit search.
// Single-letter conjugation paths from the canonical representative reach
// every class element without overshooting its length, so the search is
// complete under the cap.
inline std::vector<GroupElement> class_elements_up_to(const GroupElement& rep,
                                                      int length_cap,
                                                      size_t visit_cap = 4000000) {
  const GroupModel& m = rep.model();
  std::set<GroupElement> seen;
  std::deque<GroupElement> q;
  if (rep.length() <= length_cap) {
    seen.insert(rep);
    q.push_back(rep);
  }
  while (!q.empty()) {
    GroupElement x = q.front();
    q.pop_front();
    for (Letter l = 0; l < m.num_letters(); ++l) {
      GroupElement y = x.conj(GroupElement::from_letters(m, {l}));
      if (y.length() > length_cap) continue;
      if (!seen.insert(y).second) continue;
      if (seen.size() > visit_cap)
        throw resource_limit_error("class_elements_up_to: visit cap exceeded");
      q.push_back(y);
    }
  }
  return std::vector<GroupElement>(seen.begin(), seen.end());
}

// Visits every reduced monomial g0 dg1 ... dgn with n <= degree_cap and
// total letter length sum_i l(gi) <= weight_cap (tail entries nonidentity).
inline void for_each_reduced_form(
    const GroupModel& m, int degree_cap, int weight_cap,
    const std::function<void(const FormMonomial&)>& fn) {
  CayleyBall B(m, weight_cap, 100000000);
  std::vector<GroupElement> nontrivial;
  for (const auto& g : B.elements())
    if (!g.is_identity()) nontrivial.push_back(g);

  std::vector<GroupElement> tail;
  std::function<void(int)> rec = [&](int budget) {
    if (int(tail.size()) > degree_cap) return;
    for (const auto& head : B.elements()) {
      if (head.length() > budget) break;  // elements sorted by length
      FormMonomial w;
      w.unit_head = false;
      w.head = head;
      w.tail = tail;
      fn(w);
    }
    if (int(tail.size()) == degree_cap) return;
    for (const auto& g : nontrivial) {
      if (g.length() > budget) break;
      tail.push_back(g);
      rec(budget - g.length());
      tail.pop_back();
    }
  };
  rec(weight_cap);
}

// Reduced monomials of exact degree n, total letter length <= weight_cap,
// whose entry product lies in the given conjugacy class. Enumerates tails
// and closes with the head forced by each class element.
inline std::vector<FormMonomial> class_forms(const GroupModel& m,
                                             const GroupElement& class_rep,
                                             int degree, int weight_cap) {
  std::vector<FormMonomial> out;
  std::vector<GroupElement> cls = class_elements_up_to(class_rep, weight_cap);
  if (degree == 0) {
    for (const auto& c : cls) out.push_back(form_of(c));
    return out;
  }
  CayleyBall B(m, weight_cap, 100000000);
  std::vector<GroupElement> nontrivial;
  for (const auto& g : B.elements())
    if (!g.is_identity()) nontrivial.push_back(g);

  std::vector<GroupElement> tail;
  std::function<void(int, const GroupElement&)> rec = [&](int budget,
                                                          const GroupElement& prod) {
    if (int(tail.size()) == degree) {
      GroupElement pinv = prod.inverse();
      for (const auto& c : cls) {
        GroupElement head = c * pinv;
        if (head.length() <= budget) {
          FormMonomial w;
          w.unit_head = false;
          w.head = head;
          w.tail = tail;
          out.push_back(std::move(w));
        }
      }
      return;
    }
    int slots_left = degree - int(tail.size());
    for (const auto& g : nontrivial) {
      if (g.length() > budget - (slots_left - 1)) break;
      tail.push_back(g);
      rec(budget - g.length(), prod * g);
      tail.pop_back();
    }
  };
  rec(weight_cap, GroupElement::identity(m));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Twisted simplices [e, g1, ..., gn; v] of weight <= cap, one representative
// per translation orbit (the weight and all weighted norms are translation
// invariant, so scans over these representatives are lossless).
inline std::vector<TwistedSimplex> based_twisted_simplices(
    const GroupModel& m, const GroupElement& twist, int degree, int weight_cap) {
  std::vector<TwistedSimplex> out;
  CayleyBall steps(m, weight_cap, 100000000);  // sorted by (length, lex)
  GSimplex verts{GroupElement::identity(m)};
  std::function<void(int)> rec = [&](int used) {
    if (int(verts.size()) == degree + 1) {
      int w = used + dist(verts.back(), twist * verts.front());
      if (w <= weight_cap) out.push_back(TwistedSimplex{verts, twist});
      return;
    }
    for (const auto& h : steps.elements()) {
      int step = h.length();
      if (used + step > weight_cap) break;
      verts.push_back(verts.back() * h);
      rec(used + step);
      verts.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace hypcyc
