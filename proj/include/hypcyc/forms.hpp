#pragma once

#include "hypcyc/chain.hpp"
#include "hypcyc/conjugacy.hpp"

namespace hypcyc {

// Operators on algebraic differential forms over a group ring, in the
// monomial basis a0 da1 ... dan (head in the group or the adjoined unit,
// tail in the group). The tensor picture identifies a group-headed monomial
// with a0 (x) a1 (x) ... (x) an.

// Hochschild boundary operator.
inline FChain hochschild_b(const FormMonomial& w, const GroupModel& m) {
  FChain out;
  int n = w.degree();
  if (n == 0) return out;
  // merge head with first tail entry (the adjoined unit acts as identity)
  {
    FormMonomial t;
    t.unit_head = false;
    t.head = w.unit_head ? w.tail[0] : w.head * w.tail[0];
    t.tail.assign(w.tail.begin() + 1, w.tail.end());
    out.add(t, Rat(1));
  }
  Rat sign(-1);
  for (int i = 1; i < n; ++i) {
    FormMonomial t = w;
    t.tail[size_t(i - 1)] = w.tail[size_t(i - 1)] * w.tail[size_t(i)];
    t.tail.erase(t.tail.begin() + i);
    out.add(t, sign);
    sign = -sign;
  }
  {
    FormMonomial t;
    t.unit_head = false;
    t.head = w.unit_head ? w.tail.back() : w.tail.back() * w.head;
    t.tail.assign(w.tail.begin(), w.tail.end() - 1);
    out.add(t, sign);
  }
  (void)m;
  return out;
}
inline FChain hochschild_b(const FChain& c, const GroupModel& m) {
  return c.map([&](const FormMonomial& w) { return hochschild_b(w, m); });
}

// Connes' operator. Vanishes on unit-headed forms (d of the adjoined unit
// is zero); on a group-headed monomial it cycles the head into the tail.
inline FChain connes_B(const FormMonomial& w, const GroupModel& m) {
  (void)m;
  FChain out;
  if (w.unit_head) return out;
  int n = w.degree();
  for (int i = 0; i <= n; ++i) {
    std::vector<GroupElement> tail;
    tail.reserve(size_t(n) + 1);
    for (int j = i; j <= n; ++j) tail.push_back(j == 0 ? w.head : w.tail[size_t(j - 1)]);
    for (int j = 0; j < i; ++j) tail.push_back(j == 0 ? w.head : w.tail[size_t(j - 1)]);
    Rat sign = (long(i) * n) % 2 == 0 ? Rat(1) : Rat(-1);
    out.add(unit_form(std::move(tail)), sign);
  }
  return out;
}
inline FChain connes_B(const FChain& c, const GroupModel& m) {
  return c.map([&](const FormMonomial& w) { return connes_B(w, m); });
}

inline FChain d_form(const FormMonomial& w) {
  FChain out;
  if (w.unit_head) return out;
  std::vector<GroupElement> tail;
  tail.reserve(w.tail.size() + 1);
  tail.push_back(w.head);
  tail.insert(tail.end(), w.tail.begin(), w.tail.end());
  out.add(unit_form(std::move(tail)), Rat(1));
  return out;
}

// Cyclic permutation operator on the tensor complex (group-headed forms).
inline FChain cyclic_T(const FormMonomial& w) {
  if (w.unit_head)
    throw invalid_input_error("cyclic_T: defined on the tensor complex only");
  FChain out;
  int n = w.degree();
  if (n == 0) {
    out.add(w, Rat(1));
    return out;
  }
  FormMonomial t;
  t.unit_head = false;
  t.head = w.tail.back();
  t.tail.push_back(w.head);
  t.tail.insert(t.tail.end(), w.tail.begin(), w.tail.end() - 1);
  out.add(t, n % 2 == 0 ? Rat(1) : Rat(-1));
  return out;
}
inline FChain cyclic_T(const FChain& c) {
  return c.map([](const FormMonomial& w) { return cyclic_T(w); });
}

// Projection to the reduced complex: kills monomials with a unit tail entry
// and identifies the adjoined-unit head with the group unit in degree >= 1
// (their difference lies in the degenerate ideal generated by de).
inline FChain reduce_form(const FChain& c) {
  FChain out;
  for (const auto& [w, coef] : c.terms()) {
    bool degen = false;
    for (const auto& g : w.tail)
      if (g.is_identity()) {
        degen = true;
        break;
      }
    if (degen) continue;
    if (w.unit_head && w.degree() >= 1) {
      FormMonomial t = w;
      t.unit_head = false;
      t.head = GroupElement::identity(w.tail.front().model());
      out.add(t, coef);
    } else {
      out.add(w, coef);
    }
  }
  return out;
}

inline bool form_is_reduced(const FormMonomial& w) {
  if (w.unit_head && w.degree() >= 1) return false;
  for (const auto& g : w.tail)
    if (g.is_identity()) return false;
  return true;
}

// Conjugacy-class label of a monomial (the class of the entry product).
// The degree-0 adjoined unit carries no class.
inline std::optional<GroupElement> class_label(const FormMonomial& w,
                                               const GroupModel& m) {
  if (w.unit_head && w.degree() == 0) return std::nullopt;
  return class_canonical(w.product(m));
}

inline FChain homogeneous_component(const FChain& c, const GroupElement& label,
                                    const GroupModel& m) {
  FChain out;
  for (const auto& [w, coef] : c.terms()) {
    auto l = class_label(w, m);
    if (l && *l == label) out.add(w, coef);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bridges between the twisted Bar complex and differential forms
// ---------------------------------------------------------------------------

// p [g0,...,gn; v] = (gn^-1 v g0) d(g0^-1 g1) ... d(g_{n-1}^-1 gn)
inline FormMonomial p_map(const TwistedSimplex& s) {
  FormMonomial w;
  w.unit_head = false;
  w.head = s.v.back().inverse() * s.twist * s.v.front();
  for (size_t i = 0; i + 1 < s.v.size(); ++i)
    w.tail.push_back(s.v[i].inverse() * s.v[i + 1]);
  return w;
}
inline FChain p_map(const TChain& c) {
  return c.map([](const TwistedSimplex& s) { return FChain(p_map(s)); });
}
// p followed by reduction (the paper's p-bar).
inline FChain p_bar(const TChain& c) { return reduce_form(p_map(c)); }

// q (h0 dh1 ... dhn) = [h0, h0h1, ..., h0...hn; h0...hn]
inline TwistedSimplex q_map(const FormMonomial& w, const GroupModel& m) {
  if (w.unit_head)
    throw invalid_input_error("q_map: defined on the tensor complex only");
  TwistedSimplex s;
  GroupElement p = w.head;
  s.v.push_back(p);
  for (const auto& g : w.tail) {
    p = p * g;
    s.v.push_back(p);
  }
  s.twist = p;
  return s;
}
inline TChain q_map(const FChain& c, const GroupModel& m) {
  return c.map([&](const FormMonomial& w) { return TChain(q_map(w, m)); });
}

// iota_{v,sigma}: the sigma-translated section of p_v landing in the fixed
// twist v. Requires the sigma table to cover the arising class elements.
inline TChain iota_v(const FormMonomial& w, const GroupModel& m,
                     const SigmaSection& sigma) {
  TwistedSimplex s = q_map(w, m);
  return TChain(act(sigma(s.twist).inverse(), s));
}
inline TChain iota_v(const FChain& c, const GroupModel& m,
                     const SigmaSection& sigma) {
  return c.map([&](const FormMonomial& w) { return iota_v(w, m, sigma); });
}

// Cyclic average map: a linear section of the coinvariant projection I.
inline FChain N_cyc(const FormMonomial& w) {
  if (w.unit_head)
    throw invalid_input_error("N_cyc: defined on the tensor complex only");
  FChain out;
  int n = w.degree();
  FormMonomial cur = w;
  Rat sign(1);
  Rat scale = Rat(1) / (n + 1);
  for (int i = 0; i <= n; ++i) {
    out.add(cur, sign * scale);
    if (n == 0) break;
    // apply one unsigned rotation; track the sign (-1)^n per step
    FormMonomial t;
    t.unit_head = false;
    t.head = cur.tail.back();
    t.tail.push_back(cur.head);
    t.tail.insert(t.tail.end(), cur.tail.begin(), cur.tail.end() - 1);
    cur = std::move(t);
    if (n % 2 == 1) sign = -sign;
  }
  return out;
}
inline FChain N_cyc(const FChain& c) {
  return c.map([](const FormMonomial& w) { return N_cyc(w); });
}

// Canonical representative of a coinvariant class: the cyclic average is
// the projector onto T-invariants along (Id - T), so two tensors have the
// same image under I exactly when their averages agree.
inline FChain fold_cyclic(const FChain& c) { return N_cyc(c); }

}  // namespace hypcyc
