#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "hypcyc/group.hpp"
#include "hypcyc/rational.hpp"

namespace hypcyc {

// Finitely supported exact-rational combination of basis elements.
// Backed by an ordered map so iteration (and hence every downstream
// computation and report) is deterministic.
template <class K>
class Chain {
 public:
  using Terms = std::map<K, Rat>;

  Chain() = default;
  explicit Chain(const K& k, Rat c = Rat(1)) { add(k, c); }

  const Terms& terms() const& { return t_; }
  const Terms& terms() const&& = delete;  // no iterating temporaries
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }

  void add(const K& k, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = t_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }

  Rat coeff(const K& k) const {
    auto it = t_.find(k);
    return it == t_.end() ? Rat(0) : it->second;
  }

  Chain& operator+=(const Chain& o) {
    for (const auto& [k, c] : o.t_) add(k, c);
    return *this;
  }
  Chain& operator-=(const Chain& o) {
    for (const auto& [k, c] : o.t_) add(k, -c);
    return *this;
  }
  Chain& operator*=(const Rat& s) {
    if (s == 0) {
      t_.clear();
      return *this;
    }
    for (auto& [k, c] : t_) c *= s;
    return *this;
  }
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator*(const Rat& s, Chain a) { return a *= s; }
  friend bool operator==(const Chain& a, const Chain& b) { return a.t_ == b.t_; }

  // Applies a basis-level map linearly.
  template <class F>
  auto map(F&& f) const -> decltype(f(std::declval<K>())) {
    decltype(f(std::declval<K>())) out;
    for (const auto& [k, c] : t_) {
      auto img = f(k);
      for (const auto& [k2, c2] : img.terms()) out.add(k2, c * c2);
    }
    return out;
  }

  Rat l1() const {
    Rat s(0);
    for (const auto& [k, c] : t_) s += rat_abs(c);
    return s;
  }

 private:
  Terms t_;
};

// ---------------------------------------------------------------------------
// Basis element types
// ---------------------------------------------------------------------------

// Bar simplex over group elements (untwisted), [x0,...,xn].
using GSimplex = std::vector<GroupElement>;
using GChain = Chain<GSimplex>;

// Bar simplex over abstract vertex ids (tree vertices etc).
using VSimplex = std::vector<int>;
using VChain = Chain<VSimplex>;

// Twisted Bar simplex [g0,...,gn; v] with adjoint coefficient v.
struct TwistedSimplex {
  GSimplex v;
  GroupElement twist;

  int degree() const { return int(v.size()) - 1; }
  bool degenerate() const {
    for (size_t i = 0; i + 1 < v.size(); ++i)
      if (v[i] == v[i + 1]) return true;
    return false;
  }
  friend bool operator==(const TwistedSimplex& a, const TwistedSimplex& b) {
    return a.twist == b.twist && a.v == b.v;
  }
  friend bool operator<(const TwistedSimplex& a, const TwistedSimplex& b) {
    if (a.v.size() != b.v.size()) return a.v.size() < b.v.size();
    if (a.twist != b.twist) return a.twist < b.twist;
    return a.v < b.v;
  }
};
using TChain = Chain<TwistedSimplex>;

// Algebraic differential form monomial a0 da1 ... dan over a group ring:
// head in the group or the formal (adjoined) unit, tail of group elements.
struct FormMonomial {
  bool unit_head = false;  // head is the adjoined unit of the unitalization
  GroupElement head;       // meaningful iff !unit_head
  std::vector<GroupElement> tail;

  int degree() const { return int(tail.size()); }
  GroupElement product(const GroupModel& m) const {
    GroupElement p = unit_head ? GroupElement::identity(m) : head;
    for (const auto& g : tail) p = p * g;
    return p;
  }
  friend bool operator==(const FormMonomial& a, const FormMonomial& b) {
    return a.unit_head == b.unit_head && (a.unit_head || a.head == b.head) &&
           a.tail == b.tail;
  }
  friend bool operator<(const FormMonomial& a, const FormMonomial& b) {
    if (a.tail.size() != b.tail.size()) return a.tail.size() < b.tail.size();
    if (a.unit_head != b.unit_head) return a.unit_head < b.unit_head;
    if (!a.unit_head && !(a.head == b.head)) return a.head < b.head;
    return a.tail < b.tail;
  }
};
using FChain = Chain<FormMonomial>;

inline FormMonomial form_of(const GroupElement& head,
                            std::vector<GroupElement> tail = {}) {
  return FormMonomial{false, head, std::move(tail)};
}
inline FormMonomial unit_form(std::vector<GroupElement> tail = {}) {
  return FormMonomial{true, GroupElement(), std::move(tail)};
}

// ---------------------------------------------------------------------------
// Core simplicial operators (Bar complex, twisted Bar complex)
// ---------------------------------------------------------------------------

template <class S>
S drop_vertex(const S& s, size_t i) {
  S out = s;
  out.erase(out.begin() + long(i));
  return out;
}

inline GChain bar_boundary(const GSimplex& s) {
  GChain out;
  if (s.size() <= 1) return out;
  Rat sign(1);
  for (size_t i = 0; i < s.size(); ++i) {
    out.add(drop_vertex(s, i), sign);
    sign = -sign;
  }
  return out;
}
inline GChain bar_boundary(const GChain& c) {
  return c.map([](const GSimplex& s) { return bar_boundary(s); });
}

inline VChain bar_boundary(const VSimplex& s) {
  VChain out;
  if (s.size() <= 1) return out;
  Rat sign(1);
  for (size_t i = 0; i < s.size(); ++i) {
    out.add(drop_vertex(s, i), sign);
    sign = -sign;
  }
  return out;
}
inline VChain bar_boundary(const VChain& c) {
  return c.map([](const VSimplex& s) { return bar_boundary(s); });
}

// Twisted differential: the adjoint coefficient rides along (Bar boundary
// tensored with the coefficient module).
inline TChain bar_boundary(const TwistedSimplex& s) {
  TChain out;
  if (s.v.size() <= 1) return out;
  Rat sign(1);
  for (size_t i = 0; i < s.v.size(); ++i) {
    out.add(TwistedSimplex{drop_vertex(s.v, i), s.twist}, sign);
    sign = -sign;
  }
  return out;
}
inline TChain bar_boundary(const TChain& c) {
  return c.map([](const TwistedSimplex& s) { return bar_boundary(s); });
}

template <class S>
bool has_consecutive_repeat(const S& v) {
  for (size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] == v[i + 1]) return true;
  return false;
}

// Projection to the reduced complex: kills degenerate simplices.
inline GChain degenerate_reduce(const GChain& c) {
  GChain out;
  for (const auto& [k, co] : c.terms())
    if (!has_consecutive_repeat(k)) out.add(k, co);
  return out;
}
inline VChain degenerate_reduce(const VChain& c) {
  VChain out;
  for (const auto& [k, co] : c.terms())
    if (!has_consecutive_repeat(k)) out.add(k, co);
  return out;
}
inline TChain degenerate_reduce(const TChain& c) {
  TChain out;
  for (const auto& [k, co] : c.terms())
    if (!k.degenerate()) out.add(k, co);
  return out;
}

// Contracting homotopy s_x of the augmented Bar complex: prepends x.
inline GChain contraction_s(const GroupElement& x, const GChain& c) {
  return c.map([&](const GSimplex& s) {
    GSimplex out;
    out.reserve(s.size() + 1);
    out.push_back(x);
    out.insert(out.end(), s.begin(), s.end());
    return GChain(out);
  });
}
inline TChain contraction_s(const GroupElement& x, const TChain& c) {
  return c.map([&](const TwistedSimplex& s) {
    GSimplex out;
    out.reserve(s.v.size() + 1);
    out.push_back(x);
    out.insert(out.end(), s.v.begin(), s.v.end());
    return TChain(TwistedSimplex{out, s.twist});
  });
}
inline VChain contraction_s(int x, const VChain& c) {
  return c.map([&](const VSimplex& s) {
    VSimplex out;
    out.reserve(s.size() + 1);
    out.push_back(x);
    out.insert(out.end(), s.begin(), s.end());
    return VChain(out);
  });
}

inline std::set<GroupElement> support(const TChain& c) {
  std::set<GroupElement> out;
  for (const auto& [k, co] : c.terms()) out.insert(k.v.begin(), k.v.end());
  return out;
}
inline std::set<GroupElement> support(const GChain& c) {
  std::set<GroupElement> out;
  for (const auto& [k, co] : c.terms()) out.insert(k.begin(), k.end());
  return out;
}

// Weight of a twisted simplex: the cyclic sum of consecutive distances,
// closing through the twist.
inline int weight(const TwistedSimplex& s) {
  int w = 0;
  for (size_t i = 0; i + 1 < s.v.size(); ++i) w += dist(s.v[i], s.v[i + 1]);
  w += dist(s.v.back(), s.twist * s.v.front());
  return w;
}
// Weight of a chain: max over its simplices.
inline int weight(const TChain& c) {
  int w = 0;
  for (const auto& [k, co] : c.terms()) w = std::max(w, weight(k));
  return w;
}

inline int diameter(const GSimplex& s) {
  int d = 0;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) d = std::max(d, dist(s[i], s[j]));
  return d;
}
inline int diameter(const std::vector<GroupElement>& a, bool) = delete;
inline int diameter(const std::set<GroupElement>& s) {
  int d = 0;
  for (auto i = s.begin(); i != s.end(); ++i) {
    auto j = i;
    for (++j; j != s.end(); ++j) d = std::max(d, dist(*i, *j));
  }
  return d;
}

// Canonical chain homotopy between two chain maps that agree with the
// augmentation: h(phi,psi)[x0..xn] = sum_i (-1)^i [phi(x0..xi), psi(xi..xn)].
// phi(x0..xi) and psi(xi..xn) are chains; the bracket splices simplices.
inline GChain homotopy_h(const std::function<GChain(const GSimplex&)>& phi,
                         const std::function<GChain(const GSimplex&)>& psi,
                         const GSimplex& s) {
  GChain out;
  Rat sign(1);
  for (size_t i = 0; i < s.size(); ++i) {
    GSimplex front(s.begin(), s.begin() + long(i) + 1);
    GSimplex back(s.begin() + long(i), s.end());
    GChain a = phi(front), b = psi(back);
    for (const auto& [ka, ca] : a.terms())
      for (const auto& [kb, cb] : b.terms()) {
        GSimplex spliced = ka;
        spliced.insert(spliced.end(), kb.begin(), kb.end());
        out.add(spliced, sign * ca * cb);
      }
    sign = -sign;
  }
  return out;
}
inline GChain homotopy_h(const std::function<GChain(const GSimplex&)>& phi,
                         const std::function<GChain(const GSimplex&)>& psi,
                         const GChain& c) {
  return c.map([&](const GSimplex& s) { return homotopy_h(phi, psi, s); });
}

inline GChain identity_chain_map(const GSimplex& s) { return GChain(s); }

// Left action g.[x0..xn; v] = [g x0,..., g xn; g v g^-1].
inline TwistedSimplex act(const GroupElement& g, const TwistedSimplex& s) {
  TwistedSimplex out;
  out.v.reserve(s.v.size());
  for (const auto& x : s.v) out.v.push_back(g * x);
  out.twist = s.twist.conj(g);
  return out;
}
inline TChain act(const GroupElement& g, const TChain& c) {
  return c.map([&](const TwistedSimplex& s) { return TChain(act(g, s)); });
}
inline GSimplex act(const GroupElement& g, const GSimplex& s) {
  GSimplex out;
  out.reserve(s.size());
  for (const auto& x : s) out.push_back(g * x);
  return out;
}
inline GChain act(const GroupElement& g, const GChain& c) {
  return c.map([&](const GSimplex& s) { return GChain(act(g, s)); });
}

// Line-oriented text serialization: "coeff twist x0 x1 ... xn" per term.
inline std::string to_text(const TChain& c) {
  std::ostringstream os;
  for (const auto& [k, co] : c.terms()) {
    os << rat_str(co) << " " << k.twist.str();
    for (const auto& g : k.v) os << " " << g.str();
    os << "\n";
  }
  return os.str();
}

inline TChain tchain_from_text(const GroupModel& m, const std::string& text) {
  TChain out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string coeff, twist, w;
    ls >> coeff >> twist;
    auto tw = m.parse_word(twist);
    if (!tw) throw invalid_input_error("tchain_from_text: bad twist");
    TwistedSimplex s;
    s.twist = GroupElement(m, *tw);
    while (ls >> w) {
      auto pw = m.parse_word(w);
      if (!pw) throw invalid_input_error("tchain_from_text: bad word");
      s.v.emplace_back(m, *pw);
    }
    out.add(s, parse_rat(coeff));
  }
  return out;
}

}  // namespace hypcyc
