#pragma once

#include <tuple>

#include "hypcyc/forms.hpp"

namespace hypcyc {

// Operators on the twisted Bar complex C_*(Gamma, Ad) and on its fixed-twist
// subcomplexes C_*(Gamma, Cv).

// Lifted cyclic operator: T~ [g0,...,gn; v] = (-1)^n [v^-1 gn, g0,...,g_{n-1}; v]
inline TChain lifted_T(const TwistedSimplex& s) {
  TwistedSimplex t;
  t.twist = s.twist;
  t.v.reserve(s.v.size());
  t.v.push_back(s.twist.inverse() * s.v.back());
  t.v.insert(t.v.end(), s.v.begin(), s.v.end() - 1);
  int n = s.degree();
  return TChain(t, n % 2 == 0 ? Rat(1) : Rat(-1));
}
inline TChain lifted_T(const TChain& c) {
  return c.map([](const TwistedSimplex& s) { return lifted_T(s); });
}

// Lifted Connes operator:
// B~ [g0..gn; v] = sum_i (-1)^{in} [v^-1 gi,...,v^-1 gn, g0,...,gi; v]
inline TChain lifted_B(const TwistedSimplex& s) {
  TChain out;
  int n = s.degree();
  GroupElement vinv = s.twist.inverse();
  for (int i = 0; i <= n; ++i) {
    TwistedSimplex t;
    t.twist = s.twist;
    t.v.reserve(s.v.size() + 1);
    for (int j = i; j <= n; ++j) t.v.push_back(vinv * s.v[size_t(j)]);
    for (int j = 0; j <= i; ++j) t.v.push_back(s.v[size_t(j)]);
    out.add(t, (long(i) * n) % 2 == 0 ? Rat(1) : Rat(-1));
  }
  return out;
}
inline TChain lifted_B(const TChain& c) {
  return c.map([](const TwistedSimplex& s) { return lifted_B(s); });
}

// Canonical homotopy (2.30) on the twisted complex; the twist rides along.
inline TChain homotopy_h(const std::function<TChain(const TwistedSimplex&)>& phi,
                         const std::function<TChain(const TwistedSimplex&)>& psi,
                         const TwistedSimplex& s) {
  TChain out;
  Rat sign(1);
  int n = s.degree();
  for (int i = 0; i <= n; ++i) {
    TwistedSimplex front{GSimplex(s.v.begin(), s.v.begin() + i + 1), s.twist};
    TwistedSimplex back{GSimplex(s.v.begin() + i, s.v.end()), s.twist};
    TChain a = phi(front), b = psi(back);
    for (const auto& [ka, ca] : a.terms())
      for (const auto& [kb, cb] : b.terms()) {
        TwistedSimplex spliced;
        spliced.twist = s.twist;
        spliced.v = ka.v;
        spliced.v.insert(spliced.v.end(), kb.v.begin(), kb.v.end());
        out.add(spliced, sign * ca * cb);
      }
    sign = -sign;
  }
  return out;
}
inline TChain homotopy_h(const std::function<TChain(const TwistedSimplex&)>& phi,
                         const std::function<TChain(const TwistedSimplex&)>& psi,
                         const TChain& c) {
  return c.map([&](const TwistedSimplex& s) { return homotopy_h(phi, psi, s); });
}

inline TChain identity_twisted(const TwistedSimplex& s) { return TChain(s); }

// ---------------------------------------------------------------------------
// Elliptic (torsion) machinery
// ---------------------------------------------------------------------------

// Antisymmetrization over the vertices.
inline TChain pi_as(const TwistedSimplex& s) {
  TChain out;
  int n = s.degree();
  std::vector<int> perm(size_t(n) + 1);
  for (int i = 0; i <= n; ++i) perm[size_t(i)] = i;
  Rat scale = Rat(1) / factorial(n + 1);
  // iterate permutations with tracked parity
  std::vector<int> p = perm;
  do {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = i + 1; j < p.size(); ++j)
        if (p[i] > p[j]) ++inv;
    TwistedSimplex t;
    t.twist = s.twist;
    t.v.reserve(p.size());
    for (int idx : p) t.v.push_back(s.v[size_t(idx)]);
    out.add(t, (inv % 2 == 0 ? scale : -scale));
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}
inline TChain pi_as(const TChain& c) {
  return c.map([](const TwistedSimplex& s) { return pi_as(s); });
}

// Averaging over the finite cyclic subgroup U generated by a torsion twist.
inline TChain pi_U(const TwistedSimplex& s) {
  const GroupElement& v = s.twist;
  if (!is_torsion(v)) throw invalid_input_error("pi_U: twist must be torsion");
  long m = torsion_order(v);
  std::vector<GroupElement> U;
  GroupElement p = GroupElement::identity(v.model());
  for (long k = 0; k < m; ++k) {
    U.push_back(p);
    p = p * v;
  }
  int n = s.degree();
  Rat scale = Rat(1) / rat_pow(Rat(m), n + 1);
  TChain out;
  std::vector<size_t> idx(size_t(n) + 1, 0);
  while (true) {
    TwistedSimplex t;
    t.twist = v;
    t.v.reserve(s.v.size());
    for (int i = 0; i <= n; ++i) t.v.push_back(U[idx[size_t(i)]] * s.v[size_t(i)]);
    out.add(t, scale);
    int pos = 0;
    while (pos <= n && ++idx[size_t(pos)] == size_t(m)) {
      idx[size_t(pos)] = 0;
      ++pos;
    }
    if (pos > n) break;
  }
  return out;
}
inline TChain pi_U(const TChain& c) {
  return c.map([](const TwistedSimplex& s) { return pi_U(s); });
}

inline TChain mu_v(const TwistedSimplex& s) { return pi_as(pi_U(s)); }
inline TChain mu_v(const TChain& c) { return pi_as(pi_U(c)); }

// Coinvariant image of h(mu_v, id) on reduced class forms: lift through
// iota, apply the twisted homotopy, push down with p and reduce. The result
// does not depend on the choice of section since h(mu_v, id) is
// Z(v)-equivariant.
inline FChain h_bar_mu(const FChain& reduced_forms, const GroupModel& m,
                       const SigmaSection& sigma) {
  TChain lift = iota_v(reduced_forms, m, sigma);
  TChain h = homotopy_h(static_cast<TChain (*)(const TwistedSimplex&)>(&mu_v),
                        &identity_twisted, lift);
  return reduce_form(p_map(h));
}

// nu_v = id + h-bar(mu_v, id) . B on reduced class forms of the class of a
// torsion element.
inline FChain nu_v(const FChain& reduced_forms, const GroupModel& m,
                   const SigmaSection& sigma) {
  if (!is_torsion(sigma.v)) throw invalid_input_error("nu_v: class must be elliptic");
  FChain B = reduce_form(connes_B(reduced_forms, m));
  return reduced_forms + h_bar_mu(B, m, sigma);
}

// ---------------------------------------------------------------------------
// Hyperbolic (infinite-order) machinery
// ---------------------------------------------------------------------------

// Averaging over coset representatives sigma'(N(v)) inside Z(v).
inline TChain N_sigma_prime(const TChain& c,
                            const std::vector<GroupElement>& sigma_prime) {
  if (sigma_prime.empty())
    throw invalid_input_error("N_sigma_prime: empty section");
  Rat scale = Rat(1) / long(sigma_prime.size());
  TChain out;
  for (const auto& h : sigma_prime) {
    TChain translated = c.map([&](const TwistedSimplex& s) {
      TwistedSimplex t;
      t.twist = s.twist;
      t.v.reserve(s.v.size());
      for (const auto& g : s.v) t.v.push_back(h * g);
      return TChain(t);
    });
    translated *= scale;
    out += translated;
  }
  return out;
}

// Contracting homotopy of the shifted complex, in the representation that
// appends the tensor factor as the last vertex:
// chi [g0,...,gn; v] = [gn, g0,...,g_{n-1}, gn; v].
inline TChain chi(const TwistedSimplex& s) {
  TwistedSimplex t;
  t.twist = s.twist;
  t.v.reserve(s.v.size() + 1);
  t.v.push_back(s.v.back());
  t.v.insert(t.v.end(), s.v.begin(), s.v.end() - 1);
  t.v.push_back(s.v.back());
  return TChain(t);
}
inline TChain chi(const TChain& c) {
  return c.map([](const TwistedSimplex& s) { return chi(s); });
}

// Differential of the shifted complex C[-1] (x) C(Gamma): the Bar boundary
// on all vertices except the appended last one.
inline TChain shifted_boundary(const TChain& c) {
  return c.map([](const TwistedSimplex& s) {
    TChain out;
    int n = s.degree();
    if (n < 1) return out;
    Rat sign(1);
    for (int i = 0; i < n; ++i) {
      out.add(TwistedSimplex{drop_vertex(s.v, size_t(i)), s.twist}, sign);
      sign = -sign;
    }
    return out;
  });
}

// Explicit preimage of a chain under (Id - T~), with the orbit spans that
// certify the membership in Ker(I_v). Exists iff every T~-orbit of the
// chain sums to zero, which is the kernel of the coinvariant projection for
// an infinite-order twist.
struct OneMinusTPreimage {
  TChain preimage;
  long max_span = 0;  // largest exponent window used by any orbit
};

inline std::optional<OneMinusTPreimage> one_minus_T_preimage(const TChain& c) {
  if (c.is_zero()) return OneMinusTPreimage{};
  OneMinusTPreimage out;
  TChain rest = c;
  while (!rest.is_zero()) {
    // base point of the next orbit: first term in map order
    TwistedSimplex base = rest.terms().begin()->first;
    const GroupElement v = base.twist;
    if (is_torsion(v))
      throw invalid_input_error("one_minus_T_preimage: twist must be of infinite order");
    int n = base.degree();
    long period = n + 1;
    // collect all terms of rest lying in the T~ orbit of base, as positions
    std::map<long, Rat> pos;  // k -> coefficient a_k with c|orbit = sum a_k T~^k base
    std::vector<std::pair<TwistedSimplex, Rat>> rotations;  // T~^r base, r = 0..n
    {
      TChain cur(base);
      for (long r = 0; r < period; ++r) {
        rotations.push_back(*cur.terms().begin());
        cur = lifted_T(cur);
      }
    }
    std::vector<TwistedSimplex> matched;
    for (const auto& [s, coef] : rest.terms()) {
      if (!(s.twist == v) || s.degree() != n) continue;
      for (long r = 0; r < period; ++r) {
        const auto& [rot, rsign] = rotations[size_t(r)];
        // is s = v^-m . rot for some integer m?
        GroupElement g = s.v[0] * rot.v[0].inverse();  // candidate v^-m
        long bound = g.length() + 2 * v.length() + 2;
        std::optional<long> mm;
        GroupElement p = GroupElement::identity(v.model());
        if (g.is_identity()) mm = 0;
        GroupElement q = p;
        for (long m = 1; !mm && m <= bound; ++m) {
          p = p * v.inverse();  // v^-m
          q = q * v;            // v^{+m}
          if (p == g) mm = m;
          if (q == g) mm = -m;
        }
        if (!mm) continue;
        bool match = true;
        for (size_t i = 0; i < s.v.size() && match; ++i)
          if (!(g * rot.v[i] == s.v[i])) match = false;
        if (!match) continue;
        long k = *mm * period + r;
        pos[k] = pos.count(k) ? pos[k] + coef * rsign : coef * rsign;
        matched.push_back(s);
        break;
      }
    }
    Rat total(0);
    for (const auto& [k, a] : pos) total += a;
    if (total != 0) return std::nullopt;  // orbit does not fold to zero
    if (pos.empty())
      throw internal_consistency_error("one_minus_T_preimage: empty orbit");
    out.max_span = std::max(out.max_span, pos.rbegin()->first - pos.begin()->first);
    // prefix sums give the preimage on this orbit
    Rat running(0);
    long lo = pos.begin()->first, hi = pos.rbegin()->first;
    for (long k = lo; k < hi; ++k) {
      auto it = pos.find(k);
      if (it != pos.end()) running += it->second;
      if (running == 0) continue;
      // T~^k base as a signed simplex
      TChain tk(base);
      if (k >= 0)
        for (long j = 0; j < k; ++j) tk = lifted_T(tk);
      else {
        // T~^{-1} = (T~)^{period-1} composed with translation by v
        for (long j = 0; j < -k; ++j) {
          for (long r = 0; r < period - 1; ++r) tk = lifted_T(tk);
          tk = act(base.twist, tk);
        }
      }
      tk *= running;
      out.preimage += tk;
    }
    // remove the orbit from rest
    for (const auto& s : matched) rest.add(s, -rest.coeff(s));
  }
  // exact certificate check
  TChain check = out.preimage - lifted_T(out.preimage);
  if (!(check == c))
    throw internal_consistency_error("one_minus_T_preimage: certificate failed");
  return out;
}

// Inverse of (Id - T~) on certified kernel chains of the coinvariant
// projection I_v.
inline TChain invert_one_minus_T(const TChain& c) {
  auto pre = one_minus_T_preimage(c);
  if (!pre)
    throw invalid_input_error("invert_one_minus_T: chain not certified in Ker(I_v)");
  return pre->preimage;
}

// chi_v = (Id - T~) . chi . (Id - T~)^{-1} on Ker(I_v).
inline TChain chi_v(const TChain& c) {
  TChain x = invert_one_minus_T(c);
  TChain h = chi(x);
  return h - lifted_T(h);
}

// s'_{v,sigma,sigma'} = N_sigma' . iota_{v,sigma} . N_cyc on class tensors.
inline TChain s_prime(const FChain& tensors, const GroupModel& m,
                      const SigmaSection& sigma,
                      const std::vector<GroupElement>& sigma_prime) {
  return N_sigma_prime(iota_v(N_cyc(tensors), m, sigma), sigma_prime);
}

// Splitting s = s' - chi_v (bnd s' - s' b) of I . p_v, a chain map from the
// class component of the cyclic complex into the twisted complex.
inline TChain s_split(const FChain& tensors, const GroupModel& m,
                      const SigmaSection& sigma,
                      const std::vector<GroupElement>& sigma_prime) {
  if (is_torsion(sigma.v))
    throw invalid_input_error("s_split: class must be hyperbolic (infinite order)");
  TChain s1 = s_prime(tensors, m, sigma, sigma_prime);
  TChain dev = bar_boundary(s1) - s_prime(hochschild_b(tensors, m), m, sigma, sigma_prime);
  if (dev.is_zero()) return s1;
  return s1 - chi_v(dev);
}

// ---------------------------------------------------------------------------
// Comparison with the centralizer Bar complex (elliptic classes)
// ---------------------------------------------------------------------------

// j_v [h0,...,hn] = [h0,...,hn; v] for hi in Z(v).
inline TChain j_v(const GSimplex& s, const GroupElement& v) {
  for (const auto& h : s)
    if (!(h * v == v * h))
      throw invalid_input_error("j_v: vertex outside the centralizer");
  return TChain(TwistedSimplex{s, v});
}
inline TChain j_v(const GChain& c, const GroupElement& v) {
  return c.map([&](const GSimplex& s) { return j_v(s, v); });
}

// kappa_v [g0,...,gn; v] = [g0 sigma(g0^-1 v g0), ..., gn sigma(gn^-1 v gn)].
inline GChain kappa_v(const TwistedSimplex& s, const SigmaSection& sigma) {
  GSimplex out;
  out.reserve(s.v.size());
  for (const auto& g : s.v) out.push_back(g * sigma(g.inverse() * s.twist * g));
  return GChain(out);
}
inline GChain kappa_v(const TChain& c, const SigmaSection& sigma) {
  return c.map([&](const TwistedSimplex& s) { return GChain(kappa_v(s, sigma)); });
}

// The composite j_v . kappa_v as a twisted chain map (used for homotopies).
inline TChain j_kappa(const TwistedSimplex& s, const SigmaSection& sigma) {
  GSimplex k;
  k.reserve(s.v.size());
  for (const auto& g : s.v) k.push_back(g * sigma(g.inverse() * s.twist * g));
  return TChain(TwistedSimplex{k, s.twist});
}

}  // namespace hypcyc
