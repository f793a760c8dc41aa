#include <catch_amalgamated.hpp>

#include <random>

#include "hypcyc/enumerate.hpp"
#include "hypcyc/twisted.hpp"

using namespace hypcyc;

namespace {
GroupElement el(const GroupModel& m, const std::string& s) {
  auto w = m.parse_word(s);
  REQUIRE(w.has_value());
  return GroupElement(m, *w);
}

TwistedSimplex rand_simplex(const CayleyBall& B, std::mt19937& rng, int degree,
                            std::optional<GroupElement> twist = std::nullopt) {
  TwistedSimplex s;
  for (int i = 0; i <= degree; ++i)
    s.v.push_back(B.element(int(rng() % B.size())));
  s.twist = twist ? *twist : B.element(int(rng() % B.size()));
  return s;
}

const ConjugacyClass& find_class(const std::vector<ConjugacyClass>& classes,
                                 const GroupElement& rep) {
  for (const auto& c : classes)
    if (c.rep == rep) return c;
  throw std::logic_error("class not found");
}
}  // namespace

TEST_CASE("lifted T: formula, order, and weight preservation") {
  GroupModel F2 = GroupModel::free_group(2);
  GroupElement a = el(F2, "a"), b = el(F2, "b"), v = el(F2, "ab");

  // T~_1 [g0, g1; v] = -[v^-1 g1, g0; v]
  TChain t = lifted_T(TwistedSimplex{{a, b}, v});
  TChain expect;
  expect.add(TwistedSimplex{{v.inverse() * b, a}, v}, Rat(-1));
  CHECK(t == expect);

  // T~_0 is translation by v^-1
  TChain t0 = lifted_T(TwistedSimplex{{a}, v});
  CHECK(t0 == TChain(TwistedSimplex{{v.inverse() * a}, v}));

  std::mt19937 rng(23);
  CayleyBall B(F2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    int n = int(rng() % 4);
    TwistedSimplex s = rand_simplex(B, rng, n);
    // Eq 2.36: T~^{n+1} is translation by v^-1
    TChain cur(s);
    for (int i = 0; i <= n; ++i) cur = lifted_T(cur);
    CHECK(cur == act(s.twist.inverse(), TChain(s)));
    // weight preservation
    CHECK(weight(lifted_T(TChain(s))) == weight(s));
    CHECK(weight(lifted_B(TChain(s))) == weight(s));
  }
}

TEST_CASE("lifts intertwine with the form operators: Eqs 2.37 and 2.38") {
  GroupModel P = GroupModel::free_product({2, 3});
  std::mt19937 rng(31);
  CayleyBall B(P, 2);
  for (int trial = 0; trial < 50; ++trial) {
    int n = int(rng() % 4);
    TwistedSimplex s = rand_simplex(B, rng, n);
    TChain c(s);
    CHECK(cyclic_T(p_map(c)) == p_map(lifted_T(c)));
    CHECK(reduce_form(connes_B(p_map(c), P)) == p_bar(lifted_B(c)));
  }
}

TEST_CASE("twisted boundary: square zero, weight non-increase, contraction") {
  GroupModel D = GroupModel::infinite_dihedral();
  std::mt19937 rng(7);
  CayleyBall B(D, 3);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + int(rng() % 3);
    TwistedSimplex s = rand_simplex(B, rng, n);
    CHECK(bar_boundary(bar_boundary(TChain(s))).is_zero());
    TChain d = bar_boundary(TChain(s));
    for (const auto& [k, co] : d.terms()) CHECK(weight(k) <= weight(s));
    // Id = bnd s_x + s_x bnd on simplices of positive degree
    GroupElement x = B.element(int(rng() % B.size()));
    TChain lhs = bar_boundary(contraction_s(x, TChain(s))) +
                 contraction_s(x, bar_boundary(TChain(s)));
    CHECK(lhs == TChain(s));
  }
  // degree 0 with the augmentation term: bnd s_x [y] = [y] - [x]
  GroupElement y = el(D, "ab"), x = el(D, "a");
  TChain r = bar_boundary(contraction_s(x, TChain(TwistedSimplex{{y}, y})));
  TChain expect;
  expect.add(TwistedSimplex{{y}, y}, Rat(1));
  expect.add(TwistedSimplex{{x}, y}, Rat(-1));
  CHECK(r == expect);
}

TEST_CASE("homotopy formula: degree-0 case and h(Id, Id)") {
  GroupModel F2 = GroupModel::free_group(2);
  GroupElement a = el(F2, "a"), b = el(F2, "b");
  // h(Id,Id)([x0,x1]) = [x0,x0,x1] - [x0,x1,x1]
  GChain h = homotopy_h(&identity_chain_map, &identity_chain_map, GSimplex{a, b});
  GChain expect;
  expect.add(GSimplex{a, a, b}, Rat(1));
  expect.add(GSimplex{a, b, b}, Rat(-1));
  CHECK(h == expect);
  CHECK(degenerate_reduce(h).is_zero());
  // degree 0: h(phi,psi)[x0] = [phi(x0), psi(x0)]
  GChain h0 = homotopy_h(&identity_chain_map, &identity_chain_map, GSimplex{a});
  CHECK(h0 == GChain(GSimplex{a, a}));
}

TEST_CASE("pi_as and pi_U: formulas and chain-map property") {
  GroupModel P = GroupModel::free_product({2, 3});
  GroupElement a = el(P, "a"), t = el(P, "b"), g0 = el(P, "ab"), g1 = el(P, "ba");

  // pi_as [g0,g1; v] = 1/2([g0,g1;v] - [g1,g0;v])
  TChain r = pi_as(TwistedSimplex{{g0, g1}, a});
  TChain expect;
  expect.add(TwistedSimplex{{g0, g1}, a}, Rat(1) / 2);
  expect.add(TwistedSimplex{{g1, g0}, a}, Rat(-1) / 2);
  CHECK(r == expect);

  // pi_U over U = {e, v}, degree 0
  TChain u = pi_U(TwistedSimplex{{g0}, a});
  TChain uexpect;
  uexpect.add(TwistedSimplex{{g0}, a}, Rat(1) / 2);
  uexpect.add(TwistedSimplex{{a * g0}, a}, Rat(1) / 2);
  CHECK(u == uexpect);
  CHECK_THROWS_AS(pi_U(TwistedSimplex{{g0}, g0}), invalid_input_error);

  // chain maps: commute with the twisted boundary
  std::mt19937 rng(3);
  CayleyBall B(P, 2);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + int(rng() % 3);
    TwistedSimplex s = rand_simplex(B, rng, n, t);  // torsion twist of order 3
    CHECK(bar_boundary(pi_as(TChain(s))) == pi_as(bar_boundary(TChain(s))));
    CHECK(bar_boundary(pi_U(TChain(s))) == pi_U(bar_boundary(TChain(s))));
    CHECK(bar_boundary(mu_v(TChain(s))) == mu_v(bar_boundary(TChain(s))));
  }

  // mu_v vanishes on degenerate simplices
  CHECK(mu_v(TwistedSimplex{{g0, g0}, a}).is_zero());
  CHECK(mu_v(TwistedSimplex{{g1, g0, g0}, t}).is_zero());
}

TEST_CASE("twisted homotopy identity for (mu_v, id)") {
  GroupModel P = GroupModel::free_product({2, 3});
  GroupElement a = el(P, "a");
  std::mt19937 rng(29);
  CayleyBall B(P, 2);
  auto mu = static_cast<TChain (*)(const TwistedSimplex&)>(&mu_v);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + int(rng() % 2);
    TwistedSimplex s = rand_simplex(B, rng, n, a);
    TChain h = homotopy_h(mu, &identity_twisted, TChain(s));
    TChain hb = homotopy_h(mu, &identity_twisted, bar_boundary(TChain(s)));
    CHECK(bar_boundary(h) + hb == TChain(s) - mu_v(TChain(s)));
  }
}

TEST_CASE("nu_v is a chain map from (b+B) to b on reduced elliptic forms") {
  GroupModel P = GroupModel::free_product({2, 3});
  GroupElement a = el(P, "a");
  CayleyBall work(P, 6);
  auto classes = conjugacy_classes(CayleyBall(P, 2), 5);
  const ConjugacyClass& ca = find_class(classes, a);
  REQUIRE(ca.torsion);
  SigmaSection sig = sigma_section(ca, work);

  // mu-bar . B = 0 on reduced elliptic forms
  for (const auto& w : class_forms(P, a, 1, 3)) {
    FChain Bw = reduce_form(connes_B(FChain(w), P));
    if (Bw.is_zero()) continue;
    CHECK(reduce_form(p_map(mu_v(iota_v(Bw, P, sig)))).is_zero());
  }

  for (int deg = 0; deg <= 2; ++deg) {
    auto forms = class_forms(P, a, deg, 3);
    REQUIRE(!forms.empty());
    for (const auto& w : forms) {
      FChain c(w);
      // b . nu = nu . (b + B)
      FChain lhs = reduce_form(hochschild_b(nu_v(c, P, sig), P));
      FChain bB = reduce_form(hochschild_b(c, P) + connes_B(c, P));
      CHECK(lhs == nu_v(bB, P, sig));
      // strict filtration: components never drop below the input degree
      FChain nu = nu_v(c, P, sig);
      for (const auto& [k, co] : nu.terms()) CHECK(k.degree() >= w.degree());
      // the finite geometric series sum (-hB)^k inverts nu up to degree cap
      int cap = w.degree() + 4;
      FChain acc = nu, total = nu;
      for (int k = 1; w.degree() + 2 * k <= cap + 2; ++k) {
        acc = Rat(-1) * h_bar_mu(reduce_form(connes_B(acc, P)), P, sig);
        total += acc;
      }
      FChain diff = total - c;
      for (const auto& [k, co] : diff.terms()) CHECK(k.degree() > cap);
    }
  }
}

TEST_CASE("one minus lifted T: formula and certified inversion") {
  GroupModel F2 = GroupModel::free_group(2);
  GroupElement a = el(F2, "a"), b = el(F2, "b");

  // (Id - T~) [g0, g1; v] = [g0,g1;v] + [v^-1 g1, g0; v]   (n = 1)
  TwistedSimplex s{{a, a * b}, b};
  TChain m = TChain(s) - lifted_T(TChain(s));
  TChain expect;
  expect.add(s, Rat(1));
  expect.add(TwistedSimplex{{b.inverse() * (a * b), a}, b}, Rat(1));
  CHECK(m == expect);

  std::mt19937 rng(41);
  CayleyBall B(F2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    int n = int(rng() % 3);
    TChain x;
    for (int terms = 0; terms <= int(rng() % 2); ++terms)
      x.add(rand_simplex(B, rng, n, b), Rat(1 + int(rng() % 3)));
    TChain c = x - lifted_T(x);
    TChain inv = invert_one_minus_T(c);
    CHECK(inv - lifted_T(inv) == c);
  }

  // a chain outside Ker(I_v) is rejected
  TChain bad(TwistedSimplex{{a}, b});
  CHECK_THROWS_AS(invert_one_minus_T(bad), invalid_input_error);
  CHECK_FALSE(one_minus_T_preimage(bad).has_value());
}

TEST_CASE("chi: contraction of the shifted complex and weight bound") {
  GroupModel F2 = GroupModel::free_group(2);
  std::mt19937 rng(59);
  CayleyBall B(F2, 2);
  GroupElement b = el(F2, "b");
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + int(rng() % 3);
    TwistedSimplex s = rand_simplex(B, rng, n, b);
    // M = (Id - T~) . append intertwines the shifted differential with bnd
    TChain Ms = TChain(s) - lifted_T(TChain(s));
    TChain d = shifted_boundary(TChain(s));
    CHECK(bar_boundary(Ms) == d - lifted_T(d));
    // Id = delta chi + chi delta in positive degrees
    TChain c = shifted_boundary(chi(TChain(s))) + chi(shifted_boundary(TChain(s)));
    CHECK(c == TChain(s));
    // |chi(beta)| <= 3 |beta|
    TChain ch = chi(TChain(s));
    for (const auto& [k, co] : ch.terms()) CHECK(weight(k) <= 3 * weight(s));
  }
}

TEST_CASE("chi_v contracts certified kernel chains") {
  GroupModel F2 = GroupModel::free_group(2);
  GroupElement b = el(F2, "b");
  std::mt19937 rng(61);
  CayleyBall B(F2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + int(rng() % 2);
    TChain x(rand_simplex(B, rng, n, b));
    TChain c = x - lifted_T(x);  // in Ker(I_v)
    CHECK(bar_boundary(chi_v(c)) + chi_v(bar_boundary(c)) == c);
  }
}

TEST_CASE("s_split splits I . p_v on hyperbolic classes") {
  GroupModel F2 = GroupModel::free_group(2);
  GroupElement b = el(F2, "b");
  CayleyBall work(F2, 6);
  auto classes = conjugacy_classes(CayleyBall(F2, 2), 5);
  const ConjugacyClass& cb = find_class(classes, b);
  SigmaSection sig = sigma_section(cb, work);
  CentralizerData zb = centralizer(b, CayleyBall(F2, 4), 6);
  REQUIRE(!zb.sigma_prime.empty());
  // N(b) is trivial for the primitive element b
  CHECK(zb.sigma_prime.size() == 1);

  for (int deg = 0; deg <= 2; ++deg) {
    for (const auto& w : class_forms(F2, b, deg, 4)) {
      FChain c(w);
      TChain s = s_split(c, F2, sig, zb.sigma_prime);
      // I p_v s = Id on the coinvariant complex
      CHECK(fold_cyclic(p_map(s)) == fold_cyclic(c));
      // s is a chain map on the nose
      CHECK(bar_boundary(s) ==
            s_split(hochschild_b(c, F2), F2, sig, zb.sigma_prime));
    }
  }

  // torsion classes are rejected
  const ConjugacyClass& ce = find_class(classes, GroupElement::identity(F2));
  SigmaSection sige = sigma_section(ce, work);
  CHECK_THROWS_AS(s_split(FChain(form_of(b)), F2, sige, zb.sigma_prime),
                  invalid_input_error);
}

TEST_CASE("j_v and kappa_v compare centralizer and class complexes") {
  GroupModel P = GroupModel::free_product({2, 3});
  GroupElement a = el(P, "a");
  CayleyBall B(P, 3);
  CayleyBall work(P, 7);
  auto classes = conjugacy_classes(CayleyBall(P, 2), 5);
  const ConjugacyClass& ca = find_class(classes, a);
  SigmaSection sig = sigma_section(ca, work);

  CentralizerData za = centralizer(a, B, 5);
  REQUIRE(za.elements.size() == 2);  // Z(a) = {e, a}

  // j_v [h0, h1] = [h0, h1; v]
  GroupElement e = GroupElement::identity(P);
  CHECK(j_v(GSimplex{e, a}, a) == TChain(TwistedSimplex{{e, a}, a}));
  CHECK_THROWS_AS(j_v(GSimplex{el(P, "b")}, a), invalid_input_error);

  // kappa_v j_v = Id on centralizer simplices (uses sigma(v) = e)
  std::mt19937 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    int n = int(rng() % 3);
    GSimplex hs;
    for (int i = 0; i <= n; ++i)
      hs.push_back(za.elements[rng() % za.elements.size()]);
    CHECK(kappa_v(j_v(hs, a), sig) == GChain(hs));
  }

  // j_v kappa_v is chain homotopic to the identity
  auto jk = [&](const TwistedSimplex& s) { return j_kappa(s, sig); };
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + int(rng() % 2);
    TwistedSimplex s = rand_simplex(B, rng, n, a);
    TChain h = homotopy_h(jk, &identity_twisted, TChain(s));
    TChain hb = homotopy_h(jk, &identity_twisted, bar_boundary(TChain(s)));
    CHECK(bar_boundary(h) + hb == TChain(s) - jk(s));
  }

  // Eq 6.36 weight audit: appending the twist to a centralizer simplex
  // costs at most l_S(<v>)
  for (int trial = 0; trial < 25; ++trial) {
    int n = int(rng() % 3);
    GSimplex hs;
    for (int i = 0; i <= n; ++i)
      hs.push_back(za.elements[rng() % za.elements.size()]);
    int wj = weight(TwistedSimplex{hs, a});
    int we = weight(TwistedSimplex{hs, e});
    CHECK(wj <= we + class_canonical(a).length());
  }
}
