#include <catch2/catch_amalgamated.hpp>

#include <algd/cdga.hpp>

using namespace algd;

namespace {
DegreeWindow W(-6, 6);
}

TEST_CASE("normal forms in monomial quotients")
{
  auto A = cdga_truncated_poly("x", 2, W);
  Expo x{1};
  auto [s, m] = A->mono_mul(x, x);
  CHECK(is_zero(s));  // x.x = 0 in k[x]/(x^2)

  // odd commutation: y.x = -x.y for |x| = |y| = 1
  CdgaPresentation p;
  p.generators.push_back({"x", 1, 0, 0});
  p.generators.push_back({"y", 1, 0, 0});
  p.differential.resize(2);
  Cdga B(p, W);
  Expo ex{1, 0}, ey{0, 1};
  auto [s2, m2] = B.mono_mul(ey, ex);
  CHECK(s2 == -1);
  CHECK(m2 == Expo{1, 1});

  // unit
  CHECK(B.mono_index(B.unit()) >= 0);
  CHECK(B.mono_degree(B.unit()) == 0);
}

TEST_CASE("cdga validation rules")
{
  CdgaPresentation p;
  p.generators.push_back({"x", 0, 0, 0});  // degree-0 without order or cap
  CHECK_THROWS(Cdga(p, W));

  CdgaPresentation q;
  q.generators.push_back({"e", 1, 3, 0});  // odd with order 3
  CHECK_THROWS(Cdga(q, W));
}

TEST_CASE("check_cdga on the corpus algebras")
{
  SECTION("A = k passes")
  {
    auto A = cdga_k(W);
    CHECK(A->check().ok);
    CHECK(A->dim(0) == 1);
  }

  SECTION("exterior algebra on epsilon (degree 1, d = 0) passes")
  {
    auto A = cdga_exterior("e", 1, W);
    CHECK(A->check().ok);
    CHECK(A->dim(0) == 1);
    CHECK(A->dim(1) == 1);
  }

  SECTION("k[x,y]/(x^2,y^2), |x| = 0, |y| = 1, dy = x passes")
  {
    CdgaPresentation p;
    p.generators.push_back({"x", 0, 2, 0});
    p.generators.push_back({"y", 1, 0, 0});
    p.differential.resize(2);
    Poly dy;
    dy.emplace(Expo{1, 0}, Scalar(1));
    p.differential[1] = dy;
    Cdga A(p, W);
    CHECK(A.check().ok);
  }

  SECTION("differential incompatible with a relation is rejected")
  {
    // k[x]/(x^2) with |x| = 2... needs an odd generator to hit it:
    // A = k[t, u]/(t^3), |t| = 0, |u| = 1, du = t: then d(t^3)=0 needs
    // 3 t^2 dt = 0, fine (dt = 0). Instead make |v| = 1 with dv = t and
    // check relation t^3: v itself is fine. Use instead: |w| = 0 order 2,
    // dz = w for z odd: relation w^2 = 0 forces nothing on z. The genuinely
    // failing case: an even generator with nonzero differential whose
    // relation it breaks: |s| = 2, order 2, ds = m with 2 s m != 0.
    CdgaPresentation p;
    p.generators.push_back({"s", 2, 2, 0});   // s^2 = 0
    p.generators.push_back({"m", 1, 0, 0});   // odd
    p.differential.resize(2);
    Poly ds;
    ds.emplace(Expo{0, 1}, Scalar(1));        // ds = m
    p.differential[0] = ds;
    Cdga A(p, W);
    auto r = A.check();
    CHECK_FALSE(r.ok);  // d(s^2) = 2 s m != 0 in the quotient
  }

  SECTION("degree-mismatched differential is rejected")
  {
    CdgaPresentation p;
    p.generators.push_back({"x", 0, 2, 0});
    p.generators.push_back({"y", 1, 0, 0});
    p.differential.resize(2);
    Poly dy;
    dy.emplace(Expo{0, 1}, Scalar(1));  // dy = y, degree 1 != 0
    p.differential[1] = dy;
    Cdga A(p, W);
    auto r = A.check();
    CHECK_FALSE(r.ok);
  }
}

TEST_CASE("derivations: the tangent complex")
{
  SECTION("A = k has T_A = 0")
  {
    auto A = cdga_k(W);
    for (int d = W.lo; d <= W.hi; ++d) CHECK(A->tangent_dim(d) == 0);
  }

  SECTION("A = k[x]/(x^3): degree-0 basis {x d/dx, x^2 d/dx}")
  {
    auto A = cdga_truncated_poly("x", 3, W);
    // oracle: v(x) = a + b x + c x^2 with 3 x^2 v(x) = 0  =>  a = 0
    CHECK(A->tangent_dim(0) == 2);
    for (const auto& v : A->tangent_basis(0)) {
      // no constant term
      CHECK(v.values[0].count(Expo{0}) == 0);
    }
  }

  SECTION("A = k[x] capped at N: degree-0 derivations have dimension N")
  {
    for (int cap = 2; cap <= 5; ++cap) {
      CdgaPresentation p;
      p.generators.push_back({"x", 0, 0, cap});
      p.differential.resize(1);
      Cdga A(p, W);
      CHECK(A.capped);
      CHECK(A.tangent_dim(0) == cap);
    }
  }

  SECTION("A = k[e]/(e^2), |e| = 1: basis d/de in degree -1 and e d/de in degree 0")
  {
    auto A = cdga_exterior("e", 1, W);
    CHECK(A->tangent_dim(-1) == 1);
    CHECK(A->tangent_dim(0) == 1);
    CHECK(A->tangent_dim(1) == 0);
    // [e d/de, d/de] = -d/de
    auto v = A->tangent_basis(0)[0];   // e d/de
    auto w = A->tangent_basis(-1)[0];  // d/de
    auto br = A->tangent_bracket(v, w);
    Vec coords = A->tangent_coords(br.values, -1);
    CHECK(coords.size() == 1);
    CHECK(vec_get(coords, 0) == Scalar(-1));
  }

  SECTION("commutator bracket satisfies the Jacobi identity exactly")
  {
    auto A = cdga_truncated_poly("x", 4, W);
    auto basis0 = A->tangent_basis(0);
    REQUIRE(basis0.size() == 3);  // x d, x^2 d, x^3 d
    for (const auto& u : basis0)
      for (const auto& v : basis0)
        for (const auto& w : basis0) {
          auto j1 = A->tangent_bracket(A->tangent_bracket(u, v), w);
          auto j2 = A->tangent_bracket(A->tangent_bracket(u, w), v);
          auto j3 = A->tangent_bracket(u, A->tangent_bracket(v, w));
          // [[u,v],w] = [u,[v,w]] + [[u,w],v] in degree 0 (all even)
          Derivation rhs = j3;
          for (int i = 0; i < A->gen_count(); ++i) poly_add(rhs.values[i], j2.values[i], Scalar(1));
          for (int i = 0; i < A->gen_count(); ++i) {
            Poly diff = j1.values[i];
            poly_add(diff, rhs.values[i], Scalar(-1));
            CHECK(diff.empty());
          }
        }
  }

  SECTION("T_A differential squares to zero and its complex is assembled")
  {
    CdgaPresentation p;  // k[x,y]/(x^2,y^2), |x| = 0, |y| = 1, dy = x
    p.generators.push_back({"x", 0, 2, 0});
    p.generators.push_back({"y", 1, 0, 0});
    p.differential.resize(2);
    p.differential[1].emplace(Expo{1, 0}, Scalar(1));
    auto A = std::make_shared<Cdga>(p, W);
    REQUIRE(A->check().ok);
    ChainComplex T = A->tangent_complex();
    CHECK(T.differential_squares_to_zero());
    // window functoriality: a wider window gives the same in-window answers
    DegreeWindow W2(-8, 8);
    auto A2 = std::make_shared<Cdga>(p, W2);
    for (int d = -4; d <= 4; ++d) CHECK(A->tangent_dim(d) == A2->tangent_dim(d));
  }

  SECTION("anchor-ready Leibniz compatibility [v, a w] = a[v, w] + v(a) w")
  {
    auto A = cdga_truncated_poly("x", 3, W);
    auto b0 = A->tangent_basis(0);
    for (const auto& v : b0)
      for (const auto& w : b0)
        for (const auto& am : A->basis(0)) {
          Poly a = A->mono_poly(am);
          auto lhs = A->tangent_bracket(v, A->tangent_scale(a, w));
          auto rhs1 = A->tangent_scale(a, A->tangent_bracket(v, w));
          auto va = A->derivation_on_poly(v.values, v.degree, a);
          auto rhs2 = A->tangent_scale(va, w);
          for (int i = 0; i < A->gen_count(); ++i) {
            Poly diff = lhs.values[i];
            poly_add(diff, rhs1.values[i], Scalar(-1));
            poly_add(diff, rhs2.values[i], Scalar(-1));
            CHECK(diff.empty());
          }
        }
  }
}

TEST_CASE("module action machinery")
{
  auto A = cdga_truncated_poly("x", 2, W);
  // E = A as a module over itself
  ChainComplex E = A->as_complex();
  ModuleAction act(A, E);
  // x acts by multiplication
  for (int d = W.lo; d <= W.hi; ++d) {
    for (int col = 0; col < A->dim(d); ++col) {
      Poly p = A->poly_mul(A->mono_poly(Expo{1}), A->mono_poly(A->basis(d)[col]));
      for (const auto& [m, c] : p) {
        int r = A->mono_index(m);
        if (r >= 0) act.gen_action[0].at(d).add(r, col, c);
      }
    }
  }
  CHECK(act.check(E).ok);
  // x . x = 0
  Vec xv = unit_vec(A->mono_index(Expo{1}));
  CHECK(act.act_mono(Expo{1}, 0, xv).empty());
}
