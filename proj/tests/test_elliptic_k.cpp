#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <random>

#include "dpz/elliptic_k.hpp"

using namespace dpz;
using boost::multiprecision::cpp_rational;

namespace {

struct Signed {
  Int rank, deg;
  DetClass det;
  bool operator==(const Signed&) const = default;
};

Signed signed_class(const EllipticClass& c) {
  Int s = (c.shift % 2 == 0) ? 1 : -1;
  return {s * c.rank, s * c.deg, c.det * s};
}

EllipticClass random_class(std::mt19937& g) {
  std::uniform_int_distribution<int> u(-6, 6);
  std::uniform_int_distribution<int> k(-2, 2);
  EllipticClass c;
  do c = make_class(u(g), u(g), DetClass::symbol("D", k(g)) + DetClass::symbol("q", k(g)));
  while (c.is_zero());
  return c;
}

EllipticClass random_stable(std::mt19937& g) {
  std::uniform_int_distribution<int> ur(1, 5), ud(-8, 8);
  Int r, d;
  do {
    r = ur(g);
    d = ud(g);
  } while (std::gcd(r, d) != 1);
  return make_class(r, d, DetClass::symbol("M"));
}

// 200 coefficients of (1 + alpha t)/(1 - tau t + t^2), all positive.
bool recurrence_positive(const cpp_rational& alpha, const cpp_rational& tau) {
  cpp_rational a = 1, b = tau + alpha;
  if (b <= 0) return false;
  for (int n = 2; n < 200; ++n) {
    cpp_rational c = tau * b - a;
    if (c <= 0) return false;
    a = b;
    b = c;
  }
  return true;
}

}  // namespace

TEST_CASE("euler pairing on the curve") {
  CHECK(chi_e(make_class(1, 0), make_class(1, 1)) == 1);
  CHECK(chi_e(make_class(3, 2), make_class(3, 2)) == 0);
  CHECK(chi_e(make_class(2, 1), make_class(0, 1)) == 2);
  std::mt19937 g(1);
  for (int t = 0; t < 500; ++t) {
    auto m = random_class(g), n = random_class(g);
    CHECK(chi_e(m, n) == m.rank * n.deg - m.deg * n.rank);
    CHECK(chi_e(m, n) == -chi_e(n, m));
  }
}

TEST_CASE("determinant classes") {
  CHECK(to_string(parse_det("L-3q")) == "L-3q");
  CHECK(parse_det("2q") == DetClass::symbol("q", 2));
  CHECK(parse_det("0").is_zero());
  RelationSet rel{{parse_det("2q")}};
  CHECK(rel.equal(parse_det("L-6q"), parse_det("L-4q")));
  CHECK_FALSE(rel.equal(parse_det("L-5q"), parse_det("L-4q")));
  CHECK_FALSE(RelationSet{}.equal(parse_det("q"), parse_det("0")));
}

TEST_CASE("normalization and slope order") {
  auto c = normalize(make_class(-1, 1));
  CHECK(c.rank == 1);
  CHECK(c.deg == -1);
  CHECK(c.shift == 1);
  CHECK(slope_cmp(make_class(1, 0), make_class(1, 1)) == -1);
  CHECK(slope_cmp(make_class(0, 1), make_class(5, 100)) == 1);
  CHECK(slope_cmp(make_class(2, 2), make_class(1, 1)) == 0);
}

TEST_CASE("psi and phi examples") {
  Autoequivalence a{1};
  CHECK(psi(a, make_class(1, 0)).deg == 1);
  auto r1 = phi_div(make_class(1, 0), make_class(0, 1));
  CHECK(r1.rank == 1);
  CHECK(r1.deg == -1);
  CHECK(r1.shift == 1);
  auto r2 = phi_div(make_class(1, -1), make_class(1, 0));
  CHECK(r2.rank == 0);
  CHECK(r2.deg == 1);
  CHECK(r2.shift == 0);
}

TEST_CASE("autoequivalences are invertible and preserve the pairing") {
  std::mt19937 g(3);
  std::uniform_int_distribution<int> ul(1, 5);
  for (int t = 0; t < 2000; ++t) {
    Autoequivalence a{ul(g)};
    auto n = random_class(g), n2 = random_class(g);
    auto m = random_stable(g);
    CHECK(signed_class(psi_inverse(a, psi(a, n))) == signed_class(n));
    CHECK(signed_class(psi(a, psi_inverse(a, n))) == signed_class(n));
    CHECK(signed_class(phi_div_inverse(m, phi_div(m, n))) == signed_class(n));
    CHECK(signed_class(phi_div(m, phi_div_inverse(m, n))) == signed_class(n));
    auto p = signed_class(phi_div(m, n)), p2 = signed_class(phi_div(m, n2));
    CHECK(p.rank * p2.deg - p.deg * p2.rank == chi_e(n, n2));
    auto s = signed_class(psi(a, n)), s2 = signed_class(psi(a, n2));
    CHECK(s.rank * s2.deg - s.deg * s2.rank == chi_e(n, n2));
  }
}

TEST_CASE("phi of a divisorial bundle factors over its stable constituents") {
  std::mt19937 g(8);
  std::uniform_int_distribution<int> um(1, 4);
  for (int t = 0; t < 2000; ++t) {
    auto m0 = random_stable(g);
    Int k = um(g);
    auto m = make_class(m0.rank * k, m0.deg * k, m0.det * k);
    auto n = random_class(g);
    auto composed = n;
    for (Int i = 0; i < k; ++i) composed = phi_div(m0, composed);
    CHECK(signed_class(phi_div(m, n)) == signed_class(composed));
  }
}

TEST_CASE("hom and ext dimensions") {
  auto a = make_class(1, 0, parse_det("a")), b = make_class(1, 0, parse_det("b"));
  auto h = hom_ext_dims(make_class(1, 0), make_class(1, 1));
  CHECK(h.hom == 1);
  CHECK(h.ext1 == 0);
  CHECK(hom_ext_dims(a, a).hom == 1);
  CHECK(hom_ext_dims(a, a).ext1 == 1);
  CHECK(hom_ext_dims(a, b).hom == 0);
  CHECK(hom_ext_dims(a, b).ext1 == 0);
  CHECK(hom_ext_dims(a, b, RelationSet{{parse_det("a-b")}}).hom == 1);
  auto x = hom_ext_dims(make_class(1, 3), make_class(2, 1));
  CHECK(x.hom == 0);
  CHECK(x.ext1 == 5);
}

TEST_CASE("series positivity matches the recurrence") {
  for (int p = -6; p <= 6; ++p)
    for (int q = 1; q <= 6; ++q)
      for (int s = -6; s <= 12; ++s)
        for (int u = 1; u <= 4; ++u) {
          Rat alpha(p, q), tau(s, u);
          cpp_rational ca(p, q), ct(s, u);
          CHECK(series_positive(alpha, tau) == recurrence_positive(ca, ct));
        }
}

TEST_CASE("resolution existence and Koszul examples") {
  CHECK_FALSE(resolution_exists({1, 0, 1}, Autoequivalence{1}, make_class(0, 1)));
  CHECK(resolution_exists({1, 0, 1}, Autoequivalence{4}, make_class(1, 0)));
  CHECK(resolution_exists({2, 1, 1}, Autoequivalence{1}, make_class(2, 1)));
  CHECK_FALSE(koszul_test(1, 0, Autoequivalence{3}));
  CHECK(koszul_test(1, 0, Autoequivalence{4}));
  CHECK(koszul_test(2, 1, Autoequivalence{1}));
  CHECK_THROWS_AS(resolution_exists({0, 0, 1}, Autoequivalence{1}, make_class(1, 0)), DomainError);
}

TEST_CASE("hilbert series") {
  DivisorialBundle v21{{{make_class(2, 1), 1}}, std::nullopt};
  auto h = hilbert_series(v21, Autoequivalence{1}, 50);
  CHECK(h[0] == 1);
  for (int n = 1; n <= 50; ++n) CHECK(h[n] == 4 * n);
  auto c = center_series(Autoequivalence{1}, 50);
  CHECK(c[0] == 1);
  for (int n = 1; n <= 50; ++n) CHECK(c[n] == n);

  // V = O: dim Hom(O, L^n) = n dL
  for (Int dL = 1; dL <= 4; ++dL) {
    DivisorialBundle o{{{make_class(1, 0), 1}}, std::nullopt};
    auto s = hilbert_series(o, Autoequivalence{dL}, 20);
    CHECK(s[0] == 1);
    for (int n = 1; n <= 20; ++n) CHECK(s[n] == n * dL);
  }

  // sum of line bundles: dimensions add over pairs
  DivisorialBundle two{{{make_class(1, 0), 1}, {make_class(1, 1), 1}}, std::nullopt};
  auto s2 = hilbert_series(two, Autoequivalence{2}, 10);
  CHECK(s2[0] == 3);
  for (int n = 1; n <= 10; ++n) CHECK(s2[n] == 2 * 2 * n + (2 * n + 1) + (2 * n - 1));

  DivisorialBundle bad{{{make_class(1, 0), 1}, {make_class(1, 3), 1}}, std::nullopt};
  CHECK_THROWS_AS(check_window(bad, Autoequivalence{2}), DomainError);
}

TEST_CASE("elliptic class serialization") {
  auto c = normalize(make_class(-2, 3, parse_det("L-2q")));
  CHECK(to_string(c) == "(2,-3,-L+2q)[1]");
}
