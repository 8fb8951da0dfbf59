#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "dpz/surface_k.hpp"

using namespace dpz;

namespace {

LatticeVector random_vector(std::mt19937& g, int d, int bound) {
  std::uniform_int_distribution<int> u(-bound, bound);
  std::vector<Int> c(10 - d);
  for (auto& x : c) x = u(g);
  return LatticeVector(d, c);
}

SurfaceClass random_class(std::mt19937& g, int d) {
  std::uniform_int_distribution<int> u(-4, 4);
  return {u(g), random_vector(g, d, 3), u(g)};
}

// chi(O(D)) by Riemann-Roch.
Int rr_line(const LatticeVector& D) {
  const auto Q = anticanonical(D.d);
  return 1 + (intersect(D, D) + intersect(D, Q)) / 2;
}

SurfaceClass line_bundle(const LatticeVector& D) { return {1, D, rr_line(D)}; }

}  // namespace

TEST_CASE("euler pairing basics") {
  SurfaceClass oe{0, basis_e(1, 1), 0};
  CHECK(euler_pairing(oe, oe) == 1);
  auto D = basis_h(1) - basis_e(1, 1);
  CHECK(euler_pairing(structure_sheaf(1), twist(structure_sheaf(1), -D)) == 0);
  for (int d = 1; d <= 9; ++d) CHECK(euler_pairing(structure_sheaf(d), structure_sheaf(d)) == 1);
}

TEST_CASE("twists of the structure sheaf") {
  auto O = structure_sheaf(1);
  CHECK(twist(O, LatticeVector::zero(1)) == O);
  CHECK(twist(O, basis_h(1)) == SurfaceClass{1, basis_h(1), 3});
  for (int d = 1; d <= 9; ++d) {
    auto Q = anticanonical(d);
    CHECK(twist(structure_sheaf(d), -Q) == SurfaceClass{1, -Q, 1});
  }
}

TEST_CASE("pairing matches Riemann-Roch on line bundles") {
  std::mt19937 g(5);
  for (int d = 1; d <= 9; ++d)
    for (int t = 0; t < 200; ++t) {
      auto D = random_vector(g, d, 3), E = random_vector(g, d, 3);
      CHECK(twist(structure_sheaf(d), D) == line_bundle(D));
      CHECK(euler_pairing(line_bundle(D), line_bundle(E)) == rr_line(E - D));
    }
}

TEST_CASE("pairing is invariant under common twists and satisfies Serre duality") {
  std::mt19937 g(9);
  for (int d = 1; d <= 9; ++d)
    for (int t = 0; t < 300; ++t) {
      auto M = random_class(g, d), N = random_class(g, d);
      auto D = random_vector(g, d, 4);
      CHECK(euler_pairing(twist(M, D), twist(N, D)) == euler_pairing(M, N));
      CHECK(euler_pairing(M, N) == euler_pairing(N, twist(M, -anticanonical(d))));
      CHECK(euler_pairing(negate(M), N) == -euler_pairing(M, N));
      CHECK(twist(twist(M, D), -D) == M);
    }
}

TEST_CASE("restriction to the anticanonical curve") {
  CHECK(restrict_to_elliptic(structure_sheaf(1), 0) == make_class(1, 0));
  CHECK(restrict_to_elliptic({0, basis_e(1, 1), 0}, 0) == make_class(0, 1));
  CHECK(restrict_to_elliptic(point_class(1), 0) == make_class(0, 0));
}

TEST_CASE("phi star") {
  auto e = basis_e(0, 9);
  CHECK(phi_star(structure_sheaf(0), PhiMode::general) == SurfaceClass{0, e, 0});
  auto D = basis_h(1) - basis_e(1, 1);
  auto img = negate(phi_star(twist(structure_sheaf(1), -D), PhiMode::anticanonical));
  CHECK(img == SurfaceClass{2, anticanonical(1) - D, 0});
  CHECK(euler_pairing(img, img) == 1);

  std::mt19937 g(13);
  for (int t = 0; t < 300; ++t) {
    auto M = random_class(g, 1);
    M.chi = 0;
    CHECK(phi_star(phi_star(M, PhiMode::anticanonical), PhiMode::anticanonical) == M);
  }
}

TEST_CASE("rational curve bundles") {
  auto D = basis_h(1) - basis_e(1, 1);
  auto E = rational_curve_bundle(D);
  CHECK(E == SurfaceClass{2, anticanonical(1) - D, 0});
  CHECK(slope(E) == Rat(-1, 2));
  auto H = rational_curve_bundle(basis_h(1));
  CHECK(H.rank == 3);
  CHECK(slope(H) == Rat(-1, 3));
  CHECK(euler_pairing(H, H) == 1);
  CHECK_THROWS_AS(rational_curve_bundle(basis_e(1, 1)), DomainError);
}

TEST_CASE("line twist maximum") {
  auto O = structure_sheaf(1);
  auto res = line_twist_max(O, O);
  CHECK(res.value == 1);
  CHECK(std::count(res.maximizers.begin(), res.maximizers.end(), LatticeVector::zero(1)) == 1);

  // brute force over a pool of small vectors
  std::set<LatticeVector> pool{LatticeVector::zero(1)};
  for (const auto& a : roots_of_Qperp(1)) {
    pool.insert(a);
    for (const auto& b : roots_of_Qperp(1)) pool.insert(a + b);
  }
  std::mt19937 g(21);
  std::uniform_int_distribution<int> ur(1, 3);
  const auto Q = anticanonical(1);
  int tested = 0;
  while (tested < 60) {
    SurfaceClass E{ur(g), random_vector(g, 1, 1), 0}, Ep{ur(g), random_vector(g, 1, 1), 0};
    E.chi = ur(g);
    Ep.chi = ur(g);
    auto part = [&](const SurfaceClass& m) { return RationalVector(m.c1) - RationalVector(Q) * Rat(intersect(m.c1, Q)); };
    auto delta = part(Ep) * Rat(1, Ep.rank) - part(E) * Rat(1, E.rank);
    if (pos_form(delta, delta) > Rat(1)) continue;
    ++tested;
    Int best = 0;
    bool first = true;
    for (const auto& D : pool) {
      Int v = euler_pairing(twist(Ep, -D), E);
      if (first || v > best) best = v;
      first = false;
    }
    auto got = line_twist_max(E, Ep);
    CHECK(got.value == best);
    for (const auto& D : got.maximizers) CHECK(euler_pairing(twist(Ep, -D), E) == best);
  }
}

TEST_CASE("numerical exceptional collections") {
  auto O = structure_sheaf(1);
  CHECK(validate_collection({O}).ok);
  auto alpha = basis_e(1, 7) - basis_e(1, 8);
  CHECK(validate_collection({twist(O, -alpha), O}).ok);
  auto bad = validate_collection({O, twist(O, -alpha)});
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.root_test.empty());

  // chains O(e_1 - e_{k+1}) with twists: every difference is a positive root
  std::mt19937 g(4);
  for (int t = 0; t < 200; ++t) {
    auto D = random_vector(g, 1, 3);
    std::vector<SurfaceClass> cs;
    int len = 1 + t % 8;
    for (int k = 0; k < len; ++k) {
      auto c = k == 0 ? LatticeVector::zero(1) : basis_e(1, 1) - basis_e(1, k + 1);
      cs.push_back(twist(line_bundle(c), D));
    }
    CHECK(validate_collection(cs).ok);
    if (len > 1) {
      std::swap(cs.front(), cs.back());
      CHECK_FALSE(validate_collection(cs).ok);
    }
  }
  CHECK_THROWS_AS(validate_collection({point_class(1)}), DomainError);
}

TEST_CASE("surface class serialization round trips") {
  std::mt19937 g(17);
  for (int d = 1; d <= 9; ++d) {
    auto M = random_class(g, d);
    CHECK(parse_surface_class(to_string(M)) == M);
  }
  CHECK_THROWS_AS(parse_surface_class("(1; d=1:[0]; 1)"), DomainError);
}
