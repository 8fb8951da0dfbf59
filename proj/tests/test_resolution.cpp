#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dpz/resolution.hpp"

using namespace dpz;

namespace {

ResolutionShape line_shape(Int dL, int depth) {
  DivisorialBundle V{{{make_class(1, 0), 1}}, std::nullopt};
  return free_shape(SequenceSpec::from_bundle(V, Autoequivalence{dL}), 0, depth);
}

std::map<long, Int> entries(std::initializer_list<std::pair<long, Int>> l) { return {l.begin(), l.end()}; }

}  // namespace

TEST_CASE("line bundle resolution shapes") {
  auto s1 = line_shape(1, 4);
  CHECK(to_string(s1) == "[-12,-11,-10,-9] -> [-9,-8,-7,-6] -> [-6,-5,-4,-3] -> [-3,-2,-1] -> [0]");
  CHECK(s1.degrees[0] == entries({{0, 1}}));
  CHECK(s1.degrees[1] == entries({{-1, 1}, {-2, 1}, {-3, 1}}));
  CHECK(s1.degrees[2] == entries({{-3, 1}, {-4, 1}, {-5, 1}, {-6, 1}}));

  auto s2 = line_shape(2, 4);
  CHECK(to_string(s2).ends_with("[-4,-3,-3,-2] -> [-2,-1,-1] -> [0]"));
  CHECK(s2.degrees[1] == entries({{-1, 2}, {-2, 1}}));

  auto s3 = line_shape(3, 4);
  CHECK(to_string(s3).ends_with("[-3,-2,-2,-2] -> [-1,-1,-1] -> [0]"));
  CHECK(s3.degrees[1] == entries({{-1, 3}}));
  CHECK(s3.degrees[2] == entries({{-2, 3}, {-3, 1}}));
}

TEST_CASE("depth only truncates") {
  for (Int dL = 1; dL <= 3; ++dL) {
    auto deep = line_shape(dL, 8), shallow = line_shape(dL, 4);
    for (int k = 0; k <= 4; ++k) CHECK(deep.degrees[k] == shallow.degrees[k]);
  }
}

TEST_CASE("euler characteristic of the resolution") {
  // evaluated at M_k the complex of projectives Hom(-, M_i) has the dimension of the simple module at 0
  for (Int dL = 1; dL <= 4; ++dL) {
    auto s = line_shape(dL, 6);
    for (long k = -4; k <= 0; ++k) {
      Int total = 0;
      for (auto& [deg, m] : s.degrees)
        for (auto& [i, mult] : m) {
          Int hom = i == k ? 1 : (k < i ? dL * (i - k) : 0);
          total += (deg % 2 ? -1 : 1) * mult * hom;
        }
      CHECK(total == (k == 0 ? 1 : 0));
    }
  }
}

TEST_CASE("explicit object lists reproduce the bundle sequence") {
  std::vector<EllipticClass> objs;
  for (long j = -20; j <= 0; ++j) objs.push_back(make_class(1, 2 * j, DetClass::symbol("L", j) + DetClass::symbol("q", -j * (j - 1))));
  auto seq = SequenceSpec::from_list(objs);
  CHECK(seq.has(0));
  CHECK_FALSE(seq.has(21));
  auto s = free_shape(seq, 20, 4);
  auto ref = line_shape(2, 4);
  for (int k = 0; k <= 4; ++k) {
    std::map<long, Int> shifted;
    for (auto& [i, m] : ref.degrees[k]) shifted[i + 20] = m;
    CHECK(s.degrees[k] == shifted);
  }
  CHECK_THROWS_AS(SequenceSpec::from_list({make_class(1, 1), make_class(1, 0)}), DomainError);
}

TEST_CASE("minimality") {
  RelationSet none, two{{parse_det("2q")}};
  for (Int dL = 1; dL <= 2; ++dL) {
    auto s = line_shape(dL, 4);
    CHECK(minimality_report(s, two).minimal);
    auto r = minimality_report(s, none);
    CHECK_FALSE(r.minimal);
  }
  auto r1 = minimality_report(line_shape(1, 4), none);
  REQUIRE_FALSE(r1.culprits.empty());
  CHECK(r1.culprits.front().index == -3);
  CHECK(r1.culprits.front().degree == 1);
  CHECK(minimality_report(line_shape(3, 4), none).minimal);
  CHECK(minimality_report(line_shape(3, 4), RelationSet{{parse_det("q")}}).minimal);
}
