#pragma once

#include <string>
#include <vector>

#include "dpz/elliptic_k.hpp"
#include "dpz/pic_lattice.hpp"

namespace dpz {

struct SurfaceClass {
  Int rank = 0;
  LatticeVector c1;
  Int chi = 0;

  int degree() const { return c1.d; }
  bool operator==(const SurfaceClass& o) const = default;
};
std::string to_string(const SurfaceClass& m);
SurfaceClass parse_surface_class(const std::string& s);  // (<rank>; d=<d>:[...]; <chi>)

SurfaceClass structure_sheaf(int d);
SurfaceClass point_class(int d);
Rat slope(const SurfaceClass& m);  // (c1.Q)/rank, rank > 0

Int euler_pairing(const SurfaceClass& m, const SurfaceClass& n);
SurfaceClass twist(const SurfaceClass& m, const LatticeVector& D);
SurfaceClass negate(const SurfaceClass& m);
EllipticClass restrict_to_elliptic(const SurfaceClass& m, Int delta);

enum class PhiMode { general, anticanonical };
// General mode lives on the degree-0 lattice (h, e_1..e_9) with section e = e_9.
SurfaceClass phi_star(const SurfaceClass& m, PhiMode mode);

SurfaceClass rational_curve_bundle(const LatticeVector& D);

struct TwistMax {
  Int value = 0;
  std::vector<LatticeVector> maximizers;
};
// max over D in Q^perp of chi(E'(-D), E)
TwistMax line_twist_max(const SurfaceClass& E, const SurfaceClass& Eprime);

struct CollectionReport {
  bool ok = true;
  std::vector<std::string> not_exceptional;
  std::vector<std::string> slope_window;
  std::vector<std::string> nonzero_chi;
  std::vector<std::string> root_test;
};
CollectionReport validate_collection(const std::vector<SurfaceClass>& classes);

bool is_positive_root(const LatticeVector& x);

}  // namespace dpz
