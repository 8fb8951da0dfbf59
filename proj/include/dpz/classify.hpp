#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpz/pic_lattice.hpp"
#include "dpz/surface_k.hpp"

namespace dpz {

// Slope -a/r on the degree 1 surface.
struct Slope {
  Int a = 0;
  Int r = 1;
};
std::string to_string(const Slope& s);
Slope parse_slope(const std::string& s);  // "-a/r", "a/r" or an integer

enum class Status { candidate, representable, excluded };
std::string to_string(Status s);

struct CandidateClass {
  Slope slope;
  LatticeVector v;            // c1 = -a Q + v
  AlcovePoint alcove;         // image of v/r
  std::vector<Int> tuple;     // r * (c_1..c_8, c_0)
  Int norm = 0;               // v.v in the positive form
  Int chi_max = 0;
  Status status = Status::candidate;
  std::string reason;

  SurfaceClass surface_class() const;
};

// Alcove points n with sum(marks * n) + n_0 = r; v = sum n_i omega_i.
std::vector<CandidateClass> alcove_candidates(const Slope& s, std::optional<Int> norm_target = std::nullopt);
std::vector<CandidateClass> classify_slope(const Slope& s, Int r_max = 64);
CandidateClass candidate_from_vector(const Slope& s, const LatticeVector& v);

struct ConfigSpec {
  Slope slope;  // a = 0, r = 1 for integer slope
  int r = 1;    // number of exceptional objects
  int d = 1;    // degree of the surface
  Int delta = 0;
  int jobs = 1;
};

struct ModuliDescriptor {
  Slope slope;
  int r = 1;
  int d = 1;
  std::vector<Int> base_tuple;            // alcove tuple of the base object
  std::vector<LatticeVector> roots;       // c1 differences on the degree 1 model
  std::vector<LatticeVector> curves;      // contracted (-1)-curves
  std::vector<CartanFactor> orthogonal_type;
  int fiber_dim = 0;
  std::vector<Int> torsion;
  std::vector<std::vector<Int>> wps_degrees;  // one multiset per factor, empty unless nice
  std::vector<std::string> flags;
  std::vector<std::vector<Int>> constraints;  // rows (rank, c1, chi - rank)
  std::string note;

  bool nice() const { return !wps_degrees.empty(); }
};

std::vector<ModuliDescriptor> configuration_search(const ConfigSpec& spec);
std::string degrees_string(const ModuliDescriptor& m);  // "1,2,2,3" or "1,1,1x1,1"
std::string torsion_string(const ModuliDescriptor& m);  // "E[2]" style, "-" when none

std::vector<Int> decimation_orders(const std::vector<Int>& degrees);

struct QuadraticForm {
  std::vector<std::string> names;
  std::vector<std::vector<Rat>> a;  // value is x^T a x
};
// -h^2/2 + sum x_i^2/2 + u q - delta q^2/2 over (u, h, q, x_1..x_{9-d}).
QuadraticForm polarization_form(int d, Int delta);
// Functional det(phi[E]) in the coordinates of polarization_form.
std::vector<Int> class_functional(const SurfaceClass& e);
std::vector<Int> named_functional(const QuadraticForm& f, const std::string& expr);  // e.g. "q", "3h-x1-x2"

enum class Definiteness { positive_definite, positive_semidefinite, negative_definite, negative_semidefinite, indefinite, zero };
std::string to_string(Definiteness d);

struct PolarizationResult {
  Definiteness verdict = Definiteness::zero;
  int positive = 0;
  int negative = 0;
  int zero = 0;
  std::vector<std::vector<Rat>> kernel;  // radical of the restricted form, ambient coordinates
};
PolarizationResult polarization_restrict(const QuadraticForm& f, const std::vector<std::vector<Int>>& constraints);

}  // namespace dpz
