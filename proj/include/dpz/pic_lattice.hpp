#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace dpz {

using Int = long long;
using BigInt = boost::multiprecision::checked_int128_t;
using Rat = boost::rational<BigInt>;

Int to_int(const BigInt& x);

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Coefficients over (h, e_1, ..., e_{9-d}); form is diag(+1, -1, ..., -1).
struct LatticeVector {
  int d = 1;
  std::vector<Int> c;

  LatticeVector() = default;
  LatticeVector(int deg, std::vector<Int> coeffs);
  static LatticeVector zero(int d);

  std::size_t size() const { return c.size(); }
  Int operator[](std::size_t i) const { return c[i]; }
  Int& operator[](std::size_t i) { return c[i]; }

  LatticeVector operator+(const LatticeVector& o) const;
  LatticeVector operator-(const LatticeVector& o) const;
  LatticeVector operator-() const;
  LatticeVector operator*(Int k) const;
  bool operator==(const LatticeVector& o) const = default;
  auto operator<=>(const LatticeVector& o) const = default;
};

struct RationalVector {
  int d = 1;
  std::vector<Rat> c;

  RationalVector() = default;
  RationalVector(int deg, std::vector<Rat> coeffs);
  explicit RationalVector(const LatticeVector& v);
  static RationalVector zero(int d);

  std::size_t size() const { return c.size(); }
  RationalVector operator+(const RationalVector& o) const;
  RationalVector operator-(const RationalVector& o) const;
  RationalVector operator*(Rat k) const;
  bool operator==(const RationalVector& o) const = default;
  bool is_integral() const;
  LatticeVector to_lattice() const;
};

LatticeVector basis_h(int d);
LatticeVector basis_e(int d, int i);
LatticeVector anticanonical(int d);

// Intersection form and its negation (positive on Q^perp).
Int intersect(const LatticeVector& u, const LatticeVector& v);
Rat intersect(const RationalVector& u, const RationalVector& v);
Int pos_form(const LatticeVector& u, const LatticeVector& v);
Rat pos_form(const RationalVector& u, const RationalVector& v);
Rat inner_product(const RationalVector& u, const RationalVector& v, bool positive);

std::string to_string(const LatticeVector& v);
std::string to_string(const RationalVector& v);
std::string to_string(const Rat& q);
LatticeVector parse_lattice_vector(const std::string& s);
Rat parse_rational(const std::string& s);

Int floor_div(Int a, Int b);
Int floor(const Rat& q);
Int round_half_up(const Rat& q);

// A_n, D_n, E_n factor.
struct CartanFactor {
  char family = 'A';
  int rank = 0;
  bool operator==(const CartanFactor&) const = default;
};
std::string type_string(const std::vector<CartanFactor>& t);
int type_rank(const std::vector<CartanFactor>& t);
std::vector<int> affine_marks(const CartanFactor& f);

// Root system of Q^perp in degree d.
struct RootSystem {
  int d = 1;
  std::vector<LatticeVector> simple;
  std::vector<LatticeVector> positive;  // sorted by height, then lexicographically
  std::vector<LatticeVector> roots;     // positive followed by their negatives
  std::vector<std::vector<Int>> positive_coords;
  struct Component {
    std::vector<int> nodes;
    LatticeVector highest;
    std::vector<Int> marks;  // aligned with nodes
  };
  std::vector<Component> components;
  std::vector<RationalVector> fundamental_weights;  // dual to simple roots within span

  int rank() const { return static_cast<int>(simple.size()); }
  int index_of(const LatticeVector& r) const;  // -1 if not a root
};

const RootSystem& root_system(int d);
std::vector<LatticeVector> roots_of_Qperp(int d);
std::vector<LatticeVector> simple_roots(int d);

// Coordinates of a vector in the span of the simple roots; throws if outside.
std::vector<Rat> simple_coordinates(const RootSystem& rs, const RationalVector& x);

LatticeVector reflect(const LatticeVector& x, const LatticeVector& root);
RationalVector reflect(const RationalVector& x, const LatticeVector& root);

struct AlcoveStep {
  LatticeVector root;
  bool affine = false;  // x -> s_root(x) + root
};

struct AlcovePoint {
  int d = 1;
  std::vector<Rat> c;   // <x, alpha_i> for the simple roots
  std::vector<Rat> c0;  // 1 - <x, highest> per irreducible component
  RationalVector representative;
};

struct AlcoveResult {
  AlcovePoint point;
  std::vector<AlcoveStep> log;
};

enum class AlcoveMode { finite, affine };

AlcoveResult reduce_to_alcove(const RationalVector& x, AlcoveMode mode);
RationalVector replay(const RationalVector& x, const std::vector<AlcoveStep>& log);
// Linear part of the log applied to a lattice vector.
LatticeVector replay_linear(const LatticeVector& x, const std::vector<AlcoveStep>& log);
bool in_alcove(const AlcovePoint& p);

// Z-basis of the lattice Q^perp.
std::vector<LatticeVector> qperp_basis(int d);

struct CvpResult {
  Rat dist2;
  std::vector<LatticeVector> nearest;
};

// Nearest points of Q^perp to target, positive form.
CvpResult closest_vectors(const RationalVector& target);
// All lattice points of Q^perp within squared distance bound of target.
std::vector<LatticeVector> lattice_points_within(const RationalVector& target, const Rat& bound);

struct SubsystemReport {
  std::vector<LatticeVector> input;
  std::vector<CartanFactor> cartan_type;
  std::vector<CartanFactor> orthogonal_type;
  int rank_deficit = 0;
  std::vector<Int> torsion;
};

// ADE type of a root set closed under its own reflections.
std::vector<CartanFactor> classify_root_set(const std::vector<LatticeVector>& roots);
std::vector<LatticeVector> simple_system_of(const std::vector<LatticeVector>& roots);
SubsystemReport subsystem_analyze(int d, const std::vector<LatticeVector>& roots);

struct SmithResult {
  int rank = 0;
  std::vector<Int> divisors;  // nonzero diagonal, each dividing the next
};
SmithResult smith_invariants(const std::vector<std::vector<Int>>& m);

// Rank of an integer matrix over Q.
int matrix_rank(const std::vector<std::vector<Int>>& m);

}  // namespace dpz
