#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpz/pic_lattice.hpp"

namespace dpz {

// Formal determinant: integer combination of named symbols.
struct DetClass {
  std::map<std::string, Int> terms;

  DetClass() = default;
  static DetClass symbol(const std::string& s, Int k = 1);

  DetClass operator+(const DetClass& o) const;
  DetClass operator-(const DetClass& o) const;
  DetClass operator-() const;
  DetClass operator*(Int k) const;
  bool operator==(const DetClass& o) const = default;
  bool is_zero() const { return terms.empty(); }
};
std::string to_string(const DetClass& d);
DetClass parse_det(const std::string& s);  // e.g. "2q", "L-3q", "0"

// Relations r = 0; equality is decided in the quotient by their integer span.
struct RelationSet {
  std::vector<DetClass> relations;
  bool equal(const DetClass& a, const DetClass& b) const;
};

struct EllipticClass {
  Int rank = 0;
  Int deg = 0;
  DetClass det;
  int shift = 0;

  bool is_zero() const { return rank == 0 && deg == 0; }
  bool is_torsion() const { return rank == 0 && deg != 0; }
  Int gcd() const;
  bool operator==(const EllipticClass& o) const = default;
};
std::string to_string(const EllipticClass& c);
EllipticClass make_class(Int rank, Int deg, DetClass det = {});
// Negate into rank > 0 or (rank = 0, deg > 0), counting the shift.
EllipticClass normalize(EllipticClass c);
// -1, 0, 1 comparing slopes deg/rank, torsion is +infinity.
int slope_cmp(const EllipticClass& a, const EllipticClass& b);

struct Autoequivalence {
  Int dL = 1;
  std::string L = "L";  // class of L
  std::string q = "q";  // translation point
};

enum class AutoKind { Psi, PsiInverse, PhiDiv, PhiDivInverse };

Int chi_e(const EllipticClass& m, const EllipticClass& n);
EllipticClass psi(const Autoequivalence& a, const EllipticClass& n);
EllipticClass psi_inverse(const Autoequivalence& a, const EllipticClass& n);
EllipticClass phi_div(const EllipticClass& m, const EllipticClass& n);
EllipticClass phi_div_inverse(const EllipticClass& m, const EllipticClass& n);
EllipticClass apply_autoequivalence(AutoKind kind, const Autoequivalence& a, const EllipticClass& m, const EllipticClass& n);

struct HomExt {
  Int hom = 0;
  Int ext1 = 0;
};
HomExt hom_ext_dims(const EllipticClass& m, const EllipticClass& n, const RelationSet& rel = {});

// Positivity of (1 + alpha t)/(1 - tau t + t^2).
bool series_positive(const Rat& alpha, const Rat& tau);

struct BundleData {
  Int r = 1;
  Int d = 0;
  Int m = 1;
};
bool resolution_exists(const BundleData& v, const Autoequivalence& a, const EllipticClass& target);
bool koszul_test(Int r, Int d, const Autoequivalence& a);

struct DivisorialBundle {
  std::vector<std::pair<EllipticClass, Int>> components;  // class, multiplicity
  std::optional<Rat> window_start;                        // defaults to the least slope
};
void check_window(const DivisorialBundle& v, const Autoequivalence& a);
std::vector<Int> hilbert_series(const DivisorialBundle& v, const Autoequivalence& a, int n_max, const RelationSet& rel = {});
std::vector<Int> center_series(const Autoequivalence& a, int n_max);
std::vector<Int> quotient_series(const DivisorialBundle& v, const Autoequivalence& a, int n_max, const RelationSet& rel = {});

}  // namespace dpz
