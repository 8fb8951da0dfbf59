#pragma once

#include <map>
#include <string>
#include <vector>

#include "dpz/elliptic_k.hpp"

namespace dpz {

// Objects M_j indexed by integers: either Psi-translates of V's components or an explicit list.
struct SequenceSpec {
  bool explicit_list = false;
  DivisorialBundle V;
  Autoequivalence psi;
  std::vector<EllipticClass> objects;  // explicit mode, indices 0..n-1

  static SequenceSpec from_bundle(const DivisorialBundle& V, const Autoequivalence& a);
  static SequenceSpec from_list(std::vector<EllipticClass> objects);
  EllipticClass object(long j) const;
  bool has(long j) const;
};

struct Coincidence {
  long index = 0;
  int degree = 0;  // entries at degree and degree + 1
  DetClass det_object;
  DetClass det_target;
};

struct ResolutionShape {
  long resolved = 0;
  int depth = 0;
  std::map<int, std::map<long, Int>> degrees;  // degree -> index -> multiplicity
  std::vector<Coincidence> coincidences;
};

ResolutionShape free_shape(const SequenceSpec& seq, long i, int depth);
std::string to_string(const ResolutionShape& s);

struct MinimalityReport {
  bool minimal = true;
  std::vector<Coincidence> culprits;
};
MinimalityReport minimality_report(const ResolutionShape& s, const RelationSet& rel);

}  // namespace dpz
