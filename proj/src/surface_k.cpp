#include "dpz/surface_k.hpp"

#include <algorithm>
#include <sstream>

namespace dpz {

namespace {

void same_context(const SurfaceClass& m, const SurfaceClass& n) {
  if (m.c1.d != n.c1.d) throw DomainError("classes live on surfaces of different degree");
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t");
  auto b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

std::string to_string(const SurfaceClass& m) {
  std::ostringstream os;
  os << '(' << m.rank << "; " << to_string(m.c1) << "; " << m.chi << ')';
  return os.str();
}

SurfaceClass parse_surface_class(const std::string& s0) {
  std::string s = trim(s0);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw DomainError("class must look like (<rank>; d=<d>:[...]; <chi>)");
  s = s.substr(1, s.size() - 2);
  auto a = s.find(';'), b = s.rfind(';');
  if (a == std::string::npos || a == b) throw DomainError("class must look like (<rank>; d=<d>:[...]; <chi>)");
  SurfaceClass m;
  Rat r = parse_rational(trim(s.substr(0, a)));
  Rat x = parse_rational(trim(s.substr(b + 1)));
  if (r.denominator() != 1 || x.denominator() != 1) throw DomainError("rank and chi must be integers");
  m.rank = to_int(r.numerator());
  m.chi = to_int(x.numerator());
  m.c1 = parse_lattice_vector(trim(s.substr(a + 1, b - a - 1)));
  return m;
}

SurfaceClass structure_sheaf(int d) { return {1, LatticeVector::zero(d), 1}; }
SurfaceClass point_class(int d) { return {0, LatticeVector::zero(d), 1}; }

Rat slope(const SurfaceClass& m) {
  if (m.rank <= 0) throw DomainError("slope needs positive rank");
  return Rat(intersect(m.c1, anticanonical(m.degree())), m.rank);
}

Int euler_pairing(const SurfaceClass& m, const SurfaceClass& n) {
  same_context(m, n);
  const auto Q = anticanonical(m.degree());
  return -m.rank * n.rank + m.rank * n.chi + m.chi * n.rank - intersect(m.c1, n.c1 + Q * n.rank);
}

SurfaceClass twist(const SurfaceClass& m, const LatticeVector& D) {
  if (D.d != m.degree()) throw DomainError("twist: divisor and class live on different surfaces");
  const auto Q = anticanonical(m.degree());
  Int q = intersect(D, D) + intersect(D, Q);
  if ((m.rank * q) % 2 != 0) throw std::logic_error("twist: parity violated");
  return {m.rank, m.c1 + D * m.rank, m.chi + intersect(m.c1, D) + m.rank * q / 2};
}

SurfaceClass negate(const SurfaceClass& m) { return {-m.rank, -m.c1, -m.chi}; }

EllipticClass restrict_to_elliptic(const SurfaceClass& m, Int delta) {
  return make_class(m.rank, intersect(m.c1, anticanonical(m.degree())) + delta * m.rank);
}

SurfaceClass phi_star(const SurfaceClass& m, PhiMode mode) {
  const int d = m.degree();
  const auto Q = anticanonical(d);
  const Int cq = intersect(m.c1, Q);
  if (mode == PhiMode::anticanonical) return {cq, -m.c1 + Q * (cq + m.rank), 0};
  if (d != 0) throw DomainError("phi_star general mode needs the elliptic surface context (d=0, section e_9)");
  const auto e = basis_e(0, 9);
  const Int ce = intersect(m.c1, e);
  return {cq, -m.c1 + (Q + e) * (cq + m.rank) + Q * (ce - m.chi), -ce};
}

SurfaceClass rational_curve_bundle(const LatticeVector& D) {
  const auto Q = anticanonical(D.d);
  const Int dq = intersect(D, Q);
  if (intersect(D, D) != dq - 2 || dq < 2) throw DomainError("rational_curve_bundle: need D.D = D.Q - 2 and D.Q >= 2");
  return {dq, -D + Q * (dq - 1), 0};
}

TwistMax line_twist_max(const SurfaceClass& E, const SurfaceClass& Ep) {
  same_context(E, Ep);
  if (E.rank <= 0 || Ep.rank <= 0) throw DomainError("line_twist_max: ranks must be positive");
  const int d = E.degree();
  if (d < 1) throw DomainError("line_twist_max needs d in 1..9");
  const RationalVector Q(anticanonical(d));
  auto dpart = [&](const SurfaceClass& m) {
    RationalVector c(m.c1);
    return c - Q * (intersect(c, Q) / Rat(d));
  };
  RationalVector target = dpart(Ep) * Rat(1, Ep.rank) - dpart(E) * Rat(1, E.rank);
  auto cvp = closest_vectors(target);
  TwistMax res;
  bool first = true;
  for (const auto& D : cvp.nearest) {
    Int v = euler_pairing(twist(Ep, -D), E);
    if (first || v > res.value) {
      res.value = v;
      res.maximizers.clear();
      first = false;
    }
    if (v == res.value) res.maximizers.push_back(D);
  }
  return res;
}

bool is_positive_root(const LatticeVector& x) {
  if (x.d < 1) return false;
  const auto& rs = root_system(x.d);
  return std::find(rs.positive.begin(), rs.positive.end(), x) != rs.positive.end();
}

CollectionReport validate_collection(const std::vector<SurfaceClass>& cs) {
  CollectionReport rep;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].rank <= 0) throw DomainError("validate_collection: ranks must be positive");
    if (i) same_context(cs[0], cs[i]);
    if (euler_pairing(cs[i], cs[i]) != 1) rep.not_exceptional.push_back("E" + std::to_string(i + 1));
  }
  if (!cs.empty()) {
    const Int d = cs[0].degree();
    for (std::size_t i = 1; i < cs.size(); ++i)
      if (slope(cs[i]) < slope(cs[i - 1])) rep.slope_window.push_back("slope decreases at E" + std::to_string(i + 1));
    if (slope(cs.back()) >= slope(cs.front()) + Rat(d)) rep.slope_window.push_back("slope span reaches Q^2");
  }
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      std::string tag = "(E" + std::to_string(j + 1) + ",E" + std::to_string(i + 1) + ")";
      if (euler_pairing(cs[j], cs[i]) != 0) rep.nonzero_chi.push_back("chi" + tag + " != 0");
      if (slope(cs[i]) == slope(cs[j])) {
        auto diff = cs[j].c1 - cs[i].c1;
        if (!is_positive_root(diff)) rep.root_test.push_back("c1 difference " + tag + " is not a positive root");
      }
    }
  rep.ok = rep.not_exceptional.empty() && rep.slope_window.empty() && rep.nonzero_chi.empty() && rep.root_test.empty();
  return rep;
}

}  // namespace dpz
