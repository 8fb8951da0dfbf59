#include "dpz/elliptic_k.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace dpz {

DetClass DetClass::symbol(const std::string& s, Int k) {
  DetClass d;
  if (k != 0) d.terms[s] = k;
  return d;
}

DetClass DetClass::operator+(const DetClass& o) const {
  DetClass r = *this;
  for (const auto& [s, k] : o.terms) {
    Int v = (r.terms[s] += k);
    if (v == 0) r.terms.erase(s);
  }
  return r;
}

DetClass DetClass::operator-() const { return *this * -1; }
DetClass DetClass::operator-(const DetClass& o) const { return *this + (-o); }

DetClass DetClass::operator*(Int k) const {
  DetClass r;
  if (k == 0) return r;
  for (const auto& [s, v] : terms) r.terms[s] = v * k;
  return r;
}

std::string to_string(const DetClass& d) {
  if (d.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, k] : d.terms) {
    if (k < 0)
      os << '-';
    else if (!first)
      os << '+';
    Int a = k < 0 ? -k : k;
    if (a != 1) os << a;
    os << s;
    first = false;
  }
  return os.str();
}

DetClass parse_det(const std::string& s) {
  DetClass d;
  std::size_t i = 0;
  auto fail = [&] { throw DomainError("bad determinant expression: " + s); };
  if (s == "0") return d;
  while (i < s.size()) {
    Int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    Int k = 0;
    bool digits = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      k = k * 10 + (s[i] - '0');
      ++i;
      digits = true;
    }
    if (!digits) k = 1;
    std::string sym;
    while (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) sym += s[i++];
    if (sym.empty()) fail();
    d = d + DetClass::symbol(sym, sign * k);
  }
  return d;
}

bool RelationSet::equal(const DetClass& a, const DetClass& b) const {
  DetClass diff = a - b;
  if (diff.is_zero()) return true;
  std::set<std::string> syms;
  for (const auto& r : relations)
    for (const auto& t : r.terms) syms.insert(t.first);
  for (const auto& t : diff.terms) syms.insert(t.first);
  std::vector<std::string> names(syms.begin(), syms.end());
  const std::size_t n = names.size();
  auto vec = [&](const DetClass& d) {
    std::vector<Int> v(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      auto it = d.terms.find(names[j]);
      if (it != d.terms.end()) v[j] = it->second;
    }
    return v;
  };
  // Hermite-style echelon of the relation lattice.
  std::vector<std::vector<Int>> rows;
  for (const auto& r : relations) rows.push_back(vec(r));
  std::vector<std::vector<Int>> basis;
  std::size_t col = 0;
  while (col < n && !rows.empty()) {
    for (;;) {
      std::size_t piv = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (piv == rows.size() || std::llabs(rows[i][col]) < std::llabs(rows[piv][col]))) piv = i;
      if (piv == rows.size()) break;
      bool done = true;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == piv || rows[i][col] == 0) continue;
        Int q = rows[i][col] / rows[piv][col];
        for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[piv][j];
        if (rows[i][col] != 0) done = false;
      }
      if (done) {
        basis.push_back(rows[piv]);
        rows.erase(rows.begin() + static_cast<long>(piv));
        break;
      }
    }
    ++col;
  }
  auto t = vec(diff);
  for (const auto& b : basis) {
    std::size_t p = 0;
    while (b[p] == 0) ++p;
    if (t[p] % b[p] != 0) return false;
    Int q = t[p] / b[p];
    for (std::size_t j = 0; j < n; ++j) t[j] -= q * b[j];
  }
  return std::all_of(t.begin(), t.end(), [](Int x) { return x == 0; });
}

Int EllipticClass::gcd() const { return std::gcd(rank, deg); }

std::string to_string(const EllipticClass& c) {
  std::ostringstream os;
  os << '(' << c.rank << ',' << c.deg << ',' << to_string(c.det) << ")[" << c.shift << ']';
  return os.str();
}

EllipticClass make_class(Int rank, Int deg, DetClass det) { return {rank, deg, std::move(det), 0}; }

EllipticClass normalize(EllipticClass c) {
  if (c.rank < 0 || (c.rank == 0 && c.deg < 0)) {
    c.rank = -c.rank;
    c.deg = -c.deg;
    c.det = -c.det;
    c.shift += 1;
  }
  return c;
}

int slope_cmp(const EllipticClass& a, const EllipticClass& b) {
  if (a.rank == 0 || b.rank == 0) {
    if (a.rank == 0 && b.rank == 0) return 0;
    return a.rank == 0 ? 1 : -1;
  }
  Rat x(a.deg, a.rank), y(b.deg, b.rank);
  return x < y ? -1 : (y < x ? 1 : 0);
}

Int chi_e(const EllipticClass& m, const EllipticClass& n) { return m.rank * n.deg - m.deg * n.rank; }

EllipticClass psi(const Autoequivalence& a, const EllipticClass& n) {
  if (n.is_zero()) throw DomainError("autoequivalence applied to the zero class");
  EllipticClass r = n;
  r.deg = n.deg + a.dL * n.rank;
  r.det = n.det + DetClass::symbol(a.L, n.rank) - DetClass::symbol(a.q, n.deg);
  return r;
}

EllipticClass psi_inverse(const Autoequivalence& a, const EllipticClass& n) {
  if (n.is_zero()) throw DomainError("autoequivalence applied to the zero class");
  EllipticClass r = n;
  r.deg = n.deg - a.dL * n.rank;
  r.det = n.det - DetClass::symbol(a.L, n.rank) + DetClass::symbol(a.q, r.deg);
  return r;
}

namespace {

EllipticClass phi_raw(const EllipticClass& m, const EllipticClass& n, int sign) {
  if (n.is_zero() || m.is_zero()) throw DomainError("autoequivalence applied to the zero class");
  const Int g = m.gcd();
  const Int x = chi_e(m, n);
  if (x % g != 0) throw std::logic_error("phi_div: chi not divisible by gcd");
  const Int k = sign * x / g;
  EllipticClass r = n;
  r.rank = n.rank - k * m.rank;
  r.deg = n.deg - k * m.deg;
  r.det = n.det - m.det * k;
  if (r.is_zero()) throw DomainError("phi_div produced the zero class");
  EllipticClass out = normalize(r);
  if (sign < 0 && out.shift != n.shift) out.shift = n.shift - 1;
  return out;
}

}  // namespace

EllipticClass phi_div(const EllipticClass& m, const EllipticClass& n) { return phi_raw(m, n, 1); }
EllipticClass phi_div_inverse(const EllipticClass& m, const EllipticClass& n) { return phi_raw(m, n, -1); }

EllipticClass apply_autoequivalence(AutoKind kind, const Autoequivalence& a, const EllipticClass& m, const EllipticClass& n) {
  switch (kind) {
    case AutoKind::Psi:
      return psi(a, n);
    case AutoKind::PsiInverse:
      return psi_inverse(a, n);
    case AutoKind::PhiDiv:
      return phi_div(m, n);
    case AutoKind::PhiDivInverse:
      return phi_div_inverse(m, n);
  }
  throw DomainError("unknown autoequivalence");
}

HomExt hom_ext_dims(const EllipticClass& m, const EllipticClass& n, const RelationSet& rel) {
  const Int x = chi_e(m, n);
  int c = slope_cmp(m, n);
  if (c < 0) return {x, 0};
  if (c > 0) return {0, -x};
  if (m.gcd() != 1 || n.gcd() != 1) throw DomainError("hom_ext_dims: equal slopes need stable (gcd 1) classes");
  if (m.rank == n.rank && m.deg == n.deg && rel.equal(m.det, n.det)) return {1, 1};
  return {0, 0};
}

bool series_positive(const Rat& alpha, const Rat& tau) {
  if (tau < Rat(2)) return false;
  if (alpha >= Rat(0)) return true;
  Rat u = -Rat(2) * alpha - tau;
  if (u <= Rat(0)) return true;
  return tau * tau - Rat(4) >= u * u;
}

bool resolution_exists(const BundleData& v, const Autoequivalence& a, const EllipticClass& target) {
  if (v.r <= 0 || v.m <= 0) throw DomainError("resolution_exists: V needs r > 0 and m > 0");
  if (target.is_zero()) throw DomainError("resolution_exists: zero target");
  if (target.is_torsion()) return a.dL * v.r * v.r >= 4 * v.m;
  Rat tau = Rat(a.dL * v.r * v.r, v.m) - Rat(2);
  Rat mu(target.deg, target.rank);
  Rat alpha = (Rat(v.r * v.r) * mu + Rat(v.m - v.d * v.r)) / Rat(v.m);
  return series_positive(alpha, tau);
}

bool koszul_test(Int r, Int d, const Autoequivalence& a) {
  if (r < 1) throw DomainError("koszul_test: r must be positive");
  return !(d % r == 0 && a.dL * r <= 3);
}

void check_window(const DivisorialBundle& v, const Autoequivalence& a) {
  if (v.components.empty()) throw DomainError("bundle has no components");
  Rat lo;
  bool first = true;
  for (const auto& [c, k] : v.components) {
    if (c.rank <= 0) throw DomainError("bundle components need positive rank");
    if (k <= 0) throw DomainError("multiplicities must be positive");
    Rat mu(c.deg, c.rank);
    if (first || mu < lo) lo = mu;
    first = false;
  }
  Rat start = v.window_start.value_or(lo);
  for (std::size_t i = 0; i < v.components.size(); ++i) {
    const auto& c = v.components[i].first;
    Rat mu(c.deg, c.rank);
    if (mu < start || mu >= start + Rat(a.dL)) throw DomainError("component slope outside the window [alpha, alpha+dL)");
    for (std::size_t j = 0; j < i; ++j) {
      const auto& o = v.components[j].first;
      if (o.rank == c.rank && o.deg == c.deg && o.det == c.det) throw DomainError("components must be pairwise distinct");
    }
  }
}

namespace {

Int hom_dim(const EllipticClass& x, const EllipticClass& y, bool same, const RelationSet& rel) {
  if (same) return x.gcd();
  int c = slope_cmp(x, y);
  if (c < 0) return chi_e(x, y);
  if (c > 0) return 0;
  return hom_ext_dims(x, y, rel).hom;
}

}  // namespace

std::vector<Int> hilbert_series(const DivisorialBundle& v, const Autoequivalence& a, int n_max, const RelationSet& rel) {
  check_window(v, a);
  std::vector<Int> out;
  for (int n = 0; n <= n_max; ++n) {
    Int s = 0;
    for (std::size_t i = 0; i < v.components.size(); ++i)
      for (std::size_t j = 0; j < v.components.size(); ++j) {
        const auto& [ci, ki] = v.components[i];
        auto cj = v.components[j].first;
        const Int kj = v.components[j].second;
        for (int t = 0; t < n; ++t) cj = psi(a, cj);
        s += ki * kj * hom_dim(ci, cj, n == 0 && i == j, rel);
      }
    out.push_back(s);
  }
  return out;
}

std::vector<Int> center_series(const Autoequivalence& a, int n_max) {
  std::vector<Int> out{1};
  for (int n = 1; n <= n_max; ++n) out.push_back(a.dL * n);
  return out;
}

std::vector<Int> quotient_series(const DivisorialBundle& v, const Autoequivalence& a, int n_max, const RelationSet& rel) {
  auto b = hilbert_series(v, a, n_max, rel);
  std::vector<Int> out{b[0]};
  for (int n = 1; n <= n_max; ++n) out.push_back(b[n] - b[n - 1]);
  return out;
}

}  // namespace dpz
