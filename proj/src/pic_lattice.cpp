#include "dpz/pic_lattice.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace dpz {

namespace {

void check_degree(int d) {
  if (d < 0 || d > 9) throw DomainError("degree d must lie in 1..9 (0 allowed for the elliptic surface), got " + std::to_string(d));
}

void check_same(int a, int b, std::size_t la, std::size_t lb) {
  if (a != b || la != lb) throw DomainError("dimension error: vectors of degree " + std::to_string(a) + " and " + std::to_string(b));
}

using Mat = std::vector<std::vector<Rat>>;

// Inverse of a nonsingular rational matrix.
Mat invert(Mat a) {
  const std::size_t n = a.size();
  Mat inv(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == Rat(0)) ++piv;
    if (piv == n) throw DomainError("singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rat p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == Rat(0)) continue;
      Rat f = a[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

Rat pos_form_rl(const RationalVector& x, const LatticeVector& r) {
  Rat s = x.c[0] * Rat(r.c[0]);
  for (std::size_t i = 1; i < r.c.size(); ++i) s -= x.c[i] * Rat(r.c[i]);
  return -s;
}

}  // namespace

Int to_int(const BigInt& x) { return static_cast<Int>(x); }

LatticeVector::LatticeVector(int deg, std::vector<Int> coeffs) : d(deg), c(std::move(coeffs)) {
  check_degree(d);
  if (c.size() != static_cast<std::size_t>(10 - d)) throw DomainError("coefficient count must be 10-d");
}

LatticeVector LatticeVector::zero(int d) { return LatticeVector(d, std::vector<Int>(10 - d, 0)); }

LatticeVector LatticeVector::operator+(const LatticeVector& o) const {
  check_same(d, o.d, c.size(), o.c.size());
  LatticeVector r = *this;
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
  return r;
}

LatticeVector LatticeVector::operator-(const LatticeVector& o) const { return *this + (-o); }

LatticeVector LatticeVector::operator-() const {
  LatticeVector r = *this;
  for (auto& x : r.c) x = -x;
  return r;
}

LatticeVector LatticeVector::operator*(Int k) const {
  LatticeVector r = *this;
  for (auto& x : r.c) x *= k;
  return r;
}

RationalVector::RationalVector(int deg, std::vector<Rat> coeffs) : d(deg), c(std::move(coeffs)) {
  check_degree(d);
  if (c.size() != static_cast<std::size_t>(10 - d)) throw DomainError("coefficient count must be 10-d");
}

RationalVector::RationalVector(const LatticeVector& v) : d(v.d) {
  for (Int x : v.c) c.emplace_back(x);
}

RationalVector RationalVector::zero(int d) { return RationalVector(d, std::vector<Rat>(10 - d, Rat(0))); }

RationalVector RationalVector::operator+(const RationalVector& o) const {
  check_same(d, o.d, c.size(), o.c.size());
  RationalVector r = *this;
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
  return r;
}

RationalVector RationalVector::operator-(const RationalVector& o) const {
  check_same(d, o.d, c.size(), o.c.size());
  RationalVector r = *this;
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
  return r;
}

RationalVector RationalVector::operator*(Rat k) const {
  RationalVector r = *this;
  for (auto& x : r.c) x *= k;
  return r;
}

bool RationalVector::is_integral() const {
  return std::all_of(c.begin(), c.end(), [](const Rat& x) { return x.denominator() == 1; });
}

LatticeVector RationalVector::to_lattice() const {
  if (!is_integral()) throw DomainError("vector is not integral");
  LatticeVector v = LatticeVector::zero(d);
  for (std::size_t i = 0; i < c.size(); ++i) v.c[i] = to_int(c[i].numerator());
  return v;
}

LatticeVector basis_h(int d) {
  auto v = LatticeVector::zero(d);
  v.c[0] = 1;
  return v;
}

LatticeVector basis_e(int d, int i) {
  if (i < 1 || i > 9 - d) throw DomainError("e_i index out of range");
  auto v = LatticeVector::zero(d);
  v.c[i] = 1;
  return v;
}

LatticeVector anticanonical(int d) {
  auto v = LatticeVector::zero(d);
  v.c[0] = 3;
  for (std::size_t i = 1; i < v.c.size(); ++i) v.c[i] = -1;
  return v;
}

Int intersect(const LatticeVector& u, const LatticeVector& v) {
  check_same(u.d, v.d, u.c.size(), v.c.size());
  Int s = u.c[0] * v.c[0];
  for (std::size_t i = 1; i < u.c.size(); ++i) s -= u.c[i] * v.c[i];
  return s;
}

Rat intersect(const RationalVector& u, const RationalVector& v) {
  check_same(u.d, v.d, u.c.size(), v.c.size());
  Rat s = u.c[0] * v.c[0];
  for (std::size_t i = 1; i < u.c.size(); ++i) s -= u.c[i] * v.c[i];
  return s;
}

Int pos_form(const LatticeVector& u, const LatticeVector& v) { return -intersect(u, v); }
Rat pos_form(const RationalVector& u, const RationalVector& v) { return -intersect(u, v); }

Rat inner_product(const RationalVector& u, const RationalVector& v, bool positive) {
  return positive ? pos_form(u, v) : intersect(u, v);
}

std::string to_string(const Rat& q) {
  std::ostringstream os;
  os << q.numerator();
  if (q.denominator() != 1) os << '/' << q.denominator();
  return os.str();
}

std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << "d=" << v.d << ":[";
  for (std::size_t i = 0; i < v.c.size(); ++i) os << (i ? "," : "") << v.c[i];
  os << ']';
  return os.str();
}

std::string to_string(const RationalVector& v) {
  std::ostringstream os;
  os << "d=" << v.d << ":[";
  for (std::size_t i = 0; i < v.c.size(); ++i) os << (i ? "," : "") << to_string(v.c[i]);
  os << ']';
  return os.str();
}

Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      Int n = std::stoll(s, &used);
      if (used != s.size()) throw DomainError("bad rational: " + s);
      return Rat(n);
    }
    Int n = std::stoll(s.substr(0, slash), &used);
    if (used != slash) throw DomainError("bad rational: " + s);
    Int m = std::stoll(s.substr(slash + 1), &used);
    if (used != s.size() - slash - 1 || m == 0) throw DomainError("bad rational: " + s);
    return Rat(n, m);
  } catch (const std::logic_error&) {
    throw DomainError("bad rational: " + s);
  }
}

LatticeVector parse_lattice_vector(const std::string& s) {
  // d=<d>:[c_h,c_1,...]
  if (s.rfind("d=", 0) != 0) throw DomainError("vector must look like d=<d>:[c_h,c_1,...]");
  auto colon = s.find(':');
  auto lb = s.find('['), rb = s.find(']');
  if (colon == std::string::npos || lb == std::string::npos || rb == std::string::npos || rb < lb)
    throw DomainError("vector must look like d=<d>:[c_h,c_1,...]");
  int d = static_cast<int>(to_int(parse_rational(s.substr(2, colon - 2)).numerator()));
  std::vector<Int> c;
  std::stringstream body(s.substr(lb + 1, rb - lb - 1));
  std::string tok;
  while (std::getline(body, tok, ',')) {
    Rat q = parse_rational(tok);
    if (q.denominator() != 1) throw DomainError("lattice vector entries must be integers");
    c.push_back(to_int(q.numerator()));
  }
  return LatticeVector(d, c);
}

Int floor_div(Int a, Int b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

Int floor(const Rat& q) {
  BigInt n = q.numerator(), m = q.denominator();
  BigInt f = n / m;
  if (n % m != 0 && n < 0) f -= 1;
  return to_int(f);
}

Int round_half_up(const Rat& q) { return floor(q + Rat(1, 2)); }

std::string type_string(const std::vector<CartanFactor>& t) {
  if (t.empty()) return "-";
  std::string s;
  for (const auto& f : t) s += f.family + std::to_string(f.rank);
  return s;
}

int type_rank(const std::vector<CartanFactor>& t) {
  int r = 0;
  for (const auto& f : t) r += f.rank;
  return r;
}

std::vector<int> affine_marks(const CartanFactor& f) {
  switch (f.family) {
    case 'A':
      return std::vector<int>(f.rank + 1, 1);
    case 'D': {
      std::vector<int> m(4, 1);
      for (int i = 0; i < f.rank - 3; ++i) m.push_back(2);
      return m;
    }
    case 'E':
      if (f.rank == 6) return {1, 1, 1, 2, 2, 2, 3};
      if (f.rank == 7) return {1, 1, 2, 2, 2, 3, 3, 4};
      if (f.rank == 8) return {1, 2, 2, 3, 3, 4, 4, 5, 6};
      break;
  }
  throw DomainError("unsupported Cartan factor");
}

std::vector<LatticeVector> simple_roots(int d) {
  check_degree(d);
  if (d < 1) throw DomainError("simple roots are defined for d in 1..9");
  std::vector<LatticeVector> s;
  const int n = 9 - d;
  if (n >= 3) {
    auto a = LatticeVector::zero(d);
    a.c = std::vector<Int>(10 - d, 0);
    a.c[0] = 1;
    a.c[1] = a.c[2] = a.c[3] = -1;
    s.push_back(a);
  }
  for (int i = 1; i < n; ++i) {
    auto a = LatticeVector::zero(d);
    a.c[i] = 1;
    a.c[i + 1] = -1;
    s.push_back(a);
  }
  return s;
}

namespace {

RootSystem build_root_system(int d) {
  RootSystem rs;
  rs.d = d;
  rs.simple = simple_roots(d);
  const auto Q = anticanonical(d);
  const int n = 9 - d;

  std::vector<LatticeVector> all;
  for (Int a = -3; a <= 3; ++a) {
    std::vector<Int> b(n, 0);
    std::function<void(int, Int)> rec = [&](int i, Int rem) {
      if (i == n) {
        if (rem != 0) return;
        std::vector<Int> c{a};
        c.insert(c.end(), b.begin(), b.end());
        LatticeVector v(d, c);
        if (intersect(v, Q) == 0) all.push_back(v);
        return;
      }
      for (Int x = -3; x <= 3; ++x) {
        if (x * x > rem) continue;
        b[i] = x;
        rec(i + 1, rem - x * x);
      }
      b[i] = 0;
    };
    rec(0, a * a + 2);
  }

  const int k = rs.rank();
  Mat cartan(k, std::vector<Rat>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) cartan[i][j] = Rat(pos_form(rs.simple[i], rs.simple[j]));
  Mat inv = k ? invert(cartan) : Mat{};

  auto coords_of = [&](const LatticeVector& v) {
    std::vector<Rat> y(k, Rat(0));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) y[i] += inv[i][j] * Rat(pos_form(v, rs.simple[j]));
    return y;
  };

  std::vector<std::pair<Int, std::pair<std::vector<Int>, LatticeVector>>> pos;
  for (const auto& v : all) {
    auto y = coords_of(v);
    LatticeVector back = LatticeVector::zero(d);
    bool nonneg = true;
    std::vector<Int> yi;
    for (int i = 0; i < k; ++i) {
      if (y[i].denominator() != 1) throw std::logic_error("root outside root lattice");
      yi.push_back(to_int(y[i].numerator()));
      back = back + rs.simple[i] * yi.back();
      if (yi.back() < 0) nonneg = false;
    }
    if (back != v) continue;  // not in the span of the simple roots
    if (nonneg) pos.push_back({std::accumulate(yi.begin(), yi.end(), Int(0)), {yi, v}});
  }
  std::sort(pos.begin(), pos.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second.second < y.second.second;
  });
  for (auto& p : pos) {
    rs.positive.push_back(p.second.second);
    rs.positive_coords.push_back(p.second.first);
  }
  rs.roots = rs.positive;
  for (const auto& p : rs.positive) rs.roots.push_back(-p);
  if (rs.roots.size() != all.size()) throw std::logic_error("root enumeration inconsistent with simple roots");

  // components of the Dynkin diagram
  std::vector<int> comp(k, -1);
  for (int i = 0; i < k; ++i) {
    if (comp[i] >= 0) continue;
    RootSystem::Component c;
    std::vector<int> stack{i};
    comp[i] = static_cast<int>(rs.components.size());
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      c.nodes.push_back(u);
      for (int w = 0; w < k; ++w)
        if (comp[w] < 0 && pos_form(rs.simple[u], rs.simple[w]) != 0) {
          comp[w] = comp[i];
          stack.push_back(w);
        }
    }
    std::sort(c.nodes.begin(), c.nodes.end());
    Int best = -1;
    for (std::size_t p = 0; p < rs.positive.size(); ++p) {
      const auto& y = rs.positive_coords[p];
      bool inside = true;
      Int h = 0;
      for (int w = 0; w < k; ++w) {
        if (y[w] != 0 && comp[w] != comp[i]) inside = false;
        h += y[w];
      }
      if (inside && h > best) {
        best = h;
        c.highest = rs.positive[p];
        c.marks.clear();
        for (int node : c.nodes) c.marks.push_back(y[node]);
      }
    }
    rs.components.push_back(c);
  }

  for (int i = 0; i < k; ++i) {
    RationalVector w = RationalVector::zero(d);
    for (int j = 0; j < k; ++j) w = w + RationalVector(rs.simple[j]) * inv[i][j];
    rs.fundamental_weights.push_back(w);
  }
  return rs;
}

}  // namespace

const RootSystem& root_system(int d) {
  check_degree(d);
  if (d < 1) throw DomainError("root systems are defined for d in 1..9");
  static std::mutex mu;
  static std::map<int, RootSystem> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, build_root_system(d)).first;
  return it->second;
}

int RootSystem::index_of(const LatticeVector& r) const {
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (roots[i] == r) return static_cast<int>(i);
  return -1;
}

std::vector<LatticeVector> roots_of_Qperp(int d) { return root_system(d).roots; }

std::vector<Rat> simple_coordinates(const RootSystem& rs, const RationalVector& x) {
  const int k = rs.rank();
  Mat cartan(k, std::vector<Rat>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) cartan[i][j] = Rat(pos_form(rs.simple[i], rs.simple[j]));
  Mat inv = k ? invert(cartan) : Mat{};
  std::vector<Rat> y(k, Rat(0));
  RationalVector back = RationalVector::zero(rs.d);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) y[i] += inv[i][j] * pos_form_rl(x, rs.simple[j]);
    back = back + RationalVector(rs.simple[i]) * y[i];
  }
  if (!(back == x)) throw DomainError("vector not in the span of the simple roots");
  return y;
}

LatticeVector reflect(const LatticeVector& x, const LatticeVector& root) {
  return x + root * intersect(x, root);
}

RationalVector reflect(const RationalVector& x, const LatticeVector& root) {
  return x + RationalVector(root) * intersect(x, RationalVector(root));
}

namespace {

AlcovePoint make_point(const RootSystem& rs, const RationalVector& x) {
  AlcovePoint p;
  p.d = rs.d;
  p.representative = x;
  for (const auto& a : rs.simple) p.c.push_back(pos_form_rl(x, a));
  for (const auto& comp : rs.components) p.c0.push_back(Rat(1) - pos_form_rl(x, comp.highest));
  return p;
}

}  // namespace

AlcoveResult reduce_to_alcove(const RationalVector& x0, AlcoveMode mode) {
  if (intersect(x0, RationalVector(anticanonical(x0.d))) != Rat(0)) throw DomainError("reduce_to_alcove: x.Q must be 0");
  const auto& rs = root_system(x0.d);
  AlcoveResult res;
  RationalVector x = x0;
  for (;;) {
    bool moved = false;
    for (const auto& a : rs.simple) {
      if (pos_form_rl(x, a) < Rat(0)) {
        x = reflect(x, a);
        res.log.push_back({a, false});
        moved = true;
        break;
      }
    }
    if (moved) continue;
    if (mode == AlcoveMode::affine) {
      for (const auto& comp : rs.components) {
        if (pos_form_rl(x, comp.highest) > Rat(1)) {
          x = reflect(x, comp.highest) + RationalVector(comp.highest);
          res.log.push_back({comp.highest, true});
          moved = true;
          break;
        }
      }
    }
    if (!moved) break;
  }
  res.point = make_point(rs, x);
  return res;
}

RationalVector replay(const RationalVector& x0, const std::vector<AlcoveStep>& log) {
  RationalVector x = x0;
  for (const auto& s : log) {
    x = reflect(x, s.root);
    if (s.affine) x = x + RationalVector(s.root);
  }
  return x;
}

LatticeVector replay_linear(const LatticeVector& x0, const std::vector<AlcoveStep>& log) {
  LatticeVector x = x0;
  for (const auto& s : log) x = reflect(x, s.root);
  return x;
}

bool in_alcove(const AlcovePoint& p) {
  for (const auto& c : p.c)
    if (c < Rat(0)) return false;
  for (const auto& c : p.c0)
    if (c < Rat(0)) return false;
  return true;
}

std::vector<LatticeVector> qperp_basis(int d) {
  check_degree(d);
  if (d < 1) throw DomainError("qperp_basis needs d in 1..9");
  const auto& rs = root_system(d);
  if (rs.rank() == 9 - d) return rs.simple;
  std::vector<LatticeVector> b;
  if (d == 9) return b;
  // b_1 = -3a - sum_{i>=2} b_i
  auto v = LatticeVector::zero(d);
  v.c[0] = 1;
  v.c[1] = -3;
  b.push_back(v);
  for (int i = 2; i <= 9 - d; ++i) {
    auto w = LatticeVector::zero(d);
    w.c[1] = 1;
    w.c[i] = -1;
    b.push_back(w);
  }
  return b;
}

namespace {

struct Enumerator {
  int d;
  std::vector<LatticeVector> basis;
  std::vector<Rat> y;            // target coordinates
  std::vector<Rat> D;            // LDL^T diagonal
  std::vector<std::vector<Rat>> L;  // unit lower triangular

  explicit Enumerator(const RationalVector& t) : d(t.d), basis(qperp_basis(t.d)) {
    if (intersect(t, RationalVector(anticanonical(d))) != Rat(0)) throw DomainError("target must lie in Q^perp (target.Q = 0)");
    const std::size_t n = basis.size();
    Mat g(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g[i][j] = Rat(pos_form(basis[i], basis[j]));
    if (n) {
      Mat inv = invert(g);
      y.assign(n, Rat(0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) y[i] += inv[i][j] * pos_form_rl(t, basis[j]);
      RationalVector back = RationalVector::zero(d);
      for (std::size_t i = 0; i < n; ++i) back = back + RationalVector(basis[i]) * y[i];
      if (!(back == t)) throw DomainError("target not in Q^perp");
    }
    L.assign(n, std::vector<Rat>(n, Rat(0)));
    D.assign(n, Rat(0));
    for (std::size_t j = 0; j < n; ++j) {
      Rat s = g[j][j];
      for (std::size_t k = 0; k < j; ++k) s -= L[j][k] * L[j][k] * D[k];
      D[j] = s;
      L[j][j] = 1;
      for (std::size_t i = j + 1; i < n; ++i) {
        Rat u = g[i][j];
        for (std::size_t k = 0; k < j; ++k) u -= L[i][k] * L[j][k] * D[k];
        L[i][j] = u / D[j];
      }
    }
  }

  LatticeVector point(const std::vector<Int>& z) const {
    LatticeVector v = LatticeVector::zero(d);
    for (std::size_t i = 0; i < z.size(); ++i) v = v + basis[i] * z[i];
    return v;
  }

  Rat dist2(const std::vector<Int>& z) const {
    Rat s = 0;
    const std::size_t n = z.size();
    for (std::size_t i = 0; i < n; ++i) {
      Rat t = 0;
      for (std::size_t j = i; j < n; ++j) t += L[j][i] * (Rat(z[j]) - y[j]);
      s += D[i] * t * t;
    }
    return s;
  }

  // visit all z with dist2 <= bound; callback may tighten bound
  void run(Rat& bound, const std::function<void(const std::vector<Int>&, const Rat&)>& visit) const {
    const std::size_t n = basis.size();
    std::vector<Int> z(n, 0);
    if (n == 0) {
      visit(z, Rat(0));
      return;
    }
    std::function<void(int, Rat)> rec = [&](int i, Rat partial) {
      Rat c = y[i];
      for (std::size_t j = i + 1; j < n; ++j) c -= L[j][i] * (Rat(z[j]) - y[j]);
      Int z0 = round_half_up(c);
      auto term = [&](Int zi) {
        Rat t = Rat(zi) - c;
        return D[i] * t * t;
      };
      auto step = [&](Int zi) {
        Rat p = partial + term(zi);
        if (p > bound) return false;
        z[i] = zi;
        if (i == 0)
          visit(z, p);
        else
          rec(i - 1, p);
        return true;
      };
      step(z0);
      for (Int k = 1;; ++k) {
        bool a = step(z0 + k);
        bool b = step(z0 - k);
        if (!a && !b) {
          // both sides exceed the bound; the quadratic is monotone beyond here
          if (partial + term(z0 + k) > bound && partial + term(z0 - k) > bound) break;
        }
      }
      z[i] = 0;
    };
    rec(static_cast<int>(n) - 1, Rat(0));
  }
};

}  // namespace

CvpResult closest_vectors(const RationalVector& target) {
  Enumerator en(target);
  const std::size_t n = en.basis.size();
  std::vector<Int> z0(n);
  for (std::size_t i = 0; i < n; ++i) z0[i] = round_half_up(en.y[i]);
  Rat bound = en.dist2(z0);
  CvpResult res;
  res.dist2 = bound;
  std::set<LatticeVector> found;
  en.run(bound, [&](const std::vector<Int>& z, const Rat& p) {
    if (p < res.dist2) {
      res.dist2 = p;
      bound = p;
      found.clear();
    }
    if (p == res.dist2) found.insert(en.point(z));
  });
  res.nearest.assign(found.begin(), found.end());
  return res;
}

std::vector<LatticeVector> lattice_points_within(const RationalVector& target, const Rat& bound0) {
  Enumerator en(target);
  Rat bound = bound0;
  std::set<LatticeVector> found;
  en.run(bound, [&](const std::vector<Int>& z, const Rat&) { found.insert(en.point(z)); });
  return {found.begin(), found.end()};
}

namespace {

bool lex_positive(const LatticeVector& v) {
  for (Int x : v.c)
    if (x != 0) return x > 0;
  return false;
}

CartanFactor identify_component(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  int branch = -1;
  for (int i = 0; i < n; ++i) {
    if (adj[i].size() > 3) throw DomainError("not an ADE diagram");
    if (adj[i].size() == 3) {
      if (branch >= 0) throw DomainError("not an ADE diagram");
      branch = i;
    }
  }
  int edges = 0;
  for (const auto& a : adj) edges += static_cast<int>(a.size());
  if (edges / 2 != n - 1) throw DomainError("Dynkin diagram has a cycle");
  if (branch < 0) return {'A', n};
  std::vector<int> legs;
  for (int start : adj[branch]) {
    int len = 1, prev = branch, cur = start;
    for (;;) {
      int next = -1;
      for (int w : adj[cur])
        if (w != prev) next = w;
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    legs.push_back(len);
  }
  std::sort(legs.begin(), legs.end());
  if (legs[0] == 1 && legs[1] == 1) return {'D', n};
  if (legs[0] == 1 && legs[1] == 2 && legs[2] <= 4) return {'E', n};
  throw DomainError("not an ADE diagram");
}

}  // namespace

std::vector<LatticeVector> simple_system_of(const std::vector<LatticeVector>& roots) {
  std::set<LatticeVector> pos;
  for (const auto& r : roots)
    if (lex_positive(r)) pos.insert(r);
  std::vector<LatticeVector> simple;
  for (const auto& p : pos) {
    bool decomposable = false;
    for (const auto& q : pos) {
      if (q == p) continue;
      if (pos.count(p - q)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(p);
  }
  return simple;
}

std::vector<CartanFactor> classify_root_set(const std::vector<LatticeVector>& roots) {
  auto simple = simple_system_of(roots);
  const int k = static_cast<int>(simple.size());
  std::vector<std::vector<int>> adj(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      Int a = pos_form(simple[i], simple[j]);
      if (a == -1)
        adj[i].push_back(j);
      else if (a != 0)
        throw DomainError("simple system has an invalid Cartan entry");
    }
  std::vector<int> comp(k, -1);
  std::vector<CartanFactor> out;
  for (int i = 0; i < k; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> nodes, stack{i};
    comp[i] = i;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      nodes.push_back(u);
      for (int w : adj[u])
        if (comp[w] < 0) {
          comp[w] = i;
          stack.push_back(w);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    std::vector<std::vector<int>> sub(nodes.size());
    for (std::size_t a = 0; a < nodes.size(); ++a)
      for (int w : adj[nodes[a]])
        sub[a].push_back(static_cast<int>(std::find(nodes.begin(), nodes.end(), w) - nodes.begin()));
    out.push_back(identify_component(sub));
  }
  auto order = [](char f) { return f == 'E' ? 0 : f == 'D' ? 1 : 2; };
  std::sort(out.begin(), out.end(), [&](const CartanFactor& a, const CartanFactor& b) {
    if (order(a.family) != order(b.family)) return order(a.family) < order(b.family);
    return a.rank > b.rank;
  });
  return out;
}

SubsystemReport subsystem_analyze(int d, const std::vector<LatticeVector>& input) {
  const auto& rs = root_system(d);
  const auto Q = anticanonical(d);
  for (const auto& r : input)
    if (r.d != d || intersect(r, r) != -2 || intersect(r, Q) != 0) throw DomainError("subsystem_analyze: input is not a root of Q^perp: " + to_string(r));
  SubsystemReport rep;
  rep.input = input;
  std::set<LatticeVector> closure;
  std::vector<LatticeVector> frontier;
  for (const auto& r : input)
    for (const auto& s : {r, -r})
      if (closure.insert(s).second) frontier.push_back(s);
  while (!frontier.empty()) {
    auto x = frontier.back();
    frontier.pop_back();
    for (const auto& r : input) {
      auto y = reflect(x, r);
      if (closure.insert(y).second) frontier.push_back(y);
    }
  }
  rep.cartan_type = classify_root_set({closure.begin(), closure.end()});
  std::vector<LatticeVector> orth;
  for (const auto& b : rs.roots) {
    bool ok = true;
    for (const auto& a : input)
      if (intersect(a, b) != 0) ok = false;
    if (ok) orth.push_back(b);
  }
  rep.orthogonal_type = classify_root_set(orth);
  std::vector<std::vector<Int>> m;
  for (const auto& r : input) m.push_back(r.c);
  auto sm = smith_invariants(m);
  if (sm.rank != static_cast<int>(input.size())) throw DomainError("subsystem_analyze: input roots must be linearly independent");
  for (Int x : sm.divisors)
    if (x > 1) rep.torsion.push_back(x);
  rep.rank_deficit = (9 - d) - sm.rank - type_rank(rep.orthogonal_type);
  return rep;
}

SmithResult smith_invariants(const std::vector<std::vector<Int>>& m0) {
  using boost::multiprecision::cpp_int;
  std::vector<std::vector<cpp_int>> a;
  std::size_t cols = 0;
  for (const auto& row : m0) cols = std::max(cols, row.size());
  for (const auto& row : m0) {
    std::vector<cpp_int> r(cols, 0);
    for (std::size_t j = 0; j < row.size(); ++j) r[j] = row[j];
    a.push_back(r);
  }
  const std::size_t rows = a.size();
  SmithResult res;
  std::vector<cpp_int> diag;
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    for (;;) {
      // smallest nonzero entry in the trailing block
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = k; i < rows; ++i)
        for (std::size_t j = k; j < cols; ++j)
          if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) goto done;
      std::swap(a[k], a[pi]);
      for (auto& r : a) std::swap(r[k], r[pj]);
      bool clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        cpp_int q = a[i][k] / a[k][k];
        if (q != 0)
          for (std::size_t j = k; j < cols; ++j) a[i][j] -= q * a[k][j];
        if (a[i][k] != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        cpp_int q = a[k][j] / a[k][k];
        if (q != 0)
          for (std::size_t i = k; i < rows; ++i) a[i][j] -= q * a[i][k];
        if (a[k][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block
      bool divisible = true;
      for (std::size_t i = k + 1; i < rows && divisible; ++i)
        for (std::size_t j = k + 1; j < cols; ++j)
          if (a[i][j] % a[k][k] != 0) {
            for (std::size_t c = k; c < cols; ++c) a[k][c] += a[i][c];
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    diag.push_back(abs(a[k][k]));
  }
done:
  res.rank = static_cast<int>(diag.size());
  for (const auto& x : diag) res.divisors.push_back(static_cast<Int>(x));
  return res;
}

int matrix_rank(const std::vector<std::vector<Int>>& m) { return smith_invariants(m).rank; }

}  // namespace dpz
