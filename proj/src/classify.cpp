#include "dpz/classify.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <future>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace dpz {

namespace {

Int mod(Int x, Int m) { return ((x % m) + m) % m; }

const RootSystem& e8() { return root_system(1); }

std::vector<Int> alcove_tuple(const AlcovePoint& p, Int r) {
  std::vector<Int> t;
  for (const auto& c : p.c) t.push_back(to_int((c * Rat(r)).numerator()));
  for (const auto& c : p.c0) t.push_back(to_int((c * Rat(r)).numerator()));
  return t;
}

}  // namespace

std::string to_string(const Slope& s) {
  if (s.a == 0) return "0";
  return "-" + std::to_string(s.a) + "/" + std::to_string(s.r);
}

Slope parse_slope(const std::string& text) {
  Rat q = parse_rational(text);
  Int num = to_int(q.numerator()), den = to_int(q.denominator());
  Slope s{mod(-num, den), den};
  if (den == 1) s = {0, 1};
  return s;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::candidate:
      return "candidate";
    case Status::representable:
      return "representable";
    case Status::excluded:
      return "excluded";
  }
  return "?";
}

SurfaceClass CandidateClass::surface_class() const {
  const Int r = slope.r, a = slope.a;
  Int num = 1 + r * r + a * a - r * a - norm;
  if (num % (2 * r) != 0) throw DomainError("class has non-integral Euler characteristic");
  return {r, anticanonical(1) * (-a) + v, num / (2 * r)};
}

CandidateClass candidate_from_vector(const Slope& s, const LatticeVector& v0) {
  auto red = reduce_to_alcove(RationalVector(v0) * Rat(1, s.r), AlcoveMode::affine);
  CandidateClass c;
  c.slope = s;
  c.alcove = red.point;
  c.v = (red.point.representative * Rat(s.r)).to_lattice();
  c.tuple = alcove_tuple(red.point, s.r);
  c.norm = pos_form(c.v, c.v);
  Int num = 1 + s.r * s.r + s.a * s.a - s.r * s.a - c.norm;
  c.chi_max = num % (2 * s.r) == 0 ? num / (2 * s.r) : floor_div(num, 2 * s.r);
  if (num % (2 * s.r) != 0) {
    c.status = Status::excluded;
    c.reason = "non-integral Euler characteristic";
  }
  return c;
}

std::vector<CandidateClass> alcove_candidates(const Slope& s, std::optional<Int> norm_target) {
  if (s.r < 2 || s.a <= 0 || s.a >= s.r || std::gcd(s.a, s.r) != 1) throw DomainError("alcove_candidates needs slope -a/r with r >= 2, 0 < a < r, gcd(a,r) = 1");
  const auto& rs = e8();
  const auto& comp = rs.components.at(0);
  std::vector<Int> marks(rs.rank());
  for (std::size_t k = 0; k < comp.nodes.size(); ++k) marks[comp.nodes[k]] = comp.marks[k];
  std::vector<LatticeVector> omega;
  for (const auto& w : rs.fundamental_weights) omega.push_back(w.to_lattice());
  std::vector<CandidateClass> out;
  std::vector<Int> n(rs.rank(), 0);
  std::function<void(int, Int)> rec = [&](int i, Int left) {
    if (i == rs.rank()) {
      LatticeVector v = LatticeVector::zero(1);
      for (int k = 0; k < rs.rank(); ++k) v = v + omega[k] * n[k];
      Int norm = pos_form(v, v);
      if (norm_target && norm != *norm_target) return;
      Int num = 1 + s.r * s.r + s.a * s.a - s.r * s.a - norm;
      if (num % (2 * s.r) != 0 || num > 0) return;
      CandidateClass c = candidate_from_vector(s, v);
      c.chi_max = num / (2 * s.r);
      out.push_back(c);
      return;
    }
    for (n[i] = 0; n[i] * marks[i] <= left; ++n[i]) rec(i + 1, left - n[i] * marks[i]);
    n[i] = 0;
  };
  rec(0, s.r);
  std::sort(out.begin(), out.end(), [](const CandidateClass& x, const CandidateClass& y) { return x.tuple < y.tuple; });
  return out;
}

namespace {

struct Classifier {
  std::map<std::tuple<Int, Int, std::vector<Int>>, std::pair<Status, std::string>> memo;
  const SurfaceClass O = structure_sheaf(1);

  Int partner_a(const Slope& s) {
    for (Int x = 1; x < s.r; ++x)
      if (mod(s.a * x + 1, s.r) == 0) return x;
    throw std::logic_error("no inverse");
  }

  bool reducible(const CandidateClass& c) { return c.chi_max == 0 && c.alcove.c0.at(0) == Rat(0); }

  std::pair<Status, std::string> reduce(const CandidateClass& c, int depth) {
    const Int r2 = c.slope.r - c.slope.a;
    const auto& top = e8().components.at(0).highest;
    LatticeVector v2 = c.v - top * c.slope.a;
    Slope s2{mod(c.slope.a, r2), r2};
    if (r2 == 1) return {Status::representable, "rank reduction to a line bundle"};
    auto c2 = candidate_from_vector(s2, v2);
    auto st = status(c2, depth + 1);
    std::string tag = "rank reduction to " + to_string(s2);
    if (st.first == Status::representable) return {Status::representable, tag};
    if (st.first == Status::excluded) return {Status::excluded, tag + " (" + st.second + ")"};
    return {Status::candidate, tag + " undecided"};
  }

  std::pair<Status, std::string> status(const CandidateClass& c, int depth, bool via_partner = false) {
    auto key = std::make_tuple(c.slope.a, c.slope.r, c.tuple);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    auto res = compute(c, depth, via_partner);
    memo[key] = res;
    return res;
  }

  std::pair<Status, std::string> compute(const CandidateClass& c, int depth, bool via_partner) {
    const Slope s = c.slope;
    if (s.r == 1) return {Status::representable, "line bundle"};
    if (c.status == Status::excluded) return {Status::excluded, c.reason};
    if (line_twist_max(c.surface_class(), O).value > 0) return {Status::excluded, "line_twist_max: chi > 0"};
    const Int ap = partner_a(s);
    CandidateClass p = candidate_from_vector({ap, s.r}, c.v * ap);
    if (ap != s.a) {
      if (p.status == Status::excluded) return {Status::excluded, "d' partner " + to_string(p.slope) + ": " + p.reason};
      if (line_twist_max(p.surface_class(), O).value > 0) return {Status::excluded, "d' partner " + to_string(p.slope) + " violates line_twist_max"};
    }
    if (s.a == 1) return {Status::representable, "slope -1/r"};
    if (s.a == s.r - 1) return {Status::representable, "dual of slope -1/r"};
    if (depth > 64) return {Status::candidate, "recursion limit"};
    if (reducible(c)) return reduce(c, depth);
    if (ap != s.a && !via_partner && reducible(p)) {
      auto st = status(p, depth + 1, true);
      std::string tag = "d' partner " + to_string(p.slope);
      if (st.first == Status::representable) return {Status::representable, tag + ": " + st.second};
      if (st.first == Status::excluded) return {Status::excluded, tag + ": " + st.second};
    }
    return {Status::candidate, "no certified reduction"};
  }
};

}  // namespace

std::vector<CandidateClass> classify_slope(const Slope& s, Int r_max) {
  if (s.r > r_max) throw DomainError("slope denominator exceeds r_max");
  auto cands = alcove_candidates(s);
  Classifier cl;
  for (auto& c : cands) {
    auto st = cl.status(c, 0);
    c.status = st.first;
    c.reason = st.second;
  }
  return cands;
}

// ---- configurations ----

namespace {

using Key = std::array<std::uint8_t, 20>;

struct Config {
  std::vector<int> beta;   // root indices
  std::vector<int> curve;  // root index alpha of the curve Q + alpha
  Key key() const {
    Key k;
    k.fill(255);
    std::size_t p = 0;
    for (int b : beta) k[p++] = static_cast<std::uint8_t>(b);
    k[p++] = 254;
    for (int f : curve) k[p++] = static_cast<std::uint8_t>(f);
    return k;
  }
  void canon() {
    std::sort(beta.begin(), beta.end());
    std::sort(curve.begin(), curve.end());
  }
};

struct Tables {
  const RootSystem& rs = e8();
  int n = 0;
  std::vector<std::vector<int>> ip;     // positive form between roots
  std::vector<std::vector<int>> diff;   // index of root_i - root_j, or -1
  std::vector<int> neg;
  std::vector<std::vector<int>> refl;  // refl[g][x] = s_g(x)
  std::map<LatticeVector, int> index;

  Tables() {
    n = static_cast<int>(rs.roots.size());
    for (int i = 0; i < n; ++i) index[rs.roots[i]] = i;
    ip.assign(n, std::vector<int>(n));
    diff.assign(n, std::vector<int>(n, -1));
    neg.assign(n, -1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ip[i][j] = static_cast<int>(pos_form(rs.roots[i], rs.roots[j]));
        if (ip[i][j] == 1) diff[i][j] = index.at(rs.roots[i] - rs.roots[j]);
      }
    for (int i = 0; i < n; ++i) neg[i] = index.at(-rs.roots[i]);
    refl.assign(n, std::vector<int>(n));
    for (int g = 0; g < n; ++g)
      for (int x = 0; x < n; ++x) refl[g][x] = index.at(reflect(rs.roots[x], rs.roots[g]));
  }

  std::vector<int> perm_of(const std::function<LatticeVector(const LatticeVector&)>& w) const {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = index.at(w(rs.roots[i]));
    return p;
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

struct Admissible {
  LatticeVector v;
  std::vector<Int> tuple;
};

std::vector<Admissible> admissible_points(const Slope& s) {
  if (s.r == 1) return {{LatticeVector::zero(1), {0, 0, 0, 0, 0, 0, 0, 0, 1}}};
  std::vector<Admissible> out;
  for (const auto& c : classify_slope(s))
    if (c.status == Status::representable) out.push_back({c.v, c.tuple});
  return out;
}

struct Search {
  const Tables& T = tables();
  ConfigSpec spec;
  Admissible base;
  std::vector<std::vector<Int>> others;  // tuples of all admissible points
  Int b = 1, a = 0;
  std::vector<int> simple;  // simple system of the stabilizer of v
  std::vector<int> beta_ok, curve_ok;
  std::vector<int> same_type;  // per root: base + root has the base type
  std::map<int, std::vector<int>> rebase_perm;

  Int vdot(int i) const { return pos_form(base.v, T.rs.roots[i]); }

  void setup() {
    b = spec.slope.r;
    a = spec.slope.a;
    std::vector<LatticeVector> rv;
    for (int i = 0; i < T.n; ++i)
      if (mod(vdot(i), b) == 0) rv.push_back(T.rs.roots[i]);
    for (const auto& g : simple_system_of(rv)) simple.push_back(T.index.at(g));
    same_type.assign(T.n, 0);
    beta_ok.assign(T.n, 0);
    curve_ok.assign(T.n, 0);
    for (int i = 0; i < T.n; ++i) {
      if (mod(vdot(i), b) == mod(-a, b)) curve_ok[i] = 1;
      if (mod(vdot(i), b) != mod(-1, b)) continue;
      if (b == 1) {
        beta_ok[i] = same_type[i] = 1;
        continue;
      }
      auto red = reduce_to_alcove(RationalVector(base.v + T.rs.roots[i]) * Rat(1, b), AlcoveMode::affine);
      auto t = alcove_tuple(red.point, b);
      if (std::find(others.begin(), others.end(), t) == others.end()) continue;
      if (t < base.tuple) continue;
      beta_ok[i] = 1;
      if (t == base.tuple) {
        same_type[i] = 1;
        auto log = red.log;
        rebase_perm[i] = T.perm_of([&](const LatticeVector& x) { return replay_linear(x, log); });
      }
    }
  }

  // Variants of c under relabelling of the base member and, for integer slope, negation.
  std::vector<Config> variants(const Config& c) const {
    std::vector<Config> out{c};
    for (int k : c.beta) {
      if (!same_type[k]) continue;
      const std::vector<int>* w = b == 1 ? nullptr : &rebase_perm.at(k);
      auto ap = [&](int x) { return w ? (*w)[x] : x; };
      Config d;
      for (int l : c.beta)
        if (l != k) d.beta.push_back(ap(T.diff[l][k]));
      d.beta.push_back(ap(T.neg[k]));
      for (int x : c.curve) d.curve.push_back(ap(x));
      out.push_back(std::move(d));
    }
    if (b == 1) {
      const std::size_t n = out.size();
      for (std::size_t i = 0; i < n; ++i) {
        Config d = out[i];
        for (int& x : d.beta) x = T.neg[x];
        out.push_back(std::move(d));
      }
    }
    return out;
  }

  // Minimal image of c under W(simple): fix elements one at a time at their dominant images.
  Key canon_w(const Config& c) const {
    struct State {
      std::vector<int> beta, curve;
      bool operator<(const State& o) const { return std::tie(beta, curve) < std::tie(o.beta, o.curve); }
    };
    std::set<State> states{{c.beta, c.curve}};
    std::vector<int> gens = simple;
    Key key;
    key.fill(255);
    std::size_t pos = 0;
    const std::size_t total = c.beta.size() + c.curve.size();
    for (std::size_t step = 0; step < total; ++step) {
      if (step == c.beta.size()) key[pos++] = 254;
      const bool is_beta = step < c.beta.size();
      int best = 1 << 20;
      std::set<State> next;
      for (const auto& st : states) {
        const auto& pool = is_beta ? st.beta : st.curve;
        for (std::size_t i = 0; i < pool.size(); ++i) {
          State s2 = st;
          auto& p2 = is_beta ? s2.beta : s2.curve;
          int x = p2[i];
          for (bool moved = true; moved;) {
            moved = false;
            for (int g : gens)
              if (T.ip[x][g] < 0) {
                x = T.refl[g][x];
                for (int& y : s2.beta) y = T.refl[g][y];
                for (int& y : s2.curve) y = T.refl[g][y];
                moved = true;
                break;
              }
          }
          if (x > best) continue;
          if (x < best) {
            best = x;
            next.clear();
          }
          p2.erase(p2.begin() + static_cast<long>(i));
          std::sort(s2.beta.begin(), s2.beta.end());
          std::sort(s2.curve.begin(), s2.curve.end());
          next.insert(std::move(s2));
        }
      }
      key[pos++] = static_cast<std::uint8_t>(best);
      std::vector<int> g2;
      for (int g : gens)
        if (T.ip[best][g] == 0) g2.push_back(g);
      gens = std::move(g2);
      states = std::move(next);
    }
    return key;
  }

  Key canon(const Config& c) const {
    Key best;
    best.fill(255);
    bool first = true;
    for (const auto& v : variants(c)) {
      Key k = canon_w(v);
      if (first || k < best) best = k;
      first = false;
    }
    return best;
  }

  bool compatible(const Config& c, int e, bool is_beta) const {
    if (is_beta) {
      if (!beta_ok[e]) return false;
      for (int x : c.beta)
        if (x == e || T.ip[x][e] != 1) return false;
      return true;
    }
    if (!curve_ok[e]) return false;
    for (int x : c.curve)
      if (x == e || T.ip[x][e] != 1) return false;
    for (int x : c.beta)
      if (T.ip[x][e] != 0) return false;
    return true;
  }

  std::vector<Config> run() {
    setup();
    std::vector<Config> reps{Config{}};
    const int levels = (spec.r - 1) + (spec.d - 1);
    for (int L = 0; L < levels; ++L) {
      const bool is_beta = L < spec.r - 1;
      std::set<Key> seen;
      std::vector<Config> next;
      for (const auto& c : reps)
        for (int e = 0; e < T.n; ++e) {
          if (!compatible(c, e, is_beta)) continue;
          Config d = c;
          (is_beta ? d.beta : d.curve).push_back(e);
          d.canon();
          if (!seen.insert(canon(d)).second) continue;
          next.push_back(std::move(d));
        }
      reps = std::move(next);
    }
    return reps;
  }

  ModuliDescriptor describe(const Config& c) const {
    ModuliDescriptor m;
    m.slope = spec.slope;
    m.r = spec.r;
    m.d = spec.d;
    m.base_tuple = base.tuple;
    for (int x : c.beta) m.roots.push_back(T.rs.roots[x]);
    const auto Q = anticanonical(1);
    for (int x : c.curve) m.curves.push_back(Q + T.rs.roots[x]);
    std::vector<LatticeVector> orth;
    for (int g = 0; g < T.n; ++g) {
      if (mod(vdot(g), b) != 0) continue;
      bool ok = true;
      for (int x : c.beta) ok = ok && T.ip[g][x] == 0;
      for (int x : c.curve) ok = ok && T.ip[g][x] == 0;
      if (ok) orth.push_back(T.rs.roots[g]);
    }
    m.orthogonal_type = classify_root_set(orth);
    auto row = [](Int rank, const LatticeVector& c1, Int chi) {
      std::vector<Int> r{rank};
      r.insert(r.end(), c1.c.begin(), c1.c.end());
      r.push_back(chi - rank);
      return r;
    };
    m.constraints.push_back(row(0, LatticeVector::zero(1), 1));
    LatticeVector qx = Q;
    for (const auto& f : m.curves) qx = qx + f;
    m.constraints.push_back(row(0, qx, 0));
    std::vector<LatticeVector> members{LatticeVector::zero(1)};
    for (const auto& x : m.roots) members.push_back(x);
    for (const auto& bk : members) {
      LatticeVector c1 = Q * (-a) + base.v + bk;
      LatticeVector adj = c1;
      for (const auto& f : m.curves) adj = adj + f * intersect(c1, f);
      Int num = 1 + b * b + intersect(adj, adj) + b * intersect(adj, Q);
      if (num % (2 * b) != 0) throw std::logic_error("configuration member is not exceptional");
      m.constraints.push_back(row(b, adj, num / (2 * b)));
    }
    auto sm = smith_invariants(m.constraints);
    m.fiber_dim = 12 - spec.d - sm.rank;
    for (Int x : sm.divisors)
      if (x > 1) m.torsion.push_back(x);
    const int tr = type_rank(m.orthogonal_type);
    if (!m.torsion.empty()) m.flags.push_back("torsion_factor");
    if (m.fiber_dim > tr) m.flags.push_back(tr == 0 ? "elliptic_factor" : "rank_deficit");
    if (m.fiber_dim < tr) m.flags.push_back("overdetermined");
    if (m.fiber_dim == tr && m.torsion.empty() && tr > 0)
      for (const auto& f : m.orthogonal_type) {
        auto mk = affine_marks(f);
        std::vector<Int> deg(mk.begin(), mk.end());
        std::sort(deg.begin(), deg.end());
        m.wps_degrees.push_back(deg);
      }
    m.note = "[L] = (" + std::to_string(spec.d) + " - " + std::to_string(spec.delta) + ")q + phi([O_Q])";
    return m;
  }
};

}  // namespace

std::vector<ModuliDescriptor> configuration_search(const ConfigSpec& spec) {
  if (spec.d < 1 || spec.d > 9) throw DomainError("configuration_search needs d in 1..9");
  if (spec.r < 1) throw DomainError("configuration_search needs r >= 1");
  if (spec.slope.r < 1 || (spec.slope.r > 1 && (spec.slope.a <= 0 || spec.slope.a >= spec.slope.r || std::gcd(spec.slope.a, spec.slope.r) != 1)))
    throw DomainError("configuration_search: unsupported slope");
  if (spec.r + spec.d > 10 + 8) throw DomainError("configuration_search: r + d too large");
  auto points = admissible_points(spec.slope);
  std::vector<std::vector<Int>> tuples;
  for (const auto& p : points) tuples.push_back(p.tuple);
  auto work = [&](const Admissible& p) {
    Search s;
    s.spec = spec;
    s.base = p;
    s.others = tuples;
    std::vector<ModuliDescriptor> out;
    for (const auto& c : s.run()) out.push_back(s.describe(c));
    return out;
  };
  std::vector<std::vector<ModuliDescriptor>> parts(points.size());
  if (spec.jobs > 1 && points.size() > 1) {
    std::vector<std::future<std::vector<ModuliDescriptor>>> fs;
    for (const auto& p : points) fs.push_back(std::async(std::launch::async, work, p));
    for (std::size_t i = 0; i < fs.size(); ++i) parts[i] = fs[i].get();
  } else {
    for (std::size_t i = 0; i < points.size(); ++i) parts[i] = work(points[i]);
  }
  std::vector<ModuliDescriptor> out;
  for (auto& p : parts)
    for (auto& m : p) out.push_back(std::move(m));
  std::stable_sort(out.begin(), out.end(), [](const ModuliDescriptor& x, const ModuliDescriptor& y) {
    auto kx = std::make_tuple(x.base_tuple, type_string(x.orthogonal_type), x.fiber_dim, x.torsion);
    auto ky = std::make_tuple(y.base_tuple, type_string(y.orthogonal_type), y.fiber_dim, y.torsion);
    return kx < ky;
  });
  return out;
}

std::string degrees_string(const ModuliDescriptor& m) {
  std::ostringstream os;
  for (std::size_t f = 0; f < m.wps_degrees.size(); ++f) {
    if (f) os << 'x';
    for (std::size_t i = 0; i < m.wps_degrees[f].size(); ++i) os << (i ? "," : "") << m.wps_degrees[f][i];
  }
  return m.wps_degrees.empty() ? "-" : os.str();
}

std::string torsion_string(const ModuliDescriptor& m) {
  if (m.torsion.empty()) return "-";
  std::ostringstream os;
  for (std::size_t i = 0; i < m.torsion.size(); ++i) os << (i ? "x" : "") << "E[" << m.torsion[i] << "]";
  return os.str();
}

std::vector<Int> decimation_orders(const std::vector<Int>& degrees) {
  if (degrees.empty()) throw DomainError("decimation_orders needs a nonempty multiset");
  Int top = *std::max_element(degrees.begin(), degrees.end());
  std::vector<Int> out;
  for (Int g = 2; g <= top; ++g)
    if (std::any_of(degrees.begin(), degrees.end(), [&](Int x) { return x % g == 0; })) out.push_back(g);
  return out;
}

// ---- polarization ----

QuadraticForm polarization_form(int d, Int delta) {
  if (d < 1 || d > 9) throw DomainError("polarization_form needs d in 1..9");
  QuadraticForm f;
  f.names = {"u", "h", "q"};
  for (int i = 1; i <= 9 - d; ++i) f.names.push_back("x" + std::to_string(i));
  const std::size_t n = f.names.size();
  f.a.assign(n, std::vector<Rat>(n, Rat(0)));
  f.a[1][1] = Rat(-1, 2);
  for (std::size_t i = 3; i < n; ++i) f.a[i][i] = Rat(1, 2);
  f.a[0][2] = f.a[2][0] = Rat(1, 2);
  f.a[2][2] = Rat(-delta, 2);
  return f;
}

std::vector<Int> class_functional(const SurfaceClass& e) {
  std::vector<Int> out{e.rank, e.c1.c.at(0), e.chi - e.rank};
  for (std::size_t i = 1; i < e.c1.c.size(); ++i) out.push_back(e.c1.c[i]);
  return out;
}

std::vector<Int> named_functional(const QuadraticForm& f, const std::string& expr) {
  std::vector<Int> out(f.names.size(), 0);
  std::size_t i = 0;
  bool any = false;
  while (i < expr.size()) {
    if (std::isspace(static_cast<unsigned char>(expr[i]))) {
      ++i;
      continue;
    }
    Int sign = 1;
    if (expr[i] == '+' || expr[i] == '-') sign = expr[i++] == '-' ? -1 : 1;
    Int k = 0;
    bool digits = false;
    while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) {
      k = k * 10 + (expr[i++] - '0');
      digits = true;
    }
    if (!digits) k = 1;
    std::string name;
    if (i < expr.size() && std::isalpha(static_cast<unsigned char>(expr[i]))) {
      name += expr[i++];
      while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) name += expr[i++];
    }
    auto it = std::find(f.names.begin(), f.names.end(), name);
    if (it == f.names.end()) throw DomainError("unknown coordinate in functional: '" + name + "'");
    out[static_cast<std::size_t>(it - f.names.begin())] += sign * k;
    any = true;
  }
  if (!any) throw DomainError("empty functional");
  return out;
}

std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::positive_definite:
      return "positive definite";
    case Definiteness::positive_semidefinite:
      return "positive semidefinite";
    case Definiteness::negative_definite:
      return "negative definite";
    case Definiteness::negative_semidefinite:
      return "negative semidefinite";
    case Definiteness::indefinite:
      return "indefinite";
    case Definiteness::zero:
      return "zero";
  }
  return "?";
}

namespace {

using RMat = std::vector<std::vector<Rat>>;

// Basis of {x : m x = 0}.
RMat nullspace(RMat m, std::size_t n) {
  std::vector<int> pivcol;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == Rat(0)) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rat inv = Rat(1) / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == Rat(0)) continue;
      Rat k = m[i][col];
      for (std::size_t j = 0; j < n; ++j) m[i][j] -= k * m[row][j];
    }
    pivcol.push_back(static_cast<int>(col));
    ++row;
  }
  RMat out;
  for (std::size_t free = 0; free < n; ++free) {
    if (std::find(pivcol.begin(), pivcol.end(), static_cast<int>(free)) != pivcol.end()) continue;
    std::vector<Rat> x(n, Rat(0));
    x[free] = Rat(1);
    for (std::size_t r = 0; r < pivcol.size(); ++r) x[pivcol[r]] = -m[r][free];
    out.push_back(x);
  }
  return out;
}

void inertia(RMat g, int& pos, int& neg, int& zero) {
  pos = neg = zero = 0;
  std::size_t n = g.size();
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && g[i][i] != Rat(0)) {
        p = i;
        break;
      }
    if (p == n) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && i != j && g[i][j] != Rat(0)) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;
      for (std::size_t k = 0; k < n; ++k) g[pi][k] += g[pj][k];
      for (std::size_t k = 0; k < n; ++k) g[k][pi] += g[k][pj];
      p = pi;
    }
    done[p] = true;
    Rat piv = g[p][p];
    (piv > Rat(0) ? pos : neg)++;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || g[i][p] == Rat(0)) continue;
      Rat k = g[i][p] / piv;
      for (std::size_t j = 0; j < n; ++j) g[i][j] -= k * g[p][j];
      for (std::size_t j = 0; j < n; ++j) g[j][i] -= k * g[j][p];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!done[i]) ++zero;
}

}  // namespace

PolarizationResult polarization_restrict(const QuadraticForm& f, const std::vector<std::vector<Int>>& constraints) {
  const std::size_t n = f.names.size();
  RMat c;
  for (const auto& row : constraints) {
    if (row.size() != n) throw DomainError("constraint length does not match the form's coordinates");
    std::vector<Rat> r;
    for (Int x : row) r.push_back(Rat(x));
    c.push_back(r);
  }
  RMat k = c.empty() ? RMat{} : nullspace(c, n);
  if (c.empty())
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rat> e(n, Rat(0));
      e[i] = Rat(1);
      k.push_back(e);
    }
  PolarizationResult res;
  const std::size_t m = k.size();
  if (m == 0) throw DomainError("constraints cut out the zero space");
  RMat g(m, std::vector<Rat>(m, Rat(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Rat s(0);
      for (std::size_t p = 0; p < n; ++p)
        if (k[i][p] != Rat(0))
          for (std::size_t q = 0; q < n; ++q) s += k[i][p] * f.a[p][q] * k[j][q];
      g[i][j] = s;
    }
  inertia(g, res.positive, res.negative, res.zero);
  for (const auto& z : nullspace(g, m)) {
    std::vector<Rat> x(n, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t p = 0; p < n; ++p) x[p] += z[i] * k[i][p];
    res.kernel.push_back(x);
  }
  if (res.positive && res.negative)
    res.verdict = Definiteness::indefinite;
  else if (res.positive)
    res.verdict = res.zero ? Definiteness::positive_semidefinite : Definiteness::positive_definite;
  else if (res.negative)
    res.verdict = res.zero ? Definiteness::negative_semidefinite : Definiteness::negative_definite;
  else
    res.verdict = Definiteness::zero;
  return res;
}

}  // namespace dpz
