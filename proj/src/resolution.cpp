#include "dpz/resolution.hpp"

#include <algorithm>
#include <sstream>

namespace dpz {

SequenceSpec SequenceSpec::from_bundle(const DivisorialBundle& V, const Autoequivalence& a) {
  check_window(V, a);
  SequenceSpec s;
  s.V = V;
  s.psi = a;
  std::stable_sort(s.V.components.begin(), s.V.components.end(),
                   [](const auto& x, const auto& y) { return slope_cmp(x.first, y.first) < 0; });
  return s;
}

SequenceSpec SequenceSpec::from_list(std::vector<EllipticClass> objects) {
  for (std::size_t k = 1; k < objects.size(); ++k)
    if (slope_cmp(objects[k - 1], objects[k]) >= 0) throw DomainError("objects must have strictly increasing slopes");
  SequenceSpec s;
  s.explicit_list = true;
  s.objects = std::move(objects);
  return s;
}

bool SequenceSpec::has(long j) const {
  if (!explicit_list) return true;
  return j >= 0 && j < static_cast<long>(objects.size());
}

EllipticClass SequenceSpec::object(long j) const {
  if (explicit_list) {
    if (!has(j)) throw DomainError("object index out of range");
    return objects[static_cast<std::size_t>(j)];
  }
  const long k = static_cast<long>(V.components.size());
  long n = floor_div(j, k);
  EllipticClass m = V.components[static_cast<std::size_t>(j - n * k)].first;
  for (; n > 0; --n) m = dpz::psi(this->psi, m);
  for (; n < 0; ++n) m = dpz::psi_inverse(this->psi, m);
  return m;
}

ResolutionShape free_shape(const SequenceSpec& seq, long i, int depth) {
  if (depth < 1) throw DomainError("depth must be at least 1");
  ResolutionShape out;
  out.resolved = i;
  out.depth = depth;
  out.degrees[0][i] = 1;
  EllipticClass t = seq.object(i);
  t.shift = 0;
  const long guard = 100000;
  for (long j = i - 1; seq.has(j) && i - j < guard; --j) {
    const int s = t.shift;
    if (s > depth) break;
    const EllipticClass m = seq.object(j);
    const int c = slope_cmp(m, t);
    const Int x = chi_e(m, t);
    const Int g = m.gcd();
    if (c == 0) {
      if (g != 1 || t.gcd() != 1) throw DomainError("free_shape: equal slopes between non-stable classes are unsupported");
      out.degrees[s][j] += 1;
      out.degrees[s + 1][j] += 1;
      out.coincidences.push_back({j, s, m.det, t.det});
    } else if (c < 0) {
      if (x != 0) out.degrees[s + 1][j] += x / g;
    } else {
      if (x != 0) out.degrees[s][j] += -x / g;
    }
    if (x != 0) t = phi_div(m, t);
  }
  for (auto it = out.degrees.begin(); it != out.degrees.end();) {
    if (it->first > depth)
      it = out.degrees.erase(it);
    else
      ++it;
  }
  std::erase_if(out.coincidences, [&](const Coincidence& c) { return c.degree + 1 > depth; });
  return out;
}

std::string to_string(const ResolutionShape& s) {
  std::ostringstream os;
  bool first = true;
  for (auto it = s.degrees.rbegin(); it != s.degrees.rend(); ++it) {
    if (!first) os << " -> ";
    first = false;
    os << '[';
    bool f2 = true;
    for (const auto& [j, k] : it->second)
      for (Int n = 0; n < k; ++n) {
        if (!f2) os << ',';
        f2 = false;
        os << j;
      }
    os << ']';
  }
  return os.str();
}

MinimalityReport minimality_report(const ResolutionShape& s, const RelationSet& rel) {
  MinimalityReport r;
  for (const auto& c : s.coincidences)
    if (!rel.equal(c.det_object, c.det_target)) r.culprits.push_back(c);
  r.minimal = r.culprits.empty();
  return r;
}

}  // namespace dpz
