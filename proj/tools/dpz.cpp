#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dpz/classify.hpp"
#include "dpz/elliptic_k.hpp"
#include "dpz/pic_lattice.hpp"
#include "dpz/resolution.hpp"
#include "dpz/surface_k.hpp"

using json = nlohmann::ordered_json;
using namespace dpz;

namespace {

struct Output {
  json doc = json::object();
  std::vector<std::string> text;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Config {
  std::optional<int> d;
  std::optional<Int> delta;
  std::vector<std::string> relations;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, sep)) out.push_back(trim(tok));
  return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

template <class T>
std::string join_ints(const std::vector<T>& v, const std::string& sep = ",") {
  std::vector<std::string> s;
  for (auto x : v) s.push_back(std::to_string(x));
  return join(s, sep);
}

Int parse_int(const std::string& s) {
  Rat q = parse_rational(trim(s));
  if (q.denominator() != 1) throw DomainError("expected an integer, got " + s);
  return to_int(q.numerator());
}

Config load_config(const std::string& path) {
  Config c;
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot read " + path);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--config", "expected key=value: " + line);
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "d")
      c.d = static_cast<int>(parse_int(value));
    else if (key == "delta")
      c.delta = parse_int(value);
    else if (key == "relations")
      for (auto& r : split(value, ',')) {
        if (!r.empty()) c.relations.push_back(r);
      }
    else
      throw CLI::ValidationError("--config", "unknown key " + key);
  }
  return c;
}

RationalVector parse_rational_vector(const std::string& s) {
  if (s.rfind("d=", 0) != 0) throw DomainError("vector must look like d=<d>:[c_h,c_1,...]");
  auto colon = s.find(':'), lb = s.find('['), rb = s.find(']');
  if (colon == std::string::npos || lb == std::string::npos || rb == std::string::npos || rb < lb)
    throw DomainError("vector must look like d=<d>:[c_h,c_1,...]");
  int d = static_cast<int>(parse_int(s.substr(2, colon - 2)));
  std::vector<Rat> c;
  for (auto& tok : split(s.substr(lb + 1, rb - lb - 1), ',')) c.push_back(parse_rational(tok));
  return RationalVector(d, c);
}

// r,d[,det][*m]
std::pair<EllipticClass, Int> parse_elliptic(const std::string& s) {
  std::string body = s;
  Int mult = 1;
  if (auto star = s.find('*'); star != std::string::npos) {
    body = s.substr(0, star);
    mult = parse_int(s.substr(star + 1));
  }
  auto parts = split(body, ',');
  if (parts.size() < 2 || parts.size() > 3) throw DomainError("elliptic class must look like r,d[,det][*m]: " + s);
  EllipticClass c = make_class(parse_int(parts[0]), parse_int(parts[1]), parts.size() == 3 ? parse_det(parts[2]) : DetClass{});
  return {c, mult};
}

RelationSet relation_set(const std::vector<std::string>& rel) {
  RelationSet out;
  for (auto& r : rel) out.relations.push_back(parse_det(r));
  return out;
}

std::vector<std::string> type_factors(const std::vector<CartanFactor>& t) {
  std::vector<std::string> out;
  for (auto& f : t) out.push_back(type_string({f}));
  return out;
}

std::string rats(const std::vector<Rat>& v) {
  std::vector<std::string> s;
  for (auto& x : v) s.push_back(to_string(x));
  return join(s, ",");
}

json rat_array(const std::vector<Rat>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(to_string(x));
  return a;
}

json elliptic_json(const EllipticClass& c) {
  return {{"rank", c.rank}, {"deg", c.deg}, {"det", to_string(c.det)}, {"shift", c.shift}, {"text", to_string(c)}};
}

json shape_json(const ResolutionShape& s) {
  json deg = json::object();
  for (auto& [k, m] : s.degrees) {
    json row = json::object();
    for (auto& [idx, mult] : m) row[std::to_string(idx)] = mult;
    deg[std::to_string(k)] = row;
  }
  json co = json::array();
  for (auto& c : s.coincidences)
    co.push_back({{"index", c.index}, {"degree", c.degree}, {"det_object", to_string(c.det_object)}, {"det_target", to_string(c.det_target)}});
  return {{"resolved", s.resolved}, {"depth", s.depth}, {"degrees", deg}, {"coincidences", co}, {"display", to_string(s)}};
}

json candidate_json(const CandidateClass& c) {
  return {{"slope", to_string(c.slope)},   {"v", to_string(c.v)},          {"tuple", c.tuple},
          {"norm", c.norm},                {"chi_max", c.chi_max},        {"status", to_string(c.status)},
          {"reason", c.reason},            {"class", to_string(c.surface_class())}};
}

void candidates_out(Output& o, const std::vector<CandidateClass>& cs) {
  o.doc["classes"] = json::array();
  o.header = {"slope", "tuple", "norm", "chi_max", "status", "reason"};
  for (auto& c : cs) {
    o.doc["classes"].push_back(candidate_json(c));
    o.rows.push_back({to_string(c.slope), join_ints(c.tuple), std::to_string(c.norm), std::to_string(c.chi_max), to_string(c.status), c.reason});
    o.text.push_back(to_string(c.slope) + " (" + join_ints(c.tuple) + ") v^2=" + std::to_string(c.norm) +
                     " chi_max=" + std::to_string(c.chi_max) + " " + to_string(c.status) + (c.reason.empty() ? "" : ": " + c.reason));
  }
}

json descriptor_json(const ModuliDescriptor& m) {
  json roots = json::array(), curves = json::array();
  for (auto& r : m.roots) roots.push_back(to_string(r));
  for (auto& c : m.curves) curves.push_back(to_string(c));
  return {{"slope", to_string(m.slope)},
          {"r", m.r},
          {"d", m.d},
          {"base_tuple", m.base_tuple},
          {"roots", roots},
          {"curves", curves},
          {"type", type_string(m.orthogonal_type)},
          {"factors", type_factors(m.orthogonal_type)},
          {"fiber_dim", m.fiber_dim},
          {"torsion", m.torsion},
          {"wps_degrees", m.wps_degrees},
          {"degrees", degrees_string(m)},
          {"flags", m.flags},
          {"constraints", m.constraints},
          {"status", m.nice() ? "nice" : "not nice"},
          {"note", m.note}};
}

const std::vector<std::string> kModuliHeader = {"slope", "r", "d", "type", "degrees", "fiber_dim", "torsion", "status"};

std::vector<std::string> descriptor_row(const ModuliDescriptor& m) {
  std::string status = m.nice() ? "nice" : (m.flags.empty() ? "not nice" : join(m.flags, ";"));
  return {to_string(m.slope), std::to_string(m.r), std::to_string(m.d), type_string(m.orthogonal_type),
          degrees_string(m),  std::to_string(m.fiber_dim), torsion_string(m), status};
}

void moduli_out(Output& o, const std::vector<ModuliDescriptor>& ms) {
  if (!o.doc.contains("descriptors")) o.doc["descriptors"] = json::array();
  o.header = kModuliHeader;
  for (auto& m : ms) {
    o.doc["descriptors"].push_back(descriptor_json(m));
    auto row = descriptor_row(m);
    o.rows.push_back(row);
    o.text.push_back(join(row, "  "));
  }
}

void emit(const Output& o, const std::string& format) {
  if (format == "json") {
    std::cout << o.doc.dump(2) << '\n';
  } else if (format == "tsv") {
    std::cout << join(o.header, "\t") << '\n';
    for (auto& r : o.rows) std::cout << join(r, "\t") << '\n';
  } else {
    for (auto& l : o.text) std::cout << l << '\n';
  }
}

std::vector<ResolutionShape> paper_shapes(int depth) {
  std::vector<ResolutionShape> out;
  for (Int dL = 1; dL <= 3; ++dL) {
    DivisorialBundle V{{{make_class(1, 0), 1}}, std::nullopt};
    out.push_back(free_shape(SequenceSpec::from_bundle(V, Autoequivalence{dL}), 0, depth));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dpz: exact K-theory, root lattice and moduli computations"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text", config_path;
  int jobs = 1;
  app.add_option("--format", format, "text, json or tsv")->check(CLI::IsMember({"text", "json", "tsv"}));
  app.add_option("--config", config_path, "key=value defaults for d, delta, relations");
  app.add_option("--jobs", jobs, "parallel workers for searches")->check(CLI::PositiveNumber);

  Config cfg;
  Output out;
  std::function<void()> action;

  std::optional<int> d_opt;
  std::optional<std::string> delta_opt;
  auto degree = [&] {
    int d = d_opt ? *d_opt : cfg.d.value_or(1);
    if (d < 1 || d > 9) throw DomainError("degree d must lie in 1..9");
    return d;
  };
  auto delta = [&]() -> Int { return delta_opt ? parse_int(*delta_opt) : cfg.delta.value_or(0); };
  std::vector<std::string> rel_opt;
  auto relations = [&] { return relation_set(rel_opt.empty() ? cfg.relations : rel_opt); };

  // roots
  bool count = false, simple_only = false, positive_only = false;
  auto* roots = app.add_subcommand("roots", "roots of Q^perp");
  roots->add_option("--d", d_opt, "degree");
  roots->add_flag("--count", count, "print only the number of roots");
  roots->add_flag("--simple", simple_only, "simple roots only");
  roots->add_flag("--positive", positive_only, "positive roots only");
  roots->callback([&] {
    action = [&] {
      int d = degree();
      const auto& rs = root_system(d);
      const auto& list = simple_only ? rs.simple : positive_only ? rs.positive : rs.roots;
      std::vector<CartanFactor> t = classify_root_set(rs.roots);
      out.doc = {{"d", d}, {"type", type_string(t)}, {"count", list.size()}};
      out.header = count ? std::vector<std::string>{"d", "type", "count"} : std::vector<std::string>{"root"};
      if (count) {
        out.text.push_back(std::to_string(list.size()));
        out.rows.push_back({std::to_string(d), type_string(t), std::to_string(list.size())});
        return;
      }
      json arr = json::array();
      for (auto& r : list) {
        arr.push_back(to_string(r));
        out.text.push_back(to_string(r));
        out.rows.push_back({to_string(r)});
      }
      out.doc["roots"] = arr;
    };
  });

  // alcove
  std::string x_str, mode_str = "affine";
  auto* alcove = app.add_subcommand("alcove", "reduce a rational vector of Q^perp to the fundamental alcove");
  alcove->add_option("--x", x_str, "d=<d>:[c_h,c_1,...] with rational entries")->required();
  alcove->add_option("--mode", mode_str, "finite or affine")->check(CLI::IsMember({"finite", "affine"}));
  alcove->callback([&] {
    action = [&] {
      auto x = parse_rational_vector(x_str);
      auto res = reduce_to_alcove(x, mode_str == "finite" ? AlcoveMode::finite : AlcoveMode::affine);
      json log = json::array();
      for (auto& s : res.log) log.push_back({{"root", to_string(s.root)}, {"affine", s.affine}});
      out.doc = {{"x", to_string(x)},
                 {"c", rat_array(res.point.c)},
                 {"c0", rat_array(res.point.c0)},
                 {"representative", to_string(res.point.representative)},
                 {"log", log}};
      out.header = {"x", "c", "c0", "representative", "steps"};
      out.rows.push_back({to_string(x), rats(res.point.c), rats(res.point.c0), to_string(res.point.representative), std::to_string(res.log.size())});
      out.text.push_back("c = (" + rats(res.point.c) + ")  c0 = (" + rats(res.point.c0) + ")");
      out.text.push_back("representative " + to_string(res.point.representative) + " after " + std::to_string(res.log.size()) + " steps");
    };
  });

  // cvp
  auto* cvp = app.add_subcommand("cvp", "closest vectors of Q^perp");
  cvp->add_option("--x", x_str, "target d=<d>:[...] with rational entries")->required();
  cvp->callback([&] {
    action = [&] {
      auto x = parse_rational_vector(x_str);
      auto res = closest_vectors(x);
      json near = json::array();
      out.header = {"target", "dist2", "nearest"};
      out.text.push_back("dist2 = " + to_string(res.dist2));
      for (auto& v : res.nearest) {
        near.push_back(to_string(v));
        out.rows.push_back({to_string(x), to_string(res.dist2), to_string(v)});
        out.text.push_back("  " + to_string(v));
      }
      out.doc = {{"target", to_string(x)}, {"dist2", to_string(res.dist2)}, {"nearest", near}};
    };
  });

  // pairing
  std::string m_str, n_str;
  auto* pairing = app.add_subcommand("pairing", "Euler pairing chi(M, N) on the surface");
  pairing->add_option("--M", m_str, "(<rank>; d=<d>:[...]; <chi>)")->required();
  pairing->add_option("--N", n_str, "(<rank>; d=<d>:[...]; <chi>)")->required();
  pairing->callback([&] {
    action = [&] {
      auto m = parse_surface_class(m_str), n = parse_surface_class(n_str);
      Int v = euler_pairing(m, n);
      out.doc = {{"M", to_string(m)}, {"N", to_string(n)}, {"chi", v}};
      out.header = {"M", "N", "chi"};
      out.rows.push_back({to_string(m), to_string(n), std::to_string(v)});
      out.text.push_back(std::to_string(v));
    };
  });

  // twist
  std::string d_vec;
  auto* twist_cmd = app.add_subcommand("twist", "twist a surface class by a line bundle");
  twist_cmd->add_option("--M", m_str, "surface class")->required();
  twist_cmd->add_option("--D", d_vec, "divisor d=<d>:[...]")->required();
  twist_cmd->callback([&] {
    action = [&] {
      auto m = parse_surface_class(m_str);
      auto r = twist(m, parse_lattice_vector(d_vec));
      out.doc = {{"M", to_string(m)}, {"D", d_vec}, {"result", to_string(r)}};
      out.header = {"M", "D", "result"};
      out.rows.push_back({to_string(m), d_vec, to_string(r)});
      out.text.push_back(to_string(r));
    };
  });

  // phistar
  std::string phi_mode = "anticanonical";
  auto* phistar = app.add_subcommand("phistar", "action of Phi* on a surface class");
  phistar->add_option("--M", m_str, "surface class")->required();
  phistar->add_option("--mode", phi_mode, "general or anticanonical")->check(CLI::IsMember({"general", "anticanonical"}));
  phistar->callback([&] {
    action = [&] {
      auto m = parse_surface_class(m_str);
      auto r = phi_star(m, phi_mode == "general" ? PhiMode::general : PhiMode::anticanonical);
      out.doc = {{"M", to_string(m)}, {"mode", phi_mode}, {"result", to_string(r)}};
      out.header = {"M", "mode", "result"};
      out.rows.push_back({to_string(m), phi_mode, to_string(r)});
      out.text.push_back(to_string(r));
    };
  });

  // collection
  std::vector<std::string> class_strs;
  auto* collection = app.add_subcommand("collection", "numerical exceptional collection test");
  collection->add_option("--class", class_strs, "surface classes in order")->required();
  collection->callback([&] {
    action = [&] {
      std::vector<SurfaceClass> cs;
      for (auto& s : class_strs) cs.push_back(parse_surface_class(s));
      auto rep = validate_collection(cs);
      out.doc = {{"ok", rep.ok},
                 {"not_exceptional", rep.not_exceptional},
                 {"slope_window", rep.slope_window},
                 {"nonzero_chi", rep.nonzero_chi},
                 {"root_test", rep.root_test}};
      out.header = {"check", "detail"};
      out.text.push_back(rep.ok ? "ok" : "failed");
      auto add = [&](const char* name, const std::vector<std::string>& v) {
        for (auto& s : v) {
          out.rows.push_back({name, s});
          out.text.push_back(std::string(name) + ": " + s);
        }
      };
      add("not_exceptional", rep.not_exceptional);
      add("slope_window", rep.slope_window);
      add("nonzero_chi", rep.nonzero_chi);
      add("root_test", rep.root_test);
      if (out.rows.empty()) out.rows.push_back({"ok", "true"});
    };
  });

  // chi-e
  auto* chie = app.add_subcommand("chi-e", "Euler pairing on the elliptic curve");
  chie->add_option("--M", m_str, "r,d[,det]")->required();
  chie->add_option("--N", n_str, "r,d[,det]")->required();
  chie->callback([&] {
    action = [&] {
      auto m = parse_elliptic(m_str).first, n = parse_elliptic(n_str).first;
      Int v = chi_e(m, n);
      auto he = hom_ext_dims(m, n, relations());
      out.doc = {{"M", elliptic_json(m)}, {"N", elliptic_json(n)}, {"chi", v}, {"hom", he.hom}, {"ext1", he.ext1}};
      out.header = {"M", "N", "chi", "hom", "ext1"};
      out.rows.push_back({to_string(m), to_string(n), std::to_string(v), std::to_string(he.hom), std::to_string(he.ext1)});
      out.text.push_back(std::to_string(v) + "  (hom " + std::to_string(he.hom) + ", ext1 " + std::to_string(he.ext1) + ")");
    };
  });

  // autoeq
  std::string kind_str = "psi";
  Int dL = 1;
  auto* autoeq = app.add_subcommand("autoeq", "apply Psi, Phi_M or their inverses");
  autoeq->add_option("--kind", kind_str, "psi, psi-inv, phi, phi-inv")->check(CLI::IsMember({"psi", "psi-inv", "phi", "phi-inv"}));
  autoeq->add_option("--N", n_str, "r,d[,det]")->required();
  autoeq->add_option("--M", m_str, "divisorial r,d[,det] for phi");
  autoeq->add_option("--dL", dL, "degree of L");
  autoeq->callback([&] {
    action = [&] {
      static const std::map<std::string, AutoKind> kinds = {
          {"psi", AutoKind::Psi}, {"psi-inv", AutoKind::PsiInverse}, {"phi", AutoKind::PhiDiv}, {"phi-inv", AutoKind::PhiDivInverse}};
      auto n = parse_elliptic(n_str).first;
      EllipticClass m;
      if (kind_str.rfind("phi", 0) == 0) {
        if (m_str.empty()) throw DomainError("--M is required for phi");
        m = parse_elliptic(m_str).first;
      }
      auto r = apply_autoequivalence(kinds.at(kind_str), Autoequivalence{dL}, m, n);
      out.doc = {{"kind", kind_str}, {"dL", dL}, {"N", elliptic_json(n)}, {"result", elliptic_json(r)}};
      if (!m_str.empty()) out.doc["M"] = elliptic_json(m);
      out.header = {"kind", "N", "result"};
      out.rows.push_back({kind_str, to_string(n), to_string(r)});
      out.text.push_back(to_string(r));
    };
  });

  // resolution / minimality / koszul / hilbert share the bundle options
  std::vector<std::string> v_strs, obj_strs;
  int depth = 4, n_max = 10;
  long index = 0;
  auto bundle = [&] {
    DivisorialBundle V;
    for (auto& s : v_strs) V.components.push_back(parse_elliptic(s));
    return V;
  };
  auto sequence = [&] {
    if (!obj_strs.empty()) {
      std::vector<EllipticClass> objs;
      for (auto& s : obj_strs) objs.push_back(parse_elliptic(s).first);
      return SequenceSpec::from_list(objs);
    }
    if (v_strs.empty()) throw DomainError("either --V or --objects is required");
    return SequenceSpec::from_bundle(bundle(), Autoequivalence{dL});
  };
  auto add_seq_opts = [&](CLI::App* c) {
    c->add_option("--V", v_strs, "components r,d[,det][*m]");
    c->add_option("--objects", obj_strs, "explicit objects r,d[,det] in increasing slope");
    c->add_option("--dL", dL, "degree of L");
    c->add_option("--depth", depth, "resolution depth");
    c->add_option("--index", index, "index of the resolved object");
  };

  auto* resolution = app.add_subcommand("resolution", "free resolution shape of M_i");
  add_seq_opts(resolution);
  resolution->callback([&] {
    action = [&] {
      auto s = free_shape(sequence(), index, depth);
      out.doc = shape_json(s);
      out.header = {"degree", "index", "multiplicity"};
      for (auto& [k, m] : s.degrees)
        for (auto& [i, mult] : m) out.rows.push_back({std::to_string(k), std::to_string(i), std::to_string(mult)});
      out.text.push_back(to_string(s));
    };
  });

  auto* minimality = app.add_subcommand("minimality", "minimality of the free resolution under relations");
  add_seq_opts(minimality);
  minimality->add_option("--relations", rel_opt, "determinant relations, e.g. 2q");
  minimality->callback([&] {
    action = [&] {
      auto s = free_shape(sequence(), index, depth);
      auto rep = minimality_report(s, relations());
      json cul = json::array();
      out.header = {"minimal", "index", "degree", "det_object", "det_target"};
      out.text.push_back(rep.minimal ? "minimal" : "not minimal");
      for (auto& c : rep.culprits) {
        cul.push_back({{"index", c.index}, {"degree", c.degree}, {"det_object", to_string(c.det_object)}, {"det_target", to_string(c.det_target)}});
        out.rows.push_back({"false", std::to_string(c.index), std::to_string(c.degree), to_string(c.det_object), to_string(c.det_target)});
        out.text.push_back("  index " + std::to_string(c.index) + " degree " + std::to_string(c.degree) + ": " + to_string(c.det_object) +
                           " = " + to_string(c.det_target));
      }
      if (rep.minimal) out.rows.push_back({"true", "", "", "", ""});
      out.doc = {{"minimal", rep.minimal}, {"culprits", cul}, {"shape", shape_json(s)}};
    };
  });

  auto* koszul = app.add_subcommand("koszul", "Koszul test for B_{V,Psi}");
  koszul->add_option("--V", v_strs, "r,d[*m]")->required();
  koszul->add_option("--dL", dL, "degree of L");
  koszul->callback([&] {
    action = [&] {
      if (v_strs.size() != 1) throw DomainError("koszul takes a single --V r,d");
      auto [c, m] = parse_elliptic(v_strs[0]);
      bool k = koszul_test(c.rank, c.deg, Autoequivalence{dL});
      out.doc = {{"r", c.rank}, {"d", c.deg}, {"dL", dL}, {"koszul", k}};
      out.header = {"r", "d", "dL", "koszul"};
      out.rows.push_back({std::to_string(c.rank), std::to_string(c.deg), std::to_string(dL), k ? "true" : "false"});
      out.text.push_back(k ? "koszul" : "not koszul");
    };
  });

  std::string series = "algebra";
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert series of B_{V,Psi}, its center or quotient");
  hilbert->add_option("--V", v_strs, "components r,d[,det][*m]")->required();
  hilbert->add_option("--dL", dL, "degree of L");
  hilbert->add_option("--n", n_max, "highest degree");
  hilbert->add_option("--series", series, "algebra, center or quotient")->check(CLI::IsMember({"algebra", "center", "quotient"}));
  hilbert->add_option("--relations", rel_opt, "determinant relations");
  hilbert->callback([&] {
    action = [&] {
      Autoequivalence a{dL};
      auto V = bundle();
      std::vector<Int> h = series == "center" ? center_series(a, n_max)
                           : series == "quotient" ? quotient_series(V, a, n_max, relations())
                                                  : hilbert_series(V, a, n_max, relations());
      out.doc = {{"series", series}, {"dL", dL}, {"coefficients", h}};
      out.header = {"n", "dim"};
      for (std::size_t i = 0; i < h.size(); ++i) out.rows.push_back({std::to_string(i), std::to_string(h[i])});
      out.text.push_back(join_ints(h, ", "));
    };
  });

  // candidates / classify-slope
  std::string slope_str = "0";
  std::optional<Int> norm_opt;
  Int r_max = 64;
  auto* candidates = app.add_subcommand("candidates", "alcove candidates for slope -a/r");
  candidates->add_option("--slope", slope_str, "-a/r")->required();
  candidates->add_option("--norm", norm_opt, "keep only v^2 = norm");
  candidates->callback([&] {
    action = [&] { candidates_out(out, alcove_candidates(parse_slope(slope_str), norm_opt)); };
  });

  auto* classify = app.add_subcommand("classify-slope", "representability status of each candidate");
  classify->add_option("--slope", slope_str, "-a/r")->required();
  classify->add_option("--r-max", r_max, "rank bound for the reduction chain");
  classify->callback([&] {
    action = [&] { candidates_out(out, classify_slope(parse_slope(slope_str), r_max)); };
  });

  // moduli
  int mr = 1;
  auto* moduli = app.add_subcommand("moduli", "configuration search and moduli descriptors");
  moduli->add_option("--slope", slope_str, "0 or -a/b");
  moduli->add_option("--r", mr, "number of exceptional objects")->required();
  moduli->add_option("--d", d_opt, "degree");
  moduli->add_option("--delta", delta_opt, "delta");
  moduli->callback([&] {
    action = [&] { moduli_out(out, configuration_search({parse_slope(slope_str), mr, degree(), delta(), jobs})); };
  });

  // decimate
  std::string degrees_str;
  auto* decimate = app.add_subcommand("decimate", "orbifold orders of a weighted projective space");
  decimate->add_option("--degrees", degrees_str, "comma separated degrees")->required();
  decimate->callback([&] {
    action = [&] {
      std::vector<Int> deg;
      for (auto& s : split(degrees_str, ',')) deg.push_back(parse_int(s));
      auto g = decimation_orders(deg);
      out.doc = {{"degrees", deg}, {"orders", g}};
      out.header = {"order"};
      for (auto x : g) out.rows.push_back({std::to_string(x)});
      out.text.push_back(join_ints(g, ", "));
    };
  });

  // polarization
  std::vector<std::string> fix_exprs, fix_classes;
  auto* polarization = app.add_subcommand("polarization", "definiteness of the polarization form on a subspace");
  polarization->add_option("--d", d_opt, "degree");
  polarization->add_option("--delta", delta_opt, "delta");
  polarization->add_option("--fix", fix_exprs, "named functional, e.g. q or 3h-x1");
  polarization->add_option("--fix-class", fix_classes, "surface class whose determinant functional is fixed");
  polarization->callback([&] {
    action = [&] {
      auto f = polarization_form(degree(), delta());
      std::vector<std::vector<Int>> cons;
      for (auto& e : fix_exprs) cons.push_back(named_functional(f, e));
      for (auto& c : fix_classes) cons.push_back(class_functional(parse_surface_class(c)));
      auto res = polarization_restrict(f, cons);
      json ker = json::array();
      for (auto& k : res.kernel) ker.push_back(rat_array(k));
      out.doc = {{"names", f.names},           {"verdict", to_string(res.verdict)}, {"positive", res.positive},
                 {"negative", res.negative},   {"zero", res.zero},                  {"kernel", ker}};
      out.header = {"verdict", "positive", "negative", "zero"};
      out.rows.push_back({to_string(res.verdict), std::to_string(res.positive), std::to_string(res.negative), std::to_string(res.zero)});
      out.text.push_back(to_string(res.verdict) + " (+" + std::to_string(res.positive) + ", -" + std::to_string(res.negative) + ", 0x" +
                         std::to_string(res.zero) + ")");
    };
  });

  // tables
  bool paper = false;
  auto* tables = app.add_subcommand("tables", "regenerate the golden tables");
  tables->add_flag("--paper", paper, "all tables")->required();
  tables->callback([&] {
    action = [&] {
      json doc = json::object();
      auto section = [&](const std::string& title) { out.text.push_back("== " + title); };

      section("roots");
      json rc = json::array();
      for (int d = 1; d <= 6; ++d) {
        auto t = classify_root_set(root_system(d).roots);
        rc.push_back({{"d", d}, {"count", root_system(d).roots.size()}, {"type", type_string(t)}});
        out.text.push_back("d=" + std::to_string(d) + "  " + std::to_string(root_system(d).roots.size()) + "  " + type_string(t));
      }
      doc["roots"] = rc;

      section("resolutions");
      json rs = json::array();
      Int k = 1;
      for (auto& s : paper_shapes(4)) {
        rs.push_back({{"dL", k}, {"shape", shape_json(s)}});
        out.text.push_back("dL=" + std::to_string(k++) + "  " + to_string(s));
      }
      doc["resolutions"] = rs;

      section("slopes");
      json sl = json::array();
      std::vector<Slope> slopes;
      for (Int r = 2; r <= 9; ++r) slopes.push_back({1, r});
      for (Int r = 3; r <= 15; r += 2) slopes.push_back({2, r});
      slopes.push_back({3, 8});
      slopes.push_back({3, 10});
      for (auto& s : slopes) {
        Output o;
        candidates_out(o, classify_slope(s));
        for (auto& c : o.doc["classes"]) sl.push_back(c);
        for (auto& t : o.text) out.text.push_back(t);
      }
      doc["slopes"] = sl;

      section("moduli");
      Output mo;
      for (int r = 1; r <= 9; ++r)
        for (int d = 1; r + d <= 10; ++d) moduli_out(mo, configuration_search({{0, 1}, r, d, 0, jobs}));
      for (int r = 1; r <= 3; ++r)
        for (int d = 1; d <= 3; ++d) moduli_out(mo, configuration_search({{1, 2}, r, d, 0, jobs}));
      moduli_out(mo, configuration_search({{1, 2}, 9, 1, 0, jobs}));
      moduli_out(mo, configuration_search({{1, 2}, 1, 9, 0, jobs}));
      for (auto [a, b] : std::vector<std::pair<Int, Int>>{{1, 3}, {1, 4}, {2, 5}, {1, 5}})
        for (int r = 1; r <= 2; ++r)
          for (int d = 1; d <= 2; ++d) moduli_out(mo, configuration_search({{a, b}, r, d, 0, jobs}));
      doc["moduli"] = mo.doc["descriptors"];
      for (auto& t : mo.text) out.text.push_back(t);
      out.header = mo.header;
      out.rows = mo.rows;
      out.doc = doc;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    action();
    emit(out, format);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
