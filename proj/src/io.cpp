#include "bour/io.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>

#include "bour/error.hpp"

namespace bour {

const char* library_version() { return BOUR_EDGE_VERSION; }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const EdgeParams& p) {
  return json{{"U", p.U.source_text()}, {"h", p.h},       {"m", p.m},
              {"eps0", p.eps0},         {"eps1", p.eps1}, {"eps2", p.eps2},
              {"k", p.k},               {"J", {p.J.lo, p.J.hi}}};
}

EdgeParams edge_params_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("U")) {
      throw Error(Errc::invalid_argument, "datum must be an object with field \"U\"");
    }
    EdgeParams p;
    p.U = parse_expr(j.at("U").get<std::string>());
    p.h = j.value("h", p.h);
    p.m = j.value("m", p.m);
    p.eps0 = j.value("eps0", p.eps0);
    p.eps1 = j.value("eps1", p.eps1);
    p.eps2 = j.value("eps2", p.eps2);
    p.k = j.value("k", p.k);
    if (j.contains("J")) {
      const json& J = j.at("J");
      if (!J.is_array() || J.size() != 2) {
        throw Error(Errc::invalid_argument, "\"J\" must be [lo, hi]");
      }
      p.J = {J[0].get<double>(), J[1].get<double>()};
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("malformed datum: ") + e.what());
  }
}

json to_json(const ValidationReport& r) {
  json f = json::array();
  for (const auto& x : r.failures) {
    f.push_back({{"condition", x.condition}, {"s", x.s}, {"value", x.value}});
  }
  return json{{"star_ok", r.star_ok}, {"rho_min", r.rho_min}, {"failures", f}};
}

json to_json(const InvariantReport& r) {
  auto pair = [](const InvariantPair& p) {
    return json{{"closed", p.closed}, {"oracle", p.oracle}};
  };
  json om = json::array();
  for (const auto& e : r.omegas) om.push_back({e.i, e.closed, e.oracle});
  return json{{"kappa_nu", pair(r.kappa_nu)},
              {"kappa_t", pair(r.kappa_t)},
              {"omega", om},
              {"beta", r.beta ? pair(*r.beta) : json(nullptr)},
              {"max_discrepancy", r.max_discrepancy}};
}

json to_json(const CuspType& c) {
  json w = json::object();
  for (const auto& [k, v] : c.witnesses) w[k] = v;
  return json{{"tag", cusp_tag_name(c.tag)}, {"witnesses", w}};
}

json to_json(const NaturalChart& c) {
  return json{{"u0", c.u0()},       {"k", c.k()},          {"h", c.h()},
              {"u", c.tab_u()},     {"s", c.tab_s()},      {"phi", c.tab_phi()},
              {"U", c.tab_U()},     {"U_jet0", c.U_jet0().coefficients()}};
}

json to_json(const RoundtripReport& r) {
  return json{{"sup_error_U", r.sup_error_U},
              {"sup_error_metric", r.sup_error_metric},
              {"sup_error_s", r.sup_error_s},
              {"recovered_m", r.recovered_m},
              {"probes", r.probes}};
}

void write_obj(std::ostream& out, const Mesh& mesh, const EdgeParams& datum) {
  out << "# bour-edge " << BOUR_EDGE_VERSION << " datum=" << to_json(datum).dump() << '\n';
  if (mesh.singular_row) out << "# singular_row " << *mesh.singular_row << '\n';
  for (const SurfacePoint& p : mesh.points) {
    out << "v " << format_double(p.position.x()) << ' ' << format_double(p.position.y()) << ' '
        << format_double(p.position.z()) << '\n';
  }
  for (int r = 0; r + 1 < mesh.rows; ++r) {
    for (int c = 0; c + 1 < mesh.cols; ++c) {
      const int a = r * mesh.cols + c + 1;
      out << "f " << a << ' ' << a + 1 << ' ' << a + 1 + mesh.cols << ' ' << a + mesh.cols << '\n';
    }
  }
}

void write_fundamental_form_csv(std::ostream& out, const EdgeData& data, const Mesh& mesh) {
  out << "s,t,E,F,G\n";
  for (const SurfacePoint& p : mesh.points) {
    const FundamentalForm f = first_fundamental_form(data, p.s, p.t);
    out << format_double(p.s) << ',' << format_double(p.t) << ',' << format_double(f.E) << ','
        << format_double(f.F) << ',' << format_double(f.G) << '\n';
  }
}

void write_family_csv(std::ostream& out, const DeformationFamily& fam) {
  out << "h,m,valid,kappa_nu,kappa_t,edge_type\n";
  for (const FamilyMember& mem : fam.grid) {
    out << format_double(mem.h) << ',' << format_double(mem.m) << ',' << (mem.valid ? 1 : 0);
    if (mem.valid) {
      const auto [kn, kt] = invariant_map(*mem.data);
      std::string tag = "unsupported";
      if (mem.data->k() <= 2) tag = cusp_tag_name(classify_edge(*mem.data).tag);
      out << ',' << format_double(kn) << ',' << format_double(kt) << ',' << tag;
    } else {
      out << ",,,";
    }
    out << '\n';
  }
}

std::string member_obj_name(double h, double m) {
  return "member_h" + format_short(h) + "_m" + format_short(m) + ".obj";
}

}  // namespace bour
