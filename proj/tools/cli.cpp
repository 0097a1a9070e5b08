#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bour/cusps.hpp"
#include "bour/deform.hpp"
#include "bour/error.hpp"
#include "bour/invariants.hpp"
#include "bour/io.hpp"
#include "bour/natural.hpp"
#include "bour/surface.hpp"

namespace bour::cli {

namespace {

namespace fs = std::filesystem;

// Bad flag values or unreadable inputs; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The datum failed validation and the report has been written; exit code 1.
struct ValidationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string datum_file;
  std::string U;
  double h = 0.0;
  double m = 1.0;
  int eps0 = 1;
  int eps1 = 1;
  int eps2 = 1;
  int k = 1;
  std::vector<double> J;
  std::string out_dir;
  bool json_errors = false;
  double quad_tol = 1e-12;
  double cusp_tol = kCuspTol;
  ProfileOptions profile;
};

class Runner {
 public:
  Runner(CLI::App& app, Settings& st, std::ostream& out) : app_(app), st_(st), out_(out) {}

  bool given(const char* name) const { return app_.count(name) > 0; }

  EdgeParams params() const {
    EdgeParams p;
    if (!st_.datum_file.empty()) {
      std::ifstream in(st_.datum_file);
      if (!in) throw UsageError("cannot read datum file " + st_.datum_file);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw UsageError("datum file " + st_.datum_file + ": " + e.what());
      }
      p = edge_params_from_json(j);
    } else if (!given("--U")) {
      throw UsageError("a datum is required: --datum FILE or --U EXPR");
    }
    // Flags override fields of the datum file.
    if (given("--U")) p.U = parse_expr(st_.U);
    if (given("--h")) p.h = st_.h;
    if (given("--m")) p.m = st_.m;
    if (given("--eps0")) p.eps0 = st_.eps0;
    if (given("--eps1")) p.eps1 = st_.eps1;
    if (given("--eps2")) p.eps2 = st_.eps2;
    if (given("--k")) p.k = st_.k;
    if (given("--J")) p.J = {st_.J.at(0), st_.J.at(1)};
    return p;
  }

  // Structural checks and (*); on failure the report goes to validation.json.
  EdgeData datum() {
    const EdgeParams p = params();
    json report{{"datum", to_json(p)}};
    try {
      EdgeData d = make_edge_data_unchecked(p, st_.profile);
      const ValidationReport r = check_star(d, st_.profile.samples);
      report["report"] = to_json(r);
      if (r.star_ok) return d;
      const StarFailure& f = r.failures.front();
      std::ostringstream msg;
      msg << errc_name(Errc::star_violation) << ": " << f.condition << " at s = " << f.s;
      report["error"] = {{"code", errc_name(Errc::star_violation)}, {"message", msg.str()}};
      fail(report);
      throw ValidationFailed(msg.str());
    } catch (const Error& e) {
      if (e.code() == Errc::invalid_argument || e.code() == Errc::syntax ||
          e.code() == Errc::unknown_identifier || e.code() == Errc::non_integer_exponent) {
        throw;
      }
      report["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
      fail(report);
      throw ValidationFailed(e.what());
    }
  }

  fs::path out_dir(bool required) const {
    if (st_.out_dir.empty()) return required ? fs::path(".") : fs::path();
    return fs::path(st_.out_dir);
  }

  void prepare(const fs::path& dir) const {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create output directory " + dir.string());
  }

  std::ofstream open(const fs::path& dir, const std::string& name) const {
    prepare(dir);
    std::ofstream f(dir / name);
    if (!f) throw UsageError("cannot write " + (dir / name).string());
    f.precision(17);
    return f;
  }

  // Writes name into --out when given.
  void write_json(const std::string& name, const json& j) const {
    const fs::path dir = out_dir(false);
    if (dir.empty()) return;
    open(dir, name) << j.dump(2) << '\n';
  }

  void emit(const json& j) { out_ << j.dump(2) << '\n'; }

  // A failed validation still produces its report.
  void fail(const json& report) {
    write_json("validation.json", report);
    emit(report);
  }

  Mesh mesh(const EdgeData& d, const std::vector<double>& s_range,
            const std::vector<double>& t_range, int rows, int cols) const {
    const Interval s = s_range.empty() ? d.J() : Interval{s_range[0], s_range[1]};
    const Interval t = t_range.empty() ? default_t_range(d) : Interval{t_range[0], t_range[1]};
    return sample_mesh(d, s, t, rows, cols, st_.quad_tol);
  }

 private:
  CLI::App& app_;
  Settings& st_;
  std::ostream& out_;
};

json cusp_or_unsupported(const std::function<CuspType()>& f) {
  try {
    return to_json(f());
  } catch (const Error& e) {
    if (e.code() != Errc::unsupported_k) throw;
    return json{{"tag", "unsupported"}, {"message", e.what()}};
  }
}

void report_error(std::ostream& err, bool as_json, const std::string& code,
                  const std::string& message) {
  if (as_json) {
    err << json{{"error", code}, {"message", message}}.dump() << '\n';
  } else {
    err << "bour-edge: " << message << '\n';
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings st;
  CLI::App app{"Helicoidal n-type edges from Bour data: validation, meshes, invariants, "
               "edge types, deformations and round trips.",
               "bour-edge"};
  // "--h" is the pitch, so help has no short form.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", library_version());
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--datum", st.datum_file, "Datum JSON {U, h, m, eps0, eps1, eps2, k, J}");
  app.add_option("--U", st.U, "Metric function U(s)");
  app.add_option("--h", st.h, "Pitch");
  app.add_option("--m", st.m, "Homothety parameter (> 0)");
  app.add_option("--eps0", st.eps0, "Sign +1 or -1");
  app.add_option("--eps1", st.eps1, "Sign +1 or -1");
  app.add_option("--eps2", st.eps2, "Sign +1 or -1");
  app.add_option("--k", st.k, "Edge type n - 1");
  app.add_option("--J", st.J, "Domain of s: LO HI")->expected(2);
  app.add_option("--out", st.out_dir, "Output directory");
  app.add_flag("--json", st.json_errors, "Report errors as JSON on standard error");
  app.add_option("--quad-tol", st.quad_tol, "Absolute quadrature tolerance")->capture_default_str();
  app.add_option("--zero-tol", st.profile.zero_tol, "Relative band for vanishing derivatives")
      ->capture_default_str();
  app.add_option("--s-switch", st.profile.s_switch, "Radius where V switches to its expansion")
      ->capture_default_str();
  app.add_option("--samples", st.profile.samples, "Grid size of the radicand check")
      ->capture_default_str();
  app.add_option("--cusp-tol", st.cusp_tol, "Relative band of the cusp criteria")
      ->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Check the datum and the radicand condition");

  auto* build = app.add_subcommand("build", "Sample the surface into an OBJ mesh and a metric CSV");
  int rows = 65, cols = 65;
  std::vector<double> s_range, t_range;
  build->add_option("--rows", rows, "Samples in s")->capture_default_str();
  build->add_option("--cols", cols, "Samples in t")->capture_default_str();
  build->add_option("--s-range", s_range, "LO HI (default J)")->expected(2);
  build->add_option("--t-range", t_range, "LO HI (default [0, 2 pi m])")->expected(2);

  auto* invariants = app.add_subcommand("invariants", "Closed-form invariants and their oracles");
  auto* classify = app.add_subcommand("classify", "Edge type from U and from the profile curve");

  auto* deform = app.add_subcommand("deform", "Grid of isometric deformations in (h, m)");
  double h_span = 0.1, m_span = 0.1;
  int nh = 5, nm = 5, member_rows = 33, member_cols = 33;
  bool no_meshes = false;
  deform->add_option("--h-span", h_span, "Half width of the h range")->capture_default_str();
  deform->add_option("--m-span", m_span, "Half width of the m range")->capture_default_str();
  deform->add_option("--nh", nh, "Grid points in h")->capture_default_str();
  deform->add_option("--nm", nm, "Grid points in m")->capture_default_str();
  deform->add_option("--rows", member_rows, "Mesh samples in s per member")->capture_default_str();
  deform->add_option("--cols", member_cols, "Mesh samples in t per member")->capture_default_str();
  deform->add_flag("--no-meshes", no_meshes, "Only write family.csv");

  auto* invert = app.add_subcommand("invert", "Recover (h, m) from (kappa_nu, kappa_t)");
  double target_nu = 0.0, target_t = 0.0;
  InversionOptions inv_opts;
  bool allow_sign_change = false;
  invert->add_option("--kappa-nu", target_nu, "Target limiting normal curvature")->required();
  invert->add_option("--kappa-t", target_t, "Target cusp-directional torsion")->required();
  invert->add_option("--max-iterations", inv_opts.max_iterations)->capture_default_str();
  invert->add_option("--residual-tol", inv_opts.residual_tol)->capture_default_str();
  invert->add_flag("--allow-sign-change", allow_sign_change, "Let the pitch change sign");

  auto* iso = app.add_subcommand("isomers", "The four sign variants (eps1, eps2)");
  int iso_rows = 65, iso_cols = 65;
  iso->add_option("--rows", iso_rows, "Mesh samples in s")->capture_default_str();
  iso->add_option("--cols", iso_cols, "Mesh samples in t")->capture_default_str();

  auto* rt = app.add_subcommand("roundtrip", "Rebuild U from the surface via natural coordinates");
  int probes = 201;
  std::vector<double> probe_range{-0.5, 0.5};
  rt->add_option("--probes", probes, "Number of probe points")->capture_default_str();
  rt->add_option("--probe-range", probe_range, "LO HI")->expected(2)->capture_default_str();

  auto* curve = app.add_subcommand("classify-curve", "Cusp type of a plane curve (x(s), y(s))");
  std::string expr_x, expr_y;
  double at = 0.0;
  int order = 9;
  curve->add_option("--expr-x", expr_x, "x(s)")->required();
  curve->add_option("--expr-y", expr_y, "y(s)")->required();
  curve->add_option("--at", at, "Base point")->capture_default_str();
  curve->add_option("--order", order, "Jet order (>= 7)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, x;
    const int code = app.exit(e, o, x);
    out << o.str();
    if (code == 0) return kOk;
    report_error(err, st.json_errors, "UsageError", e.what());
    return kUsageError;
  }

  Runner r(app, st, out);
  try {
    if (validate->parsed()) {
      const EdgeData d = r.datum();
      const json j{{"datum", to_json(d.params())}, {"report", to_json(check_star(d))}};
      r.write_json("validation.json", j);
      r.emit(j);
    } else if (build->parsed()) {
      const EdgeData d = r.datum();
      const Mesh mesh = r.mesh(d, s_range, t_range, rows, cols);
      const fs::path dir = r.out_dir(true);
      {
        auto f = r.open(dir, "surface.obj");
        write_obj(f, mesh, d.params());
      }
      {
        auto f = r.open(dir, "fundamental_form.csv");
        write_fundamental_form_csv(f, d, mesh);
      }
      json j{{"obj", (dir / "surface.obj").string()},
             {"csv", (dir / "fundamental_form.csv").string()},
             {"rows", mesh.rows},
             {"cols", mesh.cols},
             {"singular_row", nullptr}};
      if (mesh.singular_row) j["singular_row"] = *mesh.singular_row;
      r.emit(j);
    } else if (invariants->parsed()) {
      const EdgeData d = r.datum();
      const json j = to_json(compute_invariants(d));
      r.write_json("invariants.json", j);
      r.emit(j);
    } else if (classify->parsed()) {
      const EdgeData d = r.datum();
      const json edge = cusp_or_unsupported([&] { return classify_edge(d, st.cusp_tol); });
      const json prof = to_json(classify_edge_via_profile(d, st.cusp_tol));
      const json j{{"edge", edge}, {"profile", prof}, {"agree", edge["tag"] == prof["tag"]}};
      r.write_json("classify.json", j);
      r.emit(j);
    } else if (deform->parsed()) {
      const EdgeData d = r.datum();
      const DeformationFamily fam = deformation_family(d, h_span, m_span, nh, nm);
      const fs::path dir = r.out_dir(true);
      {
        auto f = r.open(dir, "family.csv");
        write_family_csv(f, fam);
      }
      int valid = 0;
      double worst = 0.0;
      json objs = json::array();
      for (const FamilyMember& mem : fam.grid) {
        if (!mem.valid) continue;
        ++valid;
        worst = std::max(worst, mem.metric_deviation);
        if (no_meshes) continue;
        const std::string name = member_obj_name(mem.h, mem.m);
        auto f = r.open(dir, name);
        write_obj(f, r.mesh(*mem.data, {}, {}, member_rows, member_cols), mem.data->params());
        objs.push_back(name);
      }
      r.emit({{"csv", (dir / "family.csv").string()},
              {"members", fam.grid.size()},
              {"valid", valid},
              {"max_metric_deviation", worst},
              {"meshes", objs}});
    } else if (invert->parsed()) {
      const EdgeData d = r.datum();
      inv_opts.preserve_h_sign = !allow_sign_change;
      const InversionResult res = invert_invariants(d, target_nu, target_t, inv_opts);
      const json j{{"h", res.h},
                   {"m", res.m},
                   {"iterations", res.iterations},
                   {"residual", res.residual},
                   {"datum", to_json(res.data->params())}};
      r.write_json("invert.json", j);
      r.emit(j);
    } else if (iso->parsed()) {
      const EdgeData d = r.datum();
      const IsomerSet set = isomers(d);
      const fs::path dir = r.out_dir(true);
      json members = json::array();
      for (const Isomer& m : set.members) {
        const std::string name = std::string("isomer_") + (m.eps1 > 0 ? "p" : "m") +
                                 (m.eps2 > 0 ? "p" : "m") + ".obj";
        auto f = r.open(dir, name);
        write_obj(f, r.mesh(m.data, {}, {}, iso_rows, iso_cols), m.data.params());
        members.push_back({{"eps1", m.eps1},
                           {"eps2", m.eps2},
                           {"helix_radius", m.helix_radius},
                           {"helix_pitch", m.helix_pitch},
                           {"obj", name}});
      }
      const json j{{"members", members}, {"max_metric_deviation", set.max_metric_deviation}};
      r.write_json("isomers.json", j);
      r.emit(j);
    } else if (rt->parsed()) {
      const EdgeData d = r.datum();
      if (probes < 1) throw UsageError("--probes must be positive");
      if (!d.J().contains(probe_range[0]) || !d.J().contains(probe_range[1])) {
        throw UsageError("--probe-range must lie inside J");
      }
      const json j = to_json(roundtrip(d, uniform_probes(probe_range[0], probe_range[1], probes)));
      if (!r.out_dir(false).empty()) {
        r.write_json("natural_chart.json",
                     to_json(natural_coordinates(HelicoidalInput::from_edge(d), 0.0, d.k())));
      }
      r.write_json("roundtrip.json", j);
      r.emit(j);
    } else if (curve->parsed()) {
      const SmoothFn x = parse_expr(expr_x);
      const SmoothFn y = parse_expr(expr_y);
      const json j =
          to_json(classify_plane_cusp(PlaneCurveJet::from_functions(x, y, at, order), st.cusp_tol));
      r.write_json("classify_curve.json", j);
      r.emit(j);
    }
  } catch (const UsageError& e) {
    report_error(err, st.json_errors, "UsageError", e.what());
    return kUsageError;
  } catch (const ValidationFailed& e) {
    report_error(err, st.json_errors, "ValidationError", e.what());
    return kValidationFailure;
  } catch (const Error& e) {
    report_error(err, st.json_errors, errc_name(e.code()), e.what());
    switch (e.code()) {
      case Errc::syntax:
      case Errc::unknown_identifier:
      case Errc::non_integer_exponent:
      case Errc::invalid_argument:
        return kUsageError;
      default:
        return kValidationFailure;
    }
  } catch (const std::exception& e) {
    report_error(err, st.json_errors, "Error", e.what());
    return kValidationFailure;
  }
  return kOk;
}

}  // namespace bour::cli
