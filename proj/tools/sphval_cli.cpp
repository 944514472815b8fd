// sphval: command-line front end for the spherical-variety pipeline.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "sphval/examples/instances.hpp"
#include "sphval/examples/sl2cubed.hpp"
#include "sphval/io/json.hpp"
#include "sphval/momentnum/cartan.hpp"
#include "sphval/momentnum/kempf_ness.hpp"
#include "sphval/version.hpp"

using namespace sphval;
using io::json;
using io::to_json;
using polycore::RatMatrix;
using polycore::operator-;

namespace {

struct Options {
  std::string command;
  std::string example;
  std::string input;
  std::string format = "json";
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::string mu;
  std::string out;
  std::size_t count = 1000;
};

/// Thrown for failed verifications; maps to exit status 2.
struct VerificationFailure {
  json report;
};

json num(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? json("nan") : json(x > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::stod(buf);
}

json num(const Eigen::VectorXd& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

json num(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back({num(m(i, j).real()), num(m(i, j).imag())});
    rows.push_back(r);
  }
  return rows;
}

json labels_of(const spherical::SphericalDatum& d, const std::vector<std::size_t>& active) {
  json a = json::array();
  for (auto i : active) a.push_back(d.divisors[i].label);
  return a;
}

/// Everything a command may need, loaded from --example or --input.
struct Source {
  std::string name;
  std::optional<examples::ExampleInstance> instance;
  json document;  // parsed --input, null for examples
  std::optional<spherical::SphericalDatum> datum;
  std::optional<polycore::Fan> fan;

  const spherical::SphericalDatum& require_datum() const {
    if (!datum) io::schema_error("/datum", "missing member 'datum'");
    return *datum;
  }
  const polycore::Fan& require_fan() const {
    if (!fan) io::schema_error("/fan", "missing member 'fan'");
    return *fan;
  }
  std::string hash() const {
    if (datum) return io::datum_hash(*datum);
    return spherical::fnv1a_hex(document.dump());
  }
};

Source load(const Options& o) {
  if (o.example.empty() == o.input.empty()) fail(ErrorKind::InvalidArgument, "give exactly one of --example, --input");
  Source s;
  if (!o.example.empty()) {
    s.name = o.example;
    s.instance = examples::build_example(o.example);
    s.datum = s.instance->datum;
    s.fan = s.instance->fan;
    return s;
  }
  s.name = o.input;
  std::ifstream in(o.input);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + o.input);
  try {
    s.document = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Schema, std::string("/: ") + e.what());
  }
  if (!s.document.is_object()) io::schema_error("", "expected an object");
  if (s.document.contains("datum")) {
    s.datum = io::datum_from_json(s.document["datum"], "/datum");
  }
  if (s.document.contains("fan")) s.fan = io::fan_from_json(s.document["fan"], "/fan");
  return s;
}

momentnum::NumericConfig config(const Options& o) {
  momentnum::NumericConfig cfg;
  if (o.tol) cfg.residual_tol = *o.tol;
  cfg.validate();
  return cfg;
}

json cmd_valcone(const Source& s) {
  const auto& d = s.require_datum();
  const auto c = spherical::valuation_cone(d);
  return {{"valuation_cone", to_json(c)},
          {"is_horospherical", spherical::is_horospherical(d)},
          {"is_zero_cone", c.is_zero_cone()},
          {"is_full_space", c == polycore::Cone::whole(d.rank)}};
}

json polytope_report(const spherical::SphericalDatum& d, const polycore::Polytope& p,
                     const std::vector<polycore::FaceDescriptor>& faces) {
  RatMatrix neg;
  for (const auto& v : p.vertices()) neg.push_back(-v);
  json fj = json::array();
  for (const auto& f : faces) {
    json e = to_json(f);
    e["active_labels"] = labels_of(d, f.active);
    fj.push_back(e);
  }
  return {{"pol", {{"convention", "+Pol: halfspaces v.mu >= v.kappa - m (library)"}, {"polytope", to_json(p)}}},
          {"pol_negated", {{"convention", "-Pol: vertices negated, opposite sign convention"}, {"vertices", to_json(neg)}}},
          {"dimension", p.dimension()},
          {"faces", fj}};
}

json cmd_polytope(const Source& s) {
  const auto& d = s.require_datum();
  const auto p = spherical::moment_polytope(d);
  json r = polytope_report(d, p, polycore::face_lattice(p));
  r["volume"] = p.dimension() == static_cast<long>(d.rank) ? to_json(polycore::volume(p)) : json(nullptr);
  return r;
}

json toroidal_report(const spherical::SphericalDatum& d, const polycore::Fan& fan) {
  const auto rep = spherical::verify_toroidal_normal_fan(d, fan);
  const auto smooth = polycore::is_smooth_simplicial_fan(fan);
  json real = json::array();
  for (const auto& c : rep.realizations)
    real.push_back({{"cone", c.cone_index}, {"face", c.face_index ? json(*c.face_index) : json(nullptr)}});
  return {{"fan", to_json(fan)},
          {"realizations", real},
          {"all_realized", rep.all_realized},
          {"inside_valuation_cone", rep.inside_valuation_cone},
          {"complete", rep.complete},
          {"verified", rep.verified() && rep.complete},
          {"smooth", smooth.ok},
          {"smooth_certificate", smooth.certificate}};
}

json cmd_verify_fan(const Source& s) {
  json r = toroidal_report(s.require_datum(), s.require_fan());
  if (!r["verified"].get<bool>()) throw VerificationFailure{r};
  return r;
}

json cmd_orbit_space(const Source& s) {
  const auto& d = s.require_datum();
  const auto& fan = s.require_fan();
  json tor = toroidal_report(d, fan);
  if (!tor["verified"].get<bool>()) throw VerificationFailure{{{"toroidal", tor}}};
  const auto m = spherical::orbit_space_model(d, fan);
  json r = polytope_report(d, m.polytope, m.faces);
  r["orbit_faces"] = io::index_list(m.orbit_faces);
  r["removed_faces"] = io::index_list(m.removed_faces);
  r["retained_faces"] = io::index_list(m.retained_faces);
  r["valuation_cone"] = to_json(spherical::valuation_cone(d));
  r["fan"] = to_json(fan);
  return r;
}

json cmd_stratify(const Source& s) {
  const auto& d = s.require_datum();
  const auto m = spherical::orbit_space_model(d, s.require_fan());
  const auto reports = spherical::stratify(d, m);
  json arr = json::array();
  const auto& rs = d.root_link->root_system;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    json roots = json::array(), levi = json::array();
    for (auto k : r.parabolic_roots) roots.push_back(rs.labels()[k]);
    for (auto k : r.levi_roots) levi.push_back(rs.labels()[k]);
    arr.push_back({{"face", m.retained_faces[i]},
                   {"dimension", r.face.dimension},
                   {"relative_interior_point", to_json(r.face.relative_interior_point)},
                   {"active_b_divisors", r.active_b_divisors},
                   {"chart_complement", r.chart_complement},
                   {"character_point", to_json(r.character_point)},
                   {"parabolic_roots", roots},
                   {"levi_roots", levi},
                   {"type_key", r.type_key},
                   {"general_satellite", r.general_satellite},
                   {"most_degenerate", r.most_degenerate}});
  }
  return {{"strata", arr}, {"distinct_types", spherical::distinct_types(reports)}, {"root_system", rs.descriptor()}};
}

Eigen::VectorXd parse_mu(const std::string& text) {
  if (text.empty()) fail(ErrorKind::InvalidArgument, "--mu is required");
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) vals.push_back(polycore::parse_rational(tok).get_d());
  return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

momentnum::WeightedVector weighted_vector(const Source& s) {
  if (s.instance) {
    if (!s.instance->weights) fail(ErrorKind::InvalidArgument, "example '" + s.name + "' has no toric weights");
    return *s.instance->weights;
  }
  const RatMatrix w = io::matrix_from_json(io::member(s.document, "", "weights"), "/weights");
  const json& amp = io::member(s.document, "", "amplitudes");
  if (!amp.is_array() || amp.size() != w.size()) io::schema_error("/amplitudes", "expected one number per weight");
  std::vector<double> a;
  for (std::size_t i = 0; i < amp.size(); ++i) {
    if (!amp[i].is_number() || amp[i].get<double>() <= 0)
      io::schema_error("/amplitudes/" + std::to_string(i), "expected a positive number");
    a.push_back(amp[i].get<double>());
  }
  return momentnum::WeightedVector(w, a);
}

json cmd_invert_moment(const Source& s, const Options& o) {
  const auto w = weighted_vector(s);
  const Eigen::VectorXd mu = parse_mu(o.mu);
  // --mu is a point of +Pol, the hull of the negated weights
  const auto inv = momentnum::invert_toric_moment(w, -mu, config(o));
  const Eigen::VectorXd back = -momentnum::toric_moment(w, inv.xi);
  return {{"mu_pol", num(mu)},
          {"mu_weight_hull", num(Eigen::VectorXd(-mu))},
          {"xi", num(inv.xi)},
          {"iterations", inv.iterations},
          {"residual", num(inv.residual)},
          {"reconstructed_mu_pol", num(back)}};
}

Eigen::VectorXcd input_vector(const Source& s, std::size_t dim, std::uint64_t seed) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  if (!s.instance && s.document.contains("vector")) {
    const json& vj = s.document["vector"];
    if (!vj.is_array() || vj.size() != dim) io::schema_error("/vector", "expected " + std::to_string(dim) + " entries");
    for (std::size_t i = 0; i < dim; ++i) {
      const std::string p = "/vector/" + std::to_string(i);
      if (!vj[i].is_array() || vj[i].size() != 2 || !vj[i][0].is_number() || !vj[i][1].is_number())
        io::schema_error(p, "expected [re, im]");
      v[static_cast<Eigen::Index>(i)] = {vj[i][0].get<double>(), vj[i][1].get<double>()};
    }
    return v;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

json cmd_kempf_ness(const Source& s, const Options& o) {
  std::optional<momentnum::CompactRepresentation> rep;
  if (s.instance) {
    rep = s.instance->representation;
  } else if (s.document.contains("weights")) {
    rep = momentnum::torus_representation(io::matrix_from_json(s.document["weights"], "/weights"));
  } else if (s.document.contains("su2_symmetric_power")) {
    rep = momentnum::su2_symmetric_power(io::count_from_json(s.document["su2_symmetric_power"], "/su2_symmetric_power"));
  }
  if (!rep) fail(ErrorKind::InvalidArgument, "no representation for '" + s.name + "'");
  const auto v = input_vector(s, rep->dim(), o.seed);
  const auto out = momentnum::kempf_ness_minimize(*rep, v, config(o));
  return {{"outcome", momentnum::to_string(out.kind)},
          {"reason", out.reason},
          {"start", num(Eigen::MatrixXcd(v))},
          {"minimizer", num(Eigen::MatrixXcd(out.minimizer))},
          {"moment_norm", num(out.moment_norm)},
          {"log_norm_sq", num(out.log_norm_sq)},
          {"parameter_norm", num(out.parameter_norm)},
          {"stabilizer_dim", out.stabilizer_dim},
          {"iterations", out.iterations},
          {"kirwan", num(momentnum::kirwan(*rep, v))}};
}

json cmd_cartan(const Source& s, const Options& o) {
  Eigen::MatrixXcd h;
  if (!s.instance && s.document.contains("matrix")) {
    const json& mj = s.document["matrix"];
    if (!mj.is_array() || mj.empty()) io::schema_error("/matrix", "expected a nonempty array of rows");
    const auto n = static_cast<Eigen::Index>(mj.size());
    h.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const std::string p = "/matrix/" + std::to_string(i);
      if (!mj[i].is_array() || static_cast<Eigen::Index>(mj[i].size()) != n) io::schema_error(p, "row of wrong length");
      for (Eigen::Index j = 0; j < n; ++j) {
        const json& e = mj[i][j];
        if (e.is_number()) h(i, j) = e.get<double>();
        else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
          h(i, j) = {e[0].get<double>(), e[1].get<double>()};
        else io::schema_error(p + "/" + std::to_string(j), "expected a number or [re, im]");
      }
    }
  } else {
    if (s.instance && s.instance->model != examples::NumericModel::MatrixGroup)
      fail(ErrorKind::InvalidArgument, "example '" + s.name + "' is not a group case");
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> g;
    h.resize(2, 2);
    for (Eigen::Index i = 0; i < 4; ++i) h(i / 2, i % 2) = {g(rng), g(rng)};
    h /= std::sqrt(h.determinant());
  }
  const auto c = momentnum::cartan_decompose(h);
  json r = {{"matrix", num(h)},     {"k1", num(c.k1)},   {"a", num(c.a)}, {"k2", num(c.k2)},
            {"val", num(c.val)},    {"residual", num(c.residual)}};
  if (h.rows() == 2) r["valuation_cone_point"] = num(Eigen::VectorXd(Eigen::VectorXd::Constant(1, c.val[0])));
  return r;
}

json cmd_sample_orbits(const Source& s, const Options& o) {
  if (!s.instance || s.instance->model != examples::NumericModel::TripleSum)
    fail(ErrorKind::InvalidArgument, "sample-orbits needs --example sl2cubed");
  std::mt19937_64 rng(o.seed);
  std::map<std::string, std::size_t> classes;
  std::size_t violations = 0;
  json samples = json::array();
  for (std::size_t i = 0; i < o.count; ++i) {
    const auto smp = examples::sample_sl2cubed_orbit(examples::random_sum_zero_triple(rng));
    const auto& l = smp.lengths;
    const double slack = 1e-12 * (l[0] + l[1] + l[2]);
    if (l[0] > l[1] + l[2] + slack || l[1] > l[0] + l[2] + slack || l[2] > l[0] + l[1] + slack) ++violations;
    ++classes[smp.stratum_class];
    if (i < 20) samples.push_back({{"lengths", {num(l[0]), num(l[1]), num(l[2])}}, {"class", smp.stratum_class}});
  }
  // one constructed triple on every face of the length cone
  const auto rot = examples::random_rotation(rng);
  const std::vector<std::array<double, 3>> faces = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0},
                                                    {1, 2, 3}, {2, 1, 3}, {3, 1, 2}, {2, 3, 4}};
  const char* key[4] = {"vertex", "ray", "facet", "interior"};
  json per_face = json::array();
  std::set<std::string> strata;
  for (const auto& l : faces) {
    const auto smp = examples::sample_sl2cubed_orbit(examples::realize_lengths(l[0], l[1], l[2], rot));
    const auto& fx = s.instance->fixtures.at(std::string("stabilizer_dim.") + key[smp.face_dimension]);
    strata.insert(smp.stratum_class);
    per_face.push_back({{"lengths", {l[0], l[1], l[2]}},
                        {"face_dimension", smp.face_dimension},
                        {"stabilizer_dim", smp.stabilizer_dim},
                        {"lie_nullity", smp.lie_nullity},
                        {"class", smp.stratum_class},
                        {"fixture_stabilizer_dim", fx.value},
                        {"fixture_provenance", fx.provenance},
                        {"agrees_with_fixture", fx.value == std::to_string(smp.stabilizer_dim)}});
  }
  return {{"count", o.count},
          {"triangle_violations", violations},
          {"random_sample_classes", classes},
          {"first_samples", samples},
          {"faces", per_face},
          {"stratum_count", strata.size()},
          {"valuation_cone_faces", polycore::cone_faces(spherical::valuation_cone(s.instance->datum)).size()}};
}

void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "/" + k, rows);
  } else if (j.is_array()) {
    if (j.empty()) rows.emplace_back(path, "[]");
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "/" + std::to_string(i), rows);
  } else {
    rows.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string render(const json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::string out = "path,value\n";
  for (const auto& [p, v] : rows) {
    std::string q = v;
    if (q.find_first_of(",\"\n") != std::string::npos) {
      std::string esc;
      for (char c : q) esc += c == '"' ? std::string("\"\"") : std::string(1, c);
      q = "\"" + esc + "\"";
    }
    out += p + "," + q + "\n";
  }
  return out;
}

void emit(const std::string& text, const Options& o) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write " + o.out);
  f << text;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotToroidal:
    case ErrorKind::IncompleteFan:
    case ErrorKind::FanNotInsideCone:
    case ErrorKind::NotConverged:
      return 2;
    default:
      return 1;
  }
}

int run(const Options& o) {
  json envelope = {{"tool", "sphval"}, {"version", version}, {"command", o.command}, {"seed", o.seed}};
  try {
    const Source s = load(o);
    envelope["source"] = s.name;
    envelope["datum_hash"] = s.hash();
    json result;
    if (o.command == "valcone") result = cmd_valcone(s);
    else if (o.command == "polytope") result = cmd_polytope(s);
    else if (o.command == "orbit-space") result = cmd_orbit_space(s);
    else if (o.command == "stratify") result = cmd_stratify(s);
    else if (o.command == "verify-fan") result = cmd_verify_fan(s);
    else if (o.command == "invert-moment") result = cmd_invert_moment(s, o);
    else if (o.command == "kempf-ness") result = cmd_kempf_ness(s, o);
    else if (o.command == "cartan") result = cmd_cartan(s, o);
    else if (o.command == "sample-orbits") result = cmd_sample_orbits(s, o);
    envelope["status"] = "ok";
    envelope["result"] = result;
    emit(render(envelope, o.format), o);
    return 0;
  } catch (const VerificationFailure& v) {
    envelope["status"] = "verification-failed";
    envelope["result"] = v.report;
    emit(render(envelope, o.format), o);
    return 2;
  } catch (const Error& e) {
    envelope["status"] = "error";
    envelope["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    std::cerr << envelope.dump(2) << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex-geometric invariants and orbit-space models of spherical varieties"};
  app.set_version_flag("--version", std::string("sphval ") + version);
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"valcone", "valuation cone of a datum"},
      {"polytope", "moment polytope and its face lattice"},
      {"orbit-space", "faces kept and removed in the model of X/K"},
      {"stratify", "per-face divisor, parabolic and Levi data"},
      {"verify-fan", "check a fan against the normal fan of Pol (exit 2 on failure)"},
      {"invert-moment", "solve the toric moment map for a point of Pol"},
      {"kempf-ness", "norm minimization on a complex group orbit"},
      {"cartan", "Cartan decomposition of a unimodular matrix"},
      {"sample-orbits", "sample K-orbits of the SL2^3 example and classify stabilizers"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--example", o.example, "named example")
        ->check(CLI::IsMember(examples::example_names()));
    sub->add_option("--input", o.input, "JSON input document");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--tol", o.tol, "residual tolerance");
    sub->add_option("--mu", o.mu, "comma-separated rationals, a point of +Pol");
    sub->add_option("--out", o.out, "write the report to a file");
    sub->add_option("--count", o.count, "number of random samples");
    sub->callback([&o, name = name] { o.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  return run(o);
}
