#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sphval/examples/valuation.hpp"
#include "sphval/momentnum/representation.hpp"
#include "sphval/momentnum/toric.hpp"
#include "sphval/spherical/pipeline.hpp"

namespace sphval::examples {

using polycore::Cone;
using polycore::Fan;
using polycore::make_vec;
using polycore::Polytope;
using polycore::RatVec;
using polycore::operator+;
using polycore::operator-;
using polycore::operator*;
using spherical::DivisorRecord;
using spherical::RootSystemLink;
using spherical::SphericalDatum;

/// A reference value together with where it comes from ("literature", "derived", "symmetry").
struct Fixture {
  std::string value;
  std::string provenance;
};

/// How the orbit space is realized numerically.
enum class NumericModel { None, Toric, Compact, MatrixGroup, TripleSum };

struct ExampleInstance {
  std::string name;
  SphericalDatum datum;
  Fan fan{0};
  NumericModel model = NumericModel::None;
  std::optional<momentnum::WeightedVector> weights;
  std::optional<momentnum::CompactRepresentation> representation;
  std::map<std::string, Fixture> fixtures;
};

namespace detail {

inline Fan ray_cones(const std::vector<RatMatrix>& cones, std::size_t rank) {
  std::vector<Cone> cs;
  for (const auto& g : cones) cs.push_back(Cone::from_generators(g, rank));
  return Fan::face_closure(cs, rank);
}

inline Fan normal_fan(const Polytope& p) {
  std::vector<Cone> cs;
  for (const auto& f : polycore::face_lattice(p)) {
    Cone nc = polycore::normal_cone(p, f);
    if (!nc.is_zero_cone()) cs.push_back(std::move(nc));
  }
  return Fan::from_cones(std::move(cs), p.ambient_rank());
}

}  // namespace detail

/// Rank-2 test datum: one spherical root, two colors, one G-stable divisor.
inline ExampleInstance build_toy() {
  ExampleInstance ex;
  ex.name = "toy";
  auto& d = ex.datum;
  d.name = "toy";
  d.rank = 2;
  d.spherical_roots = {make_vec({1, 1})};
  d.kappa = make_vec({0, 0});
  d.divisors = {{"D1", make_vec({1, 0}), 1, false}, {"D2", make_vec({0, 1}), 1, false}, {"E", make_vec({-1, -1}), 0, true}};
  d.root_link = RootSystemLink{rootsys::RootSystem::a1_product(2), {make_vec({1, 0}), make_vec({0, 1})}, make_vec({0, 0})};
  d.validate();
  ex.fan = detail::ray_cones({{make_vec({-1, -1})}}, 2);
  return ex;
}

/// SU(2) acting on P^1: rank 0, one orbit.
inline ExampleInstance build_flag() {
  ExampleInstance ex;
  ex.name = "flag";
  auto& d = ex.datum;
  d.name = "flag";
  d.rank = 0;
  d.root_link = RootSystemLink{rootsys::RootSystem::a1_product(1), {RatVec{}}, make_vec({1})};
  d.validate();
  ex.model = NumericModel::Compact;
  ex.representation = momentnum::sun_defining(2);
  ex.fixtures["orbits"] = {"K acts transitively; X/K is a point", "literature"};
  ex.fixtures["stabilizer_dim"] = {"1", "derived"};
  return ex;
}

/// Projective toric variety of a weighted vector. Pol is the hull of the negated weights.
/// Throws DegenerateHull when the hull is neither full-dimensional nor a point.
inline ExampleInstance build_toric(const RatMatrix& weights, const std::vector<double>& amplitudes,
                                   const std::string& name = "toric") {
  if (weights.empty()) fail(ErrorKind::DegenerateHull, "no weights");
  const std::size_t r = weights[0].size();
  ExampleInstance ex;
  ex.name = name;
  ex.model = NumericModel::Toric;
  ex.weights = momentnum::WeightedVector(weights, amplitudes);
  ex.representation = momentnum::torus_representation(weights);
  auto& d = ex.datum;
  d.name = name;
  RatMatrix neg;
  for (const auto& w : weights) neg.push_back(-w);
  const Polytope hull = Polytope::from_vertices(neg, r);
  if (hull.dimension() == 0) {
    d.rank = 0;
    d.root_link = RootSystemLink{rootsys::RootSystem::torus(r), RatMatrix(r, RatVec{}), hull.vertices()[0]};
    d.validate();
    ex.fixtures["orbit_space"] = {"single point", "derived"};
    return ex;
  }
  if (hull.dimension() != static_cast<long>(r)) fail(ErrorKind::DegenerateHull, "weight hull is not full-dimensional");
  d.rank = r;
  const RatVec origin = polycore::zeros(r);
  d.kappa = hull.contains(origin) ? origin : hull.vertices()[0];
  std::size_t idx = 0;
  const Polytope facets = hull.irredundant();
  for (const auto& h : facets.halfspaces()) {
    const RatVec v = polycore::primitive(h.normal);
    Rational offset = polycore::dot(v, hull.vertices()[0]);
    for (const auto& p : hull.vertices()) offset = std::min(offset, polycore::dot(v, p));
    d.divisors.push_back({"F" + std::to_string(++idx), v, polycore::dot(v, d.kappa) - offset, true});
  }
  RatMatrix id;
  for (std::size_t i = 0; i < r; ++i) id.push_back(polycore::unit_vector(r, i));
  d.root_link = RootSystemLink{rootsys::RootSystem::torus(r), id, d.kappa};
  d.validate();
  ex.fan = detail::normal_fan(spherical::moment_polytope(d));
  ex.fixtures["moment_polytope"] = {"convex hull of the negated weights", "literature"};
  return ex;
}

inline ExampleInstance build_toric_segment() {
  return build_toric({make_vec({0}), make_vec({1})}, {1.0, 1.0}, "toric-segment");
}

inline ExampleInstance build_toric_square() {
  return build_toric({make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1}), make_vec({1, 1})}, {1.0, 1.0, 1.0, 1.0},
                     "toric-square");
}

/// SL2/U inside the blow-up of P^2 at the origin.
inline ExampleInstance build_horospherical() {
  ExampleInstance ex;
  ex.name = "horospherical";
  auto& d = ex.datum;
  d.name = "horospherical";
  d.rank = 1;
  d.kappa = make_vec({0});
  d.divisors = {{"D", make_vec({1}), 1, false}, {"E0", make_vec({1}), 0, true}, {"Einf", make_vec({-1}), 1, true}};
  d.root_link = RootSystemLink{rootsys::RootSystem::a1_product(1), {make_vec({1})}, make_vec({0})};
  d.validate();
  ex.fan = detail::ray_cones({{make_vec({1})}, {make_vec({-1})}}, 1);
  ex.fixtures["valuation_cone"] = {"whole space", "literature"};
  return ex;
}

/// SU(2) on P(Sym^2 C^2); the open orbit is SL2/N(T).
inline ExampleInstance build_sym2() {
  ExampleInstance ex;
  ex.name = "sym2";
  auto& d = ex.datum;
  d.name = "sym2";
  d.rank = 1;
  d.spherical_roots = {make_vec({1})};
  d.kappa = make_vec({0});
  d.divisors = {{"D", make_vec({2}), 1, false}, {"C", make_vec({-1}), 0, true}};
  d.root_link = RootSystemLink{rootsys::RootSystem::a1_product(1), {make_vec({4})}, make_vec({2})};
  d.validate();
  ex.fan = detail::ray_cones({{make_vec({-1})}}, 1);
  ex.model = NumericModel::Compact;
  ex.representation = momentnum::su2_symmetric_power(2);
  return ex;
}

/// Order of x11 along the two boundary curves of SL2 as a G x G variety, B = B^- x B.
struct GroupCaseValuations {
  ValuationResult color;     // x11 = 0
  ValuationResult boundary;  // det = 0 at infinity
};

inline GroupCaseValuations sl2_group_valuations(std::uint64_t seed) {
  BiAction act{{{0, 1}}};
  const CurvePolynomial x11 = entry(0, 0, 0);
  GroupCaseValuations out;
  out.color = valuation_from_curve(
      {x11, {lmat({{LaurentScalar::t(), 1}, {-1, 0}})}, act, {Shape::Lower, Shape::Upper}}, seed);
  out.boundary = valuation_from_curve(
      {x11, {lmat({{LaurentScalar::t(-1), 0}, {0, LaurentScalar::t()}})}, act, {Shape::Generic, Shape::Generic}},
      seed + 1);
  return out;
}

/// SL2 as a symmetric space of SL2 x SL2, compactified in the projective quadric.
inline ExampleInstance build_sl2_group(std::uint64_t seed = 7) {
  const auto vals = sl2_group_valuations(seed);
  ExampleInstance ex;
  ex.name = "sl2-group";
  auto& d = ex.datum;
  d.name = "sl2-group";
  d.rank = 1;
  d.spherical_roots = {make_vec({1})};
  d.kappa = make_vec({0});
  d.divisors = {{"D", RatVec{vals.color.order}, 0, false}, {"Dinf", RatVec{vals.boundary.order}, 1, true}};
  d.root_link = RootSystemLink{rootsys::RootSystem::a1_product(2), {make_vec({-1}), make_vec({1})}, make_vec({0, 0})};
  d.validate();
  ex.fan = detail::ray_cones({{d.divisors[1].v}}, 1);
  ex.model = NumericModel::MatrixGroup;
  ex.fixtures["valuation_cone"] = {"negative Weyl chamber of the A1 system", "literature"};
  ex.fixtures["divisor.D"] = {polycore::format_rational(vals.color.order), "derived"};
  ex.fixtures["divisor.Dinf"] = {polycore::format_rational(vals.boundary.order), "derived"};
  return ex;
}

/// Coroots of SL2^3 in the dual of the lattice spanned by w1+w2, w1+w3, w2+w3.
inline RatMatrix sl2cubed_coroots() { return {make_vec({1, 1, 0}), make_vec({1, 0, 1}), make_vec({0, 1, 1})}; }

/// Coefficients c with rho = sum c_i alpha_i^vee.
inline RatVec sl2cubed_coroot_coordinates(const RatVec& rho) {
  return *polycore::solve_unique(polycore::transpose(sl2cubed_coroots(), 3), rho, 3);
}

/// SL2^3 acting on triples with x1 x2 x3 = 1. With blowup = true the octant fan is
/// subdivided by the ray -(a1v + a2v + a3v)/2 and the ample divisor rescaled.
inline ExampleInstance build_sl2cubed(bool blowup = false) {
  ExampleInstance ex;
  ex.name = blowup ? "sl2cubed-blowup" : "sl2cubed";
  auto& d = ex.datum;
  d.name = ex.name;
  d.rank = 3;
  d.spherical_roots = {make_vec({1, 1, -1}), make_vec({1, -1, 1}), make_vec({-1, 1, 1})};
  d.kappa = make_vec({0, 0, 0});
  const Rational mb = blowup ? 4 : 1;
  d.divisors = {{"D12", make_vec({1, 0, 0}), 0, false},  {"D13", make_vec({0, 1, 0}), 0, false},
                {"D23", make_vec({0, 0, 1}), 0, false},  {"D1", make_vec({-1, -1, 0}), mb, true},
                {"D2", make_vec({-1, 0, -1}), mb, true}, {"D3", make_vec({0, -1, -1}), mb, true}};
  if (blowup) d.divisors.push_back({"E0", make_vec({-1, -1, -1}), 5, true});
  d.root_link = RootSystemLink{rootsys::RootSystem::a1_product(3),
                               {make_vec({1, 1, 0}), make_vec({1, 0, 1}), make_vec({0, 1, 1})}, make_vec({0, 0, 0})};
  d.validate();
  const RatVec r1 = make_vec({-1, -1, 0}), r2 = make_vec({-1, 0, -1}), r3 = make_vec({0, -1, -1});
  if (blowup) {
    const RatVec e0 = make_vec({-1, -1, -1});
    ex.fan = detail::ray_cones({{r1, r2, e0}, {r1, r3, e0}, {r2, r3, e0}}, 3);
  } else {
    ex.fan = detail::ray_cones({{r1, r2, r3}}, 3);
  }
  ex.model = NumericModel::TripleSum;
  auto& fx = ex.fixtures;
  fx["valuation_cone"] = {"negative Weyl chamber", "literature"};
  fx["satellite.vertex"] = {"H = diagonal SL2; compact part SU2; dim 3", "literature"};
  fx["satellite.ray"] = {"g_i lower [[s,0],[*,1/s]], g_j = g_k upper [[s,*],[0,1/s]]; compact part U1; dim 1",
                         "literature"};
  fx["satellite.facet"] = {"g_i lower, g_j upper, g_k = diag(s,1/s); compact part U1; dim 1", "literature"};
  fx["satellite.interior"] = {"most degenerate; g1 = g2 = g3 = +-1 on the compact part; dim 0", "literature"};
  fx["stabilizer_dim.vertex"] = {"3", "literature"};
  fx["stabilizer_dim.ray"] = {"1", "literature"};
  fx["stabilizer_dim.facet"] = {"1", "literature"};
  fx["stabilizer_dim.interior"] = {"0", "literature"};
  return ex;
}

/// x_i = 1, x_{i+1} = diag(t, 1/t), x_{i+2} = diag(1/t, t), indices cyclic.
inline std::vector<LaurentMatrix> sl2cubed_boundary_curve(std::size_t i) {
  std::vector<LaurentMatrix> x(3);
  x[i] = lmat({{1, 0}, {0, 1}});
  x[(i + 1) % 3] = lmat({{LaurentScalar::t(), 0}, {0, LaurentScalar::t(-1)}});
  x[(i + 2) % 3] = lmat({{LaurentScalar::t(-1), 0}, {0, LaurentScalar::t()}});
  return x;
}

/// Curve meeting the color f_ij = 0 transversally; k is the third index.
inline std::vector<LaurentMatrix> sl2cubed_color_curve(std::size_t k) {
  std::vector<LaurentMatrix> x(3);
  x[k] = lmat({{1, 1}, {LaurentScalar::t(), 1 + LaurentScalar::t()}});
  x[(k + 1) % 3] = lmat({{0, 1}, {-1, 0}});
  x[(k + 2) % 3] = inverse_sl2(x[k] * x[(k + 1) % 3]);
  return x;
}

/// g . x = (g2 x1 g3^-1, g3 x2 g1^-1, g1 x3 g2^-1).
inline BiAction sl2cubed_action() { return BiAction{{{1, 2}, {2, 0}, {0, 1}}}; }

/// f_ij is the lower-left entry of x_k; ordered f12, f13, f23.
inline std::vector<CurvePolynomial> sl2cubed_functions() { return {entry(2, 1, 0), entry(1, 1, 0), entry(0, 1, 0)}; }

/// Orders of f12, f13, f23 along a curve, i.e. the vector of the divisor in lattice coordinates.
inline std::vector<ValuationResult> sl2cubed_valuation(const std::vector<LaurentMatrix>& curve, Shape shape,
                                                       std::uint64_t seed) {
  std::vector<ValuationResult> out;
  std::uint64_t s = seed;
  for (const auto& f : sl2cubed_functions())
    out.push_back(valuation_from_curve({f, curve, sl2cubed_action(), {shape, shape, shape}}, s++));
  return out;
}

inline std::vector<std::string> example_names() {
  return {"flag", "toric-segment", "toric-square", "horospherical", "sl2-group", "sym2", "sl2cubed",
          "sl2cubed-blowup", "toy"};
}

inline ExampleInstance build_example(const std::string& name) {
  if (name == "flag") return build_flag();
  if (name == "toric-segment") return build_toric_segment();
  if (name == "toric-square") return build_toric_square();
  if (name == "horospherical") return build_horospherical();
  if (name == "sl2-group") return build_sl2_group();
  if (name == "sym2") return build_sym2();
  if (name == "sl2cubed") return build_sl2cubed(false);
  if (name == "sl2cubed-blowup") return build_sl2cubed(true);
  if (name == "toy") return build_toy();
  fail(ErrorKind::InvalidArgument, "unknown example '" + name + "'");
}

}  // namespace sphval::examples
