#include <catch_amalgamated.hpp>

#include <random>

#include "sphval/polycore/fan.hpp"

using namespace sphval;
using namespace sphval::polycore;

namespace {

RatMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  RatMatrix m;
  for (auto r : rows) m.push_back(make_vec(r));
  return m;
}

// brute force: every d-subset of halfspaces with a unique feasible solution
RatMatrix oracle_vertices(const Polytope& p) {
  const auto& hs = p.halfspaces();
  const std::size_t d = p.ambient_rank();
  RatMatrix out;
  std::vector<std::size_t> idx(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == d) {
      RatMatrix a;
      RatVec b;
      for (auto i : idx) {
        a.push_back(hs[i].normal);
        b.push_back(hs[i].offset);
      }
      auto x = solve_unique(a, b, d);
      if (x && p.contains(*x) && std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(*x);
      return;
    }
    for (std::size_t i = start; i < hs.size(); ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// brute force: distinct nonempty vertex sets cut out by subsets of halfspaces
std::set<std::vector<std::size_t>> oracle_faces(const Polytope& p) {
  std::set<std::vector<std::size_t>> faces;
  const std::size_t m = p.halfspaces().size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<std::size_t> verts;
    for (std::size_t v = 0; v < p.vertices().size(); ++v) {
      bool ok = true;
      for (std::size_t i = 0; i < m && ok; ++i)
        if ((mask >> i & 1) && !p.is_tight(i, p.vertices()[v])) ok = false;
      if (ok) verts.push_back(v);
    }
    if (!verts.empty()) faces.insert(verts);
  }
  return faces;
}

Polytope square() {
  return Polytope::from_halfspaces({{make_vec({1, 0}), 0}, {make_vec({0, 1}), 0}, {make_vec({-1, 0}), -1},
                                    {make_vec({0, -1}), -1}},
                                   2);
}

Polytope random_polytope(std::mt19937& rng, std::size_t d) {
  std::uniform_int_distribution<int> coord(-4, 4);
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < d; ++i) {
    hs.push_back({unit_vector(d, i), Rational(-3)});
    hs.push_back({-unit_vector(d, i), Rational(-3)});
  }
  for (int k = 0; k < 3; ++k) {
    RatVec n(d);
    for (auto& x : n) x = coord(rng);
    if (is_zero(n)) continue;
    hs.push_back({n, Rational(coord(rng) - 2)});
  }
  return Polytope::from_halfspaces(hs, d);
}

}  // namespace

TEST_CASE("rational parsing round trip") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(format_rational(parse_rational("-6/4")) == "-3/2");
  CHECK(format_rational(parse_rational("3")) == "3");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("complete_to_lattice_basis") {
  CHECK(complete_to_lattice_basis(mat({{1, 0}}), 2) == mat({{1, 0}, {0, 1}}));
  CHECK(complete_to_lattice_basis(mat({{1, 1}, {0, 1}}), 2) == mat({{1, 1}, {0, 1}}));
  try {
    complete_to_lattice_basis(mat({{2, 0}}), 2);
    FAIL("expected NotExtendable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotExtendable);
  }
  CHECK_THROWS_AS(complete_to_lattice_basis(mat({{1, 0}, {2, 0}}), 2), Error);
}

TEST_CASE("lattice completion is unimodular on random primitive inputs") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(-6, 6);
  int tried = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const std::size_t k = 1 + trial % n;
    RatMatrix v(k, RatVec(n));
    for (auto& row : v)
      for (auto& x : row) x = coord(rng);
    if (rank(v, n) != k) continue;
    // oracle: gcd of the k x k minors equals the saturation index
    Integer g = 0;
    std::vector<std::size_t> cols(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t s, std::size_t d) {
      if (d == k) {
        RatMatrix m(k, RatVec(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = v[i][cols[j]];
        Integer det = determinant(m).get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
        return;
      }
      for (std::size_t c = s; c < n; ++c) {
        cols[d] = c;
        rec(c + 1, d + 1);
      }
    };
    rec(0, 0);
    REQUIRE(saturation_index(v) == g);
    if (g == 1) {
      auto b = complete_to_lattice_basis(v, n);
      REQUIRE(b.size() == n);
      for (std::size_t i = 0; i < k; ++i) CHECK(b[i] == v[i]);
      CHECK(is_integral(b.back()));
      CHECK(abs(determinant(b)) == 1);
      ++tried;
    } else {
      CHECK_THROWS_AS(complete_to_lattice_basis(v, n), Error);
    }
  }
  CHECK(tried > 20);
}

TEST_CASE("cone duality round trip") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coord(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 2 + trial % 3;
    RatMatrix gens(1 + trial % 5, RatVec(d));
    for (auto& g : gens)
      for (auto& x : g) x = coord(rng);
    const Cone c = Cone::from_generators(gens, d);
    for (const auto& g : gens) CHECK(c.contains(g));
    for (const auto& g : c.generators())
      for (const auto& n : c.facet_normals()) CHECK(dot(g, n) >= 0);
    const Cone back = Cone::from_inequalities(c.facet_normals(), c.equations(), d);
    CHECK(back == c);
    CHECK(Cone::from_generators(back.generators(), d) == c);
    // every facet normal is tight on dimension-1 independent generators
    for (const auto& n : c.facet_normals()) {
      RatMatrix tight;
      for (const auto& g : c.generators())
        if (dot(g, n) == 0) tight.push_back(g);
      CHECK(rank(tight, d) + 1 == c.dimension());
    }
  }
}

TEST_CASE("cone faces of the octant") {
  const Cone oct = Cone::from_generators(mat({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}), 3);
  CHECK(cone_faces(oct).size() == 8);
  const Cone half = Cone::from_inequalities(mat({{1, 0}}), {}, 2);
  const auto hf = cone_faces(half);
  REQUIRE(hf.size() == 2);
  CHECK(hf[0].dimension() == 1);
  CHECK_FALSE(hf[0].is_pointed());
}

TEST_CASE("face_lattice small cases") {
  const auto seg = Polytope::from_halfspaces({{make_vec({1}), 0}, {make_vec({-1}), -1}}, 1);
  const auto sf = face_lattice(seg);
  REQUIRE(sf.size() == 3);
  CHECK(sf[0].dimension == 0);
  CHECK(sf[1].dimension == 0);
  CHECK(sf[2].dimension == 1);
  CHECK(sf[2].active.empty());

  const auto tri = Polytope::from_halfspaces({{make_vec({1, 0}), -1}, {make_vec({0, 1}), -1}, {make_vec({-1, -1}), 0}}, 2);
  CHECK(tri.vertices() == mat({{-1, -1}, {-1, 1}, {1, -1}}));
  CHECK(tri.vertices() == oracle_vertices(tri));
  const auto tf = face_lattice(tri);
  REQUIRE(tf.size() == 7);
  CHECK(std::count_if(tf.begin(), tf.end(), [](auto& f) { return f.dimension == 1; }) == 3);

  const auto pt = Polytope::from_halfspaces({}, 0);
  const auto pf = face_lattice(pt);
  REQUIRE(pf.size() == 1);
  CHECK(pf[0].dimension == 0);

  const auto ray = std::vector<Halfspace>{{make_vec({1}), 0}};
  try {
    Polytope::from_halfspaces(ray, 1);
    FAIL("expected Unbounded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unbounded);
  }
  const auto empty = Polytope::from_halfspaces({{make_vec({1}), 1}, {make_vec({-1}), 0}}, 1);
  CHECK(empty.is_empty());
  CHECK(face_lattice(empty).empty());
}

TEST_CASE("face_lattice agrees with brute-force enumeration") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = random_polytope(rng, 2 + trial % 2);
    if (p.is_empty()) continue;
    CHECK(p.vertices() == oracle_vertices(p));
    const auto faces = face_lattice(p);
    const auto expected = oracle_faces(p);
    REQUIRE(faces.size() == expected.size());
    for (const auto& f : faces) {
      CHECK(expected.count(f.vertices) == 1);
      CHECK(f.active == p.active_set(f.relative_interior_point));
      for (std::size_t i = 1; i < faces.size(); ++i) CHECK(faces[i - 1].dimension <= faces[i].dimension);
    }
    // each vertex is the unique solution of its active system
    for (const auto& v : p.vertices()) {
      RatMatrix a;
      RatVec b;
      for (auto i : p.active_set(v)) {
        a.push_back(p.halfspaces()[i].normal);
        b.push_back(p.halfspaces()[i].offset);
      }
      CHECK(a.size() >= p.ambient_rank());
      CHECK(rank(a, p.ambient_rank()) == p.ambient_rank());
    }
  }
}

TEST_CASE("normal_cone minimizing convention") {
  const auto sq = square();
  const auto faces = face_lattice(sq);
  auto find = [&](std::vector<std::size_t> active) {
    for (const auto& f : faces)
      if (f.active == active) return f;
    FAIL("face not found");
    return faces.front();
  };
  CHECK(normal_cone(sq, find({0})) == Cone::from_generators(mat({{1, 0}}), 2));
  CHECK(normal_cone(sq, find({0, 1})) == Cone::from_generators(mat({{1, 0}, {0, 1}}), 2));
  CHECK(normal_cone(sq, faces.back()).is_zero_cone());

  // oracle: a relative-interior functional is minimized exactly on the face
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_polytope(rng, 2 + trial % 2);
    for (const auto& f : face_lattice(p)) {
      const Cone nc = normal_cone(p, f);
      const RatVec v = nc.interior_point();
      Rational best = dot(v, p.vertices().front());
      for (const auto& x : p.vertices()) best = std::min(best, dot(v, x));
      std::vector<std::size_t> argmin;
      for (std::size_t i = 0; i < p.vertices().size(); ++i)
        if (dot(v, p.vertices()[i]) == best) argmin.push_back(i);
      CHECK(argmin == f.vertices);
    }
  }
}

TEST_CASE("normal fan of a full-dimensional polytope is complete") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 8; ++trial) {
    const auto p = random_polytope(rng, 2 + trial % 2);
    if (p.dimension() != static_cast<long>(p.ambient_rank())) continue;
    std::vector<Cone> cones;
    for (const auto& f : face_lattice(p)) cones.push_back(normal_cone(p, f));
    const Fan fan = Fan::from_cones(cones, p.ambient_rank());
    CHECK(fan_covers_cone(fan, Cone::whole(p.ambient_rank())));
  }
}

TEST_CASE("volume via triangulation") {
  CHECK(volume(square()) == 1);
  const auto tri = Polytope::from_vertices(mat({{0, 0}, {2, 0}, {0, 3}}), 2);
  CHECK(volume(tri) == 3);
  const auto cube = Polytope::from_vertices(
      mat({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}), 3);
  CHECK(cube.halfspaces().size() == 6);
  CHECK(volume(cube) == 1);
}

TEST_CASE("is_smooth_simplicial_fan") {
  const Cone oct = Cone::from_generators(mat({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}), 3);
  const auto ok = is_smooth_simplicial_fan(Fan::face_closure({oct}, 3));
  CHECK(ok.ok);
  const auto bad = is_smooth_simplicial_fan(Fan::face_closure({Cone::from_generators(mat({{1, 0}, {1, 2}}), 2)}, 2));
  CHECK_FALSE(bad.ok);
  CHECK(bad.certificate.find("determinant 2") != std::string::npos);
  CHECK(is_smooth_simplicial_fan(Fan(2)).ok);
  const auto overlap = Fan::face_closure(
      {Cone::from_generators(mat({{1, 0}, {0, 1}}), 2), Cone::from_generators(mat({{1, 1}, {0, 1}}), 2)}, 2);
  CHECK_FALSE(is_smooth_simplicial_fan(overlap).ok);
}

TEST_CASE("fan_covers_cone") {
  const Cone oct = Cone::from_generators(mat({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}), 3);
  CHECK(fan_covers_cone(Fan::face_closure({oct}, 3), oct));
  const Cone quad = Cone::from_generators(mat({{1, 0}, {0, 1}}), 2);
  const Fan split = Fan::face_closure(
      {Cone::from_generators(mat({{1, 0}, {1, 1}}), 2), Cone::from_generators(mat({{1, 1}, {0, 1}}), 2)}, 2);
  CHECK(fan_covers_cone(split, quad));
  CHECK_FALSE(fan_covers_cone(Fan::face_closure({Cone::from_generators(mat({{1, 1}}), 2)}, 2), quad));
  CHECK(fan_covers_cone(Fan(0), Cone::zero(0)));
  try {
    fan_covers_cone(Fan::face_closure({Cone::from_generators(mat({{-1, 0}}), 2)}, 2), quad);
    FAIL("expected FanNotInsideCone");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FanNotInsideCone);
  }
  // lower-dimensional target cone measured in its own span
  const Cone plane_quad = Cone::from_generators(mat({{1, 0, 1}, {0, 1, 1}}), 3);
  const Fan plane_split = Fan::face_closure({Cone::from_generators(mat({{1, 0, 1}, {1, 1, 2}}), 3),
                                             Cone::from_generators(mat({{1, 1, 2}, {0, 1, 1}}), 3)},
                                            3);
  CHECK(fan_covers_cone(plane_split, plane_quad));
}
