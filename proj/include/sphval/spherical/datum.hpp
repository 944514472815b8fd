#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sphval/polycore/linalg.hpp"
#include "sphval/rootsys/rootsys.hpp"

namespace sphval::spherical {

using polycore::RatMatrix;
using polycore::RatVec;
using polycore::Rational;
using polycore::operator+;
using polycore::operator-;
using polycore::operator*;

struct DivisorRecord {
  std::string label;
  RatVec v;    // integer vector in the dual lattice
  Rational m;  // multiplicity in the ample divisor
  bool g_stable = false;
};

/// Links lattice coordinates to the character space of a root system:
/// chi(mu) = kappa_character + embedding * (mu - kappa).
struct RootSystemLink {
  rootsys::RootSystem root_system = rootsys::RootSystem::torus(0);
  RatMatrix embedding;  // ambient rows x rank columns
  RatVec kappa_character;
};

struct SphericalDatum {
  std::string name;
  std::size_t rank = 0;
  RatMatrix spherical_roots;
  RatVec kappa;
  std::vector<DivisorRecord> divisors;
  std::optional<RootSystemLink> root_link;

  std::optional<std::size_t> divisor_index(const std::string& label) const {
    for (std::size_t i = 0; i < divisors.size(); ++i)
      if (divisors[i].label == label) return i;
    return std::nullopt;
  }

  RatVec character_point(const RatVec& mu) const {
    if (!root_link) fail(ErrorKind::MissingRootSystem, "datum '" + name + "' has no root system link");
    return root_link->kappa_character + polycore::apply(root_link->embedding, mu - kappa);
  }

  /// Throws InvalidArgument on the first violated construction invariant.
  void validate() const {
    auto bad = [&](const std::string& msg) { fail(ErrorKind::InvalidArgument, "datum '" + name + "': " + msg); };
    if (kappa.size() != rank) bad("kappa has length " + std::to_string(kappa.size()) + ", expected " + std::to_string(rank));
    for (const auto& s : spherical_roots) {
      if (s.size() != rank) bad("spherical root of wrong length");
      if (!polycore::is_integral(s) || polycore::is_zero(s)) bad("spherical roots must be nonzero integer vectors");
    }
    if (polycore::rank(spherical_roots, rank) != spherical_roots.size()) bad("spherical roots are linearly dependent");
    std::set<std::string> labels;
    for (const auto& d : divisors) {
      if (!labels.insert(d.label).second) bad("duplicate divisor label '" + d.label + "'");
      if (d.v.size() != rank) bad("divisor '" + d.label + "' has a vector of wrong length");
      if (!polycore::is_integral(d.v)) bad("divisor '" + d.label + "' has a non-integer vector");
      if (sgn(d.m) < 0 || !polycore::is_integer(d.m)) bad("divisor '" + d.label + "' needs a nonnegative integer m");
      if (d.g_stable)
        for (const auto& s : spherical_roots)
          if (sgn(polycore::dot(d.v, s)) > 0) bad("G-stable divisor '" + d.label + "' lies outside the valuation cone");
    }
    if (root_link) {
      const std::size_t amb = root_link->root_system.rank();
      if (root_link->embedding.size() != amb) bad("embedding needs one row per character coordinate");
      for (const auto& row : root_link->embedding)
        if (row.size() != rank) bad("embedding rows must have the lattice rank as length");
      if (root_link->kappa_character.size() != amb) bad("kappa_character has the wrong length");
    }
  }
};

}  // namespace sphval::spherical
