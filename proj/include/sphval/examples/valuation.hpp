#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "sphval/examples/laurent.hpp"

namespace sphval::examples {

/// Which subgroup of SL2 a factor of the generic group element is drawn from.
enum class Shape { Generic, Upper, Lower };

/// Integer entries in [-7, 7], then one entry solved for determinant 1.
inline RatMatrix sample_sl2(std::mt19937_64& rng, Shape shape) {
  std::uniform_int_distribution<int> u(-7, 7);
  auto nonzero = [&] {
    int x = 0;
    while (x == 0) x = u(rng);
    return Rational(x);
  };
  const Rational a = nonzero();
  switch (shape) {
    case Shape::Upper: return {{a, Rational(u(rng))}, {Rational(0), 1 / a}};
    case Shape::Lower: return {{a, Rational(0)}, {Rational(u(rng)), 1 / a}};
    case Shape::Generic: break;
  }
  const Rational b = nonzero(), c = nonzero();
  return {{a, b}, {c, (1 + b * c) / a}};
}

/// Component j of g.x is g[left] x_j g[right]^{-1}; an absent side is the identity.
struct BiAction {
  struct Slot {
    std::optional<std::size_t> left, right;
  };
  std::vector<Slot> slots;

  std::vector<LaurentMatrix> apply(const std::vector<RatMatrix>& g, const std::vector<LaurentMatrix>& x) const {
    if (x.size() != slots.size()) fail(ErrorKind::InvalidArgument, "curve has the wrong number of components");
    std::vector<LaurentMatrix> out;
    for (std::size_t j = 0; j < x.size(); ++j) {
      LaurentMatrix y = x[j];
      if (slots[j].left) y = lift(g.at(*slots[j].left)) * y;
      if (slots[j].right) y = y * lift(inverse_rational2(g.at(*slots[j].right)));
      out.push_back(std::move(y));
    }
    return out;
  }
};

using CurvePolynomial = std::function<LaurentScalar(const std::vector<LaurentMatrix>&)>;

/// Entry (r, c) of component j.
inline CurvePolynomial entry(std::size_t j, std::size_t r, std::size_t c) {
  return [=](const std::vector<LaurentMatrix>& x) { return x.at(j).at(r).at(c); };
}

struct ValuationQuery {
  CurvePolynomial f;
  std::vector<LaurentMatrix> curve;  // x(t)
  BiAction action;
  std::vector<Shape> shapes;         // one per group factor
  long rescale = 1;                  // the curve is parametrized by s with t = s^rescale
};

struct ValuationResult {
  Rational order;
  std::vector<std::optional<long>> samples;  // per generic g; empty when f vanished
};

/// ord_{t=0} f(g . x(t)) for three independent generic g, majority vote.
/// Throws IdenticallyZero or NonGeneric.
inline ValuationResult valuation_from_curve(const ValuationQuery& q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ValuationResult out;
  for (int s = 0; s < 3; ++s) {
    std::vector<RatMatrix> g;
    for (auto shape : q.shapes) g.push_back(sample_sl2(rng, shape));
    const LaurentScalar val = q.f(q.action.apply(g, q.curve));
    out.samples.push_back(val.is_zero() ? std::nullopt : std::optional<long>(val.order()));
  }
  if (std::none_of(out.samples.begin(), out.samples.end(), [](const auto& o) { return o.has_value(); }))
    fail(ErrorKind::IdenticallyZero, "function vanishes along the whole curve family");
  for (const auto& cand : out.samples) {
    if (!cand) continue;
    if (std::count(out.samples.begin(), out.samples.end(), cand) >= 2) {
      out.order = Rational(*cand) / q.rescale;
      return out;
    }
  }
  fail(ErrorKind::NonGeneric, "generic samples disagree on the order of vanishing");
}

}  // namespace sphval::examples
