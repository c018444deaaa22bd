#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "rma/prng.hpp"
#include "rma/rational.hpp"

namespace rma {

using Point = std::vector<ExactRational>;

// Integer lattice [-radius, radius]^arity ordered by (L1 norm, lex).  The
// ordering makes falsification witnesses deterministic and small: the first
// failing point reported is the lexicographically least among those of
// minimal L1 norm.
inline std::vector<Point> lattice_points(std::size_t arity, long radius) {
  if (radius < 0) throw DomainError("lattice radius must be nonnegative");
  std::vector<std::vector<long>> raw;
  std::vector<long> cur(arity, 0);
  const auto enumerate = [&](auto&& self, std::size_t i) -> void {
    if (i == arity) {
      raw.push_back(cur);
      return;
    }
    for (long v = -radius; v <= radius; ++v) {
      cur[i] = v;
      self(self, i + 1);
    }
  };
  enumerate(enumerate, 0);
  std::sort(raw.begin(), raw.end(),
            [](const std::vector<long>& a, const std::vector<long>& b) {
              long na = 0, nb = 0;
              for (long v : a) na += v < 0 ? -v : v;
              for (long v : b) nb += v < 0 ? -v : v;
              if (na != nb) return na < nb;
              return a < b;
            });
  std::vector<Point> pts;
  pts.reserve(raw.size());
  for (const auto& r : raw) {
    Point p;
    p.reserve(arity);
    for (long v : r) p.emplace_back(v);
    pts.push_back(std::move(p));
  }
  return pts;
}

// Lattice sweep followed by seeded rational points, for falsification-style
// searches: exhaustive small integers first, then random rationals.
inline std::vector<Point> falsification_points(std::size_t arity, long radius,
                                               std::size_t random_count,
                                               Sampler& sampler) {
  std::vector<Point> pts;
  if (arity <= 3) {
    pts = lattice_points(arity, radius);
  } else {
    pts = lattice_points(arity, std::min(radius, 2L));
  }
  for (std::size_t i = 0; i < random_count; ++i)
    pts.push_back(sampler.next_point(arity));
  return pts;
}

}  // namespace rma
