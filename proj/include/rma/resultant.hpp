#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rma/gcd.hpp"
#include "rma/mpoly.hpp"
#include "rma/upoly.hpp"

namespace rma {

// Sylvester matrix of A and B: (dA+dB) square, coefficient rows of A shifted
// dB times, then rows of B shifted dA times.  Its determinant is res(A, B).
inline std::vector<std::vector<MPoly>> sylvester_matrix(const UPolyM& A,
                                                        const UPolyM& B,
                                                        std::size_t arity) {
  int dA = A.degree(), dB = B.degree();
  if (dA < 0 || dB < 0) throw DomainError("Sylvester matrix of zero polynomial");
  std::size_t n = static_cast<std::size_t>(dA + dB);
  std::vector<std::vector<MPoly>> M(n, std::vector<MPoly>(n, MPoly::zero(arity)));
  for (int r = 0; r < dB; ++r)
    for (int k = 0; k <= dA; ++k)
      M[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + dA - k)] =
          A[static_cast<std::size_t>(k)];
  for (int r = 0; r < dA; ++r)
    for (int k = 0; k <= dB; ++k)
      M[static_cast<std::size_t>(dB + r)][static_cast<std::size_t>(r + dB - k)] =
          B[static_cast<std::size_t>(k)];
  return M;
}

// Fraction-free Gaussian elimination (one-step Bareiss).  All divisions are
// exact; intermediate entries are minors of the input matrix.
inline MPoly bareiss_det(std::vector<std::vector<MPoly>> M, std::size_t arity) {
  std::size_t n = M.size();
  if (n == 0) return MPoly::constant(arity, ExactRational(1));
  int sign = 1;
  MPoly prev = MPoly::constant(arity, ExactRational(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && M[p][k].is_zero()) ++p;
      if (p == n) return MPoly::zero(arity);
      std::swap(M[k], M[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]).exact_divide(prev);
      }
      M[i][k] = MPoly::zero(arity);
    }
    prev = M[k][k];
  }
  MPoly det = M[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

namespace detail {

// Subresultant-PRS resultant for primitive inputs with deg A >= deg B >= 1
// (Cohen, alg. 3.3.7 without the content bookkeeping, which the caller has
// already stripped).
inline MPoly prs_resultant(UPolyM A, UPolyM B, std::size_t arity) {
  const MPoly one = MPoly::constant(arity, ExactRational(1));
  MPoly g = one, h = one;
  int s = 1;
  for (;;) {
    int delta = A.degree() - B.degree();
    if ((A.degree() % 2 == 1) && (B.degree() % 2 == 1)) s = -s;
    UPolyM R = UPolyM::prem(A, B);
    A = std::move(B);
    if (R.is_zero()) return MPoly::zero(arity);  // common factor
    B = R.scale_divided(g * h.pow(static_cast<unsigned>(delta)));
    g = A.lc();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = g.pow(static_cast<unsigned>(delta))
              .exact_divide(h.pow(static_cast<unsigned>(delta - 1)));
    }
    if (B.degree() == 0) break;
  }
  // A carries the last positive degree e; B is a nonzero constant.
  unsigned e = static_cast<unsigned>(A.degree());
  MPoly out = B.lc().pow(e);
  if (e > 1) out = out.exact_divide(h.pow(e - 1));
  return s < 0 ? -out : out;
}

}  // namespace detail

// Degree threshold separating the two resultant strategies: the Sylvester
// determinant route is used when both degrees are at most this bound.
inline constexpr int kBareissResultantMaxDegree = 8;

// Exact resultant of two univariate views (coefficients in the remaining
// variables).  Small degrees go through a fraction-free Sylvester
// determinant; larger ones through the subresultant PRS.
inline MPoly resultant_upoly(const UPolyM& a, const UPolyM& b, std::size_t arity) {
  if (a.is_zero() || b.is_zero()) return MPoly::zero(arity);
  int dA = a.degree(), dB = b.degree();
  if (dA == 0) return a.lc().pow(static_cast<unsigned>(dB));
  if (dB == 0) return b.lc().pow(static_cast<unsigned>(dA));

  // res(c*A, B) = c^degB * res(A, B); stripping contents keeps both
  // strategies small and is required by the PRS algorithm.
  MPoly ca = upoly_content(a, arity);
  MPoly cb = upoly_content(b, arity);
  UPolyM A = a.scale_divided(ca);
  UPolyM B = b.scale_divided(cb);
  MPoly factor = ca.pow(static_cast<unsigned>(dB)) * cb.pow(static_cast<unsigned>(dA));

  int sign_swap = 1;
  if (A.degree() < B.degree()) {
    std::swap(A, B);
    if ((dA % 2 == 1) && (dB % 2 == 1)) sign_swap = -1;
  }

  MPoly core;
  if (std::max(dA, dB) <= kBareissResultantMaxDegree) {
    core = bareiss_det(sylvester_matrix(A, B, arity), arity);
  } else {
    core = detail::prs_resultant(A, B, arity);
  }
  MPoly out = factor * core;
  return sign_swap < 0 ? -out : out;
}

// Resultant of p and q eliminating `var`; the result does not involve var.
inline MPoly resultant_in(const MPoly& p, const MPoly& q, std::size_t var) {
  if (p.arity() != q.arity()) throw StructuralError("resultant arity mismatch");
  return resultant_upoly(to_upoly_in(p, var), to_upoly_in(q, var), p.arity());
}

}  // namespace rma
