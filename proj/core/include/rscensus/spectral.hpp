#pragma once

#include <cstdint>
#include <optional>

#include "rscensus/numeric.hpp"
#include "rscensus/word.hpp"

namespace rsc {

/// Subsets of {1..k} as bitmasks: bit i-1 stands for index i.
struct SubsetPair {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
};

inline constexpr std::uint32_t kDefaultSubsetPairLimit = 12;
inline constexpr std::uint32_t kMaxFastTraceK = 30;

/// Sign attached to the pair (i, j), 1 <= i, j <= k.
///
/// -1 to the power of how many of j = i and j = i+1 hold, both read modulo k
/// (index k+1 wraps to 1) and counted with multiplicity. So k = 1 gives +1,
/// k = 2 gives -1 everywhere, and for k >= 3 the sign is -1 exactly when
/// j is i or its cyclic successor. This is the reading under which the entry
/// formulas reproduce direct matrix products.
int sigma_sign(std::uint32_t k, std::uint32_t i, std::uint32_t j);

/// 2^(-k + sum_{i in A} alpha_i) * 3^(sum_{j in B} beta_j) * prod_{i not in A, j in B} sigma_ij
Rational sigma_term(const Word& w, SubsetPair p);

struct UQuadruple {
  Rational u00, u10, u01, u11;

  Rational sum() const { return u00 + u10 + u01 + u11; }
  friend bool operator==(const UQuadruple&, const UQuadruple&) = default;
};

/// Sums sigma_term over the four classes of subset pairs split by whether
/// k is in A (first index) and whether 1 is in B (second index). 4^k terms;
/// throws SizeLimit when k > size_limit.
UQuadruple u_quantities(const Word& w, std::uint32_t size_limit = kDefaultSubsetPairLimit);

/// [u00 + u01 - u10 + u11, u11 - u10; 2 u10 - 2 u00, 2 u10]. Throws
/// NonIntegerEntry if any entry fails to be an integer.
Mat2 entries_from_u(const UQuadruple& q);

/// Trace as the sum of sigma_term over all of P_k x P_k (reference path).
Integer trace_subsetpair(const Word& w, std::uint32_t size_limit = kDefaultSubsetPairLimit);

/// Trace via the 2^k-term form
///   2^-k sum_B 3^(sum_{i in B} beta_i) prod_{j in B'} (2^alpha_j - 1) prod_{j not in B'} (2^alpha_j + 1)
/// with B' the symmetric difference of B and its cyclic shift {i - 1 : i in B}.
Integer trace_fast(const Word& w);

struct BoundsWitness {
  Integer det;
  Integer scaled_trace;  // 2^k tr
  Integer upper;         // prod (1 + 3^beta_i)(1 + 2^alpha_i)
  bool lhs_ok = false;   // det <= 2^k tr
  bool rhs_ok = false;   // 2^k tr <= upper
};

BoundsWitness bounds_check(const Word& w);

/// Both exclusion conditions evaluated at a candidate threshold n, i.e. for
/// all exponents equal to n + 1.
struct NkConditions {
  std::uint32_t n = 0;
  Rational eigen_floor;      // 2^k prod_i 6^(n+1) / ((2^(n+1)+1)(3^(n+1)+1))
  Integer eigen_threshold;   // 2^k - 1
  bool eigen_ok = false;     // eigen_floor > eigen_threshold
  Integer det_floor;         // 6^(k(n+1))
  Integer det_bound;         // (4^k + 2^k)^2
  bool det_ok = false;       // det_floor > det_bound
};

NkConditions nk_conditions(std::uint32_t k, std::uint32_t n);

/// Minimal n for which both conditions hold: any word of length k whose
/// exponents all exceed n has no integer eigenvalues.
struct NkCertificate {
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  NkConditions at_n;
  std::optional<NkConditions> below;  // n - 1, where some condition fails
};

NkCertificate compute_nk(std::uint32_t k);

/// True only when every exponent of w exceeds cert.n. Throws KMismatch when
/// the word length differs from cert.k.
bool prefilter_excludes(const Word& w, const NkCertificate& cert);

/// 1 - (M - N)^(2k) / ((M+1)^2 M^(2k-2)), the density upper bound; only
/// meaningful for M > N.
Rational density_upper_bound(std::uint32_t k, Exponent max_exponent, std::uint32_t nk);

}  // namespace rsc
