#include "rscensus/spectral.hpp"

#include <bit>
#include <string>
#include <vector>

#include "rscensus/error.hpp"

namespace rsc {

namespace {

void check_size(const Word& w, std::uint32_t size_limit) {
  if (w.k() > size_limit || w.k() > 31) {
    throw Error(ErrorCode::SizeLimit, "k = " + std::to_string(w.k()) +
                                          " exceeds the subset-pair limit " +
                                          std::to_string(size_limit));
  }
}

// negative[i] has bit j set when sigma_{i+1, j+1} = -1.
std::vector<std::uint32_t> negative_masks(std::uint32_t k) {
  std::vector<std::uint32_t> masks(k, 0);
  for (std::uint32_t i = 1; i <= k; ++i) {
    for (std::uint32_t j = 1; j <= k; ++j) {
      if (sigma_sign(k, i, j) < 0) masks[i - 1] |= 1u << (j - 1);
    }
  }
  return masks;
}

// Numerator of a term over the common denominator 2^k, for every subset
// pair; the caller routes it into a bucket.
template <typename Sink>
void for_each_term(const Word& w, Sink&& sink) {
  const auto k = static_cast<std::uint32_t>(w.k());
  const std::uint32_t subsets = 1u << k;
  const auto negative = negative_masks(k);

  std::vector<Integer> pow2(subsets), pow3(subsets);
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    unsigned long alpha_sum = 0, beta_sum = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        alpha_sum += w.alpha(i);
        beta_sum += w.beta(i);
      }
    }
    pow2[mask] = pow_ui(2, alpha_sum);
    pow3[mask] = pow_ui(3, beta_sum);
  }

  Integer term;
  for (std::uint32_t a = 0; a < subsets; ++a) {
    for (std::uint32_t b = 0; b < subsets; ++b) {
      int flips = 0;
      for (std::uint32_t i = 0; i < k; ++i) {
        if (!(a & (1u << i))) flips += std::popcount(negative[i] & b);
      }
      term = pow2[a] * pow3[b];
      if (flips % 2 != 0) term = -term;
      sink(a, b, term);
    }
  }
}

Integer exact_half_power(const Integer& numerator, std::uint32_t k, const char* what) {
  const Integer den = pow_ui(2, k);
  if (numerator % den != 0) {
    throw Error(ErrorCode::NonIntegerEntry, std::string(what) + " is not an integer");
  }
  return numerator / den;
}

Integer to_integer(const Rational& x, const char* what) {
  if (!x.is_integer()) {
    throw Error(ErrorCode::NonIntegerEntry, std::string(what) + " = " + x.to_string());
  }
  return x.num();
}

}  // namespace

int sigma_sign(std::uint32_t k, std::uint32_t i, std::uint32_t j) {
  if (k < 1 || i < 1 || i > k || j < 1 || j > k) {
    throw Error(ErrorCode::IndexOutOfRange, "sigma index (" + std::to_string(i) + "," +
                                                std::to_string(j) + ") with k = " +
                                                std::to_string(k));
  }
  const std::uint32_t jr = (j - 1) % k;
  int hits = 0;
  if (jr == (i - 1) % k) ++hits;
  if (jr == i % k) ++hits;
  return hits % 2 == 0 ? 1 : -1;
}

Rational sigma_term(const Word& w, SubsetPair p) {
  const auto k = static_cast<std::uint32_t>(w.k());
  check_size(w, 31);
  unsigned long alpha_sum = 0, beta_sum = 0;
  int flips = 0;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (p.a & (1u << i)) alpha_sum += w.alpha(i);
    if (p.b & (1u << i)) beta_sum += w.beta(i);
  }
  for (std::uint32_t i = 1; i <= k; ++i) {
    if (p.a & (1u << (i - 1))) continue;
    for (std::uint32_t j = 1; j <= k; ++j) {
      if ((p.b & (1u << (j - 1))) && sigma_sign(k, i, j) < 0) ++flips;
    }
  }
  Integer num = pow_ui(2, alpha_sum) * pow_ui(3, beta_sum);
  if (flips % 2 != 0) num = -num;
  return make_rational(std::move(num), pow_ui(2, k));
}

UQuadruple u_quantities(const Word& w, std::uint32_t size_limit) {
  check_size(w, size_limit);
  const auto k = static_cast<std::uint32_t>(w.k());
  const std::uint32_t last = 1u << (k - 1);  // index k in A
  const std::uint32_t first = 1u;            // index 1 in B
  // bucket[2 * (k in A) + (1 in B)]: u00, u01, u10, u11
  Integer bucket[4] = {0, 0, 0, 0};
  for_each_term(w, [&](std::uint32_t a, std::uint32_t b, const Integer& term) {
    const int slot = ((a & last) ? 2 : 0) + ((b & first) ? 1 : 0);
    bucket[slot] += term;
  });
  const Integer den = pow_ui(2, k);
  return UQuadruple{make_rational(bucket[0], den), make_rational(bucket[2], den),
                    make_rational(bucket[1], den), make_rational(bucket[3], den)};
}

Mat2 entries_from_u(const UQuadruple& q) {
  return Mat2{to_integer(q.u00 + q.u01 - q.u10 + q.u11, "f11"),
              to_integer(q.u11 - q.u10, "f12"),
              to_integer(Rational(2) * (q.u10 - q.u00), "f21"),
              to_integer(Rational(2) * q.u10, "f22")};
}

Integer trace_subsetpair(const Word& w, std::uint32_t size_limit) {
  check_size(w, size_limit);
  Integer total = 0;
  for_each_term(w, [&](std::uint32_t, std::uint32_t, const Integer& term) { total += term; });
  return exact_half_power(total, static_cast<std::uint32_t>(w.k()), "subset-pair trace");
}

Integer trace_fast(const Word& w) {
  if (w.k() > kMaxFastTraceK) {
    throw Error(ErrorCode::SizeLimit, "trace_fast supports k <= " + std::to_string(kMaxFastTraceK));
  }
  const auto k = static_cast<std::uint32_t>(w.k());
  const std::uint32_t subsets = 1u << k;
  const std::uint32_t full = subsets - 1;
  std::vector<Integer> minus(k), plus(k), pow3(k);
  for (std::uint32_t j = 0; j < k; ++j) {
    const Integer p = pow_ui(2, w.alpha(j));
    minus[j] = p - 1;
    plus[j] = p + 1;
    pow3[j] = pow_ui(3, w.beta(j));
  }
  Integer total = 0;
  Integer term;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    // Cyclic shift i -> i - 1 with index 1 wrapping to k.
    const std::uint32_t shifted = ((mask >> 1) | (mask << (k - 1))) & full;
    const std::uint32_t sym = mask ^ shifted;
    term = 1;
    for (std::uint32_t j = 0; j < k; ++j) {
      if (mask & (1u << j)) term *= pow3[j];
      term *= (sym & (1u << j)) ? minus[j] : plus[j];
    }
    total += term;
  }
  return exact_half_power(total, k, "fast trace");
}

BoundsWitness bounds_check(const Word& w) {
  const Mat2 m = word_eval(w);
  BoundsWitness out;
  out.det = det(m);
  out.scaled_trace = pow_ui(2, w.k()) * trace(m);
  out.upper = 1;
  for (std::size_t i = 0; i < w.k(); ++i) {
    out.upper *= (1 + pow_ui(3, w.beta(i))) * (1 + pow_ui(2, w.alpha(i)));
  }
  out.lhs_ok = out.det <= out.scaled_trace;
  out.rhs_ok = out.scaled_trace <= out.upper;
  return out;
}

NkConditions nk_conditions(std::uint32_t k, std::uint32_t n) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "N(k) needs k >= 1");
  const unsigned long m = n + 1ul;
  NkConditions c;
  c.n = n;
  const Integer factor_num = pow_ui(6, m);
  const Integer factor_den = (pow_ui(2, m) + 1) * (pow_ui(3, m) + 1);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), factor_num.get_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), factor_den.get_mpz_t(), k);
  c.eigen_floor = make_rational(pow_ui(2, k) * num, den);
  c.eigen_threshold = pow_ui(2, k) - 1;
  c.eigen_ok = c.eigen_floor > Rational(c.eigen_threshold);
  c.det_floor = pow_ui(6, static_cast<unsigned long>(k) * m);
  const Integer s = pow_ui(4, k) + pow_ui(2, k);
  c.det_bound = s * s;
  c.det_ok = c.det_floor > c.det_bound;
  return c;
}

NkCertificate compute_nk(std::uint32_t k) {
  NkCertificate cert;
  cert.k = k;
  std::optional<NkConditions> previous;
  for (std::uint32_t n = 0;; ++n) {
    NkConditions c = nk_conditions(k, n);
    if (c.eigen_ok && c.det_ok) {
      cert.n = n;
      cert.at_n = std::move(c);
      cert.below = std::move(previous);
      return cert;
    }
    previous = std::move(c);
  }
}

bool prefilter_excludes(const Word& w, const NkCertificate& cert) {
  if (w.k() != cert.k) {
    throw Error(ErrorCode::KMismatch, "word has k = " + std::to_string(w.k()) +
                                          ", certificate k = " + std::to_string(cert.k));
  }
  for (std::size_t i = 0; i < w.k(); ++i) {
    if (w.alpha(i) <= cert.n || w.beta(i) <= cert.n) return false;
  }
  return true;
}

Rational density_upper_bound(std::uint32_t k, Exponent max_exponent, std::uint32_t nk) {
  if (max_exponent <= nk) {
    throw Error(ErrorCode::InvalidArgument, "density bound needs M > N(k)");
  }
  const Integer free_side = pow_ui(max_exponent - nk, 2ul * k);
  return Rational(1) - make_rational(free_side, lambda_count(k, max_exponent));
}

}  // namespace rsc
