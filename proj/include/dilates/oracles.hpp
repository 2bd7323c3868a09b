#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "compression.hpp"
#include "index_set.hpp"
#include "parallel.hpp"
#include "point_set.hpp"
#include "report.hpp"

namespace dilates {

namespace detail {

inline mpz_class mpz_pow(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// floor(v^(1/d)) and whether the root is exact.
inline std::pair<mpz_class, bool> iroot(const mpz_class& v, unsigned long d) {
  mpz_class r;
  int exact = mpz_root(r.get_mpz_t(), v.get_mpz_t(), d);
  return {r, exact != 0};
}

// Number of distinct rows after zeroing the coordinates outside `mask`.
inline std::size_t projection_count(const std::vector<Coord>& flat, std::size_t n, std::size_t d,
                                    std::uint64_t mask) {
  std::vector<Coord> rows(flat);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < d; ++c)
      if (!((mask >> c) & 1)) rows[r * d + c] = 0;
  std::vector<std::uint32_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(rows.begin() + a * d, rows.begin() + (a + 1) * d,
                                        rows.begin() + b * d, rows.begin() + (b + 1) * d);
  });
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && std::equal(rows.begin() + idx[i] * d, rows.begin() + (idx[i] + 1) * d,
                            rows.begin() + idx[i - 1] * d))
      continue;
    ++count;
  }
  return count;
}

inline std::string q_str(const mpq_class& q) { return q.get_str(); }

inline Report make_exact_report(std::string claim, std::string inputs, const mpq_class& lhs,
                                const mpq_class& rhs, bool lhs_le_rhs, std::string witness = "") {
  Report r;
  r.claim = std::move(claim);
  r.inputs = std::move(inputs);
  r.lhs = q_str(lhs);
  r.rhs = q_str(rhs);
  mpq_class slack = lhs_le_rhs ? mpq_class(rhs - lhs) : mpq_class(lhs - rhs);
  r.slack = q_str(slack);
  r.exact = true;
  r.pass = slack >= 0;
  r.witness = std::move(witness);
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Discrete Brunn-Minkowski: sum of all 2^d projection sizes of A+B dominates
// (|A|^(1/d) + |B|^(1/d))^d. Exact when |A| and |B| are d-th powers; otherwise
// the right side is bracketed by 64-bit-per-coordinate directed rounding and
// compared against its lower bound, with near-ties flagged for review.
// ---------------------------------------------------------------------------
inline Report check_discbm(const PointSet& a, const PointSet& b, int max_d = 20,
                           std::size_t element_cap = default_element_cap) {
  const int d = std::max(a.dim(), b.dim());
  if (d > max_d)
    throw cap_exceeded("discbm enumerates 2^" + std::to_string(d) + " projections, cap is d <= " +
                       std::to_string(max_d));
  PointSet s = minkowski(a, b, element_cap);
  const std::size_t sd = static_cast<std::size_t>(d);
  std::vector<Coord> rows = s.flat_padded(d);

  mpz_class lhs = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask)
    lhs += static_cast<unsigned long>(detail::projection_count(rows, s.size(), sd, mask));

  const mpz_class na(static_cast<unsigned long>(a.size()));
  const mpz_class nb(static_cast<unsigned long>(b.size()));
  auto [ra, ra_exact] = detail::iroot(na, static_cast<unsigned long>(d));
  auto [rb, rb_exact] = detail::iroot(nb, static_cast<unsigned long>(d));

  std::string inputs = "d=" + std::to_string(d) + " |A|=" + std::to_string(a.size()) +
                       " |B|=" + std::to_string(b.size()) + " |A+B|=" + std::to_string(s.size());

  if (ra_exact && rb_exact) {
    mpz_class rhs = detail::mpz_pow(ra + rb, static_cast<unsigned long>(d));
    return detail::make_exact_report("discbm", inputs, mpq_class(lhs), mpq_class(rhs), false);
  }

  // Directed rounding at 64 fractional bits per root.
  const unsigned long prec = 64;
  mpz_class sa = detail::iroot(na << (prec * d), static_cast<unsigned long>(d)).first;
  mpz_class sb = detail::iroot(nb << (prec * d), static_cast<unsigned long>(d)).first;
  mpz_class rhs_low = detail::mpz_pow(sa + sb, static_cast<unsigned long>(d)) >> (prec * d);
  mpz_class up_num = detail::mpz_pow(sa + sb + 2, static_cast<unsigned long>(d));
  mpz_class rhs_up = (up_num + (mpz_class(1) << (prec * d)) - 1) >> (prec * d);

  Report r = detail::make_exact_report("discbm", inputs, mpq_class(lhs), mpq_class(rhs_low), false);
  r.witness = "rhs rounded down (irrational d-th roots)";
  if (r.pass && lhs < rhs_up) r.witness += "; near-tie, manual review advised";
  return r;
}

// Sumsets of full affine dimension d satisfy |A+B| >= |A| + d|B| - d(d+1)/2
// (|A| >= |B|; the arguments are swapped internally if needed).
inline Report check_hdsums(const PointSet& a_in, const PointSet& b_in,
                           std::size_t element_cap = default_element_cap) {
  const PointSet& a = a_in.size() >= b_in.size() ? a_in : b_in;
  const PointSet& b = a_in.size() >= b_in.size() ? b_in : a_in;
  PointSet s = minkowski(a, b, element_cap);
  const long d = affine_dim(s);
  mpz_class lhs(static_cast<unsigned long>(s.size()));
  mpz_class rhs = mpz_class(static_cast<unsigned long>(a.size())) +
                  mpz_class(d) * static_cast<unsigned long>(b.size()) - mpz_class(d) * (d + 1) / 2;
  std::string inputs = "|A|=" + std::to_string(a.size()) + " |B|=" + std::to_string(b.size()) +
                       " dim(A+B)=" + std::to_string(d);
  return detail::make_exact_report("hdsums", inputs, mpq_class(lhs), mpq_class(rhs), false);
}

// Ruzsa triangle inequality (sum form): |X||Y+Z| <= |X+Y||X+Z|.
inline Report check_ruzsa_triangle(const PointSet& x, const PointSet& y, const PointSet& z,
                                   std::size_t element_cap = default_element_cap) {
  mpz_class lhs = mpz_class(static_cast<unsigned long>(x.size())) *
                  static_cast<unsigned long>(minkowski(y, z, element_cap).size());
  mpz_class rhs = mpz_class(static_cast<unsigned long>(minkowski(x, y, element_cap).size())) *
                  static_cast<unsigned long>(minkowski(x, z, element_cap).size());
  std::string inputs = "|X|=" + std::to_string(x.size()) + " |Y|=" + std::to_string(y.size()) +
                       " |Z|=" + std::to_string(z.size());
  return detail::make_exact_report("triangle", inputs, mpq_class(lhs), mpq_class(rhs), true);
}

// The doubling chain: with K = |A+PhiA|/|A|, direct enumeration verifies
//   |A+A| <= K^2 |A|,  |A+A+A+A| <= K^8 |A|,
//   |A+PhiA+PhiA+PhiA| <= K^9 |A|,  |B+PhiB| <= K^10 |A|  for B = A+PhiA.
struct DoublingChain {
  Rational k;
  std::size_t n = 0;        // |A|
  std::size_t dilate = 0;   // |A+PhiA|
  std::size_t n_b = 0;      // |B+PhiB|, the K^10 quantity
  std::vector<Report> steps;
};

inline DoublingChain pr_chain(const PointSet& a, std::size_t element_cap = default_element_cap) {
  DoublingChain out;
  out.n = a.size();
  PointSet b = dilate_sum(a, element_cap);
  out.dilate = b.size();
  out.k = Rational::of(static_cast<std::int64_t>(out.dilate), static_cast<std::int64_t>(out.n));
  const mpz_class num(static_cast<long>(out.k.num));
  const mpz_class den(static_cast<long>(out.k.den));
  const mpz_class n(static_cast<unsigned long>(out.n));

  auto step = [&](const char* claim, std::size_t measured, unsigned long power) {
    mpq_class lhs(static_cast<unsigned long>(measured));
    mpq_class rhs(detail::mpz_pow(num, power) * n, detail::mpz_pow(den, power));
    rhs.canonicalize();
    std::string inputs = "K=" + out.k.str() + " |A|=" + std::to_string(out.n);
    out.steps.push_back(detail::make_exact_report(claim, inputs, lhs, rhs, true));
  };

  PointSet aa = minkowski(a, a, element_cap);
  step("prchain.k2", aa.size(), 2);
  step("prchain.k8", minkowski(aa, aa, element_cap).size(), 8);
  step("prchain.k9", minkowski(b, phi(aa), element_cap).size(), 9);
  PointSet bb = dilate_sum(b, element_cap);
  out.n_b = bb.size();
  step("prchain.k10", out.n_b, 10);
  return out;
}

inline Report check_pr_chain(const PointSet& a, std::size_t element_cap = default_element_cap) {
  DoublingChain chain = pr_chain(a, element_cap);
  Report r;
  r.claim = "prchain";
  r.inputs = "K=" + chain.k.str() + " |A|=" + std::to_string(chain.n) +
             " |B+PhiB|=" + std::to_string(chain.n_b);
  const Report& last = chain.steps.back();
  r.lhs = last.lhs;
  r.rhs = last.rhs;
  r.slack = last.slack;
  r.exact = true;
  r.pass = all_pass(chain.steps);
  if (!r.pass)
    for (const auto& s : chain.steps)
      if (!s.pass) r.witness += s.claim + " violated; ";
  return r;
}

// Projection bound for compressed sets: |p_I(A)|^(k+1) <= N^k in unbounded
// integer arithmetic, where N = |A+PhiA| and k is the longest run in I.
// With no I given, every I subseteq [d] is checked and the tightest case is
// reported.
inline Report check_projection_bound(const PointSet& a, std::optional<IndexSet> only = {},
                                     int max_d = 20,
                                     std::size_t element_cap = default_element_cap,
                                     int workers = 1) {
  if (!is_compressed(a)) throw precondition_error("projection bound requires a compressed set");
  const int d = a.dim();
  if (only && only->max_member() > d) throw precondition_error("index set beyond set dimension");
  if (!only && d > max_d)
    throw cap_exceeded("projection sweep enumerates 2^" + std::to_string(d) + " subsets, cap is d <= " +
                       std::to_string(max_d));
  const mpz_class nn(static_cast<unsigned long>(dilate_sum(a, element_cap).size()));

  std::vector<std::uint64_t> masks;
  if (only)
    masks.push_back(only->mask());
  else
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << d); ++m) masks.push_back(m);

  struct Entry {
    mpz_class lhs, rhs;
    std::size_t proj = 0;
    int k = 0;
    bool pass = true;
  };
  std::vector<Entry> entries(masks.size());
  parallel_for_index(masks.size(), workers, [&](std::size_t i) {
    IndexSet is = IndexSet::from_mask(masks[i]);
    const int k = alpha(is);
    std::size_t p = detail::projection_count(a.flat(), a.size(), static_cast<std::size_t>(d), masks[i]);
    Entry e;
    e.proj = p;
    e.k = k;
    e.lhs = detail::mpz_pow(mpz_class(static_cast<unsigned long>(p)),
                            static_cast<unsigned long>(k) + 1);
    e.rhs = detail::mpz_pow(nn, static_cast<unsigned long>(k));
    e.pass = e.lhs <= e.rhs;
    entries[i] = std::move(e);
  });

  // Tightest subset by the ratio lhs/rhs, compared exactly.
  std::size_t worst = 0;
  bool pass = true;
  std::string witness;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i].pass && pass) {
      pass = false;
      witness = "violated at I=" + IndexSet::from_mask(masks[i]).str() +
                " |p_I(A)|=" + std::to_string(entries[i].proj);
    }
    if (entries[i].lhs * entries[worst].rhs > entries[worst].lhs * entries[i].rhs) worst = i;
  }
  Report r = detail::make_exact_report(
      "projbound",
      "d=" + std::to_string(d) + " |A|=" + std::to_string(a.size()) + " N=" + nn.get_str() +
          " subsets=" + std::to_string(masks.size()),
      mpq_class(entries[worst].lhs), mpq_class(entries[worst].rhs), true, std::move(witness));
  r.pass = pass;
  if (pass)
    r.witness = "tightest I=" + IndexSet::from_mask(masks[worst]).str() + " k=" +
                std::to_string(entries[worst].k) + " |p_I(A)|=" + std::to_string(entries[worst].proj);
  return r;
}

// Materializes the pair map (x, y) -> (p_{J1 ∩ phi(J2)}(x), x + Phi(y)) on
// p_{J1}(A) x p_{J2}(A) and checks containment of the image, injectivity, and
// the exact ratio bound |p_{J1}(A)||p_{J2}(A)| <= N |p_{J1 ∩ phi(J2)}(A)|.
inline Report check_injection_claim(const PointSet& a, IndexSet j1, IndexSet j2,
                                    std::size_t element_cap = default_element_cap) {
  if (!is_compressed(a)) throw precondition_error("injection claim requires a compressed set");
  const int d = a.dim();
  if (j1.max_member() > d || j2.max_member() > d)
    throw precondition_error("index set beyond set dimension");
  const std::size_t sd = static_cast<std::size_t>(d);
  const IndexSet meet = j1.intersected(shift_index_set(j2));

  PointSet px = project(a, j1);
  PointSet py = project(a, j2);
  PointSet pt = project(a, meet);
  PointSet s = dilate_sum(a, element_cap);

  std::vector<Coord> xs = px.flat_padded(d);
  std::vector<Coord> ys = py.flat_padded(d);

  auto sorted_rows = [](const PointSet& ps, int ambient) {
    std::vector<Coord> out = ps.flat_padded(ambient);
    return out;  // already lex-sorted; padding preserves order
  };
  std::vector<Coord> t_rows = sorted_rows(pt, d);
  std::vector<Coord> s_rows = sorted_rows(s, d + 1);

  auto member = [](const std::vector<Coord>& rows, std::size_t width, const Coord* q) {
    const std::size_t n = rows.size() / width;
    std::size_t lo = 0, hi = n;
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      const Coord* row = rows.data() + mid * width;
      if (std::lexicographical_compare(row, row + width, q, q + width))
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo < n && std::equal(rows.data() + lo * width, rows.data() + (lo + 1) * width, q);
  };

  const std::size_t pair_count = px.size() * py.size();
  if (pair_count > element_cap) throw cap_exceeded("injection materialization exceeds element cap");

  std::vector<std::vector<Coord>> images;
  images.reserve(pair_count);
  bool contained = true;
  std::string witness;
  std::vector<Coord> img(sd + (sd + 1));
  for (std::size_t i = 0; i < px.size() && contained; ++i) {
    const Coord* x = xs.data() + i * sd;
    for (std::size_t j = 0; j < py.size(); ++j) {
      const Coord* y = ys.data() + j * sd;
      for (std::size_t c = 0; c < sd; ++c) img[c] = meet.contains(static_cast<int>(c) + 1) ? x[c] : 0;
      img[sd] = x[0];
      for (std::size_t c = 1; c < sd; ++c) img[sd + c] = checked_add(x[c], y[c - 1]);
      img[2 * sd] = y[sd - 1];
      if (!member(t_rows, sd, img.data()) || !member(s_rows, sd + 1, img.data() + sd)) {
        contained = false;
        witness = "image escapes target at pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
        break;
      }
      images.push_back(img);
    }
  }

  bool injective = false;
  if (contained) {
    std::sort(images.begin(), images.end());
    injective = std::adjacent_find(images.begin(), images.end()) == images.end();
    if (!injective) witness = "map is not injective";
  }

  mpz_class lhs = mpz_class(static_cast<unsigned long>(px.size())) *
                  static_cast<unsigned long>(py.size());
  mpz_class rhs = mpz_class(static_cast<unsigned long>(s.size())) *
                  static_cast<unsigned long>(pt.size());
  Report r = detail::make_exact_report(
      "injection",
      "J1=" + j1.str() + " J2=" + j2.str() + " N=" + std::to_string(s.size()) +
          " |pJ1|=" + std::to_string(px.size()) + " |pJ2|=" + std::to_string(py.size()) +
          " |pMeet|=" + std::to_string(pt.size()),
      mpq_class(lhs), mpq_class(rhs), true, std::move(witness));
  r.pass = r.pass && contained && injective;
  return r;
}

// Exact histogram of alpha over all subsets of [m], verified against the
// counting bound h[k] <= (m+1) 2^(m-k).
struct AlphaCount {
  int m = 0;
  std::vector<std::uint64_t> hist;  // index k = 0..m
  Report report;
};

inline AlphaCount count_by_alpha(int m, int max_m = 25) {
  if (m < 1) throw precondition_error("alpha count requires m >= 1");
  if (m > max_m)
    throw cap_exceeded("alpha count enumerates 2^" + std::to_string(m) + " subsets, cap is m <= " +
                       std::to_string(max_m));
  AlphaCount out;
  out.m = m;
  out.hist.assign(static_cast<std::size_t>(m) + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::uint64_t x = mask;
    int run = 0;
    while (x) {
      x &= x << 1;
      ++run;
    }
    ++out.hist[static_cast<std::size_t>(run)];
  }

  bool pass = true;
  int worst_k = 0;
  double worst_ratio = -1.0;
  std::uint64_t total = 0;
  for (int k = 0; k <= m; ++k) {
    const std::uint64_t h = out.hist[static_cast<std::size_t>(k)];
    total += h;
    const std::uint64_t bound =
        static_cast<std::uint64_t>(m + 1) << static_cast<unsigned>(m - k);
    if (h > bound) pass = false;
    const double ratio = static_cast<double>(h) / static_cast<double>(bound);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_k = k;
    }
  }
  pass = pass && total == (std::uint64_t{1} << m);

  const std::uint64_t wh = out.hist[static_cast<std::size_t>(worst_k)];
  const std::uint64_t wb = static_cast<std::uint64_t>(m + 1) << static_cast<unsigned>(m - worst_k);
  Report r = detail::make_exact_report(
      "alphacount", "m=" + std::to_string(m) + " total=" + std::to_string(total),
      mpq_class(static_cast<unsigned long>(wh)), mpq_class(static_cast<unsigned long>(wb)), true,
      pass ? "tightest k=" + std::to_string(worst_k) : "histogram bound violated");
  r.pass = pass;
  out.report = std::move(r);
  return out;
}

// The lower-bound envelope e^(c sqrt(log n)) * n in double precision.
// Informational only; never used in exact pass/fail comparisons.
inline double lower_bound_value(std::size_t n, double c = 0.1) {
  if (n < 1) throw precondition_error("envelope requires n >= 1");
  return std::exp(c * std::sqrt(std::log(static_cast<double>(n)))) * static_cast<double>(n);
}

// Replays the lower-bound argument on a concrete set, one report per step:
// dimension reduction, d <= 2K, the doubling chain, compression of the dilate
// sum, the projection bounds against both the exact N and the K^10 n
// envelope, the alpha histogram bound, the projection-sum chain
// 2^(d+1) n <= sum_I |p_I(A+PhiA)|, the per-k summand bounds, and the
// AM-GM step (float, informational). Every step is a theorem: a failing
// report indicates an implementation bug.
inline std::vector<Report> theorem_trace(const PointSet& a, int max_d = 20,
                                         std::size_t element_cap = default_element_cap,
                                         int workers = 1) {
  std::vector<Report> out;

  PointSet reduced = reduce_dim(a);
  const std::size_t n = reduced.size();
  PointSet b = dilate_sum(reduced, element_cap);
  {
    const std::size_t before = dilate_sum(a, element_cap).size();
    Report r = detail::make_exact_report(
        "trace.reduce",
        "|A|=" + std::to_string(a.size()) + " |A'|=" + std::to_string(n) + " dim(A')=" +
            std::to_string(reduced.dim()),
        mpq_class(static_cast<unsigned long>(b.size())), mpq_class(static_cast<unsigned long>(before)),
        true);
    r.pass = r.pass && n == a.size();
    out.push_back(std::move(r));
  }

  const Rational k_ratio = Rational::of(static_cast<std::int64_t>(b.size()), static_cast<std::int64_t>(n));
  const mpz_class knum(static_cast<long>(k_ratio.num));
  const mpz_class kden(static_cast<long>(k_ratio.den));
  const mpz_class nz(static_cast<unsigned long>(n));
  {
    mpq_class lhs(knum, kden);
    mpq_class rhs(mpz_class(2) * nz - 1, nz);
    lhs.canonicalize();
    rhs.canonicalize();
    out.push_back(detail::make_exact_report("trace.doubling", "K=" + k_ratio.str() + " n=" + std::to_string(n),
                                            rhs, lhs, true));  // 2 - 1/n <= K
  }

  const int d = affine_dim(reduced);
  {
    mpq_class lhs(static_cast<long>(d));
    mpq_class rhs(mpz_class(2) * knum, kden);
    rhs.canonicalize();
    out.push_back(detail::make_exact_report(
        "trace.lowdim", "d=" + std::to_string(d) + " K=" + k_ratio.str(), lhs, rhs, true));
  }

  DoublingChain chain = pr_chain(reduced, element_cap);
  for (auto& s : chain.steps) {
    s.claim = "trace." + s.claim;
    out.push_back(std::move(s));
  }
  const mpz_class n_b(static_cast<unsigned long>(chain.n_b));

  {
    Report r;
    r.claim = "trace.compressed";
    r.inputs = "|B|=" + std::to_string(b.size()) + " dim(B)=" + std::to_string(b.dim());
    const bool ok = is_compressed(b);
    r.lhs = ok ? "compressed" : "not-compressed";
    r.rhs = "compressed";
    r.slack = "0";
    r.pass = ok;
    out.push_back(std::move(r));
  }

  const int m = b.dim();
  {
    const int sum_dim = affine_dim(b);
    const int expected = n == 1 ? 0 : d + 1;
    Report r = detail::make_exact_report(
        "trace.sumdim", "affine_dim(B)=" + std::to_string(sum_dim),
        mpq_class(static_cast<long>(sum_dim)), mpq_class(static_cast<long>(expected)), true,
        n == 1 ? "degenerate singleton" : "");
    r.pass = sum_dim == expected;
    out.push_back(std::move(r));
  }
  if (m != d + 1) {
    Report r;
    r.claim = "trace.ambient";
    r.inputs = "dim(B)=" + std::to_string(m) + " d+1=" + std::to_string(d + 1);
    r.lhs = std::to_string(m);
    r.rhs = std::to_string(d + 1);
    r.slack = "0";
    r.pass = false;
    r.witness = "dilate sum does not span the shifted ambient space";
    out.push_back(std::move(r));
    return out;
  }
  if (m > max_d)
    throw cap_exceeded("trace enumerates 2^" + std::to_string(m) + " subsets, cap is d <= " +
                       std::to_string(max_d));

  // One sweep over all I subseteq [m] of projections of B.
  const std::size_t mask_count = std::size_t{1} << m;
  std::vector<std::size_t> proj(mask_count);
  std::vector<int> run(mask_count);
  parallel_for_index(mask_count, workers, [&](std::size_t i) {
    proj[i] = detail::projection_count(b.flat(), b.size(), static_cast<std::size_t>(m),
                                       static_cast<std::uint64_t>(i));
    run[i] = alpha(IndexSet::from_mask(static_cast<std::uint64_t>(i)));
  });

  std::vector<std::size_t> max_proj(static_cast<std::size_t>(m) + 1, 0);
  std::vector<mpz_class> sum_by_k(static_cast<std::size_t>(m) + 1, mpz_class(0));
  mpz_class total = 0;
  for (std::size_t i = 0; i < mask_count; ++i) {
    const auto k = static_cast<std::size_t>(run[i]);
    max_proj[k] = std::max(max_proj[k], proj[i]);
    sum_by_k[k] += static_cast<unsigned long>(proj[i]);
    total += static_cast<unsigned long>(proj[i]);
  }

  {
    // Exact projection bound against N = |B+PhiB|.
    bool pass = true;
    std::size_t worst_k = 0;
    mpz_class worst_lhs = 1, worst_rhs = 1;
    for (int k = 0; k <= m; ++k) {
      mpz_class lhs = detail::mpz_pow(mpz_class(static_cast<unsigned long>(max_proj[static_cast<std::size_t>(k)])),
                                      static_cast<unsigned long>(k) + 1);
      mpz_class rhs = detail::mpz_pow(n_b, static_cast<unsigned long>(k));
      if (lhs > rhs) pass = false;
      if (lhs * worst_rhs > worst_lhs * rhs) {
        worst_lhs = lhs;
        worst_rhs = rhs;
        worst_k = static_cast<std::size_t>(k);
      }
    }
    Report r = detail::make_exact_report(
        "trace.projbound", "m=" + std::to_string(m) + " N=" + n_b.get_str(), mpq_class(worst_lhs),
        mpq_class(worst_rhs), true, "tightest k=" + std::to_string(worst_k));
    r.pass = pass;
    out.push_back(std::move(r));
  }

  for (int k = 0; k <= m; ++k) {
    // max |p_I(B)| against the (K^10 n)^(k/(k+1)) envelope, cross-multiplied.
    mpz_class lhs = detail::mpz_pow(mpz_class(static_cast<unsigned long>(max_proj[static_cast<std::size_t>(k)])),
                                    static_cast<unsigned long>(k) + 1) *
                    detail::mpz_pow(kden, 10ul * static_cast<unsigned long>(k));
    mpz_class rhs = detail::mpz_pow(knum, 10ul * static_cast<unsigned long>(k)) *
                    detail::mpz_pow(nz, static_cast<unsigned long>(k));
    out.push_back(detail::make_exact_report(
        "trace.projenv.k=" + std::to_string(k),
        "max|p_I(B)|=" + std::to_string(max_proj[static_cast<std::size_t>(k)]) + " K=" + k_ratio.str() +
            " n=" + std::to_string(n),
        mpq_class(lhs), mpq_class(rhs), true));
  }

  {
    AlphaCount ac = count_by_alpha(m, std::max(max_d, m));
    ac.report.claim = "trace.alphacount";
    out.push_back(std::move(ac.report));

    for (int k = 0; k <= m; ++k) {
      // Summand bound: sum over alpha(I)=k of |p_I(B)| against
      // (m+1) 2^(m-k) (K^10 n)^(k/(k+1)), compared via (k+1)-th powers.
      const mpz_class cbound = mpz_class(m + 1) << static_cast<unsigned>(m - k);
      mpz_class lhs = detail::mpz_pow(sum_by_k[static_cast<std::size_t>(k)],
                                      static_cast<unsigned long>(k) + 1) *
                      detail::mpz_pow(kden, 10ul * static_cast<unsigned long>(k));
      mpz_class rhs = detail::mpz_pow(cbound, static_cast<unsigned long>(k) + 1) *
                      detail::mpz_pow(knum, 10ul * static_cast<unsigned long>(k)) *
                      detail::mpz_pow(nz, static_cast<unsigned long>(k));
      out.push_back(detail::make_exact_report(
          "trace.summand.k=" + std::to_string(k),
          "sum|p_I(B)|=" + sum_by_k[static_cast<std::size_t>(k)].get_str() + " count<=" + cbound.get_str(),
          mpq_class(lhs), mpq_class(rhs), true));
    }
  }

  {
    mpz_class lhs = mpz_class(1) << static_cast<unsigned>(m);
    lhs *= nz;
    out.push_back(detail::make_exact_report(
        "trace.bmchain", "m=" + std::to_string(m) + " n=" + std::to_string(n), mpq_class(lhs),
        mpq_class(total), true));
  }

  {
    // AM-GM: (k+1)log2 + log(n)/(k+1) >= 2 sqrt(log2 log n). The slack is
    // evaluated as (sqrt(a)-sqrt(b))^2, which is nonnegative in floating
    // point as well as in exact arithmetic.
    const double logn = std::log(static_cast<double>(n));
    double min_slack = std::numeric_limits<double>::infinity();
    double lhs_at_min = 0, rhs_at_min = 0;
    int argmin = 0;
    for (int k = 0; k <= m; ++k) {
      const double va = (k + 1) * std::log(2.0);
      const double vb = logn / (k + 1);
      const double slack = std::pow(std::sqrt(va) - std::sqrt(vb), 2.0);
      if (slack < min_slack) {
        min_slack = slack;
        lhs_at_min = va + vb;
        rhs_at_min = 2.0 * std::sqrt(va * vb);
        argmin = k;
      }
    }
    Report r;
    r.claim = "trace.amgm";
    r.inputs = "n=" + std::to_string(n) + " tightest k=" + std::to_string(argmin);
    r.lhs = std::to_string(lhs_at_min);
    r.rhs = std::to_string(rhs_at_min);
    r.slack = std::to_string(min_slack);
    r.exact = false;
    r.pass = min_slack >= 0.0;
    out.push_back(std::move(r));
  }

  return out;
}

}  // namespace dilates
